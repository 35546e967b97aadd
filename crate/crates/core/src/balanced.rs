//! Downward vertex-set sequences whose cuts never exceed `m/2 + 7m^{4/5}`.
//!
//! The construction runs in two layers. Vertices of degree at most
//! `Δ = 2m^{3/5}` are ordered by a randomized balanced partition followed by a
//! greedy extension in both directions; high-degree vertices are then
//! interleaved, each leaving the set once at most half of its edges to the
//! low-degree side still point into the set.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{
    graph::{DownwardSetSequence, Graph},
    Error, Result,
};

/// Default number of partition draws before giving up.
pub const DEFAULT_RETRIES: usize = 1000;

/// A degree threshold `Δ`, kept exact through its fifth power so that the
/// irrational `2m^{3/5}` compares without rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeCap {
    pow5: u128,
}

impl DegreeCap {
    pub fn integer(delta: u64) -> Self {
        DegreeCap {
            pow5: (delta as u128).pow(5),
        }
    }

    /// `Δ = 2m^{3/5}`, i.e. `Δ⁵ = 32m³`.
    pub fn for_edge_count(m: u64) -> Self {
        DegreeCap {
            pow5: 32 * (m as u128).pow(3),
        }
    }

    pub fn fifth_power(&self) -> u128 {
        self.pow5
    }

    /// `deg ≤ Δ`.
    pub fn admits(&self, degree: usize) -> bool {
        (degree as u128).pow(5) <= self.pow5
    }

    pub fn approx(&self) -> f64 {
        (self.pow5 as f64).powf(0.2)
    }
}

/// `cut ≤ m/2 + √m`.
pub fn within_bisection_bound(cut: usize, m: usize) -> bool {
    let excess = 2 * cut as i128 - m as i128;
    excess <= 0 || (excess * excess) as u128 <= 4 * m as u128
}

/// `degree_sum ≤ m + 2√(mΔ)`.
pub fn within_degree_sum_bound(degree_sum: usize, m: usize, cap: DegreeCap) -> bool {
    if degree_sum <= m {
        return true;
    }
    // (s − m)² ≤ 4mΔ  ⇔  (s − m)¹⁰ ≤ 4⁵ m⁵ Δ⁵
    let excess = BigUint::from(degree_sum - m);
    let lhs = excess.pow(10u32);
    let rhs = BigUint::from(1024u32) * BigUint::from(m).pow(5u32) * BigUint::from(cap.pow5);
    lhs <= rhs
}

/// `cut ≤ m/2 + 7m^{4/5}`.
pub fn within_sequence_bound(cut: usize, m: usize) -> bool {
    let excess = 2 * cut as i128 - m as i128;
    if excess <= 0 {
        return true;
    }
    // (2c − m)⁵ ≤ 14⁵ m⁴
    BigUint::from(excess as u128).pow(5u32)
        <= BigUint::from(14u32).pow(5u32) * BigUint::from(m).pow(4u32)
}

/// `cut ≤ m/2 + √(mΔ) + Δ` for an integer `Δ`.
pub fn within_low_degree_bound(cut: usize, m: usize, delta: u64) -> bool {
    let excess = 2 * cut as i128 - m as i128 - 2 * delta as i128;
    excess <= 0 || (excess as u128).pow(2) <= 4 * m as u128 * delta as u128
}

/// `m/2 + 7m^{4/5}` as a float, for reporting.
pub fn sequence_bound(m: usize) -> f64 {
    m as f64 / 2.0 + 7.0 * (m as f64).powf(0.8)
}

/// A two-sided partition and the number of draws it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedPartition {
    /// `true` for vertices in `V₁`.
    pub side_one: Vec<bool>,
    pub attempts: usize,
}

impl BalancedPartition {
    pub fn part_one(&self) -> Vec<usize> {
        (0..self.side_one.len())
            .filter(|&v| self.side_one[v])
            .collect()
    }

    pub fn part_two(&self) -> Vec<usize> {
        (0..self.side_one.len())
            .filter(|&v| !self.side_one[v])
            .collect()
    }
}

/// Uniform independent side choices, redrawn until the crossing edges stay
/// within `m/2 + √m` and both degree sums within `m + 2√(mΔ)`.
pub fn random_balanced_partition(
    g: &Graph,
    cap: DegreeCap,
    seed: u64,
    max_retries: usize,
) -> Result<BalancedPartition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    partition_with(g, cap, &mut rng, max_retries)
}

fn partition_with(
    g: &Graph,
    cap: DegreeCap,
    rng: &mut ChaCha8Rng,
    max_retries: usize,
) -> Result<BalancedPartition> {
    let n = g.num_vertices();
    if let Some(v) = (0..n).find(|&v| !cap.admits(g.degree(v))) {
        return Err(Error::DegreeBound { vertex: v });
    }
    let m = g.num_edges();
    let mut side = vec![false; n];
    for attempt in 1..=max_retries {
        side.iter_mut().for_each(|s| *s = rng.gen());
        let cut = g.cut(&side);
        let (d1, d2) = (0..n).fold((0, 0), |(a, b), v| {
            if side[v] {
                (a + g.degree(v), b)
            } else {
                (a, b + g.degree(v))
            }
        });
        if within_bisection_bound(cut, m)
            && within_degree_sum_bound(d1, m, cap)
            && within_degree_sum_bound(d2, m, cap)
        {
            return Ok(BalancedPartition {
                side_one: side,
                attempts: attempt,
            });
        }
    }
    Err(Error::RetriesExhausted(max_retries))
}

/// Tracks a vertex set `S` with the crossing-edge count and, per vertex, the
/// number of edges into `S`.
struct CutTracker<'g> {
    g: &'g Graph,
    in_set: Vec<bool>,
    into_set: Vec<usize>,
    cut: usize,
}

impl<'g> CutTracker<'g> {
    fn new(g: &'g Graph, in_set: Vec<bool>) -> Self {
        let mut into_set = vec![0; g.num_vertices()];
        for &(u, v) in g.edges() {
            if in_set[v] {
                into_set[u] += 1;
            }
            if in_set[u] {
                into_set[v] += 1;
            }
        }
        let cut = g.cut(&in_set);
        CutTracker {
            g,
            in_set,
            into_set,
            cut,
        }
    }

    /// Cut after toggling the membership of `v`.
    fn cut_if_toggled(&self, v: usize) -> usize {
        let inside = self.into_set[v];
        let outside = self.g.degree(v) - inside;
        if self.in_set[v] {
            self.cut + inside - outside
        } else {
            self.cut + outside - inside
        }
    }

    fn toggle(&mut self, v: usize) {
        self.cut = self.cut_if_toggled(v);
        let entering = !self.in_set[v];
        self.in_set[v] = entering;
        for &u in self.g.neighbors(v) {
            if entering {
                self.into_set[u] += 1;
            } else {
                self.into_set[u] -= 1;
            }
        }
    }

    /// Vertex with membership `member` whose toggle gives the smallest cut;
    /// ties go to the smallest id.
    fn best_toggle(&self, member: bool) -> Option<usize> {
        (0..self.g.num_vertices())
            .filter(|&v| self.in_set[v] == member)
            .min_by_key(|&v| (self.cut_if_toggled(v), v))
    }
}

/// Low-degree ordering: a balanced partition fixes `S_{n₁} = V₂`, then the
/// chain is grown greedily towards `V` and shrunk greedily towards `∅`,
/// each step picking the vertex that minimises the resulting cut.
///
/// When the maximum degree is at most `Δ`, every cut is at most
/// `m/2 + √(mΔ) + Δ`.
pub fn greedy_low_degree_sequence(
    g: &Graph,
    cap: DegreeCap,
    seed: u64,
) -> Result<DownwardSetSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    greedy_with(g, cap, &mut rng, DEFAULT_RETRIES).map(|(seq, _)| seq)
}

fn greedy_with(
    g: &Graph,
    cap: DegreeCap,
    rng: &mut ChaCha8Rng,
    max_retries: usize,
) -> Result<(DownwardSetSequence, BalancedPartition)> {
    let partition = partition_with(g, cap, rng, max_retries)?;
    let n = g.num_vertices();
    let in_v2: Vec<bool> = partition.side_one.iter().map(|s| !s).collect();

    // S_t = S_{t+1} ∪ {v_t} for t = n₁−1 … 0; those vertices leave first,
    // in reverse order of being added back
    let mut grow = CutTracker::new(g, in_v2.clone());
    let mut added = Vec::new();
    while let Some(v) = grow.best_toggle(false) {
        grow.toggle(v);
        added.push(v);
    }
    let mut order: Vec<usize> = added.into_iter().rev().collect();

    let mut shrink = CutTracker::new(g, in_v2);
    while let Some(v) = shrink.best_toggle(true) {
        shrink.toggle(v);
        order.push(v);
    }
    debug_assert_eq!(order.len(), n);
    Ok((DownwardSetSequence::from_order(n, &order)?, partition))
}

/// Diagnostics from [`full_balanced_sequence_with_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedReport {
    pub high_degree: Vec<usize>,
    pub partition_attempts: usize,
}

/// A single-removal downward sequence with every cut at most `m/2 + 7m^{4/5}`.
pub fn full_balanced_sequence(g: &Graph, seed: u64) -> Result<DownwardSetSequence> {
    full_balanced_sequence_with_report(g, seed, DEFAULT_RETRIES).map(|(seq, _)| seq)
}

pub fn full_balanced_sequence_with_report(
    g: &Graph,
    seed: u64,
    max_retries: usize,
) -> Result<(DownwardSetSequence, BalancedReport)> {
    let n = g.num_vertices();
    let m = g.num_edges();
    let cap = DegreeCap::for_edge_count(m as u64);
    let (high, low): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| !cap.admits(g.degree(v)));

    let mut report = BalancedReport {
        high_degree: high.clone(),
        partition_attempts: 0,
    };
    if low.is_empty() {
        let seq = DownwardSetSequence::from_order(n, &high)?;
        return Ok((seq, report));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sub = g.induced(&low);
    let (low_seq, partition) = greedy_with(&sub, cap, &mut rng, max_retries)?;
    report.partition_attempts = partition.attempts;

    let mut is_low = vec![false; n];
    for &v in &low {
        is_low[v] = true;
    }
    // per high-degree vertex: edges to low vertices still in S / already removed
    let mut low_in = vec![0usize; n];
    let mut low_out = vec![0usize; n];
    for &h in &high {
        low_in[h] = g.neighbors(h).iter().filter(|&&u| is_low[u]).count();
    }
    let mut high_in_set = vec![false; n];
    for &h in &high {
        high_in_set[h] = true;
    }

    let mut order = Vec::with_capacity(n);
    for sub_v in low_seq.order() {
        let v = low[sub_v];
        order.push(v);
        for &u in g.neighbors(v) {
            if !is_low[u] {
                low_in[u] -= 1;
                low_out[u] += 1;
            }
        }
        // removing a high-degree vertex leaves the others' low-side counts
        // untouched, so one ascending pass equals a restarted scan
        while let Some(&h) = high
            .iter()
            .find(|&&h| high_in_set[h] && low_in[h] <= low_out[h])
        {
            high_in_set[h] = false;
            order.push(h);
        }
    }
    debug_assert_eq!(order.len(), n);
    Ok((DownwardSetSequence::from_order(n, &order)?, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::optimal_downward_sequence;
    use crate::graph::max_cut_of_sequence;
    use crate::Limits;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|l| (0, l)).collect()).unwrap()
    }

    #[test]
    fn bound_helpers() {
        // m = 1: 1 ≤ 1/2 + 1
        assert!(within_bisection_bound(1, 1));
        assert!(within_degree_sum_bound(2, 1, DegreeCap::integer(1)));
        // m = 4: 5 > 2 + 2
        assert!(!within_bisection_bound(5, 4));
        assert!(within_bisection_bound(4, 4));
        assert!(within_sequence_bound(0, 0));
        // m = 1: bound 1/2 + 7
        assert!(within_sequence_bound(1, 1));
        // P₃: m/2 + √(mΔ) + Δ = 1 + 2 + 2 = 5
        assert!(within_low_degree_bound(5, 2, 2));
        assert!(!within_low_degree_bound(6, 2, 2));
    }

    #[test]
    fn degree_cap_threshold_is_exact() {
        // m = 32: Δ = 2·32^{3/5} = 16 exactly
        let cap = DegreeCap::for_edge_count(32);
        assert!(cap.admits(16));
        assert!(!cap.admits(17));
        assert!((cap.approx() - 16.0).abs() < 1e-9);
    }

    #[test]
    fn partition_of_edgeless_and_single_edge() {
        let edgeless = Graph::new(5, vec![]).unwrap();
        let p = random_balanced_partition(&edgeless, DegreeCap::integer(0), 1, 10).unwrap();
        assert_eq!(p.attempts, 1);
        let edge = Graph::new(2, vec![(0, 1)]).unwrap();
        for seed in 0..8 {
            let p = random_balanced_partition(&edge, DegreeCap::integer(1), seed, 10).unwrap();
            assert_eq!(p.attempts, 1);
        }
    }

    #[test]
    fn partition_rejects_high_degree() {
        let err = random_balanced_partition(&star(4), DegreeCap::integer(3), 0, 10).unwrap_err();
        assert!(matches!(err, Error::DegreeBound { vertex: 0 }));
    }

    #[test]
    fn k4_partition_rechecked() {
        let g = complete(4);
        let p = random_balanced_partition(&g, DegreeCap::integer(3), 7, DEFAULT_RETRIES).unwrap();
        let cut = g.cut(&p.side_one);
        // 2c − m ≤ 2√m with m = 6
        assert!((2.0 * cut as f64 - 6.0) <= 2.0 * 6f64.sqrt());
        let d1: usize = p.part_one().iter().map(|&v| g.degree(v)).sum();
        let d2: usize = p.part_two().iter().map(|&v| g.degree(v)).sum();
        for d in [d1, d2] {
            assert!(d as f64 <= 6.0 + 2.0 * 18f64.sqrt());
        }
    }

    #[test]
    fn path_low_degree_bound() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        for seed in 0..20 {
            let seq = greedy_low_degree_sequence(&g, DegreeCap::integer(2), seed).unwrap();
            assert!(max_cut_of_sequence(&g, &seq).unwrap() <= 5);
        }
    }

    #[test]
    fn edgeless_full_sequence() {
        let g = Graph::new(4, vec![]).unwrap();
        let seq = full_balanced_sequence(&g, 3).unwrap();
        assert!(seq.is_single_step());
        assert_eq!(seq.len(), 5);
        assert_eq!(max_cut_of_sequence(&g, &seq).unwrap(), 0);
    }

    #[test]
    fn star_center_is_corrected() {
        let g = star(100);
        // 100⁵ > 32·100³, so the center is high-degree
        let (seq, report) = full_balanced_sequence_with_report(&g, 11, DEFAULT_RETRIES).unwrap();
        assert_eq!(report.high_degree, vec![0]);
        let cuts = seq.cuts(&g).unwrap();
        let max = *cuts.iter().max().unwrap();
        assert!(within_sequence_bound(max, 100));
        // the center leaves once half of its leaves are gone
        let center_step = seq.order().iter().position(|&v| v == 0).unwrap();
        assert_eq!(center_step, 50);
        assert_eq!(max, 50);
    }

    #[test]
    fn k5_within_bound_and_above_optimum() {
        let g = complete(5);
        let opt = optimal_downward_sequence(&g, Limits::default())
            .unwrap()
            .optimum;
        for seed in 0..10 {
            let seq = full_balanced_sequence(&g, seed).unwrap();
            let cut = max_cut_of_sequence(&g, &seq).unwrap();
            assert!(within_sequence_bound(cut, 10));
            assert!(cut >= opt);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let g = complete(12);
        assert_eq!(
            full_balanced_sequence(&g, 5).unwrap(),
            full_balanced_sequence(&g, 5).unwrap()
        );
    }
}
