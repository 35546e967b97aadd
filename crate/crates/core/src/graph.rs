//! Multigraphs, downward vertex-set sequences and the δ-balance check.

use crate::{csp::CspInstance, Error, Limits, Result, Value};

/// Undirected multigraph on vertices `0..n`. Parallel edges are kept with
/// multiplicity; self-loops are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Malformed(format!(
                    "edge {i} has an undeclared endpoint"
                )));
            }
            if u == v {
                return Err(Error::Malformed(format!("edge {i} is a self-loop")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Graph {
            n,
            edges,
            adjacency,
        })
    }

    /// The constraint graph of a binary CSP (one edge per constraint).
    pub fn from_csp(inst: &CspInstance) -> Result<Self> {
        if inst.arity() != 2 {
            return Err(Error::ArityError {
                expected: 2,
                found: inst.arity(),
            });
        }
        let edges = inst
            .constraints()
            .iter()
            .map(|c| (c.scope[0], c.scope[1]))
            .collect();
        Graph::new(inst.num_vars(), edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v`, repeated once per parallel edge.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Subgraph induced by `keep` (ascending, distinct), relabelled to `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut relabel = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            relabel[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| relabel[u] != usize::MAX && relabel[v] != usize::MAX)
            .map(|&(u, v)| (relabel[u], relabel[v]))
            .collect();
        Graph::new(keep.len(), edges).expect("induced subgraph of a valid graph")
    }

    /// `|E[S, V∖S]|` for the indicator `in_set`.
    pub fn cut(&self, in_set: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| in_set[u] != in_set[v])
            .count()
    }
}

/// A chain `V = S₀ ⊋ S₁ ⊋ … ⊋ Sₙ = ∅`, stored as the batches of vertices
/// removed at each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownwardSetSequence {
    n: usize,
    removals: Vec<Vec<usize>>,
}

impl DownwardSetSequence {
    pub fn new(n: usize, removals: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for (i, batch) in removals.iter().enumerate() {
            if batch.is_empty() {
                return Err(Error::InvalidSequence { step: i + 1 });
            }
            for &v in batch {
                if v >= n || seen[v] {
                    return Err(Error::InvalidSequence { step: i + 1 });
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidSequence {
                step: removals.len(),
            });
        }
        Ok(DownwardSetSequence { n, removals })
    }

    /// One vertex removed per step, in `order`.
    pub fn from_order(n: usize, order: &[usize]) -> Result<Self> {
        Self::new(n, order.iter().map(|&v| vec![v]).collect())
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn removals(&self) -> &[Vec<usize>] {
        &self.removals
    }

    /// Number of sets `S₀ … Sₙ`.
    pub fn len(&self) -> usize {
        self.removals.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_single_step(&self) -> bool {
        self.removals.iter().all(|b| b.len() == 1)
    }

    /// Vertex removal order, flattening batches.
    pub fn order(&self) -> Vec<usize> {
        self.removals.iter().flatten().copied().collect()
    }

    /// Membership indicator of `S_i`.
    pub fn set(&self, i: usize) -> Vec<bool> {
        let mut in_set = vec![true; self.n];
        for batch in &self.removals[..i] {
            for &v in batch {
                in_set[v] = false;
            }
        }
        in_set
    }

    /// `|E[S_i, V∖S_i]|` for `i = 0..=n`.
    pub fn cuts(&self, g: &Graph) -> Result<Vec<usize>> {
        if g.num_vertices() != self.n {
            return Err(Error::InvalidSequence { step: 0 });
        }
        let mut in_set = vec![true; self.n];
        let mut cut = 0usize;
        let mut out = Vec::with_capacity(self.len());
        out.push(0);
        for batch in &self.removals {
            for &v in batch {
                in_set[v] = false;
                for &u in g.neighbors(v) {
                    if in_set[u] {
                        cut += 1;
                    } else {
                        // u already outside: the edge stops crossing
                        cut -= 1;
                    }
                }
            }
            out.push(cut);
        }
        Ok(out)
    }
}

/// `max_i |E[S_i, V∖S_i]|` over the whole chain.
pub fn max_cut_of_sequence(g: &Graph, seq: &DownwardSetSequence) -> Result<usize> {
    Ok(seq.cuts(g)?.into_iter().max().unwrap_or(0))
}

/// Whether every partition `V₁ ⊎ V₂` with `|V₁|, |V₂| ≤ ⌈|V|/2⌉` keeps at
/// most `(1 + δ)|E|/2` edges inside the parts. Exhaustive over `2^|V|`.
pub fn is_delta_balanced(g: &Graph, delta: Value, limits: Limits) -> Result<bool> {
    let n = g.num_vertices();
    if n >= 64 {
        return Err(Error::TooLarge {
            states: 1u128 << n.min(127),
            cap: limits.max_states,
        });
    }
    limits.check(1u128 << n)?;
    let half = n.div_ceil(2);
    let m = g.num_edges() as u128;
    // 2·inside ≤ (1 + num/den)·m  ⇔  2·inside·den ≤ (den + num)·m
    let (num, den) = (*delta.numer() as u128, *delta.denom() as u128);
    let rhs = (den + num) * m;
    for mask in 0u64..(1u64 << n) {
        let ones = mask.count_ones() as usize;
        if ones > half || n - ones > half {
            continue;
        }
        let inside = g
            .edges()
            .iter()
            .filter(|&&(u, v)| ((mask >> u) & 1) == ((mask >> v) & 1))
            .count() as u128;
        if 2 * inside * den > rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn self_loops_rejected() {
        assert!(Graph::new(2, vec![(1, 1)]).is_err());
        assert!(Graph::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn edgeless_sequence_has_zero_cut() {
        let g = Graph::new(4, vec![]).unwrap();
        let seq = DownwardSetSequence::from_order(4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(max_cut_of_sequence(&g, &seq).unwrap(), 0);
    }

    #[test]
    fn clique_cuts_follow_j_times_n_minus_j() {
        let g = complete(5);
        for order in [[0, 1, 2, 3, 4], [4, 2, 0, 3, 1]] {
            let seq = DownwardSetSequence::from_order(5, &order).unwrap();
            assert_eq!(seq.cuts(&g).unwrap(), vec![0, 4, 6, 6, 4, 0]);
            assert_eq!(max_cut_of_sequence(&g, &seq).unwrap(), 6);
        }
    }

    #[test]
    fn star_order() {
        let g = star(4);
        // leaf, leaf, center, leaf, leaf
        let seq = DownwardSetSequence::from_order(5, &[1, 2, 0, 3, 4]).unwrap();
        assert_eq!(seq.cuts(&g).unwrap(), vec![0, 1, 2, 2, 1, 0]);
        assert_eq!(max_cut_of_sequence(&g, &seq).unwrap(), 2);
    }

    #[test]
    fn parallel_edges_count_with_multiplicity() {
        let g = Graph::new(2, vec![(0, 1), (0, 1), (1, 0)]).unwrap();
        let seq = DownwardSetSequence::from_order(2, &[0, 1]).unwrap();
        assert_eq!(max_cut_of_sequence(&g, &seq).unwrap(), 3);
    }

    #[test]
    fn batched_removals() {
        let g = complete(4);
        let seq = DownwardSetSequence::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!seq.is_single_step());
        assert_eq!(seq.cuts(&g).unwrap(), vec![0, 4, 0]);
        assert!(DownwardSetSequence::new(3, vec![vec![0], vec![]]).is_err());
        assert!(DownwardSetSequence::new(3, vec![vec![0], vec![1]]).is_err());
        assert!(DownwardSetSequence::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn delta_balance() {
        let k22 = Graph::new(4, vec![(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(is_delta_balanced(&k22, Value::from_integer(0), Limits::default()).unwrap());
        // every 2–2 split of K_{1,3} keeps exactly one edge inside: 2·1 ≤ 3
        assert!(is_delta_balanced(&star(3), Value::from_integer(0), Limits::default()).unwrap());
        let edgeless = Graph::new(5, vec![]).unwrap();
        assert!(is_delta_balanced(&edgeless, Value::from_integer(0), Limits::default()).unwrap());
        let triangles =
            Graph::new(6, vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_delta_balanced(&triangles, Value::from_integer(0), Limits::default()).unwrap());
        // with δ = 1 the bound becomes |E|, which always holds
        assert!(is_delta_balanced(&triangles, Value::from_integer(1), Limits::default()).unwrap());
        assert!(is_delta_balanced(&triangles, Value::new(1, 2), Limits::new(8)).is_err());
    }
}
