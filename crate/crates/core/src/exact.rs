//! Exhaustive solvers used as ground truth for the approximation algorithms
//! and the reductions.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::{
    csp::{Assignment, CspInstance, MultiAssignSequence, MultiAssignment, ReconfigSequence, Sym},
    graph::{DownwardSetSequence, Graph},
    Error, Limits, Result, Value,
};

/// Optimum plus a witness attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult<T, W> {
    pub optimum: T,
    pub witness: W,
    pub explored_states: u64,
}

/// Mixed-radix indexing of total assignments; variable 0 is most significant,
/// so index order is lexicographic order of domain positions.
pub(crate) struct StateSpace<'a> {
    domains: &'a [Vec<Sym>],
    strides: Vec<u64>,
    total: u64,
}

impl<'a> StateSpace<'a> {
    pub(crate) fn new(inst: &'a CspInstance, limits: Limits) -> Result<Self> {
        limits.check(inst.state_count())?;
        let domains = inst.domains();
        let mut strides = vec![1u64; domains.len()];
        for v in (0..domains.len().saturating_sub(1)).rev() {
            strides[v] = strides[v + 1] * domains[v + 1].len() as u64;
        }
        Ok(StateSpace {
            domains,
            strides,
            total: inst.state_count() as u64,
        })
    }

    pub(crate) fn total(&self) -> u64 {
        self.total
    }

    pub(crate) fn index(&self, asg: &Assignment) -> u64 {
        asg.values()
            .iter()
            .enumerate()
            .map(|(v, s)| {
                let pos = self.domains[v]
                    .binary_search(s)
                    .expect("validated assignment");
                pos as u64 * self.strides[v]
            })
            .sum()
    }

    pub(crate) fn assignment(&self, mut idx: u64) -> Assignment {
        let mut values = Vec::with_capacity(self.domains.len());
        for (v, dom) in self.domains.iter().enumerate() {
            let pos = idx / self.strides[v];
            idx %= self.strides[v];
            values.push(dom[pos as usize]);
        }
        Assignment::new(values)
    }

    /// All assignments in index order.
    pub(crate) fn for_each(&self, mut f: impl FnMut(u64, &[Sym])) {
        if self.domains.iter().any(|d| d.is_empty()) {
            return;
        }
        let n = self.domains.len();
        let mut pos = vec![0usize; n];
        let mut values: Vec<Sym> = self.domains.iter().map(|d| d[0]).collect();
        for idx in 0..self.total {
            f(idx, &values);
            let mut v = n;
            while v > 0 {
                v -= 1;
                pos[v] += 1;
                if pos[v] < self.domains[v].len() {
                    values[v] = self.domains[v][pos[v]];
                    break;
                }
                pos[v] = 0;
                values[v] = self.domains[v][0];
            }
        }
    }

    /// Unit-Hamming neighbors of `idx`, ascending.
    fn neighbors(&self, idx: u64, out: &mut Vec<u64>) {
        out.clear();
        for (v, dom) in self.domains.iter().enumerate() {
            let stride = self.strides[v];
            let here = (idx / stride) % dom.len() as u64;
            let base = idx - here * stride;
            for p in 0..dom.len() as u64 {
                if p != here {
                    out.push(base + p * stride);
                }
            }
        }
        out.sort_unstable();
    }
}

const UNSEEN: u64 = u64::MAX;

/// BFS from `start` inside `allowed`, returning the path to `goal` if any.
fn bfs_path<A, N>(
    start: u64,
    goal: u64,
    parents: &mut HashMap<u64, u64>,
    allowed: A,
    mut neighbors: N,
    explored: &mut u64,
    budget: u64,
) -> Result<Option<Vec<u64>>>
where
    A: Fn(u64) -> bool,
    N: FnMut(u64, &mut Vec<u64>),
{
    parents.clear();
    parents.insert(start, UNSEEN);
    let mut queue = VecDeque::from([start]);
    let mut buf = Vec::new();
    while let Some(cur) = queue.pop_front() {
        *explored += 1;
        if *explored > budget {
            return Err(Error::TooLarge {
                states: *explored as u128,
                cap: budget,
            });
        }
        if cur == goal {
            let mut path = vec![cur];
            let mut at = cur;
            while parents[&at] != UNSEEN {
                at = parents[&at];
                path.push(at);
            }
            path.reverse();
            return Ok(Some(path));
        }
        neighbors(cur, &mut buf);
        for &next in &buf {
            if !parents.contains_key(&next) && allowed(next) {
                parents.insert(next, cur);
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// `val(ψ_s ⇝ ψ_t)` by a descending threshold sweep: for each achievable
/// value `j/|E|`, BFS over assignments of value at least `j/|E|`.
pub fn exact_maxmin(
    inst: &CspInstance,
    source: &Assignment,
    target: &Assignment,
    limits: Limits,
) -> Result<OracleResult<Value, ReconfigSequence>> {
    inst.check_assignment(source)?;
    inst.check_assignment(target)?;
    let space = StateSpace::new(inst, limits)?;
    let mut satisfied = vec![0u32; space.total() as usize];
    space.for_each(|idx, values| satisfied[idx as usize] = inst.satisfied_count(values) as u32);

    let (s, t) = (space.index(source), space.index(target));
    let top = satisfied[s as usize].min(satisfied[t as usize]);
    let m = inst.constraints().len() as u64;
    let mut explored = 0u64;
    let mut parents = HashMap::new();
    // budget per threshold is the full space; the sweep has at most |E|+1 rounds
    let budget = u64::MAX;
    for level in (0..=top).rev() {
        let path = bfs_path(
            s,
            t,
            &mut parents,
            |x| satisfied[x as usize] >= level,
            |x, out| space.neighbors(x, out),
            &mut explored,
            budget,
        )?;
        if let Some(path) = path {
            let steps = path.into_iter().map(|x| space.assignment(x)).collect();
            let optimum = if m == 0 {
                Value::from_integer(1)
            } else {
                Value::new(level as u64, m)
            };
            return Ok(OracleResult {
                optimum,
                witness: ReconfigSequence::new(steps)?,
                explored_states: explored,
            });
        }
    }
    unreachable!("threshold zero admits every assignment and the Hamming graph is connected")
}

/// Bit layout of multi-assignments as `u64` masks: variable `v` owns bits
/// `offset[v] .. offset[v] + |dom(v)|`.
struct LabelMasks<'a> {
    inst: &'a CspInstance,
    offsets: Vec<usize>,
    /// per constraint, per domain position of the first endpoint: mask of
    /// compatible labels of the second endpoint
    compat: Vec<Vec<u64>>,
}

impl<'a> LabelMasks<'a> {
    fn new(inst: &'a CspInstance) -> Result<Self> {
        let mut offsets = Vec::with_capacity(inst.num_vars());
        let mut bits = 0usize;
        for v in 0..inst.num_vars() {
            offsets.push(bits);
            bits += inst.domain(v).len();
        }
        if bits > 64 {
            return Err(Error::TooLarge {
                states: 1u128 << bits.min(127),
                cap: u64::MAX,
            });
        }
        let compat = inst
            .constraints()
            .iter()
            .map(|c| {
                let (u, v) = (c.scope[0], c.scope[1]);
                inst.domain(u)
                    .iter()
                    .map(|&a| {
                        inst.domain(v)
                            .iter()
                            .enumerate()
                            .filter(|&(_, &b)| c.accepts(&[a, b]))
                            .fold(0u64, |m, (p, _)| m | 1 << (offsets[v] + p))
                    })
                    .collect()
            })
            .collect();
        Ok(LabelMasks {
            inst,
            offsets,
            compat,
        })
    }

    fn total_bits(&self) -> usize {
        self.offsets
            .last()
            .map_or(0, |&o| o + self.inst.domain(self.inst.num_vars() - 1).len())
    }

    fn satisfies(&self, mask: u64) -> bool {
        self.inst.constraints().iter().enumerate().all(|(ci, c)| {
            let u = c.scope[0];
            let base = self.offsets[u];
            self.compat[ci]
                .iter()
                .enumerate()
                .any(|(p, &ok)| mask >> (base + p) & 1 == 1 && ok & mask != 0)
        })
    }

    fn encode(&self, multi: &MultiAssignment) -> u64 {
        let mut mask = 0;
        for (v, set) in multi.0.iter().enumerate() {
            for s in set {
                let p = self
                    .inst
                    .domain(v)
                    .binary_search(s)
                    .expect("label in domain");
                mask |= 1 << (self.offsets[v] + p);
            }
        }
        mask
    }

    fn decode(&self, mask: u64) -> MultiAssignment {
        MultiAssignment(
            (0..self.inst.num_vars())
                .map(|v| {
                    self.inst
                        .domain(v)
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| mask >> (self.offsets[v] + p) & 1 == 1)
                        .map(|(_, &s)| s)
                        .collect::<BTreeSet<_>>()
                })
                .collect(),
        )
    }
}

/// `MinLab(ψ_s ⇝ ψ_t)` by increasing the label budget from `|V|` and
/// searching satisfying multi-assignments within budget.
pub fn exact_minlab(
    inst: &CspInstance,
    source: &Assignment,
    target: &Assignment,
    limits: Limits,
) -> Result<OracleResult<usize, MultiAssignSequence>> {
    if inst.arity() != 2 {
        return Err(Error::ArityError {
            expected: 2,
            found: inst.arity(),
        });
    }
    inst.check_assignment(source)?;
    inst.check_assignment(target)?;
    let masks = LabelMasks::new(inst)?;
    let s = masks.encode(&MultiAssignment::singletons(source));
    let t = masks.encode(&MultiAssignment::singletons(target));
    if !masks.satisfies(s) || !masks.satisfies(t) {
        return Err(Error::NotSatisfying);
    }
    let n = inst.num_vars();
    let bits = masks.total_bits();
    let mut explored = 0u64;
    let mut parents = HashMap::new();
    let neighbors = |x: u64, out: &mut Vec<u64>| {
        out.clear();
        out.extend((0..bits).map(|b| x ^ (1 << b)));
        out.sort_unstable();
    };
    for budget in n..=bits.max(n) {
        let path = bfs_path(
            s,
            t,
            &mut parents,
            |x| x.count_ones() as usize <= budget && masks.satisfies(x),
            neighbors,
            &mut explored,
            limits.max_states,
        )?;
        if let Some(path) = path {
            let steps = path.into_iter().map(|x| masks.decode(x)).collect();
            return Ok(OracleResult {
                optimum: budget,
                witness: MultiAssignSequence::new(steps)?,
                explored_states: explored,
            });
        }
    }
    unreachable!("the union of both endpoints connects them at budget 2|V|")
}

/// Minimum over single-vertex removal orders of the largest cut
/// `|E[S_i, V∖S_i]|`, by dynamic programming over vertex subsets.
pub fn optimal_downward_sequence(
    g: &Graph,
    limits: Limits,
) -> Result<OracleResult<usize, DownwardSetSequence>> {
    let n = g.num_vertices();
    if n >= 40 {
        return Err(Error::TooLarge {
            states: 1u128 << n.min(127),
            cap: limits.max_states,
        });
    }
    limits.check(1u128 << n)?;
    let full = (1usize << n) - 1;
    // cut[S] built by adding the highest vertex of S to S minus that vertex
    let mut cut = vec![0u32; full + 1];
    for set in 1..=full {
        let v = usize::BITS as usize - 1 - set.leading_zeros() as usize;
        let rest = set & !(1 << v);
        let inside = g
            .neighbors(v)
            .iter()
            .filter(|&&u| rest >> u & 1 == 1)
            .count() as u32;
        cut[set] = cut[rest] + g.degree(v) as u32 - 2 * inside;
    }
    // best[S]: min over removal orders of S of the max cut along the way,
    // counting S itself
    let mut best = vec![0u32; full + 1];
    for set in 1..=full {
        let mut inner = u32::MAX;
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            inner = inner.min(best[set & !(1 << v)]);
        }
        best[set] = cut[set].max(inner);
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = (0..n)
            .filter(|&v| set >> v & 1 == 1)
            .min_by_key(|&v| (best[set & !(1 << v)], v))
            .unwrap();
        order.push(v);
        set &= !(1 << v);
    }
    Ok(OracleResult {
        optimum: best[full] as usize,
        witness: DownwardSetSequence::from_order(n, &order)?,
        explored_states: (full + 1) as u64,
    })
}
