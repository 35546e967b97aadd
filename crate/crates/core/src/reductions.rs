//! Gadget reductions: the `σ*` side-bit gadget for MaxMin, its
//! complete-graph variant for MinLabel, and the hypercube set-cover gadget.

use std::collections::BTreeSet;

use crate::{
    csp::{Assignment, Constraint, CspInstance, MultiAssignSequence, MultiAssignment, Sym},
    setcover::{IndexSet, SetCoverInstance, SetCoverSequence},
    Error, Result,
};

/// A symbol `(base, side)` of the gadget alphabet, where `base` is either a
/// source symbol or `σ*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedSymbol {
    /// `None` is `σ*`.
    pub base: Option<Sym>,
    pub side: bool,
}

impl TaggedSymbol {
    pub fn star(side: bool) -> Self {
        TaggedSymbol { base: None, side }
    }

    /// Dense id in an alphabet built from `source_size` symbols:
    /// `2·base + side`, with `σ*` taking base `source_size`.
    pub fn encode(&self, source_size: usize) -> Sym {
        let base = self.base.unwrap_or(source_size as Sym);
        2 * base + self.side as Sym
    }

    pub fn decode(id: Sym, source_size: usize) -> Self {
        let base = id / 2;
        TaggedSymbol {
            base: (base as usize != source_size).then_some(base),
            side: id % 2 == 1,
        }
    }
}

/// A reconfiguration instance produced by a gadget.
#[derive(Clone, Debug, PartialEq)]
pub struct GapInstance {
    pub instance: CspInstance,
    pub source: Assignment,
    pub target: Assignment,
}

fn require_binary(inst: &CspInstance) -> Result<()> {
    if inst.arity() != 2 {
        return Err(Error::ArityError {
            expected: 2,
            found: inst.arity(),
        });
    }
    Ok(())
}

/// Alphabet `(Σ̃ ∪ {σ*}) × {0,1}` on the same constraint graph. A pair of
/// source symbols is judged by the original constraint; any pair involving
/// `σ*` is satisfied exactly when the sides agree. Endpoints are all
/// `(σ*, 0)` and all `(σ*, 1)`.
pub fn gap_to_maxmin(source: &CspInstance) -> Result<GapInstance> {
    require_binary(source)?;
    let q = source.alphabet().len();
    let mut alphabet = Vec::with_capacity(2 * (q + 1));
    for base in source.alphabet().iter().map(String::as_str).chain(["*"]) {
        for side in 0..2 {
            alphabet.push(format!("{base}#{side}"));
        }
    }
    let full: Vec<Sym> = (0..alphabet.len() as Sym).collect();
    let constraints = source
        .constraints()
        .iter()
        .map(|c| {
            Constraint::from_predicate(c.scope.clone(), &[&full, &full], |t| {
                let a = TaggedSymbol::decode(t[0], q);
                let b = TaggedSymbol::decode(t[1], q);
                match (a.base, b.base) {
                    (Some(x), Some(y)) => {
                        c.accepts(&[x, y])
                            && source.domain(c.scope[0]).contains(&x)
                            && source.domain(c.scope[1]).contains(&y)
                    }
                    _ => a.side == b.side,
                }
            })
        })
        .collect();
    let instance = CspInstance::new(source.variables().to_vec(), alphabet, 2, constraints, None)?;
    let n = source.num_vars();
    Ok(GapInstance {
        instance,
        source: Assignment::new(vec![TaggedSymbol::star(false).encode(q); n]),
        target: Assignment::new(vec![TaggedSymbol::star(true).encode(q); n]),
    })
}

/// Completes the constraint graph with always-satisfied constraints on
/// every non-adjacent pair, then applies [`gap_to_maxmin`].
pub fn gap_to_minmax(source: &CspInstance) -> Result<GapInstance> {
    require_binary(source)?;
    let n = source.num_vars();
    let adjacent: BTreeSet<(usize, usize)> = source
        .constraints()
        .iter()
        .map(|c| (c.scope[0].min(c.scope[1]), c.scope[0].max(c.scope[1])))
        .collect();
    let full: Vec<Sym> = (0..source.alphabet().len() as Sym).collect();
    let mut constraints = source.constraints().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if !adjacent.contains(&(u, v)) {
                constraints.push(Constraint::from_predicate(
                    vec![u, v],
                    &[&full, &full],
                    |_| true,
                ));
            }
        }
    }
    let completed = CspInstance::new(
        source.variables().to_vec(),
        source.alphabet().to_vec(),
        2,
        constraints,
        source
            .has_restricted_domains()
            .then(|| source.domains().to_vec()),
    )?;
    gap_to_maxmin(&completed)
}

/// Ground-set block of one constraint: the coordinates (its satisfying
/// pairs) and where its `2^{|R_e|}` points start in the universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBlock {
    pub offset: usize,
    pub pairs: Vec<(Sym, Sym)>,
}

impl EdgeBlock {
    /// Number of ground points; a single uncoverable point when `R_e = ∅`.
    pub fn size(&self) -> usize {
        1 << self.pairs.len()
    }
}

/// The bijection `(v, σ) ↔ v·|Σ| + σ` plus the per-edge ground layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverCorrespondence {
    pub num_vars: usize,
    pub alphabet_size: usize,
    pub blocks: Vec<EdgeBlock>,
}

impl SetCoverCorrespondence {
    pub fn num_sets(&self) -> usize {
        self.num_vars * self.alphabet_size
    }

    pub fn index(&self, var: usize, sym: Sym) -> usize {
        var * self.alphabet_size + sym as usize
    }

    pub fn label(&self, index: usize) -> (usize, Sym) {
        (
            index / self.alphabet_size,
            (index % self.alphabet_size) as Sym,
        )
    }

    pub fn to_index_set(&self, multi: &MultiAssignment) -> Result<IndexSet> {
        if multi.0.len() != self.num_vars {
            return Err(Error::DomainMismatch {
                expected: self.num_vars,
                found: multi.0.len(),
            });
        }
        let mut out = IndexSet::new();
        for (v, labels) in multi.0.iter().enumerate() {
            for &s in labels {
                if s as usize >= self.alphabet_size {
                    return Err(Error::AlphabetMismatch { var: v });
                }
                out.insert(self.index(v, s));
            }
        }
        Ok(out)
    }

    pub fn to_multi_assignment(&self, t: &IndexSet) -> Result<MultiAssignment> {
        let mut multi = MultiAssignment(vec![Default::default(); self.num_vars]);
        for &i in t {
            if i >= self.num_sets() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.num_sets(),
                });
            }
            let (v, s) = self.label(i);
            multi.0[v].insert(s);
        }
        Ok(multi)
    }
}

/// Default bound on `|R_e|` for [`csp_to_setcover`].
pub const DEFAULT_GADGET_BITS: usize = 16;

/// Hypercube gadget. For each constraint `e = (u, v)` with satisfying pairs
/// `R_e`, the ground block is `{0,1}^{R_e}`; `S_{u,a}` takes every point with
/// a 1 on some coordinate `(a, ·)`, and `S_{v,b}` every point with a 0 on
/// some coordinate `(·, b)`. A multi-assignment satisfies the instance
/// exactly when its sets cover the universe.
pub fn csp_to_setcover(
    inst: &CspInstance,
    max_bits: usize,
) -> Result<(SetCoverInstance, SetCoverCorrespondence)> {
    require_binary(inst)?;
    let q = inst.alphabet().len();
    let n = inst.num_vars();
    let mut sets = vec![Vec::new(); n * q];
    let mut blocks = Vec::with_capacity(inst.constraints().len());
    let mut offset = 0usize;
    for (ci, c) in inst.constraints().iter().enumerate() {
        let (u, v) = (c.scope[0], c.scope[1]);
        let mut pairs = Vec::new();
        // the full alphabet, matching how multi-assignments are judged
        for a in 0..q as Sym {
            for b in 0..q as Sym {
                if c.accepts(&[a, b]) {
                    pairs.push((a, b));
                }
            }
        }
        if pairs.len() > max_bits {
            return Err(Error::GadgetTooLarge {
                constraint: ci,
                bits: pairs.len(),
                cap: max_bits as u64,
            });
        }
        let block = EdgeBlock { offset, pairs };
        for x in 0..block.size() {
            let point = offset + x;
            let mut u_labels: Vec<Sym> = Vec::new();
            let mut v_labels: Vec<Sym> = Vec::new();
            for (j, &(a, b)) in block.pairs.iter().enumerate() {
                if (x >> j) & 1 == 1 {
                    u_labels.push(a);
                } else {
                    v_labels.push(b);
                }
            }
            u_labels.sort_unstable();
            u_labels.dedup();
            v_labels.sort_unstable();
            v_labels.dedup();
            for a in u_labels {
                sets[u * q + a as usize].push(point);
            }
            for b in v_labels {
                sets[v * q + b as usize].push(point);
            }
        }
        offset += block.size();
        blocks.push(block);
    }
    let cover = SetCoverInstance::new(offset, sets)?;
    Ok((
        cover,
        SetCoverCorrespondence {
            num_vars: n,
            alphabet_size: q,
            blocks,
        },
    ))
}

/// Step-wise translation; sizes are preserved.
pub fn multiassign_seq_to_cover_seq(
    corr: &SetCoverCorrespondence,
    seq: &MultiAssignSequence,
) -> Result<SetCoverSequence> {
    let steps = seq
        .steps()
        .iter()
        .map(|m| corr.to_index_set(m))
        .collect::<Result<_>>()?;
    SetCoverSequence::new(steps)
}

pub fn cover_seq_to_multiassign_seq(
    corr: &SetCoverCorrespondence,
    seq: &SetCoverSequence,
) -> Result<MultiAssignSequence> {
    let steps = seq
        .steps()
        .iter()
        .map(|t| corr.to_multi_assignment(t))
        .collect::<Result<_>>()?;
    MultiAssignSequence::new(steps)
}
