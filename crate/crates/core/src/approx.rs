//! Approximation algorithms: MaxMin 2-CSP reconfiguration via balanced
//! downward sequences, and the add-then-remove 2-approximations for MinLabel
//! and Set Cover reconfiguration.

use num_bigint::BigUint;

use crate::{
    balanced::full_balanced_sequence,
    csp::{Assignment, CspInstance, MultiAssignSequence, MultiAssignment, ReconfigSequence},
    exact::exact_maxmin,
    graph::Graph,
    setcover::{IndexSet, SetCoverInstance, SetCoverSequence},
    Error, Limits, Result, Value,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApproxConfig {
    /// Target loss, in `(0, 1/2]`.
    pub epsilon: Value,
    /// Instances with at most this many total assignments are solved exactly.
    pub exact_fallback_cap: u64,
    pub seed: u64,
    /// Fail with `TooLarge` instead of returning a sequence whose guarantee
    /// `1/2 − 7m^{-1/5}` is weaker than `1/2 − ε`.
    pub strict: bool,
}

impl ApproxConfig {
    pub fn new(epsilon: Value, seed: u64) -> Result<Self> {
        let cfg = ApproxConfig {
            epsilon,
            exact_fallback_cap: Limits::DEFAULT_MAX_STATES,
            seed,
            strict: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if *self.epsilon.numer() == 0 || self.epsilon > Value::new(1, 2) {
            return Err(Error::BadParams(format!(
                "epsilon must lie in (0, 1/2], got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

impl Default for ApproxConfig {
    fn default() -> Self {
        ApproxConfig {
            epsilon: Value::new(1, 10),
            exact_fallback_cap: Limits::DEFAULT_MAX_STATES,
            seed: 0,
            strict: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxMinMethod {
    Exact,
    Balanced,
}

impl MaxMinMethod {
    pub fn name(&self) -> &'static str {
        match self {
            MaxMinMethod::Exact => "exact",
            MaxMinMethod::Balanced => "balanced",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxMinOutcome {
    pub sequence: ReconfigSequence,
    /// `sequence_value` of the output, computed exactly.
    pub value: Value,
    pub method: MaxMinMethod,
}

/// `7m^{-1/5} ≤ ε`, i.e. `7⁵·den⁵ ≤ num⁵·m`.
pub fn balanced_guarantee_meets(epsilon: Value, m: usize) -> bool {
    let lhs = BigUint::from(16807u32) * BigUint::from(*epsilon.denom()).pow(5u32);
    let rhs = BigUint::from(*epsilon.numer()).pow(5u32) * BigUint::from(m);
    lhs <= rhs
}

/// `1/2 − 7m^{-1/5}` as a float, for reporting.
pub fn maxmin_guarantee(m: usize) -> f64 {
    0.5 - 7.0 * (m as f64).powf(-0.2)
}

/// Walks `ψ_s → ψ_t`, either exactly when the state space fits the fallback
/// cap, or along the direct sequence induced by a balanced downward sequence
/// of the constraint graph (`ψ_i(v) = ψ_s(v)` for `v ∈ S_i`, else `ψ_t(v)`).
pub fn approx_maxmin(
    inst: &CspInstance,
    source: &Assignment,
    target: &Assignment,
    cfg: &ApproxConfig,
) -> Result<MaxMinOutcome> {
    cfg.validate()?;
    inst.check_assignment(source)?;
    inst.check_assignment(target)?;
    if inst.state_count() <= cfg.exact_fallback_cap as u128 {
        let res = exact_maxmin(inst, source, target, Limits::new(cfg.exact_fallback_cap))?;
        return Ok(MaxMinOutcome {
            sequence: res.witness,
            value: res.optimum,
            method: MaxMinMethod::Exact,
        });
    }
    let g = Graph::from_csp(inst)?;
    if cfg.strict && !balanced_guarantee_meets(cfg.epsilon, g.num_edges()) {
        return Err(Error::TooLarge {
            states: inst.state_count(),
            cap: cfg.exact_fallback_cap,
        });
    }
    let downward = full_balanced_sequence(&g, cfg.seed)?;
    let mut current = source.clone();
    let mut steps = vec![current.clone()];
    for v in downward.order() {
        if current.0[v] != target.0[v] {
            current.0[v] = target.0[v];
            steps.push(current.clone());
        }
    }
    let sequence = ReconfigSequence::new(steps)?;
    let value = inst.sequence_value(&sequence)?;
    Ok(MaxMinOutcome {
        sequence,
        value,
        method: MaxMinMethod::Balanced,
    })
}

/// Adds `ψ_t(v)` to every differing variable in ascending order, then drops
/// `ψ_s(v)` in the same order. Peak size is `|V| + #{v : ψ_s(v) ≠ ψ_t(v)}`.
pub fn approx_minlabel(
    inst: &CspInstance,
    source: &Assignment,
    target: &Assignment,
) -> Result<MultiAssignSequence> {
    inst.check_assignment(source)?;
    inst.check_assignment(target)?;
    let mut current = MultiAssignment::singletons(source);
    if !inst.multi_satisfies(&current)?
        || !inst.multi_satisfies(&MultiAssignment::singletons(target))?
    {
        return Err(Error::NotSatisfying);
    }
    let differing: Vec<usize> = (0..source.len())
        .filter(|&v| source.0[v] != target.0[v])
        .collect();
    let mut steps = vec![current.clone()];
    for &v in &differing {
        current.0[v].insert(target.0[v]);
        steps.push(current.clone());
    }
    for &v in &differing {
        current.0[v].remove(&source.0[v]);
        steps.push(current.clone());
    }
    MultiAssignSequence::new(steps)
}

/// Adds `T_t ∖ T_s` in ascending order, then removes `T_s ∖ T_t`.
pub fn approx_setcover(
    inst: &SetCoverInstance,
    source: &IndexSet,
    target: &IndexSet,
) -> Result<SetCoverSequence> {
    if !inst.is_cover(source)? || !inst.is_cover(target)? {
        return Err(Error::NotACover);
    }
    let mut current = source.clone();
    let mut steps = vec![current.clone()];
    for &i in target.difference(source) {
        current.insert(i);
        steps.push(current.clone());
    }
    for &i in source.difference(target) {
        current.remove(&i);
        steps.push(current.clone());
    }
    SetCoverSequence::new(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::binary_instance;

    fn triangle_neq() -> CspInstance {
        binary_instance(3, 2, &[(0, 1), (1, 2), (0, 2)], |_, a, b| a != b).unwrap()
    }

    fn asg(v: &[u32]) -> Assignment {
        Assignment::new(v.to_vec())
    }

    #[test]
    fn epsilon_range() {
        assert!(ApproxConfig::new(Value::new(0, 1), 0).is_err());
        assert!(ApproxConfig::new(Value::new(2, 3), 0).is_err());
        assert!(ApproxConfig::new(Value::new(1, 2), 0).is_ok());
    }

    #[test]
    fn equal_endpoints_give_single_step() {
        let inst = binary_instance(2, 2, &[(0, 1)], |_, a, b| a == b).unwrap();
        let out = approx_maxmin(
            &inst,
            &asg(&[1, 1]),
            &asg(&[1, 1]),
            &ApproxConfig::default(),
        )
        .unwrap();
        assert_eq!(out.sequence.len(), 1);
        assert_eq!(out.value, Value::from_integer(1));
    }

    #[test]
    fn triangle_uses_exact_witness() {
        let inst = triangle_neq();
        let out = approx_maxmin(
            &inst,
            &asg(&[0, 1, 0]),
            &asg(&[1, 0, 1]),
            &ApproxConfig::default(),
        )
        .unwrap();
        assert_eq!(out.method, MaxMinMethod::Exact);
        assert_eq!(out.value, Value::new(2, 3));
    }

    #[test]
    fn balanced_branch_on_even_cycle() {
        let n = 40;
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let inst = binary_instance(n, 2, &edges, |_, a, b| a != b).unwrap();
        let s = Assignment::new((0..n as u32).map(|i| i % 2).collect());
        let t = Assignment::new((0..n as u32).map(|i| 1 - i % 2).collect());
        let cfg = ApproxConfig {
            exact_fallback_cap: 1 << 10,
            ..ApproxConfig::default()
        };
        let out = approx_maxmin(&inst, &s, &t, &cfg).unwrap();
        assert_eq!(out.method, MaxMinMethod::Balanced);
        assert_eq!(out.sequence.source(), &s);
        assert_eq!(out.sequence.target(), &t);
        assert_eq!(out.value, inst.sequence_value(&out.sequence).unwrap());
        let strict = ApproxConfig {
            strict: true,
            ..cfg
        };
        assert!(matches!(
            approx_maxmin(&inst, &s, &t, &strict),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn guarantee_threshold() {
        // 7m^{-1/5} ≤ 1/2 ⇔ m ≥ 14⁵
        assert!(balanced_guarantee_meets(Value::new(1, 2), 537_824));
        assert!(!balanced_guarantee_meets(Value::new(1, 2), 537_823));
    }

    #[test]
    fn minlabel_add_then_remove() {
        let inst = binary_instance(3, 2, &[(0, 1), (1, 2)], |_, _, _| true).unwrap();
        let seq = approx_minlabel(&inst, &asg(&[0, 0, 0]), &asg(&[1, 1, 1])).unwrap();
        assert_eq!(seq.len(), 7);
        assert_eq!(seq.size(), 6);
        let sizes: Vec<usize> = seq.steps().iter().map(MultiAssignment::size).collect();
        assert_eq!(sizes, vec![3, 4, 5, 6, 5, 4, 3]);
        assert!(inst.satisfies_sequence(&seq).unwrap());

        let same = approx_minlabel(&inst, &asg(&[0, 1, 0]), &asg(&[0, 1, 0])).unwrap();
        assert_eq!(same.len(), 1);
        assert_eq!(same.size(), 3);
    }

    #[test]
    fn minlabel_rejects_unsatisfying() {
        let inst = triangle_neq();
        assert!(matches!(
            approx_minlabel(&inst, &asg(&[0, 1, 0]), &asg(&[0, 1, 0])),
            Err(Error::NotSatisfying)
        ));
    }

    #[test]
    fn setcover_add_then_remove() {
        let inst = SetCoverInstance::new(2, vec![vec![0], vec![1], vec![0], vec![1]]).unwrap();
        let s = IndexSet::from([0, 1]);
        let t = IndexSet::from([2, 3]);
        let seq = approx_setcover(&inst, &s, &t).unwrap();
        assert_eq!(seq.peak(), 4);
        assert!(inst.is_valid_cover_sequence(&s, &t, seq.steps()).unwrap());
        assert_eq!(approx_setcover(&inst, &s, &s).unwrap().len(), 1);
        assert!(matches!(
            approx_setcover(&inst, &IndexSet::from([0]), &t),
            Err(Error::NotACover)
        ));
    }
}
