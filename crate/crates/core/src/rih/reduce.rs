//! Assembly of the 3-CSP, the nine-stage completeness walk, and the
//! majority decoder.

use std::collections::HashMap;

use crate::{
    csp::{Assignment, Constraint, CspInstance, Pattern, ReconfigSequence, Sym, TupleSet},
    exact::StateSpace,
    Error, Limits, Result, Value,
};

use super::{
    code::{default_code, hamming, BinaryCode, LabelBitMap},
    tester::{brute_force_tester, Phi, TesterOutput},
};

const BIT0: Sym = 0;
const BIT1: Sym = 1;

/// Selector symbol `s_i` for `i ∈ 1..=4`.
fn selector_symbol(i: usize) -> Sym {
    1 + i as Sym
}

/// Copy indices `[4] ∖ {i}`, ascending.
fn others(i: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for l in 1..=4 {
        if l != i {
            out[k] = l;
            k += 1;
        }
    }
    out
}

/// The reduced instance with its building blocks.
#[derive(Clone, Debug)]
pub struct RihInstance {
    pub source: CspInstance,
    pub source_start: Assignment,
    pub source_end: Assignment,
    pub phi: Phi,
    /// One tester serves all four copy triples: `Φ_i` is the same predicate
    /// applied to the copies other than `i`.
    pub tester: TesterOutput,
    pub instance: CspInstance,
    pub start: Assignment,
    pub end: Assignment,
    /// `γ·δ/50`.
    pub epsilon: Value,
}

impl RihInstance {
    pub fn code(&self) -> &BinaryCode {
        self.phi.code()
    }

    pub fn labels(&self) -> &LabelBitMap {
        self.phi.labels()
    }

    pub fn block_len(&self) -> usize {
        self.code().block_len()
    }

    pub fn selector_var(&self) -> usize {
        0
    }

    /// Bit `b` of copy `l ∈ 1..=4`.
    pub fn copy_var(&self, l: usize, b: usize) -> usize {
        1 + (l - 1) * self.block_len() + b
    }

    /// Auxiliary of the tester for `Φ_i`, `i ∈ 1..=4`.
    pub fn aux_var(&self, i: usize) -> usize {
        1 + 4 * self.block_len() + (i - 1)
    }

    pub fn aux_symbol(&self, i: usize, j: usize) -> Sym {
        aux_symbol(self.tester.accepting.len(), i, j)
    }

    /// Selected copy index, if `v*` holds one of `s1..s4`.
    pub fn selector(&self, asg: &Assignment) -> Option<usize> {
        let s = asg.values()[self.selector_var()];
        (2..=5).contains(&s).then(|| s as usize - 1)
    }

    /// The constraints checking `Φ_i`.
    pub fn group(&self, i: usize) -> std::ops::Range<usize> {
        let per = 3 * self.block_len();
        (i - 1) * per..i * per
    }

    fn copy_bits(&self, asg: &Assignment, l: usize) -> Vec<bool> {
        (0..self.block_len())
            .map(|b| asg.values()[self.copy_var(l, b)] == BIT1)
            .collect()
    }

    /// Selector `i`, copy `l` holding `Enc(copies[l−1])`, and every tester
    /// auxiliary set to the completion of its current triple.
    pub fn staged(&self, selector: usize, copies: [&Assignment; 4]) -> Result<Assignment> {
        let encoded: Vec<Vec<bool>> = copies.iter().map(|a| self.phi.encode(a)).collect();
        let mut values = vec![BIT0; self.instance.num_vars()];
        values[self.selector_var()] = selector_symbol(selector);
        for l in 1..=4 {
            for (b, &bit) in encoded[l - 1].iter().enumerate() {
                values[self.copy_var(l, b)] = if bit { BIT1 } else { BIT0 };
            }
        }
        for i in 1..=4 {
            let input: Vec<bool> = others(i)
                .iter()
                .flat_map(|&l| encoded[l - 1].iter().copied())
                .collect();
            let j = self.tester.completion(&input).ok_or_else(|| {
                Error::InvalidSourceSequence("copy triple rejected by the tester".into())
            })?;
            values[self.aux_var(i)] = self.aux_symbol(i, j);
        }
        Ok(Assignment::new(values))
    }

    /// `ψ^Enc`: selector 4, every copy `Enc(ψ)`.
    pub fn encode_assignment(&self, asg: &Assignment) -> Result<Assignment> {
        self.staged(4, [asg, asg, asg, asg])
    }
}

fn aux_symbol(accepting: usize, i: usize, j: usize) -> Sym {
    (6 + (i - 1) * accepting + j) as Sym
}

/// Builds the 3-CSP. With `code = None` the Hadamard code on
/// `|V|·⌈log₂ q⌉` bits is used.
pub fn rih_reduce(
    source: &CspInstance,
    start: &Assignment,
    end: &Assignment,
    code: Option<BinaryCode>,
    limits: Limits,
) -> Result<RihInstance> {
    if source.arity() != 2 {
        return Err(Error::ArityError {
            expected: 2,
            found: source.arity(),
        });
    }
    let one = Value::from_integer(1);
    if source.value(start)? != one || source.value(end)? != one {
        return Err(Error::EndpointNotSatisfying);
    }
    let code = match code {
        Some(c) => c,
        None => {
            let width = LabelBitMap::new(source.alphabet().len())?.width();
            default_code(width * source.num_vars())?
        }
    };
    let phi = Phi::new(source, &code, limits)?;
    let tester = brute_force_tester(&phi, limits)?;
    let n = code.block_len();
    let accepting = tester.accepting.len();

    let mut variables = vec!["v*".to_string()];
    for l in 1..=4 {
        variables.extend((0..n).map(|b| format!("V{l}.{b}")));
    }
    variables.extend((1..=4).map(|i| format!("A{i}")));

    let mut alphabet = vec!["0".to_string(), "1".to_string()];
    alphabet.extend((1..=4).map(|i| format!("s{i}")));
    for i in 1..=4 {
        alphabet.extend((0..accepting).map(|j| format!("A{i}:{j}")));
    }

    let mut domains = vec![(0..alphabet.len() as Sym).collect::<Vec<_>>()];
    domains.extend(std::iter::repeat_n(vec![BIT0, BIT1], 4 * n));
    for i in 1..=4 {
        domains.push(
            (0..accepting)
                .map(|j| aux_symbol(accepting, i, j))
                .collect(),
        );
    }

    let copy_var = |l: usize, b: usize| 1 + (l - 1) * n + b;
    let aux_var = |i: usize| 1 + 4 * n + (i - 1);
    let mut constraints = Vec::with_capacity(4 * 3 * n);
    for i in 1..=4 {
        let copies = others(i);
        let wildcard: Vec<Pattern> = (1..=4)
            .filter(|&k| k != i)
            .map(|k| vec![Some(selector_symbol(k)), None, None])
            .collect();
        for c in tester.instance.constraints() {
            let p = c.scope[0];
            let x = copy_var(copies[p / n], p % n);
            let rows = c.allowed.iter().map(|row| {
                let j = (row[1] - TesterOutput::aux_symbol(0)) as usize;
                [selector_symbol(i), row[0], aux_symbol(accepting, i, j)]
            });
            constraints.push(
                Constraint::new(vec![0, x, aux_var(i)], TupleSet::new(3, rows))
                    .with_wildcard(wildcard.clone()),
            );
        }
    }
    let instance = CspInstance::new(variables, alphabet, 3, constraints, Some(domains))?;
    let epsilon = tester.gamma * Value::new(code.distance() as u64, 50 * n as u64);

    let mut rih = RihInstance {
        source: source.clone(),
        source_start: start.clone(),
        source_end: end.clone(),
        phi,
        tester,
        instance,
        start: Assignment::new(Vec::new()),
        end: Assignment::new(Vec::new()),
        epsilon,
    };
    rih.start = rih.encode_assignment(start)?;
    rih.end = rih.encode_assignment(end)?;
    if rih.instance.value(&rih.start)? != one || rih.instance.value(&rih.end)? != one {
        return Err(Error::EndpointNotSatisfying);
    }
    Ok(rih)
}

/// Direct steps from `from` to `to`, ascending variable index, excluding `from`.
fn interpolate(from: &Assignment, to: &Assignment, out: &mut Vec<Assignment>) {
    let mut current = from.clone();
    for v in 0..from.len() {
        if current.values()[v] != to.values()[v] {
            current.0[v] = to.values()[v];
            out.push(current.clone());
        }
    }
}

/// `(selector, copies already switched)` for the nine stages of one move.
const STAGES: [(usize, usize); 9] = [
    (4, 0),
    (1, 0),
    (1, 1),
    (2, 1),
    (2, 2),
    (3, 2),
    (3, 3),
    (4, 3),
    (4, 4),
];

/// Lifts a value-1 sequence of the source to a value-1 sequence of the
/// reduced instance, one nine-stage walk per source move.
pub fn completeness_sequence(
    rih: &RihInstance,
    src: &ReconfigSequence,
) -> Result<ReconfigSequence> {
    if src.source() != &rih.source_start || src.target() != &rih.source_end {
        return Err(Error::InvalidSourceSequence(
            "endpoints differ from the reduced instance's".into(),
        ));
    }
    let one = Value::from_integer(1);
    for (i, step) in src.steps().iter().enumerate() {
        if rih.source.value(step)? != one {
            return Err(Error::InvalidSourceSequence(format!(
                "step {i} violates a constraint"
            )));
        }
    }
    let mut steps = vec![rih.start.clone()];
    for w in src.steps().windows(2) {
        let (old, new) = (&w[0], &w[1]);
        for &(selector, switched) in &STAGES[1..] {
            let copies: [&Assignment; 4] =
                std::array::from_fn(|k| if k < switched { new } else { old });
            let next = rih.staged(selector, copies)?;
            let last = steps.last().expect("non-empty").clone();
            interpolate(&last, &next, &mut steps);
        }
    }
    ReconfigSequence::new(steps)
}

/// Per-step checks of the decoding claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub selector: Option<usize>,
    /// Every decoded copy lies within `d/4` of its codeword.
    pub close_to_code: bool,
    /// Every decoded copy satisfies the source.
    pub satisfying: bool,
    /// Decoded copies are pairwise within distance 1.
    pub adjacent: bool,
}

impl ClaimCheck {
    pub fn holds(&self) -> bool {
        self.close_to_code && self.satisfying && self.adjacent
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// Majority decodings with contiguous duplicates removed.
    pub steps: Vec<Assignment>,
    /// The steps form a valid sequence whose every step satisfies the source.
    pub all_valid: bool,
    /// One entry per input step.
    pub claims: Vec<ClaimCheck>,
}

impl DecodeOutcome {
    pub fn sequence(&self) -> Option<ReconfigSequence> {
        ReconfigSequence::new(self.steps.clone()).ok()
    }
}

/// Decodes every step of a reduced-instance sequence: each copy other than
/// the selected one goes to the source assignment with the nearest encoding
/// (ties to the lexicographically first), and the step takes the most
/// frequent result (ties to the smallest copy index).
pub fn soundness_decode(
    rih: &RihInstance,
    seq: &ReconfigSequence,
    limits: Limits,
) -> Result<DecodeOutcome> {
    let space = StateSpace::new(&rih.source, limits)?;
    let mut candidates = Vec::with_capacity(space.total() as usize);
    space.for_each(|_, values| {
        let asg = Assignment::new(values.to_vec());
        let enc = rih.phi.encode(&asg);
        candidates.push((asg, enc));
    });
    let m = rih.source.constraints().len();
    let satisfies: Vec<bool> = candidates
        .iter()
        .map(|(a, _)| rih.source.satisfied_count(a.values()) == m)
        .collect();
    let mut cache: HashMap<Vec<bool>, (usize, usize)> = HashMap::new();
    let mut nearest = |bits: Vec<bool>| -> (usize, usize) {
        if let Some(&hit) = cache.get(&bits) {
            return hit;
        }
        let best = candidates
            .iter()
            .enumerate()
            .map(|(idx, (_, enc))| (hamming(enc, &bits), idx))
            .min()
            .map(|(d, idx)| (idx, d))
            .expect("at least one assignment");
        cache.insert(bits, best);
        best
    };

    let d = rih.code().distance();
    let mut decoded: Vec<usize> = Vec::with_capacity(seq.len());
    let mut claims = Vec::with_capacity(seq.len());
    for step in seq.steps() {
        rih.instance.check_assignment(step)?;
        let selector = rih.selector(step);
        let copies: Vec<usize> = (1..=4).filter(|&l| Some(l) != selector).collect();
        let results: Vec<(usize, usize)> = copies
            .iter()
            .map(|&l| nearest(rih.copy_bits(step, l)))
            .collect();
        let mut winner = results[0].0;
        let mut best_count = 0;
        for &(idx, _) in &results {
            let count = results.iter().filter(|r| r.0 == idx).count();
            if count > best_count {
                best_count = count;
                winner = idx;
            }
        }
        claims.push(ClaimCheck {
            selector,
            close_to_code: results.iter().all(|&(_, dist)| 4 * dist < d),
            satisfying: results.iter().all(|&(idx, _)| satisfies[idx]),
            adjacent: results.iter().all(|a| {
                results
                    .iter()
                    .all(|b| candidates[a.0].0.hamming(&candidates[b.0].0) <= 1)
            }),
        });
        if decoded.last() != Some(&winner) {
            decoded.push(winner);
        }
    }
    let all_valid = decoded
        .windows(2)
        .all(|w| candidates[w[0]].0.hamming(&candidates[w[1]].0) == 1)
        && decoded.iter().all(|&idx| satisfies[idx]);
    Ok(DecodeOutcome {
        steps: decoded
            .into_iter()
            .map(|idx| candidates[idx].0.clone())
            .collect(),
        all_valid,
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::binary_instance;
    use crate::exact::exact_maxmin;

    /// Two variables, `x0 ≤ x1` over {0,1}: 00 → 01 → 11 is a value-1 walk.
    fn path_instance() -> (CspInstance, Assignment, Assignment) {
        let inst = binary_instance(2, 2, &[(0, 1)], |_, a, b| a <= b).unwrap();
        (
            inst,
            Assignment::new(vec![0, 0]),
            Assignment::new(vec![1, 1]),
        )
    }

    #[test]
    fn endpoints_and_layout() {
        let (inst, s, t) = path_instance();
        let rih = rih_reduce(&inst, &s, &t, None, Limits::default()).unwrap();
        // k = 2, Hadamard n = 4
        assert_eq!(rih.block_len(), 4);
        assert_eq!(rih.instance.constraints().len(), 4 * 3 * 4);
        assert_eq!(rih.group(2).len(), 12);
        assert_eq!(
            rih.instance.value(&rih.start).unwrap(),
            Value::from_integer(1)
        );
        assert_eq!(
            rih.instance.value(&rih.end).unwrap(),
            Value::from_integer(1)
        );
        assert_eq!(rih.epsilon, Value::new(1, 100));
        // a non-selector value for v* violates everything
        let off = rih.start.with(0, BIT0);
        assert_eq!(rih.instance.value(&off).unwrap(), Value::from_integer(0));
    }

    #[test]
    fn rejects_unsatisfying_endpoints() {
        let (inst, s, _) = path_instance();
        let bad = Assignment::new(vec![1, 0]);
        assert!(matches!(
            rih_reduce(&inst, &s, &bad, None, Limits::default()),
            Err(Error::EndpointNotSatisfying)
        ));
    }

    #[test]
    fn trivial_source_sequence() {
        let (inst, s, _) = path_instance();
        let rih = rih_reduce(&inst, &s, &s, None, Limits::default()).unwrap();
        let out = completeness_sequence(&rih, &ReconfigSequence::single(s.clone())).unwrap();
        assert_eq!(out.steps(), std::slice::from_ref(&rih.start));
        let dec = soundness_decode(&rih, &out, Limits::default()).unwrap();
        assert_eq!(dec.steps, vec![s]);
        assert!(dec.all_valid);
    }

    #[test]
    fn round_trip() {
        let (inst, s, t) = path_instance();
        let rih = rih_reduce(&inst, &s, &t, None, Limits::default()).unwrap();
        let witness = exact_maxmin(&inst, &s, &t, Limits::default())
            .unwrap()
            .witness;
        let lifted = completeness_sequence(&rih, &witness).unwrap();
        assert_eq!(lifted.source(), &rih.start);
        assert_eq!(lifted.target(), &rih.end);
        assert_eq!(
            rih.instance.sequence_value(&lifted).unwrap(),
            Value::from_integer(1)
        );
        let dec = soundness_decode(&rih, &lifted, Limits::default()).unwrap();
        assert!(dec.all_valid);
        assert_eq!(dec.steps, witness.steps());
        assert!(dec.claims.iter().all(ClaimCheck::holds));
    }

    #[test]
    fn rejects_foreign_source_sequence() {
        let (inst, s, t) = path_instance();
        let rih = rih_reduce(&inst, &s, &t, None, Limits::default()).unwrap();
        let wrong = ReconfigSequence::single(s.clone());
        assert!(matches!(
            completeness_sequence(&rih, &wrong),
            Err(Error::InvalidSourceSequence(_))
        ));
    }
}
