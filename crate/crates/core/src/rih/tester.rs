//! The circuit checked by each tester and a brute-force assignment tester.

use std::collections::HashMap;

use crate::{
    csp::{Assignment, Constraint, CspInstance, Sym, TupleSet},
    exact::StateSpace,
    Error, Limits, Result, Value,
};

use super::code::{hamming, BinaryCode, LabelBitMap};

/// A Boolean predicate on a fixed number of input bits that can list its
/// accepting inputs without searching `2^inputs`.
pub trait Circuit {
    fn num_inputs(&self) -> usize;
    fn evaluate(&self, bits: &[bool]) -> bool;
    fn satisfying(&self) -> Result<Vec<Vec<bool>>>;
}

/// Accepts three codeword blocks whose decoded assignments each satisfy the
/// source instance and are pairwise within Hamming distance 1.
#[derive(Clone, Debug)]
pub struct Phi {
    source: CspInstance,
    code: BinaryCode,
    labels: LabelBitMap,
    /// Satisfying assignments of the source, lexicographic.
    solutions: Vec<Assignment>,
    /// Index triples into `solutions`, lexicographic.
    triples: Vec<[usize; 3]>,
}

impl Phi {
    pub fn new(source: &CspInstance, code: &BinaryCode, limits: Limits) -> Result<Self> {
        let labels = LabelBitMap::new(source.alphabet().len())?;
        if labels.width() * source.num_vars() != code.message_len() {
            return Err(Error::BadParams(format!(
                "code takes {} message bits, assignments need {}",
                code.message_len(),
                labels.width() * source.num_vars()
            )));
        }
        let space = StateSpace::new(source, limits)?;
        let m = source.constraints().len();
        let mut solutions = Vec::new();
        space.for_each(|_, values| {
            if source.satisfied_count(values) == m {
                solutions.push(Assignment::new(values.to_vec()));
            }
        });
        let close = |a: usize, b: usize| solutions[a].hamming(&solutions[b]) <= 1;
        let mut triples = Vec::new();
        for a in 0..solutions.len() {
            for b in (0..solutions.len()).filter(|&b| close(a, b)) {
                for c in (0..solutions.len()).filter(|&c| close(a, c) && close(b, c)) {
                    triples.push([a, b, c]);
                }
            }
        }
        limits.check(triples.len() as u128)?;
        Ok(Phi {
            source: source.clone(),
            code: code.clone(),
            labels,
            solutions,
            triples,
        })
    }

    pub fn code(&self) -> &BinaryCode {
        &self.code
    }

    pub fn labels(&self) -> &LabelBitMap {
        &self.labels
    }

    pub fn solutions(&self) -> &[Assignment] {
        &self.solutions
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// `Enc(ψ)`.
    pub fn encode(&self, asg: &Assignment) -> Vec<bool> {
        self.code.encode(&self.labels.message(asg))
    }

    /// Concatenated encodings of a triple of assignments.
    pub fn input_for(&self, triple: [&Assignment; 3]) -> Vec<bool> {
        triple.iter().flat_map(|a| self.encode(a)).collect()
    }

    fn decode_block(&self, block: &[bool]) -> Option<Assignment> {
        let message = self.code.exact_decode(block)?;
        let asg = self.labels.assignment(&message)?;
        let ok = self.source.value(&asg).ok()? == Value::from_integer(1);
        ok.then_some(asg)
    }
}

impl Circuit for Phi {
    fn num_inputs(&self) -> usize {
        3 * self.code.block_len()
    }

    fn evaluate(&self, bits: &[bool]) -> bool {
        if bits.len() != self.num_inputs() {
            return false;
        }
        let decoded: Option<Vec<Assignment>> = bits
            .chunks(self.code.block_len())
            .map(|b| self.decode_block(b))
            .collect();
        let Some(d) = decoded else {
            return false;
        };
        // unordered distinct pairs; ℓ = ℓ′ holds trivially
        d[0].hamming(&d[1]) <= 1 && d[0].hamming(&d[2]) <= 1 && d[1].hamming(&d[2]) <= 1
    }

    fn satisfying(&self) -> Result<Vec<Vec<bool>>> {
        Ok(self
            .triples
            .iter()
            .map(|t| {
                self.input_for([
                    &self.solutions[t[0]],
                    &self.solutions[t[1]],
                    &self.solutions[t[2]],
                ])
            })
            .collect())
    }
}

/// A 2-CSP over inputs `X` plus one auxiliary variable `A`, penalising the
/// distance of an input to the circuit's accepting set.
///
/// Symbols: `0` and `1` for input bits, then `a{j}` for the `j`-th accepting
/// input. Constraint `p` joins `x_p` and `A` and holds iff `A`'s chosen
/// accepting input has bit `p` equal to `x_p`.
#[derive(Clone, Debug)]
pub struct TesterOutput {
    pub instance: CspInstance,
    pub num_inputs: usize,
    pub accepting: Vec<Vec<bool>>,
    /// Rejection rate: the value is at most `1 − γ·d*/|X|`.
    pub gamma: Value,
    index: HashMap<Vec<bool>, usize>,
}

impl TesterOutput {
    pub fn aux_var(&self) -> usize {
        self.num_inputs
    }

    pub fn aux_symbol(j: usize) -> Sym {
        2 + j as Sym
    }

    /// `AsgnT`: the accepting-set index of an accepted input.
    pub fn completion(&self, bits: &[bool]) -> Option<usize> {
        self.index.get(bits).copied()
    }

    /// Input bits plus `AsgnT`, as an assignment of [`Self::instance`].
    pub fn complete(&self, bits: &[bool]) -> Option<Assignment> {
        let j = self.completion(bits)?;
        let mut values: Vec<Sym> = bits.iter().map(|&b| b as Sym).collect();
        values.push(Self::aux_symbol(j));
        Some(Assignment::new(values))
    }

    /// Distance from `bits` to the nearest accepting input.
    pub fn distance_to_accepting(&self, bits: &[bool]) -> usize {
        self.accepting
            .iter()
            .map(|a| hamming(a, bits))
            .min()
            .unwrap_or(usize::MAX)
    }
}

/// Builds the single-auxiliary tester for `circuit`. Violated constraints
/// equal the disagreement with `A`'s chosen input, so `γ = 1`.
pub fn brute_force_tester<C: Circuit>(circuit: &C, limits: Limits) -> Result<TesterOutput> {
    let accepting = circuit.satisfying()?;
    if accepting.is_empty() {
        return Err(Error::Unsatisfiable);
    }
    let n = circuit.num_inputs();
    limits.check(accepting.len() as u128 * n as u128)?;
    let mut variables: Vec<String> = (0..n).map(|p| format!("x{p}")).collect();
    variables.push("A".into());
    let mut alphabet = vec!["0".to_string(), "1".to_string()];
    alphabet.extend((0..accepting.len()).map(|j| format!("a{j}")));
    let constraints = (0..n)
        .map(|p| {
            let rows = accepting
                .iter()
                .enumerate()
                .map(|(j, a)| [a[p] as Sym, TesterOutput::aux_symbol(j)]);
            Constraint::new(vec![p, n], TupleSet::new(2, rows))
        })
        .collect();
    let mut domains = vec![vec![0, 1]; n];
    domains.push((0..accepting.len()).map(TesterOutput::aux_symbol).collect());
    let instance = CspInstance::new(variables, alphabet, 2, constraints, Some(domains))?;
    let index = accepting
        .iter()
        .enumerate()
        .map(|(j, a)| (a.clone(), j))
        .collect();
    Ok(TesterOutput {
        instance,
        num_inputs: n,
        accepting,
        gamma: Value::from_integer(1),
        index,
    })
}
