//! k-CSP instances, (multi-/partial) assignments, reconfiguration sequences
//! and the value functions defined on them.

use std::collections::{BTreeSet, HashMap};

use crate::{Error, Limits, Result, Value};

/// Dense symbol index into [`CspInstance::alphabet`].
pub type Sym = u32;

/// A wildcard pattern: `None` positions match any symbol.
pub type Pattern = Vec<Option<Sym>>;

/// Sorted, deduplicated set of fixed-arity symbol tuples stored flat.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TupleSet {
    arity: usize,
    data: Vec<Sym>,
}

impl TupleSet {
    pub fn new<I, T>(arity: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[Sym]>,
    {
        let mut rows: Vec<Vec<Sym>> = rows
            .into_iter()
            .map(|r| {
                let r = r.as_ref();
                assert_eq!(r.len(), arity, "tuple arity mismatch");
                r.to_vec()
            })
            .collect();
        rows.sort_unstable();
        rows.dedup();
        TupleSet {
            arity,
            data: rows.concat(),
        }
    }

    pub fn empty(arity: usize) -> Self {
        TupleSet {
            arity,
            data: Vec::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        if self.arity == 0 {
            return usize::from(!self.data.is_empty());
        }
        self.data.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, i: usize) -> &[Sym] {
        &self.data[i * self.arity..(i + 1) * self.arity]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Sym]> + '_ {
        (0..self.len()).map(move |i| self.row(i))
    }

    pub fn contains(&self, tuple: &[Sym]) -> bool {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.row(mid).cmp(tuple) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// A constraint: a scope plus the explicit allowed tuples, optionally widened
/// by wildcard patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub scope: Vec<usize>,
    pub allowed: TupleSet,
    pub wildcard: Vec<Pattern>,
}

impl Constraint {
    pub fn new(scope: Vec<usize>, allowed: TupleSet) -> Self {
        Constraint {
            scope,
            allowed,
            wildcard: Vec::new(),
        }
    }

    pub fn with_wildcard(mut self, patterns: Vec<Pattern>) -> Self {
        self.wildcard = patterns;
        self
    }

    /// Materializes the tuples of `domains[0] × … × domains[k-1]` accepted by `pred`.
    pub fn from_predicate<F>(scope: Vec<usize>, domains: &[&[Sym]], mut pred: F) -> Self
    where
        F: FnMut(&[Sym]) -> bool,
    {
        let arity = scope.len();
        let mut rows = Vec::new();
        let mut tuple = vec![0; arity];
        product(domains, &mut tuple, 0, &mut |t| {
            if pred(t) {
                rows.push(t.to_vec());
            }
        });
        Constraint::new(scope, TupleSet::new(arity, rows))
    }

    pub fn accepts(&self, tuple: &[Sym]) -> bool {
        self.allowed.contains(tuple)
            || self.wildcard.iter().any(|p| {
                p.iter()
                    .zip(tuple)
                    .all(|(slot, s)| slot.is_none_or(|x| x == *s))
            })
    }
}

fn product<F: FnMut(&[Sym])>(domains: &[&[Sym]], tuple: &mut Vec<Sym>, pos: usize, f: &mut F) {
    if pos == domains.len() {
        f(tuple);
        return;
    }
    for &s in domains[pos] {
        tuple[pos] = s;
        product(domains, tuple, pos + 1, f);
    }
}

/// A k-uniform constraint hypergraph over a finite alphabet.
///
/// Variables and symbols carry string names for I/O and dense indices
/// internally. Repeated identical scopes are distinct constraints.
#[derive(Clone, Debug)]
pub struct CspInstance {
    variables: Vec<String>,
    alphabet: Vec<String>,
    arity: usize,
    constraints: Vec<Constraint>,
    domains: Vec<Vec<Sym>>,
    restricted: bool,
    var_index: HashMap<String, usize>,
    sym_index: HashMap<String, Sym>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for CspInstance {
    fn eq(&self, other: &Self) -> bool {
        self.variables == other.variables
            && self.alphabet == other.alphabet
            && self.arity == other.arity
            && self.constraints == other.constraints
            && self.domains == other.domains
    }
}

impl CspInstance {
    /// Builds an instance; `domains`, when given, restricts each variable to a
    /// subset of the alphabet.
    pub fn new(
        variables: Vec<String>,
        alphabet: Vec<String>,
        arity: usize,
        constraints: Vec<Constraint>,
        domains: Option<Vec<Vec<Sym>>>,
    ) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Malformed("arity must be positive".into()));
        }
        let var_index = index_names(&variables, "variable")?;
        let sym_index = index_names(&alphabet, "symbol")?;
        if alphabet.iter().any(|s| s == "*") {
            return Err(Error::Malformed("`*` is reserved for wildcards".into()));
        }
        let q = alphabet.len() as Sym;
        let restricted = domains.is_some();
        let domains = match domains {
            Some(mut d) => {
                if d.len() != variables.len() {
                    return Err(Error::Malformed("one domain per variable required".into()));
                }
                for dom in &mut d {
                    dom.sort_unstable();
                    dom.dedup();
                    if dom.iter().any(|&s| s >= q) {
                        return Err(Error::Malformed("domain symbol out of range".into()));
                    }
                }
                d
            }
            None => vec![(0..q).collect(); variables.len()],
        };
        let mut incidence = vec![Vec::new(); variables.len()];
        for (ci, c) in constraints.iter().enumerate() {
            if c.scope.len() != arity || c.allowed.arity() != arity {
                return Err(Error::Malformed(format!("constraint {ci} has wrong arity")));
            }
            if c.wildcard.iter().any(|p| p.len() != arity) {
                return Err(Error::Malformed(format!(
                    "constraint {ci} has wrong pattern arity"
                )));
            }
            let mut seen = BTreeSet::new();
            for &v in &c.scope {
                if v >= variables.len() {
                    return Err(Error::Malformed(format!(
                        "constraint {ci} scope out of range"
                    )));
                }
                if !seen.insert(v) {
                    return Err(Error::Malformed(format!(
                        "constraint {ci} repeats a variable"
                    )));
                }
                incidence[v].push(ci);
            }
            let bad_row = c.allowed.iter().flatten().any(|&s| s >= q);
            let bad_pat = c.wildcard.iter().flatten().flatten().any(|&s| s >= q);
            if bad_row || bad_pat {
                return Err(Error::Malformed(format!(
                    "constraint {ci} uses undeclared symbols"
                )));
            }
        }
        Ok(CspInstance {
            variables,
            alphabet,
            arity,
            constraints,
            domains,
            restricted,
            var_index,
            sym_index,
            incidence,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    /// Symbols admissible for `var`, ascending.
    pub fn domain(&self, var: usize) -> &[Sym] {
        &self.domains[var]
    }

    pub fn domains(&self) -> &[Vec<Sym>] {
        &self.domains
    }

    /// Whether per-variable domains were supplied at construction.
    pub fn has_restricted_domains(&self) -> bool {
        self.restricted
    }

    /// Constraints whose scope contains `var`.
    pub fn incident(&self, var: usize) -> &[usize] {
        &self.incidence[var]
    }

    pub fn var_id(&self, name: &str) -> Result<usize> {
        self.var_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn sym_id(&self, name: &str) -> Result<Sym> {
        self.sym_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// Number of total assignments, `Π_v |dom(v)|`.
    pub fn state_count(&self) -> u128 {
        self.domains
            .iter()
            .try_fold(1u128, |acc, d| acc.checked_mul(d.len() as u128))
            .unwrap_or(u128::MAX)
    }

    fn require_arity(&self, k: usize) -> Result<()> {
        if self.arity != k {
            return Err(Error::ArityError {
                expected: k,
                found: self.arity,
            });
        }
        Ok(())
    }

    pub fn check_assignment(&self, asg: &Assignment) -> Result<()> {
        if asg.0.len() != self.num_vars() {
            return Err(Error::DomainMismatch {
                expected: self.num_vars(),
                found: asg.0.len(),
            });
        }
        for (v, &s) in asg.0.iter().enumerate() {
            if self.domains[v].binary_search(&s).is_err() {
                return Err(Error::AlphabetMismatch { var: v });
            }
        }
        Ok(())
    }

    fn constraint_holds(&self, ci: usize, values: &[Sym], buf: &mut Vec<Sym>) -> bool {
        let c = &self.constraints[ci];
        buf.clear();
        buf.extend(c.scope.iter().map(|&v| values[v]));
        c.accepts(buf)
    }

    /// Number of satisfied constraints; `asg` must already be validated.
    pub(crate) fn satisfied_count(&self, values: &[Sym]) -> usize {
        let mut buf = Vec::with_capacity(self.arity);
        (0..self.constraints.len())
            .filter(|&ci| self.constraint_holds(ci, values, &mut buf))
            .count()
    }

    fn ratio(&self, satisfied: usize) -> Value {
        if self.constraints.is_empty() {
            Value::from_integer(1)
        } else {
            Value::new(satisfied as u64, self.constraints.len() as u64)
        }
    }

    /// Fraction of satisfied constraints; `1` when there are none.
    pub fn value(&self, asg: &Assignment) -> Result<Value> {
        self.check_assignment(asg)?;
        Ok(self.ratio(self.satisfied_count(&asg.0)))
    }

    /// Minimum value over the steps, evaluated incrementally along the sequence.
    pub fn sequence_value(&self, seq: &ReconfigSequence) -> Result<Value> {
        let steps = seq.steps();
        self.check_assignment(&steps[0])?;
        let mut buf = Vec::with_capacity(self.arity);
        let mut current = steps[0].0.clone();
        let mut holds: Vec<bool> = (0..self.constraints.len())
            .map(|ci| self.constraint_holds(ci, &current, &mut buf))
            .collect();
        let mut satisfied = holds.iter().filter(|&&h| h).count();
        let mut worst = satisfied;
        for next in &steps[1..] {
            self.check_assignment(next)?;
            let var = current
                .iter()
                .zip(&next.0)
                .position(|(a, b)| a != b)
                .expect("validated sequence steps differ");
            current[var] = next.0[var];
            for &ci in &self.incidence[var] {
                let now = self.constraint_holds(ci, &current, &mut buf);
                if now != holds[ci] {
                    if now {
                        satisfied += 1;
                    } else {
                        satisfied -= 1;
                    }
                    holds[ci] = now;
                }
            }
            worst = worst.min(satisfied);
        }
        Ok(self.ratio(worst))
    }

    /// Whether every edge sees some allowed pair drawn from the label sets.
    pub fn multi_satisfies(&self, multi: &MultiAssignment) -> Result<bool> {
        self.require_arity(2)?;
        if multi.0.len() != self.num_vars() {
            return Err(Error::DomainMismatch {
                expected: self.num_vars(),
                found: multi.0.len(),
            });
        }
        Ok(self.constraints.iter().all(|c| {
            let (u, v) = (c.scope[0], c.scope[1]);
            multi.0[u]
                .iter()
                .any(|&a| multi.0[v].iter().any(|&b| c.accepts(&[a, b])))
        }))
    }

    pub fn satisfies_sequence(&self, seq: &MultiAssignSequence) -> Result<bool> {
        for step in seq.steps() {
            if !self.multi_satisfies(step)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A partial assignment satisfies the instance when every constraint whose
    /// scope is fully assigned holds.
    pub fn partial_satisfies(&self, partial: &PartialAssignment) -> bool {
        let mut buf = Vec::with_capacity(self.arity);
        self.constraints.iter().all(|c| {
            buf.clear();
            for &v in &c.scope {
                match partial.0[v] {
                    Some(s) => buf.push(s),
                    None => return true,
                }
            }
            c.accepts(&buf)
        })
    }

    /// Largest satisfying partial assignment, by exhaustive search over
    /// `Π_v (|dom(v)| + 1)` configurations.
    pub fn max_par_bruteforce(&self, limits: Limits) -> Result<usize> {
        let states = self
            .domains
            .iter()
            .try_fold(1u128, |acc, d| acc.checked_mul(d.len() as u128 + 1))
            .unwrap_or(u128::MAX);
        limits.check(states)?;
        let n = self.num_vars();
        let mut digits = vec![0usize; n];
        let mut partial = PartialAssignment(vec![None; n]);
        let mut best = 0;
        loop {
            let size = partial.size();
            if size > best && self.partial_satisfies(&partial) {
                best = size;
            }
            // odometer, digit 0 means unassigned
            let mut pos = n;
            loop {
                if pos == 0 {
                    return Ok(best);
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] <= self.domains[pos].len() {
                    partial.0[pos] = Some(self.domains[pos][digits[pos] - 1]);
                    break;
                }
                digits[pos] = 0;
                partial.0[pos] = None;
            }
        }
    }

    /// Renders an assignment as `name -> symbol` pairs.
    pub fn describe(&self, asg: &Assignment) -> Vec<(String, String)> {
        asg.0
            .iter()
            .enumerate()
            .map(|(v, &s)| (self.variables[v].clone(), self.alphabet[s as usize].clone()))
            .collect()
    }
}

fn index_names<T>(names: &[String], what: &str) -> Result<HashMap<String, T>>
where
    T: TryFrom<usize>,
{
    let mut map = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        let id = T::try_from(i).map_err(|_| Error::Malformed(format!("too many {what}s")))?;
        if map.insert(name.clone(), id).is_some() {
            return Err(Error::Malformed(format!("duplicate {what} `{name}`")));
        }
    }
    Ok(map)
}

/// A total assignment, one symbol per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(pub Vec<Sym>);

impl Assignment {
    pub fn new(values: Vec<Sym>) -> Self {
        Assignment(values)
    }

    pub fn values(&self) -> &[Sym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of positions where the two assignments differ.
    pub fn hamming(&self, other: &Assignment) -> usize {
        let common = self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count();
        common + self.0.len().abs_diff(other.0.len())
    }

    pub fn with(&self, var: usize, sym: Sym) -> Assignment {
        let mut next = self.clone();
        next.0[var] = sym;
        next
    }
}

/// Per-variable label sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiAssignment(pub Vec<BTreeSet<Sym>>);

impl MultiAssignment {
    pub fn singletons(asg: &Assignment) -> Self {
        MultiAssignment(asg.0.iter().map(|&s| BTreeSet::from([s])).collect())
    }

    /// Total label count `Σ_v |ψ(v)|`.
    pub fn size(&self) -> usize {
        self.0.iter().map(BTreeSet::len).sum()
    }

    /// The assignment this multi-assignment induces when every set is a singleton.
    pub fn as_assignment(&self) -> Option<Assignment> {
        self.0
            .iter()
            .map(|s| {
                if s.len() == 1 {
                    s.first().copied()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(Assignment)
    }
}

/// Total symmetric difference between two multi-assignments is exactly one.
pub fn multi_neighbors(a: &MultiAssignment, b: &MultiAssignment) -> bool {
    if a.0.len() != b.0.len() {
        return false;
    }
    let mut diff = 0;
    for (x, y) in a.0.iter().zip(&b.0) {
        diff += x.symmetric_difference(y).count();
        if diff > 1 {
            return false;
        }
    }
    diff == 1
}

/// An assignment where variables may be left unassigned (`None`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialAssignment(pub Vec<Option<Sym>>);

impl PartialAssignment {
    /// Number of assigned variables.
    pub fn size(&self) -> usize {
        self.0.iter().filter(|s| s.is_some()).count()
    }
}

/// Assignments where consecutive steps differ in exactly one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfigSequence {
    steps: Vec<Assignment>,
}

impl ReconfigSequence {
    pub fn new(steps: Vec<Assignment>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(i) = steps.windows(2).position(|w| w[0].hamming(&w[1]) != 1) {
            return Err(Error::InvalidSequence { step: i + 1 });
        }
        Ok(ReconfigSequence { steps })
    }

    pub fn single(asg: Assignment) -> Self {
        ReconfigSequence { steps: vec![asg] }
    }

    pub fn steps(&self) -> &[Assignment] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Assignment> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn source(&self) -> &Assignment {
        &self.steps[0]
    }

    pub fn target(&self) -> &Assignment {
        self.steps.last().unwrap()
    }

    pub fn reversed(&self) -> Self {
        let mut steps = self.steps.clone();
        steps.reverse();
        ReconfigSequence { steps }
    }
}

/// Endpoint equality plus the unit-step property.
pub fn is_valid_sequence(source: &Assignment, target: &Assignment, steps: &[Assignment]) -> bool {
    match (steps.first(), steps.last()) {
        (Some(first), Some(last)) => {
            first == source && last == target && steps.windows(2).all(|w| w[0].hamming(&w[1]) == 1)
        }
        _ => false,
    }
}

/// Multi-assignments where consecutive steps are neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiAssignSequence {
    steps: Vec<MultiAssignment>,
}

impl MultiAssignSequence {
    pub fn new(steps: Vec<MultiAssignment>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(i) = steps
            .windows(2)
            .position(|w| !multi_neighbors(&w[0], &w[1]))
        {
            return Err(Error::InvalidSequence { step: i + 1 });
        }
        Ok(MultiAssignSequence { steps })
    }

    pub fn steps(&self) -> &[MultiAssignment] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Peak size over the steps.
    pub fn size(&self) -> usize {
        self.steps
            .iter()
            .map(MultiAssignment::size)
            .max()
            .unwrap_or(0)
    }
}

/// Switches the differing variables from `source` to `target` one at a time
/// in `order`.
pub fn direct_sequence(
    source: &Assignment,
    target: &Assignment,
    order: &[usize],
) -> Result<ReconfigSequence> {
    if source.len() != target.len() {
        return Err(Error::DomainMismatch {
            expected: source.len(),
            found: target.len(),
        });
    }
    let differing: BTreeSet<usize> = (0..source.len())
        .filter(|&v| source.0[v] != target.0[v])
        .collect();
    let listed: BTreeSet<usize> = order.iter().copied().collect();
    if listed.len() != order.len() || listed != differing {
        return Err(Error::BadOrder);
    }
    let mut steps = Vec::with_capacity(order.len() + 1);
    let mut current = source.clone();
    steps.push(current.clone());
    for &v in order {
        current.0[v] = target.0[v];
        steps.push(current.clone());
    }
    Ok(ReconfigSequence { steps })
}

/// [`direct_sequence`] switching variables in ascending index order.
pub fn ascending_direct_sequence(source: &Assignment, target: &Assignment) -> ReconfigSequence {
    let order: Vec<usize> = (0..source.len())
        .filter(|&v| source.0[v] != target.0[v])
        .collect();
    direct_sequence(source, target, &order).expect("ascending order is always admissible")
}

/// Convenience constructor for tests and generators: named variables and
/// symbols, binary constraints given by predicate over the full alphabet.
pub fn binary_instance<F>(
    num_vars: usize,
    alphabet_size: usize,
    edges: &[(usize, usize)],
    mut pred: F,
) -> Result<CspInstance>
where
    F: FnMut(usize, Sym, Sym) -> bool,
{
    let variables: Vec<String> = (0..num_vars).map(|v| format!("x{v}")).collect();
    let alphabet: Vec<String> = (0..alphabet_size).map(|s| s.to_string()).collect();
    let full: Vec<Sym> = (0..alphabet_size as Sym).collect();
    let constraints = edges
        .iter()
        .enumerate()
        .map(|(ei, &(u, v))| {
            Constraint::from_predicate(vec![u, v], &[&full, &full], |t| pred(ei, t[0], t[1]))
        })
        .collect();
    CspInstance::new(variables, alphabet, 2, constraints, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_neq() -> CspInstance {
        binary_instance(3, 2, &[(0, 1), (1, 2), (0, 2)], |_, a, b| a != b).unwrap()
    }

    fn asg(v: &[Sym]) -> Assignment {
        Assignment::new(v.to_vec())
    }

    #[test]
    fn triangle_value_two_thirds() {
        let inst = triangle_neq();
        // edges (0,1): 0≠1 ok, (1,2): 1≠0 ok, (0,2): 0=0 violated
        assert_eq!(inst.value(&asg(&[0, 1, 0])).unwrap(), Value::new(2, 3));
    }

    #[test]
    fn full_and_empty_tables() {
        let full = binary_instance(2, 3, &[(0, 1)], |_, _, _| true).unwrap();
        assert_eq!(full.value(&asg(&[2, 1])).unwrap(), Value::from_integer(1));
        let empty = binary_instance(2, 3, &[(0, 1)], |_, _, _| false).unwrap();
        assert_eq!(empty.value(&asg(&[2, 1])).unwrap(), Value::from_integer(0));
    }

    #[test]
    fn zero_constraints_have_value_one() {
        let inst = binary_instance(2, 2, &[], |_, _, _| false).unwrap();
        assert_eq!(inst.value(&asg(&[0, 1])).unwrap(), Value::from_integer(1));
    }

    #[test]
    fn undeclared_symbol_is_rejected() {
        let inst = triangle_neq();
        assert!(matches!(
            inst.value(&asg(&[0, 5, 0])),
            Err(Error::AlphabetMismatch { var: 1 })
        ));
    }

    #[test]
    fn sequence_value_triangle() {
        let inst = triangle_neq();
        let seq = ReconfigSequence::new(vec![
            asg(&[0, 1, 0]),
            asg(&[1, 1, 0]),
            asg(&[1, 0, 0]),
            asg(&[1, 0, 1]),
        ])
        .unwrap();
        // per-step values: 2/3, 2/3, 2/3, 2/3
        assert_eq!(inst.sequence_value(&seq).unwrap(), Value::new(2, 3));
        let one = ReconfigSequence::single(asg(&[0, 1, 0]));
        assert_eq!(inst.sequence_value(&one).unwrap(), Value::new(2, 3));
    }

    #[test]
    fn sequence_with_all_violating_step_is_zero() {
        let inst = binary_instance(2, 2, &[(0, 1)], |_, a, b| a != b).unwrap();
        let seq = ReconfigSequence::new(vec![asg(&[0, 1]), asg(&[1, 1]), asg(&[1, 0])]).unwrap();
        assert_eq!(inst.sequence_value(&seq).unwrap(), Value::from_integer(0));
    }

    #[test]
    fn invalid_sequences_are_rejected() {
        let err = ReconfigSequence::new(vec![asg(&[0, 0]), asg(&[1, 1])]).unwrap_err();
        assert!(matches!(err, Error::InvalidSequence { step: 1 }));
        assert!(ReconfigSequence::new(vec![asg(&[0, 0]), asg(&[0, 0])]).is_err());
        assert!(!is_valid_sequence(
            &asg(&[0, 0]),
            &asg(&[1, 1]),
            &[asg(&[0, 0]), asg(&[1, 1])]
        ));
        assert!(is_valid_sequence(
            &asg(&[0, 0]),
            &asg(&[0, 0]),
            &[asg(&[0, 0])]
        ));
    }

    #[test]
    fn multi_neighbor_test() {
        let a = MultiAssignment(vec![BTreeSet::from([0]), BTreeSet::from([1])]);
        let b = MultiAssignment(vec![BTreeSet::from([0, 1]), BTreeSet::from([1])]);
        assert!(multi_neighbors(&a, &b));
        assert!(!multi_neighbors(&a, &a));
        let c = MultiAssignment(vec![BTreeSet::from([1]), BTreeSet::from([1])]);
        assert!(!multi_neighbors(&a, &c));
    }

    #[test]
    fn multi_satisfaction() {
        let inst = triangle_neq();
        let all = MultiAssignment(vec![BTreeSet::from([0, 1]); 3]);
        assert!(inst.multi_satisfies(&all).unwrap());
        let mut hole = all.clone();
        hole.0[2].clear();
        assert!(!inst.multi_satisfies(&hole).unwrap());
        let ternary = CspInstance::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec!["0".into()],
            3,
            vec![],
            None,
        )
        .unwrap();
        assert!(matches!(
            ternary.multi_satisfies(&MultiAssignment(vec![BTreeSet::new(); 3])),
            Err(Error::ArityError {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn minlab_sizes() {
        let s = MultiAssignment::singletons(&asg(&[0, 0, 0, 0, 0]));
        let seq = MultiAssignSequence::new(vec![s]).unwrap();
        assert_eq!(seq.size(), 5);
    }

    #[test]
    fn unsatisfying_middle_step() {
        let inst = binary_instance(2, 2, &[(0, 1)], |_, a, b| a == b).unwrap();
        let steps = vec![
            MultiAssignment(vec![BTreeSet::from([0]), BTreeSet::from([0])]),
            MultiAssignment(vec![BTreeSet::from([0]), BTreeSet::new()]),
            MultiAssignment(vec![BTreeSet::from([0]), BTreeSet::from([1])]),
        ];
        let seq = MultiAssignSequence::new(steps).unwrap();
        assert!(!inst.satisfies_sequence(&seq).unwrap());
    }

    #[test]
    fn max_par_cases() {
        let sat = triangle_neq();
        let two = binary_instance(2, 2, &[(0, 1)], |_, a, b| a != b).unwrap();
        assert_eq!(two.max_par_bruteforce(Limits::default()).unwrap(), 2);
        // the odd triangle is not 2-colorable, so one vertex stays unassigned
        assert_eq!(sat.max_par_bruteforce(Limits::default()).unwrap(), 2);
        let empty = binary_instance(2, 2, &[(0, 1)], |_, _, _| false).unwrap();
        assert_eq!(empty.max_par_bruteforce(Limits::default()).unwrap(), 1);
        let none = binary_instance(0, 2, &[], |_, _, _| true).unwrap();
        assert_eq!(none.max_par_bruteforce(Limits::default()).unwrap(), 0);
        assert!(matches!(
            sat.max_par_bruteforce(Limits::new(10)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn direct_sequences() {
        let s = asg(&[0, 0, 0]);
        assert_eq!(direct_sequence(&s, &s, &[]).unwrap().len(), 1);
        let t = asg(&[0, 1, 1]);
        let seq = direct_sequence(&s, &t, &[2, 1]).unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq.steps()[1], asg(&[0, 0, 1]));
        let all = asg(&[1, 1, 1]);
        assert_eq!(direct_sequence(&s, &all, &[0, 1, 2]).unwrap().len(), 4);
        assert!(matches!(
            direct_sequence(&s, &t, &[1]),
            Err(Error::BadOrder)
        ));
        assert!(matches!(
            direct_sequence(&s, &t, &[1, 2, 2]),
            Err(Error::BadOrder)
        ));
        assert!(matches!(
            direct_sequence(&s, &t, &[0, 1, 2]),
            Err(Error::BadOrder)
        ));
    }

    #[test]
    fn wildcard_patterns_widen_tables() {
        let c = Constraint::new(vec![0, 1], TupleSet::new(2, [[0, 0]]))
            .with_wildcard(vec![vec![Some(1), None]]);
        assert!(c.accepts(&[0, 0]));
        assert!(c.accepts(&[1, 0]));
        assert!(c.accepts(&[1, 1]));
        assert!(!c.accepts(&[0, 1]));
    }

    #[test]
    fn malformed_instances() {
        let names = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        let repeat = Constraint::new(vec![0, 0], TupleSet::empty(2));
        assert!(CspInstance::new(names(2), names(2), 2, vec![repeat], None).is_err());
        let outside = Constraint::new(vec![0, 3], TupleSet::empty(2));
        assert!(CspInstance::new(names(2), names(2), 2, vec![outside], None).is_err());
        let bad_sym = Constraint::new(vec![0, 1], TupleSet::new(2, [[0, 7]]));
        assert!(CspInstance::new(names(2), names(2), 2, vec![bad_sym], None).is_err());
        assert!(CspInstance::new(vec!["a".into(), "a".into()], names(2), 2, vec![], None).is_err());
    }

    #[test]
    fn restricted_domains_are_enforced() {
        let inst = CspInstance::new(
            vec!["a".into(), "b".into()],
            vec!["x".into(), "y".into(), "z".into()],
            2,
            vec![],
            Some(vec![vec![0, 1], vec![2]]),
        )
        .unwrap();
        assert_eq!(inst.state_count(), 2);
        assert!(inst.value(&asg(&[1, 2])).is_ok());
        assert!(inst.value(&asg(&[2, 2])).is_err());
    }
}
