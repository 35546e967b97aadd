//! Set Cover instances and reconfiguration set-cover sequences.

use std::collections::BTreeSet;

use crate::{Error, Result};

/// Subsets of the universe `0..universe` with stable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    universe: usize,
    sets: Vec<Vec<usize>>,
}

/// An index set `T ⊆ [m]`.
pub type IndexSet = BTreeSet<usize>;

impl SetCoverInstance {
    pub fn new(universe: usize, mut sets: Vec<Vec<usize>>) -> Result<Self> {
        for (i, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.last().is_some_and(|&x| x >= universe) {
                return Err(Error::Malformed(format!("set {i} leaves the universe")));
            }
        }
        Ok(SetCoverInstance { universe, sets })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    fn check_indices(&self, t: &IndexSet) -> Result<()> {
        match t.last() {
            Some(&i) if i >= self.sets.len() => Err(Error::IndexOutOfRange {
                index: i,
                len: self.sets.len(),
            }),
            _ => Ok(()),
        }
    }

    /// Whether the chosen sets jointly cover the universe.
    pub fn is_cover(&self, t: &IndexSet) -> Result<bool> {
        self.check_indices(t)?;
        let mut covered = vec![false; self.universe];
        let mut remaining = self.universe;
        for &i in t {
            for &x in &self.sets[i] {
                if !covered[x] {
                    covered[x] = true;
                    remaining -= 1;
                }
            }
            if remaining == 0 {
                return Ok(true);
            }
        }
        Ok(remaining == 0)
    }

    /// Endpoints match, every step covers, consecutive steps differ in one index.
    pub fn is_valid_cover_sequence(
        &self,
        source: &IndexSet,
        target: &IndexSet,
        steps: &[IndexSet],
    ) -> Result<bool> {
        for t in steps {
            self.check_indices(t)?;
        }
        let (Some(first), Some(last)) = (steps.first(), steps.last()) else {
            return Ok(false);
        };
        if first != source || last != target {
            return Ok(false);
        }
        if steps
            .windows(2)
            .any(|w| w[0].symmetric_difference(&w[1]).count() != 1)
        {
            return Ok(false);
        }
        for t in steps {
            if !self.is_cover(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Index sets where consecutive steps differ in exactly one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverSequence {
    steps: Vec<IndexSet>,
}

impl SetCoverSequence {
    pub fn new(steps: Vec<IndexSet>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(i) = steps
            .windows(2)
            .position(|w| w[0].symmetric_difference(&w[1]).count() != 1)
        {
            return Err(Error::InvalidSequence { step: i + 1 });
        }
        Ok(SetCoverSequence { steps })
    }

    pub fn steps(&self) -> &[IndexSet] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest step `max |T_i|`.
    pub fn peak(&self) -> usize {
        self.steps.iter().map(BTreeSet::len).max().unwrap_or(0)
    }
}
