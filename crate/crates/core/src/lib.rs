//! Solvers, verifiers and gadget reductions for constraint-satisfaction
//! reconfiguration.
//!
//! The crate is organised bottom-up:
//!
//! * [`csp`], [`graph`], [`setcover`]: the data model and every verifier and
//!   value function.
//! * [`exact`]: exhaustive ground-truth solvers over small state spaces.
//! * [`balanced`]: downward vertex-set sequences whose cuts stay close to `m/2`.
//! * [`approx`]: the MaxMin, MinLabel and Set Cover approximation algorithms.
//! * [`reductions`]: the `σ*` gadget, its complete-graph variant and the
//!   hypercube set-cover gadget.
//! * [`rih`]: a desk-scale version of the PCPP-based reduction with its
//!   completeness-sequence builder and majority decoder.
//! * [`io`]: JSON formats, instance generators and the benchmark harness.

pub mod approx;
pub mod balanced;
pub mod csp;
mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod reductions;
pub mod rih;
pub mod setcover;

pub use error::{Error, Result};

/// Exact rational used for every CSP value.
pub type Value = num_rational::Ratio<u64>;

/// Upper bounds on exhaustive enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of states an exhaustive search may touch.
    pub max_states: u64,
}

impl Limits {
    pub const DEFAULT_MAX_STATES: u64 = 1 << 20;

    pub fn new(max_states: u64) -> Self {
        Limits { max_states }
    }

    pub(crate) fn check(&self, states: u128) -> Result<()> {
        if states > self.max_states as u128 {
            Err(Error::TooLarge {
                states,
                cap: self.max_states,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::new(Self::DEFAULT_MAX_STATES)
    }
}
