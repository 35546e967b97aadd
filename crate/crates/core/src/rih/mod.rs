//! Desk-scale version of the code-and-tester reduction from 2-CSP to 3-CSP
//! reconfiguration, with its completeness-sequence builder and majority
//! decoder.
//!
//! Layout of the produced instance: a selector `v*`, four copies of an
//! `n`-bit codeword block, and one tester auxiliary per copy index `i`,
//! whose hyperedges are live only while `v*` selects `i`.

pub mod code;
pub mod reduce;
pub mod tester;

pub use code::{default_code, BinaryCode, CodeKind, LabelBitMap};
pub use reduce::{
    completeness_sequence, rih_reduce, soundness_decode, ClaimCheck, DecodeOutcome, RihInstance,
};
pub use tester::{brute_force_tester, Circuit, Phi, TesterOutput};
