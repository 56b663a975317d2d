//! Quasi-cyclic additive 1-perfect codes in Doob graphs.
//!
//! For odd `delta >= 3` this crate builds the Galois ring `GR(4^delta)`, partitions its
//! nonzero elements into `2^delta - 1` triples `{a, 2a, 3a}` and
//! `(2^delta - 1)(2^delta - 2)/6` sixtuples `{±a, ±b, ±(a+b)}` in a way that is invariant
//! under multiplication by the Teichmüller generator `xi`, and turns that partition into the
//! check matrix of a 1-perfect code in `D((2^delta-1)(2^delta-2)/6, 2^delta-1)`.
//!
//! Module map:
//!
//! * [`galois_ring`]: ring and residue-field arithmetic, Teichmüller structure, trace.
//! * [`cyclotomic`]: 2-cyclotomic cosets and the negation matching on them.
//! * [`partition`]: seed pairs and the assembled partition with an O(1) block locator.
//! * [`doob`]: check matrix, syndromes, decoding, Doob metric, coordinate permutations.
//! * [`verifier`]: executable checks producing a [`verifier::VerifyReport`].

pub mod cyclotomic;
pub mod doob;
mod error;
pub mod galois_ring;
pub mod partition;
pub mod verifier;

pub use error::{Error, Result};
pub use galois_ring::{
    lift_basic_primitive, BasicPoly, FieldElement, RingContext, RingElement, TeichExp,
    DEFAULT_DELTA_CAP, MAX_DELTA,
};
