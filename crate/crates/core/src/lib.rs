//! Exact verification of divisibility theorems for generalized Delannoy and
//! Schröder polynomials, with every supporting coefficient family and parity
//! lemma checked on finite ranges.

pub mod exactmath;
pub mod identities;
pub mod polyring;
pub mod reduction;
pub mod report;
pub mod sequences;
pub mod theorems;

pub use exactmath::{Integer, Rational};
pub use identities::{CheckResult, Sign};
pub use polyring::{CoeffWitness, Divisibility, IntPoly};
pub use reduction::CoeffTable;
pub use report::Record;
pub use sequences::{Family, PolyCache};
pub use theorems::{DivisibilityReport, SumSpec, TheoremId};
