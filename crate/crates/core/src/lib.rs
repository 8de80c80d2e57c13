//! Exact construction, verification and classification of N- and Z-modular
//! data coming from braided pivotal fusion categories.
//!
//! All scalars live in cyclotomic fields ([`cyclotomic::CycNum`]) and every
//! identity is checked exactly; floating point only appears in rigorous
//! interval enclosures used for sign decisions and display.

pub mod cyclinalg;
pub mod cyclotomic;
pub mod datum;
pub mod families;
pub mod interval;
pub mod json;

pub use cyclinalg::CycMatrix;
pub use cyclotomic::{root_of_unity, CycError, CycNum, RootOfUnity};
