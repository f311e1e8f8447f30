//! Exact construction and verification of independent events for the
//! geometric measure on the naturals.
//!
//! The measure gives atom `k >= 1` mass `(1 - r) r^(k-1)` for a ratio
//! `0 < r < 1`, and atom `0` mass zero. Events are finite or eventually
//! periodic sets, so every probability is a rational function of `r` and
//! independence can be decided exactly:
//!
//! * for every `r` at once, as an identity of rational functions;
//! * at a rational `r`;
//! * at the roots of a polynomial, by divisibility.
//!
//! ```
//! use geoindep::constructions::{build_b, build_pair};
//! use geoindep::independence::indep_family_symbolic;
//! use geoindep::sets::Set;
//!
//! let pair = build_pair(3, &Set::finite([1, 6])).unwrap();
//! assert_eq!(pair.b, build_b(3).unwrap());
//! let report = indep_family_symbolic(&[pair.a, pair.b]).unwrap();
//! assert!(report.independent);
//! ```

pub mod arith;
pub mod constructions;
pub mod error;
pub mod independence;
pub mod measure;
pub mod search;
pub mod sets;
pub mod thresholds;

pub use arith::{Polynomial, Rational, RationalFunction};
pub use error::{Error, Result};
pub use sets::{EpSet, FiniteSet, Set};
