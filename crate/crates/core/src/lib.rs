//! Ultrametric distances between Eisenstein polynomials over `Q_p`,
//! ramification invariants of the extensions they define, and an exact
//! decision procedure for whether two of them generate the same field.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod census;
pub mod error;
pub mod extension;
pub mod identity;
pub mod metric;
pub mod norm_graded;
pub mod padic;
pub mod ramification;

pub use error::{Error, Result};
pub use extension::{EisensteinPoly, ExtElement, ExtRing, GaloisCheck};
pub use padic::{BaseField, IntPoly, TruncatedInt, Valuation};
