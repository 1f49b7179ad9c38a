//! Arithmetic in `O_L = O_K[x]/(f)` for an Eisenstein polynomial `f`:
//! elements with tracked precision, norms, root finding and the Galois test.

mod eisenstein;
mod element;
mod galois;
mod roots;

pub use eisenstein::{make_eisenstein, EisensteinPoly};
pub use element::{ext_arith, ext_val, ArithOp, ExtElement, ExtRing};
pub use galois::{galois_check, GaloisCheck};
pub use roots::roots_of;
