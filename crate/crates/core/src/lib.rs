//! Exact generalized Weyl algebra arithmetic over `Q(q)`, with the 2x2
//! reflection equation algebra, its finite-dimensional modules and its
//! prime-ideal machinery built on top.

pub mod error;
pub mod expr;
pub mod gwa;
pub mod polyring;
pub mod qfield;
pub mod random;
pub mod rea;
pub mod report;
pub mod repr;
pub mod spectrum;
pub mod uqsl2;
pub mod verify;
pub mod wire;

pub use error::{Error, Result};
pub use polyring::{CoefPoly, IdealGens, RingSpec, SigmaMap};
pub use qfield::{QMatrix, QRat, ZPoly};
pub use report::Report;
