//! Exact arithmetic in `Q(q)` and dense linear algebra over it.

mod qmatrix;
mod qrat;
mod zpoly;

pub use qmatrix::{span_basis, span_rank, QMatrix};
pub use qrat::{q_int, QRat};
pub use zpoly::ZPoly;
