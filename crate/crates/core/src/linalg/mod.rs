//! Linear algebra kernels: sparse `f64` matrices, exact integer elimination,
//! rational helpers and iterative solvers.

pub mod exact;
pub mod float;
pub mod rational;
pub mod sparse;

pub use sparse::CsrMatrix;
