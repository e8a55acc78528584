//! Weighted combinatorial Hodge theory on triangulated closed manifolds.
//!
//! The crate builds simplicial complexes (spheres, tori, surfaces, products,
//! connected sums), computes rational Betti numbers, harmonic cochains for a
//! diagonal discrete metric, Alexander–Whitney cup products and intersection
//! forms. On top of that it measures how far harmonic cochains are from being
//! closed under cup product, searches weight space for metrics that reduce
//! that defect, and checks the Betti-number obstructions to geometric
//! formality in dimensions up to four.

// Elimination and assembly loops index several parallel arrays by row and
// column; iterator rewrites obscure the pivot structure.
#![allow(clippy::needless_range_loop)]

pub mod complex;
pub mod cup;
pub mod error;
pub mod formality;
pub mod hodge;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod obstruction;
pub mod zoo;

pub use complex::{Cochain, Orientation, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::BettiVector;
