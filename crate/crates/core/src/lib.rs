//! Exact computations on fiber cones, associated graded rings, Hilbert
//! series and reductions of ideals in local rings modelled at the origin.

pub mod complexes;
pub mod error;
pub mod exactalg;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod localring;
pub mod reductions;
pub mod semigroup;

pub use error::{Error, Result};
