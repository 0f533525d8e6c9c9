//! Exact degree of the real Grassmannian `Gr(k, ℝⁿ)` in its involution
//! model `{X ∈ Sym²(ℝⁿ) : X² = I, tr X = 2k - n}`, an independent
//! representation-theoretic oracle for the same number, and membership
//! tests for the projective closure over `ℚ(i)`.

pub mod closure;
pub mod degree;
pub mod partitions;
pub mod repdim;
pub mod scalar;
pub mod symfunc;

pub use closure::{GRMatrix, GaussianRational, ProjPoint};
pub use degree::{degree, DegreeMethod, DegreeReport};
pub use partitions::{Partition, SoWeight, WeightRule};
pub use scalar::{PiScaled, Rational};
