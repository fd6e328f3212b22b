//! Exact linear algebra over ℤ and 𝔽_p.

pub mod abelian;
pub mod fp;
pub mod lattice;
pub mod matrix;
pub mod smith;

pub use abelian::{cokernel, AbelianInvariants};
pub use fp::{BitMatrix, FpMatrix, Subspace};
pub use lattice::{hnf_rows, kernel_lattice, right_inverse, solve, FreeQuotient, Lattice, Solver};
pub use matrix::{shared_components, IntMatrix};
pub use smith::{invariant_factors, smith, SmithForm};
