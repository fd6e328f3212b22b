//! Exact integral Lefschetz theory for the exterior algebra of a symplectic lattice.
//!
//! The crate is organised bottom-up:
//!
//! - [`exterior`]: sparse multivectors over ℤ, ℤ/n and 𝔽_p with wedge and
//!   symplectic contraction, divided powers of ω, the duality star and
//!   operator matrices in the monomial basis.
//! - [`linalg`]: exact linear algebra over ℤ (Hermite and Smith forms,
//!   saturated kernels, cokernels, lifts) and over 𝔽_p.
//! - [`lefschetz`]: the filtration `F_r Λ^k`, primitive lattices, graded
//!   isomorphisms and ℤ-splittings.
//! - [`cokernels`]: cokernels of `∧ω_k`, `ι_ω` and `ι_{e^ω-1}`, the pair-free
//!   ring automorphism and the Touchard conjugation.
//! - [`heisenberg`]: integral homology of the integer Heisenberg groups.
//! - [`floer`]: cup homology and the `HF^∞` model of `Σ_g × S¹`, mapping class
//!   group actions, and the genus four 𝔽₂ module computations.
//! - [`suite`] and [`report`]: the tagged verification runner used by the CLI.

pub mod cokernels;
pub mod error;
pub mod exterior;
pub mod floer;
pub mod heisenberg;
pub mod lefschetz;
pub mod linalg;
pub mod report;
pub mod ring;
pub mod suite;
pub mod util;

pub use error::{Error, Result};
pub use ring::CoefficientRing;
