//! The exterior algebra `Λ*(R^{2g})` with its standard symplectic form.

pub mod monomial;
pub mod multivector;
pub mod operators;
pub mod space;
pub mod symplectic;
pub mod text;

pub use monomial::Monomial;
pub use multivector::{contract_form, contract_triple_cup, exp_omega_minus_one, omega, omega_power, star, Multivector};
pub use operators::{degree_matrix, operator_matrix, operator_matrix_on, Basis, Operator};
pub use space::{Parity, Space};
pub use symplectic::{LinearMap, SymplecticForm};
