//! The Lefschetz filtration on `Λ*(ℤ^{2g})`, its graded pieces and splittings.

mod filtration;
mod graded;
mod identities;
mod splitting;

pub use filtration::{coords, element, filtration, primitive_basis, wedge_power_matrix, FiltrationData};
pub use graded::{
    constants_table, divisibility_check, graded_constants, graded_equivariance_check, obstruction_checks,
    wedge_constant, Direction, GradedMapReport, GradedPiece, ObstructionReport,
};
pub use identities::*;
pub use splitting::{split_across_midpoint, split_first_half, Splittings};
