//! Cup homology, the `HF^∞` model of `Σ_g × S¹` and mapping class group actions.

mod action;
mod cup;
mod f2g4;
mod fpmodule;
mod model;

pub use action::{
    contraction_nondegeneracy, nondegeneracy_search, sp_equivariance_check, transvection_action,
    transvection_fixed_points, FixedPointReport, ModelClass, NondegeneracyCertificate, Witness,
};
pub use cup::*;
pub use f2g4::{f2_g4_structures, noniso_certificate, F2Dimensions, F2Genus4, NamedCheck, NonIsoCertificate};
pub use fpmodule::{equivariant_hom_space, exterior_power_action, f2_transvections, FpModule, HomSpace, Subquotient};
pub use model::*;
