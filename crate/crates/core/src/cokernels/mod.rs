//! Cokernels of `∧ω_k`, `ι_ω` and `ι_{e^ω−1}` on `Λ*(ℤ^{2g})`.

mod compare;
mod hard_lefschetz;
mod pairfree;
mod shifted;
mod touchard;

pub use compare::{
    coker_ker_compare, contraction_cokernel, contraction_kernel, endomorphism_matrix, f2_kernel_comparison,
    primitive_sum, transported_cokernel, CompareReport, F2KernelRow,
};
pub use hard_lefschetz::{expected_graded, hard_lefschetz_coker, HardLefschetzReport};
pub use pairfree::{pair_free_check, pair_free_sets, pairfree_phi, PairFreeElement, PhiReport};
pub use shifted::{shifted_filtration, shifted_level, ShiftedReport, ShiftedRow};
pub use touchard::{stirling2, touchard_conjugation, GradedPairMatrices};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::exterior::{operator_matrix, Basis, LinearMap, Operator, Space};
use crate::linalg::IntMatrix;

/// Re-index a vector on `Λ^k` into a basis spanning several degrees.
pub fn embed_degree(target: &Basis, g: usize, k: usize, v: &[BigInt]) -> Vec<BigInt> {
    let src = Basis::degree(Space::symplectic(g), k as i64);
    let mut out = vec![BigInt::zero(); target.len()];
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            let j = target
                .index_of(src.monomial(i))
                .expect("degree is part of the target basis");
            out[j] = c.clone();
        }
    }
    out
}

/// `A·M = M·A` on the given degrees for each map's induced action.
pub fn commutes_with(op: &Operator, space: Space, degrees: &[usize], maps: &[LinearMap]) -> Result<bool> {
    let basis = Basis::new(space, degrees);
    let m = operator_matrix(op, &basis, &basis)?;
    for a in maps {
        let p: IntMatrix = operator_matrix(&Operator::Pushforward(a.clone()), &basis, &basis)?;
        if p.mul(&m)? != m.mul(&p)? {
            return Ok(false);
        }
    }
    Ok(true)
}
