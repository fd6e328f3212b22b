use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{degree_matrix, Operator, Space};
use crate::lefschetz::{split_across_midpoint, split_first_half};
use crate::linalg::{cokernel, AbelianInvariants};
use crate::util::{binomial, primitive_rank};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HardLefschetzReport {
    pub g: usize,
    pub k: usize,
    /// `coker(∧ω_k: Λ^{g−k} → Λ^{g+k})`.
    pub wedge: AbelianInvariants,
    /// `coker(ι_{ω_k}: Λ^{g+k} → Λ^{g−k})`.
    pub contraction: AbelianInvariants,
    pub expected: AbelianInvariants,
    pub expected_graded: Vec<AbelianInvariants>,
    /// Graded pieces computed from compatible splittings, when requested.
    pub graded: Option<Vec<AbelianInvariants>>,
}

/// `P^{g−k−2r} / C(r+k, r)` for `0 ≤ r ≤ ⌊(g−k)/2⌋`.
pub fn expected_graded(g: usize, k: usize) -> Vec<AbelianInvariants> {
    (0..=(g - k) / 2)
        .map(|r| {
            let n = binomial((r + k) as i64, r as i64);
            let rank = primitive_rank(g, (g - k - 2 * r) as i64);
            AbelianInvariants::from_cyclic(0, std::iter::repeat(n).take(rank))
        })
        .collect()
}

fn graded_pieces(g: usize, k: usize) -> Result<Vec<AbelianInvariants>> {
    let first = split_first_half(g)?;
    let low = &first[g - k];
    let high = split_across_midpoint(g, k, low)?;
    let iota = degree_matrix(
        &Operator::ContractOmega(k as i64),
        Space::symplectic(g),
        (g + k) as i64,
        (g - k) as i64,
    )?;
    let low_pieces = low.splitting().expect("built with a splitting");
    let high_pieces = high.splitting().expect("built with a splitting");
    let mut out = Vec::with_capacity(low_pieces.len());
    for (r, target) in low_pieces.iter().enumerate() {
        let images: Vec<Vec<BigInt>> = high_pieces[r + k].basis().iter().map(|v| iota.mul_vec(v)).collect();
        let m = target.coordinate_matrix_of(&images)?;
        out.push(cokernel(&m));
    }
    Ok(out)
}

/// Cokernel of `∧ω_k` in the middle range, compared with the graded prediction.
pub fn hard_lefschetz_coker(g: usize, k: usize, graded: bool) -> Result<HardLefschetzReport> {
    if k > g {
        return Err(Error::InvalidArgument(format!("need k ≤ g, got k={k}, g={g}")));
    }
    let s = Space::symplectic(g);
    let wedge = cokernel(&degree_matrix(
        &Operator::WedgeOmega(k as i64),
        s,
        (g - k) as i64,
        (g + k) as i64,
    )?);
    let contraction = cokernel(&degree_matrix(
        &Operator::ContractOmega(k as i64),
        s,
        (g + k) as i64,
        (g - k) as i64,
    )?);
    let expected_graded = expected_graded(g, k);
    let expected = AbelianInvariants::sum_all(&expected_graded);
    let graded = if graded { Some(graded_pieces(g, k)?) } else { None };
    let report = HardLefschetzReport {
        g,
        k,
        wedge,
        contraction,
        expected,
        expected_graded,
        graded,
    };
    let check = format!("coker ∧ω_{k} on Λ^{}(ℤ^{})", g - k, 2 * g);
    if report.wedge != report.expected {
        return Err(Error::violation(
            &check,
            format!("computed {}, expected {}", report.wedge, report.expected),
        ));
    }
    if report.contraction != report.wedge {
        return Err(Error::violation(&check, "wedge and contraction cokernels differ"));
    }
    if let Some(pieces) = &report.graded {
        if pieces != &report.expected_graded {
            return Err(Error::violation(&check, "graded pieces differ from the prediction"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        let r = hard_lefschetz_coker(3, 1, true).unwrap();
        assert_eq!(r.wedge.invariant_factor_string(), "Z/2");
        for g in 1..=4 {
            assert!(hard_lefschetz_coker(g, g, false).unwrap().wedge.is_trivial());
        }
        assert!(hard_lefschetz_coker(2, 0, false).unwrap().wedge.is_trivial());
    }

    #[test]
    fn small_sweep_with_grading() {
        for g in 1..=4 {
            for k in 0..=g {
                hard_lefschetz_coker(g, k, true).unwrap();
            }
        }
    }
}
