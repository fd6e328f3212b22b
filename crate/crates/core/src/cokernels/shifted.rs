use num_bigint::BigInt;
use serde::Serialize;

use super::compare::endomorphism_matrix;
use super::embed_degree;
use crate::error::{Error, Result};
use crate::exterior::{Basis, Operator, Parity};
use crate::lefschetz::filtration;
use crate::linalg::{cokernel, kernel_lattice, AbelianInvariants, IntMatrix, Lattice};
use crate::util::primitive_rank;

/// Parity of the degrees `g − k + 2r` carried by `𝓕_k`.
fn parity_of(g: usize, k: i64) -> Parity {
    if (g as i64 - k).rem_euclid(2) == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `𝓕_k Λ = ⊕_r F_r Λ^{g−k+2r}` in the monomial basis of `Λ^{parity}`.
pub fn shifted_level(g: usize, k: i64, basis: &Basis) -> Lattice {
    let mut gens = Vec::new();
    for r in 0..=2 * g as i64 {
        let d = g as i64 - k + 2 * r;
        if !(0..=2 * g as i64).contains(&d) {
            continue;
        }
        let level = filtration(g, d as usize).level(r);
        gens.extend(level.basis().iter().map(|v| embed_degree(basis, g, d as usize, v)));
    }
    Lattice::from_generators(basis.len(), &gens)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftedRow {
    pub k: usize,
    pub expected: AbelianInvariants,
    pub omega: AbelianInvariants,
    pub exp: AbelianInvariants,
    /// `ι^{-1}(𝓕_k) = 𝓕_k + ker ι` for both operators.
    pub preimage_stable: bool,
    /// Whether the kernel already lies in `𝓕_k`, so that `ι^{-1}(𝓕_k) = 𝓕_k` on the nose.
    pub preimage_equals_level: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftedReport {
    pub g: usize,
    pub rows: Vec<ShiftedRow>,
}

fn preimage_stable(m: &IntMatrix, level: &Lattice) -> bool {
    Lattice::preimage(m, level) == level.sum(&kernel_lattice(m))
}

fn graded_cokernel(m: &IntMatrix, top: &Lattice, below: &Lattice) -> Result<AbelianInvariants> {
    let q = top.free_quotient(below)?;
    let images: Vec<Vec<BigInt>> = q
        .representatives()
        .iter()
        .map(|t| {
            q.coordinates(&m.mul_vec(t))
                .ok_or_else(|| Error::violation("ι preserves 𝓕_k", "image leaves the level"))
        })
        .collect::<Result<_>>()?;
    Ok(cokernel(&IntMatrix::from_column_vectors(q.rank(), &images)))
}

/// `⊕_{r=0}^k P^{g−k}/(r)`.
pub fn expected_shifted(g: usize, k: usize) -> AbelianInvariants {
    let rank = primitive_rank(g, g as i64 - k as i64);
    AbelianInvariants::from_cyclic(0, (0..=k).flat_map(|r| std::iter::repeat(BigInt::from(r)).take(rank)))
}

/// Graded cokernels of `ι_ω` and `ι_{e^ω−1}` for the shifted filtration,
/// and stability of each level under taking preimages.
pub fn shifted_filtration(g: usize) -> Result<ShiftedReport> {
    let mut rows = Vec::new();
    for k in 0..=g {
        let parity = parity_of(g, k as i64);
        let (mw, basis) = endomorphism_matrix(g, &Operator::ContractOmega(1), Some(parity))?;
        let (me, _) = endomorphism_matrix(g, &Operator::ContractExp, Some(parity))?;
        let top = shifted_level(g, k as i64, &basis);
        let below = shifted_level(g, k as i64 - 2, &basis);
        let row = ShiftedRow {
            k,
            expected: expected_shifted(g, k),
            omega: graded_cokernel(&mw, &top, &below)?,
            exp: graded_cokernel(&me, &top, &below)?,
            preimage_stable: preimage_stable(&mw, &top) && preimage_stable(&me, &top),
            preimage_equals_level: Lattice::preimage(&mw, &top) == top && Lattice::preimage(&me, &top) == top,
        };
        if row.omega != row.expected || row.exp != row.expected {
            return Err(Error::violation(
                "graded cokernels of the shifted filtration",
                format!(
                    "g={g} k={k}: ω {} / e^ω−1 {} / expected {}",
                    row.omega, row.exp, row.expected
                ),
            ));
        }
        if !row.preimage_stable {
            return Err(Error::violation("ι^{-1}(𝓕_k) = 𝓕_k + ker ι", format!("g={g} k={k}")));
        }
        rows.push(row);
    }
    for parity in [Parity::Even, Parity::Odd] {
        let (_, basis) = endomorphism_matrix(g, &Operator::ContractOmega(1), Some(parity))?;
        let last = if parity_of(g, g as i64) == parity {
            g as i64
        } else {
            g as i64 - 1
        };
        if last >= -1 && shifted_level(g, last, &basis) != Lattice::full(basis.len()) {
            return Err(Error::violation("shifted filtration is exhaustive", format!("g={g}")));
        }
    }
    Ok(ShiftedReport { g, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_rows() {
        let r = shifted_filtration(2).unwrap();
        assert_eq!(r.rows[0].omega.invariant_factor_string(), "Z^5");
        assert_eq!(r.rows[1].omega.invariant_factor_string(), "Z^4");
        assert_eq!(r.rows[2].omega.invariant_factor_string(), "Z + Z/2");
        assert!(!r.rows[0].preimage_equals_level);
        assert!(r.rows[2].preimage_equals_level);
    }

    #[test]
    fn sweep() {
        for g in 0..=3 {
            shifted_filtration(g).unwrap();
        }
    }
}
