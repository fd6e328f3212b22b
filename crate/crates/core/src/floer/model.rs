use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::cup::{cup_homology, kernel_cokernel, KernelCokernel, ParityInvariants};
use crate::cokernels::{shifted_filtration, ShiftedReport};
use crate::error::{Error, Result};
use crate::exterior::Operator;
use crate::linalg::AbelianInvariants;
use crate::util::{binomial, primitive_rank};
use crate::CoefficientRing;

/// `coker(ι_{e^ω−1}) ⊕ ker(ι_{e^ω−1})` on `Λ*(R^{2g})`, one `U`-period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HfModel {
    pub g: usize,
    pub ring: CoefficientRing,
    pub cokernel: ParityInvariants,
    pub kernel: ParityInvariants,
    /// Cokernel in its own parity, kernel shifted by one.
    pub total: ParityInvariants,
}

impl HfModel {
    pub fn per_period(&self) -> AbelianInvariants {
        self.total.total()
    }
}

pub fn hf_model(g: usize, ring: CoefficientRing) -> Result<HfModel> {
    let KernelCokernel { cokernel, kernel } = kernel_cokernel(g, &Operator::ContractExp, ring)?;
    let total = cokernel.direct_sum(&kernel.shifted());
    Ok(HfModel {
        g,
        ring,
        cokernel,
        kernel,
        total,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HcHfReport {
    pub g: usize,
    pub hc: ParityInvariants,
    pub hf: ParityInvariants,
    pub equal: bool,
    /// `⊕_{j=0}^g P^j`, the piece above the shifted filtration.
    pub top_piece: AbelianInvariants,
    pub graded: Option<ShiftedReport>,
}

/// Integral comparison of cup homology with the `HF^∞` model.
pub fn hc_hf_compare(g: usize, graded: bool) -> Result<HcHfReport> {
    let hc = cup_homology(g, CoefficientRing::Integers)?;
    let hf = hf_model(g, CoefficientRing::Integers)?.total;
    let equal = hc == hf;
    if !equal {
        return Err(Error::violation(
            "HC_* ≅ HF^∞ as groups",
            format!("g={g}: {} + {} vs {} + {}", hc.even, hc.odd, hf.even, hf.odd),
        ));
    }
    let top_piece = AbelianInvariants::free((0..=g).map(|j| primitive_rank(g, j as i64)).sum());
    let graded = if graded { Some(shifted_filtration(g)?) } else { None };
    Ok(HcHfReport {
        g,
        hc,
        hf,
        equal,
        top_piece,
        graded,
    })
}

fn binom_usize(n: i64, k: i64) -> usize {
    binomial(n, k).to_usize().unwrap_or(0)
}

/// `⊕_{n≥2} (ℤ/n)^{count(n)}` as long as `count` is nonzero.
fn torsion_from_counts(count: impl Fn(i64) -> usize) -> AbelianInvariants {
    let mut cyc = Vec::new();
    let mut n = 2;
    loop {
        let c = count(n);
        if c == 0 {
            break;
        }
        cyc.extend(std::iter::repeat(BigInt::from(n)).take(c));
        n += 1;
    }
    AbelianInvariants::from_cyclic(0, cyc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionRow {
    pub g: usize,
    pub observed: AbelianInvariants,
    /// `2·C(2g, g)`.
    pub stated_free_rank: usize,
    /// `2·C(2g+1, g) = 2·Σ_{k≤g} rank P^k`.
    pub derived_free_rank: usize,
    /// `⊕ (ℤ/n)^{2·C(2g+1, g+1−2n)}`.
    pub stated_torsion: AbelianInvariants,
    /// `⊕ (ℤ/n)^{C(2g+2, g+1−2n)}`, summing the closed formula for `H^*(N_g)`.
    pub derived_torsion: AbelianInvariants,
    pub stated_free_matches: bool,
    pub stated_torsion_matches: bool,
    pub derived_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdRow {
    pub order: u64,
    /// `2q − 1`.
    pub predicted_first_g: usize,
    pub observed_first_g: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub rows: Vec<TorsionRow>,
    pub thresholds: Vec<ThresholdRow>,
}

/// Free rank and torsion of the integral `HF^∞` model against the closed
/// formulas, and the genus at which `q`-torsion first appears.
pub fn torsion_report(g_max: usize) -> Result<TorsionReport> {
    let mut rows = Vec::new();
    for g in 1..=g_max {
        let observed = hf_model(g, CoefficientRing::Integers)?.per_period();
        let gi = g as i64;
        let stated_torsion = torsion_from_counts(|n| 2 * binom_usize(2 * gi + 1, gi + 1 - 2 * n));
        let derived_torsion = torsion_from_counts(|n| binom_usize(2 * gi + 2, gi + 1 - 2 * n));
        let stated_free_rank = 2 * binom_usize(2 * gi, gi);
        let derived_free_rank = 2 * binom_usize(2 * gi + 1, gi);
        let torsion_only = AbelianInvariants::from_cyclic(0, observed.torsion.clone());
        rows.push(TorsionRow {
            g,
            stated_free_matches: observed.free_rank == stated_free_rank,
            stated_torsion_matches: torsion_only == stated_torsion,
            derived_matches: observed.free_rank == derived_free_rank && torsion_only == derived_torsion,
            observed,
            stated_free_rank,
            derived_free_rank,
            stated_torsion,
            derived_torsion,
        });
    }
    let thresholds = [2u64, 3, 4, 5]
        .into_iter()
        .map(|q| ThresholdRow {
            order: q,
            predicted_first_g: 2 * q as usize - 1,
            observed_first_g: rows
                .iter()
                .find(|r| r.observed.has_torsion_divisible_by(q))
                .map(|r| r.g),
        })
        .collect();
    Ok(TorsionReport { rows, thresholds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_models() {
        let m = hf_model(1, CoefficientRing::Integers).unwrap();
        assert_eq!(m.per_period(), AbelianInvariants::free(6));
        assert!(hf_model(2, CoefficientRing::Integers).unwrap().per_period().is_free());
        assert!(hf_model(3, CoefficientRing::Integers)
            .unwrap()
            .per_period()
            .has_torsion_divisible_by(2));
    }

    #[test]
    fn compare_small() {
        for g in 1..=4 {
            assert!(hc_hf_compare(g, g <= 3).unwrap().equal);
        }
    }

    #[test]
    fn torsion_rows() {
        let r = torsion_report(4).unwrap();
        assert!(r.rows.iter().all(|row| row.derived_matches));
        assert!(!r.rows[3].stated_free_matches);
        assert_eq!(r.thresholds[0].observed_first_g, Some(3));
        assert_eq!(r.rows[3].observed.invariant_factor_string(), "Z^252 + Z/2^10");
    }
}
