//! Integral homology of the integer Heisenberg group `N_g`, the central
//! extension of `ℤ^{2g}` by `ℤ` classified by ω.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{degree_matrix, omega_power, LinearMap, Monomial, Operator, Space};
use crate::lefschetz::{element, graded_equivariance_check, primitive_basis, GradedPiece, Splittings};
use crate::linalg::{cokernel, kernel_lattice, AbelianInvariants, IntMatrix};
use crate::util::{binomial, primitive_rank};
use crate::CoefficientRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Gysin,
    Formula,
    Filtration,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Gysin => "gysin",
            Route::Formula => "formula",
            Route::Filtration => "filtration",
        }
    }
}

/// `H_k(N_g; ℤ)` for `0 ≤ k ≤ 2g+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeisenbergHomology {
    pub g: usize,
    pub route: Route,
    pub degrees: Vec<AbelianInvariants>,
}

impl HeisenbergHomology {
    pub fn degree(&self, k: usize) -> &AbelianInvariants {
        &self.degrees[k]
    }

    pub fn total(&self) -> AbelianInvariants {
        AbelianInvariants::sum_all(&self.degrees)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(k, h)| {
                if k % 2 == 0 {
                    h.free_rank as i64
                } else {
                    -(h.free_rank as i64)
                }
            })
            .sum()
    }

    /// `H_{2g+1−k} ≅ H^k ≅ Hom(H_k, ℤ) ⊕ Ext(H_{k−1}, ℤ)` for every `k`.
    pub fn duality_holds(&self) -> bool {
        let n = 2 * self.g + 1;
        (0..=n).all(|k| {
            let ext = if k == 0 {
                AbelianInvariants::trivial()
            } else {
                AbelianInvariants::from_cyclic(0, self.degrees[k - 1].torsion.clone())
            };
            let dual = AbelianInvariants::free(self.degrees[k].free_rank).direct_sum(&ext);
            self.degrees[n - k] == dual
        })
    }
}

fn contraction(g: usize, k: i64) -> Result<IntMatrix> {
    degree_matrix(&Operator::ContractOmega(1), Space::symplectic(g), k, k - 2)
}

/// `H_k = coker(ι_ω: Λ^{k+1} → Λ^{k−1}) ⊕ ker(ι_ω: Λ^k → Λ^{k−2})`; the
/// sequence splits because the kernel is free.
pub fn gysin_homology(g: usize) -> Result<HeisenbergHomology> {
    let mut degrees = Vec::with_capacity(2 * g + 2);
    for k in 0..=(2 * g + 1) as i64 {
        let coker = cokernel(&contraction(g, k + 1)?);
        let ker = kernel_lattice(&contraction(g, k)?);
        if !ker.is_saturated() {
            return Err(Error::Internal(format!("ker ι_ω on Λ^{k} is not saturated")));
        }
        degrees.push(coker.direct_sum(&AbelianInvariants::free(ker.rank())));
    }
    Ok(HeisenbergHomology {
        g,
        route: Route::Gysin,
        degrees,
    })
}

fn lp_rank(g: usize, i: i64) -> usize {
    let n = 2 * g as i64;
    let r = binomial(n, i) - binomial(n, i - 2);
    r.to_usize().expect("primitive ranks are nonnegative in range")
}

fn cyclic_power(order: i64, rank: usize) -> AbelianInvariants {
    AbelianInvariants::from_cyclic(0, std::iter::repeat(BigInt::from(order)).take(rank))
}

/// `H^k(N_g; ℤ)` from the closed formula, `0 ≤ k ≤ 2g+1`.
pub fn lee_packer_cohomology(g: usize) -> Vec<AbelianInvariants> {
    let gi = g as i64;
    (0..=2 * gi + 1)
        .map(|k| {
            if k <= gi {
                let parts: Vec<_> = (0..=k / 2).map(|j| cyclic_power(j, lp_rank(g, k - 2 * j))).collect();
                AbelianInvariants::sum_all(&parts)
            } else {
                let m = 2 * gi - k;
                let mut parts = vec![AbelianInvariants::free(lp_rank(g, m + 1))];
                parts.extend((1..=(m + 2) / 2).map(|j| cyclic_power(j, lp_rank(g, m - 2 * j + 2))));
                AbelianInvariants::sum_all(&parts)
            }
        })
        .collect()
}

/// The closed formula reindexed to homology by Poincaré duality.
pub fn lee_packer_formula(g: usize) -> HeisenbergHomology {
    let mut degrees = lee_packer_cohomology(g);
    degrees.reverse();
    HeisenbergHomology {
        g,
        route: Route::Formula,
        degrees,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDegree {
    pub k: usize,
    pub pieces: Vec<AbelianInvariants>,
    pub expected: Vec<AbelianInvariants>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub g: usize,
    pub degrees: Vec<GradedDegree>,
    pub homology: HeisenbergHomology,
    /// Transvections used for the equivariance spot check, all passing.
    pub equivariance_samples: usize,
}

/// Predicted subquotients of `H_k`, bottom to top.
pub fn expected_subquotients(g: usize, k: usize) -> Vec<AbelianInvariants> {
    let p = |i: i64| primitive_rank(g, i);
    if k <= g {
        let mut out: Vec<_> = (0..=(k as i64 - 1).max(-1) / 2)
            .filter(|_| k >= 1)
            .map(|r| cyclic_power(r + 1, p(k as i64 - 2 * r - 1)))
            .collect();
        out.push(AbelianInvariants::free(p(k as i64)));
        out
    } else {
        let top = (2 * g as i64 - k as i64 + 1) / 2;
        let eps = (k as i64 - 1) % 2;
        (0..=top).map(|r| cyclic_power(top - r, p(2 * r + eps))).collect()
    }
}

/// `gr_r coker(ι_ω: Λ^{k+1} → Λ^{k−1})` from the compatible splittings,
/// for `0 ≤ r ≤ ⌊(k−1)/2⌋`, `1 ≤ k ≤ g`.
fn coker_pieces(split: &Splittings, k: usize) -> Result<Vec<AbelianInvariants>> {
    let g = split.g;
    let iota = contraction(g, k as i64 + 1)?;
    let missing = || Error::Internal(format!("no splitting near Λ^{k}"));
    (0..=(k as i64 - 1) / 2)
        .map(|r| {
            let source = split.piece(k + 1, r + 1).ok_or_else(missing)?;
            let target = split.piece(k - 1, r).ok_or_else(missing)?;
            let images: Vec<Vec<BigInt>> = source.basis().iter().map(|v| iota.mul_vec(v)).collect();
            let m = target
                .coordinate_matrix_of(&images)
                .map_err(|_| Error::violation("ι_ω(G_{r+1}) ⊂ G_r", format!("g={g} k={k} r={r}")))?;
            Ok(cokernel(&m))
        })
        .collect()
}

/// Filtration route: graded pieces below the middle from the splittings,
/// above the middle from duality and the universal coefficient theorem.
pub fn filtration_subquotients(g: usize, samples: usize, seed: u64) -> Result<FiltrationReport> {
    let split = Splittings::build(g)?;
    let mut low: Vec<Vec<AbelianInvariants>> = Vec::with_capacity(g + 1);
    for k in 0..=g {
        let mut pieces = if k == 0 { Vec::new() } else { coker_pieces(&split, k)? };
        pieces.push(AbelianInvariants::free(primitive_rank(g, k as i64)));
        low.push(pieces);
    }
    let mut degrees = Vec::with_capacity(2 * g + 2);
    for k in 0..=2 * g + 1 {
        let pieces = if k <= g {
            low[k].clone()
        } else {
            let m = 2 * g as i64 - k as i64;
            let mut out: Vec<AbelianInvariants> = if m <= 0 {
                Vec::new()
            } else {
                let below = &low[m as usize];
                below[..below.len() - 1].iter().rev().cloned().collect()
            };
            out.push(AbelianInvariants::free(primitive_rank(g, m + 1)));
            out
        };
        let expected = expected_subquotients(g, k);
        if pieces != expected {
            return Err(Error::violation(
                "graded pieces of H_k(N_g)",
                format!("g={g} k={k}: {pieces:?} vs {expected:?}"),
            ));
        }
        degrees.push(GradedDegree { k, pieces, expected });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let t = LinearMap::random_transvection(g, 2, &mut rng);
        for k in 1..=g {
            for r in 0..=(k - 1) / 2 {
                for piece in [GradedPiece::new(g, k - 1, r)?, GradedPiece::new(g, k + 1, r + 1)?] {
                    if !graded_equivariance_check(&piece, &t)? {
                        return Err(Error::violation(
                            "equivariance of the graded identification",
                            format!("g={g} gr_{} Λ^{}", piece.r, piece.k),
                        ));
                    }
                }
            }
        }
    }
    let homology = HeisenbergHomology {
        g,
        route: Route::Filtration,
        degrees: degrees.iter().map(|d| AbelianInvariants::sum_all(&d.pieces)).collect(),
    };
    Ok(FiltrationReport {
        g,
        degrees,
        homology,
        equivariance_samples: samples,
    })
}

/// Gram matrix of `(x, y) ↦ x ∧ y ∧ ω_{g−k}` on the saturated basis of `P^k`.
pub fn pairing_gram(g: usize, k: usize) -> Result<IntMatrix> {
    let s = Space::symplectic(g);
    let w = omega_power(s, CoefficientRing::Integers, (g - k) as i64);
    let top = Monomial((1u64 << (2 * g + 1)) - 2);
    let basis: Vec<_> = primitive_basis(g, k as i64)
        .basis()
        .iter()
        .map(|v| element(g, k as i64, v))
        .collect();
    let mut rows = Vec::with_capacity(basis.len());
    for x in &basis {
        let xw = x.wedge(&w)?;
        let row: Vec<BigInt> = basis
            .iter()
            .map(|y| xw.wedge(y).map(|z| z.coefficient(top)))
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    Ok(IntMatrix::from_dense(basis.len(), basis.len(), &rows))
}

/// `|det|` of the pairing Gram matrix on `P^k` for `0 ≤ k ≤ g`. The pairing is
/// perfect only for `k ≤ 1`: on `P^2(ℤ^4)` the class `e12 − e34` pairs to `−2`
/// with itself and to `0` with the other basis vectors.
pub fn pairing_determinants(g: usize) -> Result<Vec<BigInt>> {
    (0..=g)
        .map(|k| Ok(pairing_gram(g, k)?.abs_det().expect("square")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeisenbergReport {
    pub g: usize,
    pub gysin: HeisenbergHomology,
    pub formula: HeisenbergHomology,
    pub filtration: FiltrationReport,
    pub routes_agree: bool,
    pub duality: bool,
    pub euler_characteristic: i64,
    pub pairing_determinants: Vec<BigInt>,
}

/// All three routes, duality, Euler characteristic and the primitive pairing.
pub fn heisenberg_report(g: usize, samples: usize, seed: u64) -> Result<HeisenbergReport> {
    let gysin = gysin_homology(g)?;
    let formula = lee_packer_formula(g);
    let filtration = filtration_subquotients(g, samples, seed)?;
    let report = HeisenbergReport {
        g,
        routes_agree: gysin.degrees == formula.degrees && gysin.degrees == filtration.homology.degrees,
        duality: gysin.duality_holds() && formula.duality_holds(),
        euler_characteristic: gysin.euler_characteristic(),
        pairing_determinants: pairing_determinants(g)?,
        gysin,
        formula,
        filtration,
    };
    if !report.routes_agree {
        let k = (0..report.gysin.degrees.len())
            .find(|&k| {
                report.gysin.degrees[k] != report.formula.degrees[k]
                    || report.gysin.degrees[k] != report.filtration.homology.degrees[k]
            })
            .unwrap_or(0);
        return Err(Error::violation(
            "H_*(N_g) routes agree",
            format!(
                "g={g} k={k}: gysin {} / formula {} / filtration {}",
                report.gysin.degrees[k], report.formula.degrees[k], report.filtration.homology.degrees[k]
            ),
        ));
    }
    if !report.duality || report.euler_characteristic != 0 {
        return Err(Error::violation("Poincaré duality for H_*(N_g)", format!("g={g}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(h: &AbelianInvariants) -> String {
        h.invariant_factor_string()
    }

    #[test]
    fn genus_one() {
        let h = gysin_homology(1).unwrap();
        let got: Vec<_> = h.degrees.iter().map(s).collect();
        assert_eq!(got, ["Z", "Z^2", "Z^2", "Z"]);
        let lp: Vec<_> = lee_packer_cohomology(1).iter().map(s).collect();
        assert_eq!(lp, ["Z", "Z^2", "Z^2", "Z"]);
    }

    #[test]
    fn low_degrees() {
        for g in 1..=3 {
            let h = gysin_homology(g).unwrap();
            assert_eq!(s(&h.degrees[0]), "Z");
            assert_eq!(h.degrees[1], AbelianInvariants::free(2 * g));
            assert_eq!(s(&h.degrees[2 * g + 1]), "Z");
        }
    }

    #[test]
    fn formula_second_branch() {
        assert_eq!(lee_packer_cohomology(2)[3].free_rank, 5);
    }

    #[test]
    fn spot_subquotients() {
        let r = filtration_subquotients(2, 1, 7).unwrap();
        assert_eq!(s(&r.degrees[2].pieces[0]), "0");
        assert_eq!(s(&r.homology.degrees[2]), "Z^5");
        let r = filtration_subquotients(3, 0, 0).unwrap();
        assert_eq!(s(&r.degrees[3].pieces[1]), "Z/2");
        assert_eq!(s(&r.degrees[4].pieces[1]), "Z^14");
        let r = filtration_subquotients(4, 0, 0).unwrap();
        assert_eq!(s(&r.degrees[4].pieces[1]), "Z/2^8");
    }

    #[test]
    fn all_routes_small_genus() {
        for g in 1..=3 {
            let r = heisenberg_report(g, 2, 11).unwrap();
            assert!(r.routes_agree && r.duality);
        }
    }

    #[test]
    fn primitive_pairing_determinants() {
        let d = pairing_determinants(3).unwrap();
        assert_eq!(d, [1, 1, 3, 64].map(BigInt::from));
    }
}
