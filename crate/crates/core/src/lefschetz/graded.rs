use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::filtration::{filtration, primitive_basis};
use crate::error::{Error, Result};
use crate::exterior::{degree_matrix, omega_power, Operator, Space};
use crate::linalg::{FreeQuotient, IntMatrix, Lattice, Solver};
use crate::ring::CoefficientRing;
use crate::util::{binomial, sign};

fn contract_matrix(g: usize, k: i64, j: i64) -> IntMatrix {
    degree_matrix(&Operator::ContractOmega(j), Space::symplectic(g), k, k - 2 * j)
        .expect("contraction stays inside the algebra")
}

fn wedge_matrix(g: usize, k: i64, j: i64) -> IntMatrix {
    degree_matrix(&Operator::WedgeOmega(j), Space::symplectic(g), k, k + 2 * j).expect("wedge stays inside the algebra")
}

/// `gr_r Λ^k` with a basis of representatives and its identification with
/// `P^{k−2r}` through `ι_{ω_r}`.
pub struct GradedPiece {
    pub g: usize,
    pub k: usize,
    pub r: usize,
    quotient: FreeQuotient,
    primitive: Lattice,
    /// Columns: `P^{k−2r}` coordinates of `ι_{ω_r}` applied to the representatives.
    iso: IntMatrix,
    inverse: Solver,
}

impl GradedPiece {
    /// Fails with a theorem violation unless `ι_{ω_r}: gr_r Λ^k → P^{k−2r}` is
    /// a well-defined isomorphism of free groups.
    pub fn new(g: usize, k: usize, r: usize) -> Result<Self> {
        let check = format!("gr_{r} Λ^{k}(ℤ^{}) ≅ P^{}", 2 * g, k as i64 - 2 * r as i64);
        if 2 * r > k || k > g + r {
            return Err(Error::InvalidArgument(format!("{check}: indices out of range")));
        }
        let f = filtration(g, k);
        let top = f.level(r as i64);
        let below = f.level(r as i64 - 1);
        let quotient = top.free_quotient(&below)?;
        let primitive = primitive_basis(g, (k - 2 * r) as i64);
        let m = contract_matrix(g, k as i64, r as i64);
        for v in below.basis() {
            if m.mul_vec(v).iter().any(|c| !c.is_zero()) {
                return Err(Error::violation(&check, "ι_{ω_r} does not kill F_{r−1}"));
            }
        }
        let images: Vec<Vec<BigInt>> = quotient.representatives().iter().map(|t| m.mul_vec(t)).collect();
        let iso = primitive
            .coordinate_matrix_of(&images)
            .map_err(|_| Error::violation(&check, "image leaves the primitive lattice"))?;
        if iso.rows() != iso.cols() {
            return Err(Error::violation(
                &check,
                format!("rank gr = {} but rank P = {}", iso.cols(), iso.rows()),
            ));
        }
        if !iso.is_unimodular() {
            return Err(Error::violation(&check, "ι_{ω_r} is not unimodular on gr"));
        }
        let inverse = Solver::new(&iso);
        Ok(GradedPiece {
            g,
            k,
            r,
            quotient,
            primitive,
            iso,
            inverse,
        })
    }

    pub fn rank(&self) -> usize {
        self.quotient.rank()
    }

    pub fn representatives(&self) -> &[Vec<BigInt>] {
        self.quotient.representatives()
    }

    pub fn primitive(&self) -> &Lattice {
        &self.primitive
    }

    pub fn iso_matrix(&self) -> &IntMatrix {
        &self.iso
    }

    pub fn iso_determinant(&self) -> BigInt {
        self.iso.abs_det().expect("graded isomorphism is square")
    }

    /// Coordinates of `[v]` in the representative basis; `None` unless `v ∈ F_r`.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.quotient.coordinates(v)
    }

    /// A vector of `F_r Λ^k` whose class is `ι_{ω_r}^{-1}(x)`, for `x` in ambient
    /// coordinates of `Λ^{k−2r}`.
    pub fn lift(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let p = self
            .primitive
            .coordinates(x)
            .ok_or_else(|| Error::InvalidArgument("vector is not primitive".into()))?;
        let c = self.inverse.solve(&p)?;
        Ok(self.combine(&c))
    }

    /// Graded coordinates of `ι_{ω_r}^{-1}(x)`.
    pub fn inverse_coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let p = self
            .primitive
            .coordinates(x)
            .ok_or_else(|| Error::InvalidArgument("vector is not primitive".into()))?;
        self.inverse.solve(&p)
    }

    fn combine(&self, c: &[BigInt]) -> Vec<BigInt> {
        let n = self.quotient.representatives().first().map_or(0, Vec::len);
        let mut out = vec![BigInt::zero(); n];
        for (ci, t) in c.iter().zip(self.quotient.representatives()) {
            if ci.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(t) {
                *o += ci * x;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Wedge,
    Contract,
}

/// Outcome of comparing a graded map with a scalar multiple of the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedMapReport {
    pub g: usize,
    pub k: usize,
    pub r: usize,
    pub j: usize,
    pub direction: Direction,
    pub claimed_constant: BigInt,
    pub verified: bool,
}

/// Constants of `P^k → gr_r Λ^{k+2r} → gr_{r+j} Λ^{k+2r+2j} → P^k` (wedge by
/// `ω_j`) and of the reverse composite through `ι_{ω_j}`, for primitive degree `k`.
///
/// With `d = k + 2r` the degree of the source piece, the wedge constant is
/// `(−1)^j C(g−d+r, j) = (−1)^j C(g−k−r, j)`; the contraction constant is `C(r+j, j)`.
pub fn graded_constants(g: usize, k: usize, r: usize, j: usize) -> Result<(GradedMapReport, GradedMapReport)> {
    if k > g || r + j > g - k {
        return Err(Error::InvalidArgument(format!(
            "need k ≤ g and r + j ≤ g − k, got g={g} k={k} r={r} j={j}"
        )));
    }
    let low = GradedPiece::new(g, k + 2 * r, r)?;
    let high = GradedPiece::new(g, k + 2 * r + 2 * j, r + j)?;
    let f_high = filtration(g, k + 2 * r + 2 * j);
    let f_low = filtration(g, k + 2 * r);
    let wedge = wedge_matrix(g, (k + 2 * r) as i64, j as i64);
    let contract = contract_matrix(g, (k + 2 * r + 2 * j) as i64, j as i64);
    let down_high = contract_matrix(g, (k + 2 * r + 2 * j) as i64, (r + j) as i64);
    let down_low = contract_matrix(g, (k + 2 * r) as i64, r as i64);

    let wedge_c = wedge_constant(g, k, r, j);
    let contract_c = binomial((r + j) as i64, j as i64);
    let mut wedge_ok = true;
    let mut contract_ok = true;
    for x in low.primitive().basis() {
        let y = low.lift(x)?;
        let z = wedge.mul_vec(&y);
        wedge_ok &= f_high.level((r + j) as i64).contains(&z) && down_high.mul_vec(&z) == scaled(x, &wedge_c);

        let y = high.lift(x)?;
        let z = contract.mul_vec(&y);
        contract_ok &= f_low.level(r as i64).contains(&z) && down_low.mul_vec(&z) == scaled(x, &contract_c);
    }
    let report = |direction, claimed_constant, verified| GradedMapReport {
        g,
        k,
        r,
        j,
        direction,
        claimed_constant,
        verified,
    };
    Ok((
        report(Direction::Wedge, wedge_c, wedge_ok),
        report(Direction::Contract, contract_c, contract_ok),
    ))
}

/// Every `(k, r, j)` with `k ≤ g`, `r + j ≤ g − k`.
pub fn constants_table(g: usize) -> Result<Vec<GradedMapReport>> {
    let mut out = Vec::new();
    for k in 0..=g {
        for r in 0..=g - k {
            for j in 0..=g - k - r {
                let (w, c) = graded_constants(g, k, r, j)?;
                out.push(w);
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// `(−1)^j C(g−k−r, j)` for primitive degree `k`.
pub fn wedge_constant(g: usize, k: usize, r: usize, j: usize) -> BigInt {
    sign(j % 2 == 1) * binomial(g as i64 - k as i64 - r as i64, j as i64)
}

fn scaled(v: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    v.iter().map(|x| x * c).collect()
}

/// Checks `[ω_r ∧ x] = (−1)^r C(g−k, r) · ι_{ω_r}^{-1}(x)` in `gr_r Λ^{k+2r}` for
/// every `x` in the primitive basis of `P^k`.
pub fn divisibility_check(g: usize, k: usize, r: usize) -> Result<()> {
    let check = format!("divisibility of [ω_{r} ∧ P^{k}] (g={g})");
    if k > g || r > g - k {
        return Err(Error::InvalidArgument(format!("{check}: need r ≤ g − k")));
    }
    let piece = GradedPiece::new(g, k + 2 * r, r)?;
    let wedge = wedge_matrix(g, k as i64, r as i64);
    let c = sign(r % 2 == 1) * binomial((g - k) as i64, r as i64);
    for x in piece.primitive().basis() {
        let z = wedge.mul_vec(x);
        let got = piece
            .coordinates(&z)
            .ok_or_else(|| Error::violation(&check, "ω_r ∧ x leaves F_r"))?;
        let want = scaled(&piece.inverse_coordinates(x)?, &c);
        if got != want {
            return Err(Error::violation(&check, format!("expected {want:?}, found {got:?}")));
        }
        let content = got.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
        if !c.is_zero() && !(content.is_zero() || content.is_multiple_of(&c.abs())) {
            return Err(Error::violation(&check, "class is not divisible"));
        }
    }
    Ok(())
}

/// Results of the checks that rule out splittings compatible with `ι_ω`
/// at the top and equivariant splittings in even degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub g: usize,
    pub contraction_of_top_form: bool,
    pub content_of_omega_g_minus_1: BigInt,
    /// `(k, coordinate of ω_k in gr_k Λ^{2k})` for `0 < k < g`.
    pub omega_k_classes: Vec<(usize, BigInt)>,
}

pub fn obstruction_checks(g: usize) -> Result<ObstructionReport> {
    if g < 2 {
        return Err(Error::InvalidArgument("obstructions need g ≥ 2".into()));
    }
    let s = Space::symplectic(g);
    let z = CoefficientRing::Integers;
    let top = omega_power(s, z, g as i64);
    let below = omega_power(s, z, g as i64 - 1);
    let contracted = crate::exterior::contract_form(&omega_power(s, z, 1), &top)?;
    let contraction_of_top_form = contracted == below.scale(&BigInt::from(-1));
    let content = below.terms().fold(BigInt::zero(), |a, (_, c)| a.gcd(c));
    let mut classes = Vec::new();
    for k in 1..g {
        let piece = GradedPiece::new(g, 2 * k, k)?;
        let w = super::filtration::coords(g, 2 * k as i64, &omega_power(s, z, k as i64))?;
        let c = piece
            .coordinates(&w)
            .ok_or_else(|| Error::violation("ω_k ∈ F_k", format!("fails for k={k}")))?;
        classes.push((k, c[0].clone()));
    }
    let report = ObstructionReport {
        g,
        contraction_of_top_form,
        content_of_omega_g_minus_1: content,
        omega_k_classes: classes,
    };
    if !report.contraction_of_top_form {
        return Err(Error::violation("ι_ω(ω_g) = −ω_{g−1}", format!("fails at g={g}")));
    }
    if !report.content_of_omega_g_minus_1.is_one() {
        return Err(Error::violation("content of ω_{g−1}", "not 1"));
    }
    for (k, c) in &report.omega_k_classes {
        if c.abs() != binomial(g as i64, *k as i64) {
            return Err(Error::violation(
                "ω_k in gr_k Λ^{2k}",
                format!("k={k}: coordinate {c}, expected ±C({g},{k})"),
            ));
        }
    }
    Ok(report)
}

/// `ι_{ω_r}` on `gr_r Λ^k` commutes with the action of `map` on both sides.
pub fn graded_equivariance_check(piece: &GradedPiece, map: &crate::exterior::LinearMap) -> Result<bool> {
    let s = Space::symplectic(piece.g);
    let src = degree_matrix(&Operator::Pushforward(map.clone()), s, piece.k as i64, piece.k as i64)?;
    let low_k = (piece.k - 2 * piece.r) as i64;
    let dst = degree_matrix(&Operator::Pushforward(map.clone()), s, low_k, low_k)?;
    let m = contract_matrix(piece.g, piece.k as i64, piece.r as i64);
    for t in piece.representatives() {
        let moved = src.mul_vec(t);
        if piece.coordinates(&moved).is_none() {
            return Ok(false);
        }
        if m.mul_vec(&moved) != dst.mul_vec(&m.mul_vec(t)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_pieces_are_unimodular() {
        let p = GradedPiece::new(3, 3, 1).unwrap();
        assert_eq!(p.rank(), 6);
        assert!(p.iso_determinant().is_one());
        let p = GradedPiece::new(2, 4, 2).unwrap();
        assert_eq!(p.rank(), 1);
        for g in 1..=4 {
            for r in 0..=g {
                let p = GradedPiece::new(g, 2 * r, r).unwrap();
                assert_eq!(p.rank(), 1);
                let w = omega_power(Space::symplectic(g), CoefficientRing::Integers, r as i64);
                let x = crate::exterior::contract_form(&w, &w).unwrap();
                let want = sign(r % 2 == 1) * binomial(g as i64, r as i64);
                assert_eq!(x.coefficient(crate::exterior::Monomial::ONE), want);
            }
        }
    }

    #[test]
    fn constants_examples() {
        let (w, c) = graded_constants(2, 0, 1, 1).unwrap();
        assert_eq!(w.claimed_constant, BigInt::from(-1));
        assert!(w.verified && c.verified);
        let (w, c) = graded_constants(3, 1, 1, 0).unwrap();
        assert!(w.claimed_constant.is_one() && c.claimed_constant.is_one());
        assert!(w.verified && c.verified);
        for g in 1..=4 {
            let (_, c) = graded_constants(g, 0, g - 1, 1).unwrap();
            assert_eq!(c.claimed_constant, BigInt::from(g));
            assert!(c.verified);
        }
    }

    #[test]
    fn wrong_constants_are_detected() {
        let low = GradedPiece::new(2, 2, 1).unwrap();
        let x = &low.primitive().basis()[0];
        let y = low.lift(x).unwrap();
        let z = wedge_matrix(2, 2, 1).mul_vec(&y);
        let back = contract_matrix(2, 4, 2).mul_vec(&z);
        // The lift is −e^{12}, so the composite sends 1 to ι_{ω_2}(−e^{1234}) = −1.
        assert_eq!(back, scaled(x, &BigInt::from(-1)));
        assert_ne!(back, scaled(x, &BigInt::from(-3)));
    }

    #[test]
    fn divisibility_examples() {
        divisibility_check(2, 0, 1).unwrap();
        divisibility_check(3, 3, 0).unwrap();
        divisibility_check(3, 1, 2).unwrap();
        let p = GradedPiece::new(2, 2, 1).unwrap();
        let w =
            super::super::filtration::coords(2, 2, &omega_power(Space::symplectic(2), CoefficientRing::Integers, 1))
                .unwrap();
        assert_eq!(p.coordinates(&w).unwrap()[0].abs(), BigInt::from(2));
    }

    #[test]
    fn obstructions() {
        let r = obstruction_checks(2).unwrap();
        assert_eq!(r.omega_k_classes[0].1.abs(), BigInt::from(2));
        let r = obstruction_checks(3).unwrap();
        assert!(r.content_of_omega_g_minus_1.is_one());
    }
}
