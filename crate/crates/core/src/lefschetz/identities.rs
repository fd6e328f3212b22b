//! Exhaustive and randomised checks of the identities relating `∧ω_n`, `ι_{ω_m}`,
//! the star operator and the filtration.

use num_bigint::BigInt;
use rand::Rng;

use super::filtration::{coords, filtration};
use super::graded::GradedPiece;
use crate::error::{Error, Result};
use crate::exterior::{contract_form, degree_matrix, omega, omega_power, star, Multivector, Operator, Space};
use crate::linalg::Lattice;
use crate::ring::CoefficientRing;
use crate::util::{binomial, sign};

const Z: CoefficientRing = CoefficientRing::Integers;

/// `ι_ω(ω ∧ x) = ω ∧ ι_ω(x) + (k − g) x` for homogeneous `x` of degree `k`.
pub fn weighted_leibniz_holds(x: &Multivector, k: usize) -> Result<bool> {
    let s = x.space();
    let w = omega(s, Z);
    let lhs = contract_form(&w, &w.wedge(x)?)?;
    let rhs = w
        .wedge(&contract_form(&w, x)?)?
        .add(&x.scale(&BigInt::from(k as i64 - s.g as i64)))?;
    Ok(lhs == rhs)
}

/// `ι_{ω_m}(ω_n ∧ x) = Σ_j (−1)^j C(g−k+m−n, j) ω_{n−j} ∧ ι_{ω_{m−j}}(x)`.
pub fn contraction_formula_holds(x: &Multivector, k: usize, m: usize, n: usize) -> Result<bool> {
    let s = x.space();
    let g = s.g as i64;
    let lhs = contract_form(&omega_power(s, Z, m as i64), &omega_power(s, Z, n as i64).wedge(x)?)?;
    let mut rhs = Multivector::zero(s, Z);
    for j in 0..=m as i64 {
        let c = sign(j % 2 == 1) * binomial(g - k as i64 + m as i64 - n as i64, j);
        if c == BigInt::from(0) {
            continue;
        }
        let inner = contract_form(&omega_power(s, Z, m as i64 - j), x)?;
        let term = omega_power(s, Z, n as i64 - j).wedge(&inner)?;
        rhs = rhs.add(&term.scale(&c))?;
    }
    Ok(lhs == rhs)
}

/// The weighted identity on every basis monomial; returns the number of cases.
pub fn weighted_leibniz_exhaustive(g: usize) -> Result<usize> {
    let s = Space::symplectic(g);
    let mut cases = 0;
    for k in 0..=2 * g {
        for mono in s.basis(k) {
            let x = Multivector::monomial(s, Z, mono, 1.into());
            if !weighted_leibniz_holds(&x, k)? {
                return Err(Error::violation("weighted Leibniz rule", format!("g={g}, x={x}")));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// The `ι_{ω_m}(ω_n ∧ x)` expansion on every basis monomial and every `0 ≤ m, n ≤ g`.
pub fn contraction_formula_exhaustive(g: usize) -> Result<usize> {
    let s = Space::symplectic(g);
    let mut cases = 0;
    for k in 0..=2 * g {
        for mono in s.basis(k) {
            let x = Multivector::monomial(s, Z, mono, 1.into());
            for m in 0..=g {
                for n in 0..=g {
                    if !contraction_formula_holds(&x, k, m, n)? {
                        return Err(Error::violation(
                            "ι_{ω_m}(ω_n ∧ x) expansion",
                            format!("g={g}, m={m}, n={n}, x={x}"),
                        ));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

/// Both identities on every basis monomial and every `0 ≤ m, n ≤ g`; returns
/// the number of cases checked.
pub fn contraction_identities_exhaustive(g: usize) -> Result<usize> {
    Ok(weighted_leibniz_exhaustive(g)? + contraction_formula_exhaustive(g)?)
}

/// A random homogeneous element with a handful of small integer coefficients.
pub fn random_element<R: Rng>(s: Space, k: usize, terms: usize, rng: &mut R) -> Multivector {
    let basis = s.basis(k);
    let mut x = Multivector::zero(s, Z);
    if basis.is_empty() {
        return x;
    }
    for _ in 0..terms {
        let m = basis[rng.gen_range(0..basis.len())];
        let c: i64 = rng.gen_range(-3..=3);
        x = x.add(&Multivector::monomial(s, Z, m, c.into())).expect("same space");
    }
    x
}

/// `cases` random instances of the weighted identity.
pub fn weighted_leibniz_random<R: Rng>(g: usize, cases: usize, rng: &mut R) -> Result<usize> {
    let s = Space::symplectic(g);
    for _ in 0..cases {
        let k = rng.gen_range(0..=2 * g);
        let x = random_element(s, k, 3, rng);
        if !weighted_leibniz_holds(&x, k)? {
            return Err(Error::violation("weighted Leibniz rule", format!("g={g}, x={x}")));
        }
    }
    Ok(cases)
}

/// `cases` random instances of the `ι_{ω_m}(ω_n ∧ x)` expansion.
pub fn contraction_formula_random<R: Rng>(g: usize, cases: usize, rng: &mut R) -> Result<usize> {
    let s = Space::symplectic(g);
    for _ in 0..cases {
        let k = rng.gen_range(0..=2 * g);
        let m = rng.gen_range(0..=g);
        let n = rng.gen_range(0..=g);
        let x = random_element(s, k, 3, rng);
        if !contraction_formula_holds(&x, k, m, n)? {
            return Err(Error::violation(
                "ι_{ω_m}(ω_n ∧ x) expansion",
                format!("g={g}, m={m}, n={n}, x={x}"),
            ));
        }
    }
    Ok(cases)
}

/// `cases` random instances of each identity.
pub fn contraction_identities_random<R: Rng>(g: usize, cases: usize, rng: &mut R) -> Result<usize> {
    Ok(weighted_leibniz_random(g, cases, rng)? + contraction_formula_random(g, cases, rng)?)
}

/// `ι_v(x ∧ y) = ι_v(x) ∧ y + (−1)^{|x|} x ∧ ι_v(y)` on random inputs.
pub fn leibniz_random<R: Rng>(g: usize, cases: usize, rng: &mut R) -> Result<usize> {
    let s = Space::symplectic(g);
    for _ in 0..cases {
        let a = rng.gen_range(0..=2 * g);
        let b = rng.gen_range(0..=2 * g - a);
        let x = random_element(s, a, 3, rng);
        let y = random_element(s, b, 3, rng);
        let v = random_element(s, 1, 2, rng);
        let lhs = x.wedge(&y)?.contract_vector(&v)?;
        let rhs = x
            .contract_vector(&v)?
            .wedge(&y)?
            .add(&x.wedge(&y.contract_vector(&v)?)?.scale(&BigInt::from(sign(a % 2 == 1))))?;
        if lhs != rhs {
            return Err(Error::violation("signed Leibniz rule", format!("x={x}, y={y}, v={v}")));
        }
    }
    Ok(cases)
}

fn member(g: usize, k: i64, r: i64, x: &Multivector) -> Result<bool> {
    if k < 0 || k > 2 * g as i64 {
        return Ok(x.is_zero());
    }
    let v = coords(g, k, x)?;
    Ok(filtration(g, k as usize).level(r).contains(&v))
}

/// `x ∈ F_r Λ^k ⇔ ω_j ∧ x ∈ F_{r+j} Λ^{k+2j} ⇒ ι_{ω_j} x ∈ F_{r−j} Λ^{k−2j}` for
/// `x` ranging over basis monomials and random elements, with the last
/// implication reversible when `r − j ≥ −1`.
pub fn filtration_shift_check<R: Rng>(g: usize, random: usize, rng: &mut R) -> Result<usize> {
    let s = Space::symplectic(g);
    let mut cases = 0;
    for k in 0..=2 * g {
        let mut samples: Vec<Multivector> = s
            .basis(k)
            .into_iter()
            .map(|m| Multivector::monomial(s, Z, m, 1.into()))
            .collect();
        samples.extend((0..random).map(|_| random_element(s, k, 4, rng)));
        for x in &samples {
            // Levels r ≥ 0 that are kernels of ω^e with e = g − k + 1 + r ≥ 1.
            let lowest = (k as i64 - g as i64).max(0);
            for r in lowest..=(k / 2) as i64 {
                let here = member(g, k as i64, r, x)?;
                let exponent = g as i64 - k as i64 + 1 + r;
                for j in 1..=g {
                    let up = k + 2 * j;
                    if up <= 2 * g && exponent >= j as i64 {
                        let w = omega_power(s, Z, j as i64).wedge(x)?;
                        if member(g, up as i64, r + j as i64, &w)? != here {
                            return Err(Error::violation(
                                "wedge shifts the filtration",
                                format!("g={g} k={k} r={r} j={j} x={x}"),
                            ));
                        }
                        cases += 1;
                    }
                    if k >= 2 * j {
                        // The converse needs every intermediate level r, …, r − j + 1 to be ≥ 0.
                        let c = contract_form(&omega_power(s, Z, j as i64), x)?;
                        let lands = member(g, (k - 2 * j) as i64, r - j as i64, &c)?;
                        if (here && !lands) || (!here && lands && r + 1 >= j as i64) {
                            return Err(Error::violation(
                                "contraction shifts the filtration",
                                format!("g={g} k={k} r={r} j={j} x={x}"),
                            ));
                        }
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(cases)
}

/// `*` maps `F_r Λ^{g−k}` onto `F_{k+r} Λ^{g+k}` for `0 ≤ k ≤ g`.
pub fn star_filtration_check(g: usize) -> Result<usize> {
    let s = Space::symplectic(g);
    let mut cases = 0;
    for k in 0..=g {
        let m = degree_matrix(&Operator::Star, s, (g - k) as i64, (g + k) as i64)?;
        let src = filtration(g, g - k);
        let dst = filtration(g, g + k);
        for r in 0..=src.top() as i64 {
            let image: Lattice = src.level(r).image(&m);
            if image != dst.level(k as i64 + r) {
                return Err(Error::violation(
                    "star respects the filtration",
                    format!("g={g} k={k} r={r}"),
                ));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// `**x = (−1)^k x` on `Λ^{g−k}`, `*` unimodular, and `*(ω ∧ x) = ι_ω(*x)`.
pub fn star_checks(g: usize) -> Result<usize> {
    let s = Space::symplectic(g);
    let w = omega(s, Z);
    let mut cases = 0;
    for d in 0..=2 * g {
        let k = g as i64 - d as i64;
        let m = degree_matrix(&Operator::Star, s, d as i64, 2 * g as i64 - d as i64)?;
        if !m.is_unimodular() {
            return Err(Error::violation("star is invertible", format!("g={g} degree {d}")));
        }
        for mono in s.basis(d) {
            let x = Multivector::monomial(s, Z, mono, 1.into());
            let twice = star(&star(&x)?)?;
            if twice != x.scale(&BigInt::from(sign(k.rem_euclid(2) == 1))) {
                return Err(Error::violation("star squares to ±1", format!("g={g} x={x}")));
            }
            if star(&w.wedge(&x)?)? != contract_form(&w, &star(&x)?)? {
                return Err(Error::violation("star intertwines ω and ι_ω", format!("g={g} x={x}")));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// Every `gr_r Λ^k` is free of the primitive rank and `ι_{ω_r}` is unimodular on it.
pub fn graded_rank_check(g: usize) -> Result<usize> {
    let mut cases = 0;
    for k in 0..=2 * g {
        let f = filtration(g, k);
        for r in 0..=f.top() {
            let expected = f.expected_graded_rank(r as i64);
            let rank = f.graded_rank(r as i64);
            if rank != expected {
                return Err(Error::violation(
                    "rank of gr_r Λ^k",
                    format!("g={g} k={k} r={r}: {rank} vs {expected}"),
                ));
            }
            if expected > 0 {
                GradedPiece::new(g, k, r)?;
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// `r! ω_r = ω^r`.
pub fn divided_power_check(g: usize) -> Result<usize> {
    let s = Space::symplectic(g);
    let w = omega(s, Z);
    let mut power = Multivector::one(s, Z);
    for r in 0..=g {
        if power != omega_power(s, Z, r as i64).scale(&crate::util::factorial(r as u64)) {
            return Err(Error::violation("divided powers", format!("g={g} r={r}")));
        }
        power = power.wedge(&w)?;
    }
    Ok(g + 1)
}

#[cfg(test)]
pub(crate) fn unit(s: Space) -> Multivector {
    Multivector::monomial(s, Z, crate::exterior::Monomial::ONE, 1.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exhaustive_small_genus() {
        for g in 0..=3 {
            contraction_identities_exhaustive(g).unwrap();
        }
    }

    #[test]
    fn random_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        contraction_identities_random(4, 200, &mut rng).unwrap();
        leibniz_random(4, 200, &mut rng).unwrap();
    }

    #[test]
    fn filtration_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for g in 1..=3 {
            filtration_shift_check(g, 3, &mut rng).unwrap();
            star_filtration_check(g).unwrap();
            star_checks(g).unwrap();
            graded_rank_check(g).unwrap();
            divided_power_check(g).unwrap();
        }
    }

    #[test]
    fn contraction_converse_needs_nonnegative_levels() {
        let x = Multivector::monomial(
            Space::symplectic(4),
            Z,
            crate::exterior::Monomial::from_indices(&[1, 2, 3, 5]).unwrap(),
            1.into(),
        );
        let c = contract_form(&omega_power(x.space(), Z, 2), &x).unwrap();
        assert!(c.is_zero() && member(4, 0, -2, &c).unwrap());
        assert!(!member(4, 4, 0, &x).unwrap());
    }

    #[test]
    fn top_contraction_example() {
        let s = Space::symplectic(2);
        let top = omega_power(s, Z, 2);
        let got = contract_form(&omega(s, Z), &top).unwrap();
        assert_eq!(got.to_string(), "-e{1,2} - e{3,4}");
        assert_eq!(contract_form(&top, &top).unwrap(), unit(s));
    }
}
