use num_bigint::BigInt;
use serde::Serialize;

use super::fpmodule::{
    equivariant_hom_space, exterior_power_action, f2_transvections, FpModule, HomSpace, Subquotient,
};
use crate::cokernels::endomorphism_matrix;
use crate::error::{Error, Result};
use crate::exterior::{contract_form, degree_matrix, omega_power, Basis, Operator, Parity, Space};
use crate::lefschetz::filtration;
use crate::linalg::fp::reduce_mod;
use crate::linalg::{FpMatrix, Subspace};
use crate::CoefficientRing;

const G: usize = 4;
const P: u64 = 2;

fn space() -> Space {
    Space::symplectic(G)
}

fn dim(k: usize) -> usize {
    Basis::degree(space(), k as i64).len()
}

fn contraction(r: i64, k: usize) -> Result<FpMatrix> {
    Ok(FpMatrix::from_int(
        &degree_matrix(&Operator::ContractOmega(r), space(), k as i64, k as i64 - 2 * r)?,
        P,
    ))
}

/// `F_r Λ^k(𝔽₂⁸)`, the reduction of the saturated integral level.
fn level(k: usize, r: i64) -> Subspace {
    let vs: Vec<Vec<u64>> = filtration(G, k).level(r).basis().iter().map(|v| reduce(v)).collect();
    Subspace::span(P, dim(k), &vs)
}

fn reduce(v: &[BigInt]) -> Vec<u64> {
    v.iter().map(|x| reduce_mod(x, P)).collect()
}

fn whole(n: usize) -> Subspace {
    let units: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    Subspace::span(P, n, &units)
}

fn image(m: &FpMatrix, s: &Subspace) -> Subspace {
    let vs: Vec<Vec<u64>> = s.basis().iter().map(|v| m.mul_vec(v)).collect();
    Subspace::span(P, m.rows(), &vs)
}

fn omega_vec(r: i64) -> Result<Vec<u64>> {
    let w = omega_power(space(), CoefficientRing::Integers, r);
    Ok(reduce(&Basis::degree(space(), 2 * r).coordinates(&w)?))
}

/// Place a vector on `Λ^k` into a basis spanning several degrees.
fn embed(target: &Basis, k: usize, v: &[u64]) -> Vec<u64> {
    let src = Basis::degree(space(), k as i64);
    let mut out = vec![0; target.len()];
    for (i, &c) in v.iter().enumerate() {
        if c != 0 {
            out[target.index_of(src.monomial(i)).expect("degree present")] = c;
        }
    }
    out
}

fn embed_all(target: &Basis, k: usize, s: &Subspace) -> Vec<Vec<u64>> {
    s.basis().iter().map(|v| embed(target, k, v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

fn check(name: &str, holds: bool, detail: impl Into<String>) -> NamedCheck {
    NamedCheck {
        name: name.into(),
        holds,
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct F2Dimensions {
    pub c4: usize,
    pub contracted_f2_lambda6: usize,
    pub t: usize,
    pub c4_prime: usize,
    pub lambda2_mod_omega: usize,
    pub p2: usize,
    pub odd_omega: usize,
    pub odd_exp: usize,
    pub even_omega: usize,
    pub even_exp: usize,
    pub total_omega: usize,
    pub total_exp: usize,
}

/// The genus four `𝔽₂` modules with their `Sp(8, 𝔽₂)` transvection actions.
#[derive(Debug, Clone)]
pub struct F2Genus4 {
    pub lambda0: FpModule,
    pub lambda2: FpModule,
    pub c4: FpModule,
    pub t: FpModule,
    pub c4_prime: FpModule,
    pub lambda2_mod_omega: FpModule,
    pub p2: FpModule,
    /// `ω` in `Λ²` and `ω₂` in `C₄′` coordinates.
    pub omega_in_lambda2: Vec<u64>,
    pub omega2_in_c4_prime: Vec<u64>,
    /// Basis of `P²` in `Λ²` coordinates.
    pub p2_in_lambda2: Vec<Vec<u64>>,
    pub dims: F2Dimensions,
    /// Integral values `ι_{ω₂}(ω₂)` and the `c` with `ι_ω(ω₂) = c·ω`.
    pub contract_omega2_omega2: BigInt,
    pub contract_omega_omega2: BigInt,
    pub checks: Vec<NamedCheck>,
}

impl F2Genus4 {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn cokernel_dim(op: &Operator, parity: Parity) -> Result<(usize, FpMatrix, Basis)> {
    let (m, b) = endomorphism_matrix(G, op, Some(parity))?;
    let m = FpMatrix::from_int(&m, P);
    Ok((b.len() - m.rank(), m, b))
}

fn odd_checks(checks: &mut Vec<NamedCheck>) -> Result<(usize, usize)> {
    let (odd_omega, w, basis) = cokernel_dim(&Operator::ContractOmega(1), Parity::Odd)?;
    let (odd_exp, x, _) = cokernel_dim(&Operator::ContractExp, Parity::Odd)?;
    let n = basis.len();
    let mut low = Vec::new();
    for k in [1, 3, 5] {
        low.extend(embed_all(&basis, k, &whole(dim(k))));
    }
    let low = Subspace::span(P, n, &low);
    let mut expected = embed_all(&basis, 1, &whole(dim(1)));
    expected.extend(embed_all(&basis, 3, &level(3, 0)));
    let expected = Subspace::span(P, n, &expected);
    let (iw, ix) = (image(&w, &low), image(&x, &low));
    checks.push(check(
        "odd: both images of Λ¹ ⊕ Λ³ ⊕ Λ⁵ equal Λ¹ ⊕ P³",
        iw == expected && ix == expected,
        format!("dim {} and {}, expected {}", iw.dim(), ix.dim(), expected.dim()),
    ));
    let to5 = contraction(1, 7)?;
    let onto = level(5, 1).sum(&image(&to5, &whole(dim(7))));
    checks.push(check(
        "odd: ι_ω: Λ⁷ → gr₂Λ⁵ is an isomorphism",
        onto.dim() == dim(5) && dim(7) == dim(5) - level(5, 1).dim(),
        format!("{} of {}", onto.dim(), dim(5)),
    ));
    let mut comp: Vec<Vec<u64>> = level(3, 0)
        .complement_positions()
        .into_iter()
        .map(|c| embed(&basis, 3, &(0..dim(3)).map(|i| u64::from(i == c)).collect::<Vec<_>>()))
        .collect();
    comp.extend(embed_all(&basis, 5, &level(5, 1)));
    comp.extend(embed_all(&basis, 7, &whole(dim(7))));
    let comp = Subspace::span(P, n, &comp);
    let full_w = image(&w, &whole(n));
    let full_x = image(&x, &whole(n));
    let complementary = |im: &Subspace| im.sum(&comp).dim() == n && im.dim() + comp.dim() == n;
    checks.push(check(
        "odd: gr₁Λ³ ⊕ F₁Λ⁵ ⊕ Λ⁷ complements both images",
        complementary(&full_w) && complementary(&full_x),
        format!("complement dim {} = 8 + 48 + 8", comp.dim()),
    ));
    checks.push(check(
        "odd: cokernel dimensions",
        odd_omega == odd_exp && odd_omega == dim(1) + dim(1) + level(3, 0).dim(),
        format!(
            "{odd_omega} and {odd_exp}, Λ¹ ⊕ Λ¹ ⊕ P³ has {}",
            2 * dim(1) + level(3, 0).dim()
        ),
    ));
    Ok((odd_omega, odd_exp))
}

/// Builds `C₄ = Λ⁴/ι_ω(F₂Λ⁶)`, `T`, `C₄′`, `Λ²/⟨ω⟩` and `P²` over `𝔽₂` at genus four,
/// and checks the structure of both even cokernels used to tell them apart.
pub fn f2_g4_structures() -> Result<F2Genus4> {
    let s = space();
    let ts = f2_transvections(G);
    let rho = |k: usize| -> Vec<FpMatrix> { ts.iter().map(|t| exterior_power_action(t, s, k)).collect() };
    let (rho2, rho4) = (rho(2), rho(4));
    let mut checks = Vec::new();

    let w64 = contraction(1, 6)?;
    let b = image(&w64, &level(6, 2));
    let lam4 = whole(dim(4));
    let c4 = Subquotient::new(&lam4, &b)?;
    let t_num = b.sum(&image(&w64, &whole(dim(6))));
    let t = Subquotient::new(&t_num, &b)?;
    let w2_40 = contraction(2, 4)?;
    let kills_b = b.basis().iter().all(|v| w2_40.mul_vec(v).iter().all(|&x| x == 0));
    checks.push(check(
        "ι_{ω₂} vanishes on ι_ω(F₂Λ⁶), so it is defined on C₄",
        kills_b,
        "",
    ));
    let a_prime = Subspace::span(P, dim(4), &w2_40.kernel());
    let c4p = Subquotient::new(&a_prime, &b)?;
    let omega = omega_vec(1)?;
    let lam2 = whole(dim(2));
    let quot = Subquotient::new(&lam2, &Subspace::span(P, dim(2), &[omega.clone()]))?;
    let p2 = level(2, 0);
    let p2_sub = Subquotient::new(&p2, &Subspace::zero(P, dim(2)))?;

    let lambda0 = FpModule::trivial("Λ⁰", P, 1, ts.len());
    let lambda2 = FpModule::new("Λ²", P, dim(2), rho2.clone())?;
    let c4_mod = c4.module("C₄", &rho4)?;
    let t_mod = t.module("T", &rho4)?;
    let c4p_mod = c4p.module("C₄′", &rho4)?;
    let quot_mod = quot.module("Λ²/⟨ω⟩", &rho2)?;
    let p2_mod = p2_sub.module("P²", &rho2)?;

    // images of the even degrees below the top
    let (even_omega, ew, ebasis) = cokernel_dim(&Operator::ContractOmega(1), Parity::Even)?;
    let (even_exp, ex, _) = cokernel_dim(&Operator::ContractExp, Parity::Even)?;
    let n = ebasis.len();
    let mut dom = Vec::new();
    for k in [0, 2, 4] {
        dom.extend(embed_all(&ebasis, k, &whole(dim(k))));
    }
    dom.extend(embed_all(&ebasis, 6, &level(6, 2)));
    let dom = Subspace::span(P, n, &dom);
    let mut expected = embed_all(&ebasis, 0, &whole(1));
    expected.extend(embed_all(&ebasis, 2, &p2));
    expected.extend(embed_all(&ebasis, 4, &b));
    let expected = Subspace::span(P, n, &expected);
    let (iw, ix) = (image(&ew, &dom), image(&ex, &dom));
    checks.push(check(
        "even: both images of Λ⁰ ⊕ Λ² ⊕ Λ⁴ ⊕ F₂Λ⁶ equal Λ⁰ ⊕ P² ⊕ ι_ωF₂Λ⁶",
        iw == expected && ix == expected,
        format!("dim {} and {}, expected {}", iw.dim(), ix.dim(), expected.dim()),
    ));

    let w2_62 = contraction(2, 6)?;
    let top6: Vec<u64> = {
        let c = level(6, 2).complement_positions();
        (0..dim(6)).map(|i| u64::from(i == c[0])).collect()
    };
    let graded_iso = level(6, 2).dim() + 1 == dim(6)
        && p2.dim() + 1 == dim(2)
        && !p2.contains(&w2_62.mul_vec(&top6))
        && level(6, 2).basis().iter().all(|v| p2.contains(&w2_62.mul_vec(v)));
    checks.push(check("ι_{ω₂}: gr₃Λ⁶ → gr₁Λ² is an isomorphism", graded_iso, ""));
    let w3_82 = contraction(3, 8)?;
    checks.push(check("ι_{ω₃}: Λ⁸ → gr₁Λ² is zero", p2.contains(&w3_82.column(0)), ""));

    let j = contraction(1, 8)?.column(0);
    let omega3 = omega_vec(3)?;
    checks.push(check(
        "j = ι_ω: Λ⁸ → Λ⁶ is injective with j(ω₄) = ω₃ ∈ F₂Λ⁶",
        j.iter().any(|&x| x != 0) && j == omega3 && level(6, 2).contains(&omega3),
        "",
    ));

    let splits = a_prime.sum(&t_num).dim() == dim(4) && c4p.dim() + t.dim() == c4.dim();
    let meet_trivial = Subspace::span(P, dim(4), &{
        let mut v = a_prime.basis().to_vec();
        v.extend(t_num.basis().iter().cloned());
        v
    })
    .dim()
        == a_prime.dim() + t_num.dim() - b.dim();
    checks.push(check(
        "C₄ = C₄′ ⊕ T",
        splits && meet_trivial,
        format!("{} = {} + {}", c4.dim(), c4p.dim(), t.dim()),
    ));

    let i_top = contraction(2, 8)?.column(0);
    let omega2 = omega_vec(2)?;
    let omega2_coords = c4p.coordinates(&omega2);
    checks.push(check(
        "i = ι_{ω₂}: Λ⁸ → C₄ has i(ω₄) = ω₂ ∈ C₄′, nonzero",
        i_top == omega2 && omega2_coords.as_ref().is_some_and(|c| c.iter().any(|&x| x != 0)),
        "",
    ));
    let w2 = omega_power(s, CoefficientRing::Integers, 2);
    let w1 = omega_power(s, CoefficientRing::Integers, 1);
    let c22 = contract_form(&w2, &w2)?.coefficient(crate::exterior::Monomial::from_indices(&[]).expect("empty"));
    let c12 = contract_form(&w1, &w2)?;
    let ratio = c12.coefficient(crate::exterior::Monomial::from_indices(&[1, 2]).expect("increasing"));
    checks.push(check(
        "ι_ω(ω₂) is a multiple of ω",
        c12 == w1.scale(&ratio),
        format!("ι_ω(ω₂) = {ratio}·ω, ι_{{ω₂}}(ω₂) = {c22}"),
    ));

    checks.push(check(
        "even: cokernel dimensions",
        even_omega == 2 + c4p.dim() + quot.dim() && even_exp == 2 + c4p.dim() + dim(2) - 1,
        format!(
            "{even_omega} = 2 + {} + {}, {even_exp} = 2 + ({} + {} − 1)",
            c4p.dim(),
            quot.dim(),
            c4p.dim(),
            dim(2)
        ),
    ));
    let (odd_omega, odd_exp) = odd_checks(&mut checks)?;

    let dims = F2Dimensions {
        c4: c4.dim(),
        contracted_f2_lambda6: b.dim(),
        t: t.dim(),
        c4_prime: c4p.dim(),
        lambda2_mod_omega: quot.dim(),
        p2: p2.dim(),
        odd_omega,
        odd_exp,
        even_omega,
        even_exp,
        total_omega: odd_omega + even_omega,
        total_exp: odd_exp + even_exp,
    };
    Ok(F2Genus4 {
        lambda0,
        lambda2,
        c4: c4_mod,
        t: t_mod,
        c4_prime: c4p_mod,
        lambda2_mod_omega: quot_mod,
        p2: p2_mod,
        omega_in_lambda2: omega,
        omega2_in_c4_prime: omega2_coords.unwrap_or_default(),
        p2_in_lambda2: p2.basis().to_vec(),
        dims,
        contract_omega2_omega2: c22,
        contract_omega_omega2: ratio,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonIsoCertificate {
    pub hom_to_c4_prime: HomSpace,
    pub hom_to_quotient: HomSpace,
    pub hom_to_sum: HomSpace,
    pub hom_to_trivial: HomSpace,
    /// Every basis map `Λ² → C₄′ ⊕ Λ²/⟨ω⟩` sends `ω` to zero.
    pub kills_omega: bool,
    /// Every basis map `Λ² → C₄′` vanishes on `P²`.
    pub c4_prime_kills_p2: bool,
    pub omega2_nonzero: bool,
    pub even_dims_equal: bool,
    pub structures_hold: bool,
}

impl NonIsoCertificate {
    pub fn holds(&self) -> bool {
        self.kills_omega
            && self.c4_prime_kills_p2
            && self.omega2_nonzero
            && self.even_dims_equal
            && self.structures_hold
            && self.hom_to_sum.verified
            && self.hom_to_sum.dim == self.hom_to_c4_prime.dim + self.hom_to_quotient.dim
    }
}

fn all_kill(h: &HomSpace, vs: &[Vec<u64>]) -> bool {
    h.basis
        .iter()
        .all(|m| vs.iter().all(|v| m.mul_vec(v).iter().all(|&x| x == 0)))
}

/// No `Sp(8, 𝔽₂)`-equivariant injection `Λ² → C₄′ ⊕ Λ²/⟨ω⟩`, certified by
/// solving for the whole hom space and checking that `ω` dies under every basis map.
pub fn noniso_certificate(s: &F2Genus4) -> Result<NonIsoCertificate> {
    let sum = s.c4_prime.direct_sum(&s.lambda2_mod_omega)?;
    let hom_to_c4_prime = equivariant_hom_space(&s.lambda2, &s.c4_prime)?;
    let hom_to_quotient = equivariant_hom_space(&s.lambda2, &s.lambda2_mod_omega)?;
    let hom_to_sum = equivariant_hom_space(&s.lambda2, &sum)?;
    let hom_to_trivial = equivariant_hom_space(&s.lambda2, &s.lambda0)?;
    let omega = [s.omega_in_lambda2.clone()];
    let cert = NonIsoCertificate {
        kills_omega: all_kill(&hom_to_sum, &omega),
        c4_prime_kills_p2: all_kill(&hom_to_c4_prime, &s.p2_in_lambda2),
        omega2_nonzero: s.omega2_in_c4_prime.iter().any(|&x| x != 0),
        even_dims_equal: s.dims.even_omega == s.dims.even_exp,
        structures_hold: s.holds(),
        hom_to_c4_prime,
        hom_to_quotient,
        hom_to_sum,
        hom_to_trivial,
    };
    if !cert.kills_omega {
        return Err(Error::violation(
            "every equivariant Λ² → C₄′ ⊕ Λ²/⟨ω⟩ kills ω",
            "a hom-space basis element is nonzero on ω",
        ));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn structures() -> &'static F2Genus4 {
        static S: OnceLock<F2Genus4> = OnceLock::new();
        S.get_or_init(|| f2_g4_structures().unwrap())
    }

    #[test]
    fn dimensions() {
        let d = &structures().dims;
        assert_eq!((d.c4, d.contracted_f2_lambda6, d.t, d.c4_prime), (44, 26, 1, 43));
        assert_eq!((d.lambda2_mod_omega, d.p2), (27, 27));
        assert_eq!(d.total_omega, 136);
        assert_eq!(d.total_exp, 136);
        // Λ¹ ⊕ Λ¹ ⊕ P³ with rank P³ = C(8,3) − C(8,1)
        assert_eq!(d.odd_omega, 8 + 8 + 48);
        assert_eq!(d.even_omega, 72);
    }

    #[test]
    fn structure_checks() {
        let s = structures();
        for c in &s.checks {
            assert!(c.holds, "{}: {}", c.name, c.detail);
        }
        // ι_{ω_r}(ω_r) = (−1)^r C(g, r)
        assert_eq!(s.contract_omega2_omega2, BigInt::from(6));
        assert_eq!(s.contract_omega_omega2, BigInt::from(-3));
    }

    #[test]
    fn certificate() {
        let s = structures();
        let c = noniso_certificate(s).unwrap();
        assert!(c.holds());
        assert!(c.hom_to_quotient.dim >= 1);
        // ι_ω: Λ² → Λ⁰ is itself equivariant and nonzero mod 2
        assert!(c.hom_to_trivial.dim >= 1);
        let id = equivariant_hom_space(&s.lambda2, &s.lambda2).unwrap();
        assert!(id.basis.contains(&FpMatrix::identity(2, 28)));
    }
}
