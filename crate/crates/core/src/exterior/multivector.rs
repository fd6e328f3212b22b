use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::space::Space;
use crate::error::{Error, Result};
use crate::ring::CoefficientRing;
use crate::util::factorial;

/// A sparse element of `Λ*(R^{2g})` (or of the extended `Λ*(R^{2g+1})`).
///
/// Zero coefficients are never stored; coefficients over modular rings are
/// kept in `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multivector {
    space: Space,
    ring: CoefficientRing,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Multivector {
    pub fn zero(space: Space, ring: CoefficientRing) -> Self {
        Multivector {
            space,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: Space, ring: CoefficientRing) -> Self {
        Self::monomial(space, ring, Monomial::ONE, BigInt::one())
    }

    pub fn monomial(space: Space, ring: CoefficientRing, m: Monomial, c: BigInt) -> Self {
        assert!(space.contains(m), "monomial {m} outside the ambient space");
        let mut v = Self::zero(space, ring);
        v.add_term(m, c);
        v
    }

    pub fn basis_vector(space: Space, i: usize) -> Self {
        Self::monomial(space, CoefficientRing::Integers, Monomial::single(i), BigInt::one())
    }

    pub fn from_terms(
        space: Space,
        ring: CoefficientRing,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Self {
        let mut v = Self::zero(space, ring);
        for (m, c) in terms {
            assert!(space.contains(m), "monomial {m} outside the ambient space");
            v.add_term(m, c);
        }
        v
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn g(&self) -> usize {
        self.space.g
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        let reduced = self.ring.reduce(std::mem::take(entry));
        if reduced.is_zero() {
            self.terms.remove(&m);
        } else {
            *entry = reduced;
        }
    }

    /// `Some(k)` if every term has degree `k` (zero counts as homogeneous of any degree, reported as 0).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => Some(0),
            Some(d) => degs.all(|e| e == d).then_some(d),
        }
    }

    pub fn degree_part(&self, k: usize) -> Multivector {
        Multivector {
            space: self.space,
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Re-interprets the integer coefficients in another ring.
    pub fn change_ring(&self, ring: CoefficientRing) -> Multivector {
        Multivector::from_terms(self.space, ring, self.terms.iter().map(|(m, c)| (*m, c.clone())))
    }

    fn check_compatible(&self, other: &Multivector) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch(format!(
                "ambient spaces {:?} and {:?}",
                self.space, other.space
            )));
        }
        if self.ring != other.ring {
            return Err(Error::DimensionMismatch(format!(
                "coefficient rings {} and {}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> Multivector {
        let mut out = Self::zero(self.space, self.ring);
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    /// Exact division of every coefficient over ℤ; `None` if some coefficient
    /// is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<Multivector> {
        let mut out = Self::zero(self.space, self.ring);
        for (m, x) in &self.terms {
            let (q, r) = x.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.add_term(*m, q);
        }
        Some(out)
    }

    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.space, self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((neg, m)) = a.wedge(*b) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `ι_v(self)` for a degree-one `v`.
    pub fn contract_vector(&self, v: &Multivector) -> Result<Multivector> {
        if v.homogeneous_degree() != Some(1) && !v.is_zero() {
            return Err(Error::InvalidArgument(
                "contract_vector needs a degree-one vector".into(),
            ));
        }
        contract_form(v, self)
    }

    pub fn map_monomials<F>(&self, mut f: F) -> Multivector
    where
        F: FnMut(Monomial) -> Option<(bool, Monomial)>,
    {
        let mut out = Self::zero(self.space, self.ring);
        for (m, c) in &self.terms {
            if let Some((neg, n)) = f(*m) {
                out.add_term(n, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// `ι_x(z)`, extended linearly over the terms of `x` via `ι_{x∧y} = ι_x ∘ ι_y`.
pub fn contract_form(x: &Multivector, z: &Multivector) -> Result<Multivector> {
    x.check_compatible(z)?;
    let mut out = Multivector::zero(z.space, z.ring);
    for (t, ct) in &x.terms {
        for (m, cm) in &z.terms {
            if let Some((neg, r)) = m.contract_by(*t) {
                let c = ct * cm;
                out.add_term(r, if neg { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Contraction against the triple cup product form `e^0 ∧ ω` of `Σ_g × S¹`:
/// removes each triple `{0, 2i−1, 2i}` with sign `(−1)^{p_1+p_2+p_3}`, where
/// `p_j` are the 1-based positions of the three indices.
pub fn contract_triple_cup(x: &Multivector) -> Result<Multivector> {
    if !x.space.extended {
        return Err(Error::InvalidArgument(
            "triple cup contraction needs the extended space".into(),
        ));
    }
    let mut out = Multivector::zero(x.space, x.ring);
    for (m, c) in &x.terms {
        if !m.contains(0) {
            continue;
        }
        for i in 1..=x.space.g {
            let (a, b) = (2 * i - 1, 2 * i);
            if !(m.contains(a) && m.contains(b)) {
                continue;
            }
            let positions = 1 + (m.count_below(a) + 1) + (m.count_below(b) + 1);
            let rest = Monomial(m.0 & !(1 | 1 << a | 1 << b));
            out.add_term(rest, if positions % 2 == 1 { -c.clone() } else { c.clone() });
        }
    }
    Ok(out)
}

/// The symplectic form `ω = e^1∧e^2 + ⋯ + e^{2g-1}∧e^{2g}`.
pub fn omega(space: Space, ring: CoefficientRing) -> Multivector {
    let terms = (1..=space.g).map(|i| (Monomial::from_indices(&[2 * i - 1, 2 * i]).unwrap(), BigInt::one()));
    Multivector::from_terms(space, ring, terms)
}

/// The divided power `ω_r = ω^r / r!`; `ω_0 = 1` and `ω_r = 0` for `r < 0` or `r > g`.
pub fn omega_power(space: Space, ring: CoefficientRing, r: i64) -> Multivector {
    if r < 0 || r as usize > space.g {
        return Multivector::zero(space, ring);
    }
    let z = CoefficientRing::Integers;
    let w = omega(space, z);
    let mut power = Multivector::one(space, z);
    for _ in 0..r {
        power = power.wedge(&w).expect("same space");
    }
    let divided = power
        .div_exact(&factorial(r as u64))
        .unwrap_or_else(|| panic!("ω^{r} is not divisible by {r}! (arithmetic bug)"));
    divided.change_ring(ring)
}

/// `e^ω - 1 = ω_1 + ω_2 + ⋯ + ω_g`.
pub fn exp_omega_minus_one(space: Space, ring: CoefficientRing) -> Multivector {
    let mut acc = Multivector::zero(space, ring);
    for r in 1..=space.g as i64 {
        acc = acc.add(&omega_power(space, ring, r)).expect("same space");
    }
    acc
}

/// Hodge–Lefschetz duality `*x = ι_x(ω_g)`.
pub fn star(x: &Multivector) -> Result<Multivector> {
    if x.space.extended {
        return Err(Error::InvalidArgument("star is defined on Λ*(R^{2g}) only".into()));
    }
    let top = omega_power(x.space, x.ring, x.space.g as i64);
    contract_form(x, &top)
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_multivector(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CoefficientRing {
        CoefficientRing::Integers
    }

    fn mono(space: Space, ix: &[usize], c: i64) -> Multivector {
        Multivector::monomial(space, z(), Monomial::from_indices(ix).unwrap(), BigInt::from(c))
    }

    #[test]
    fn wedge_examples() {
        let s = Space::symplectic(2);
        let e1 = mono(s, &[1], 1);
        let e2 = mono(s, &[2], 1);
        assert_eq!(e1.wedge(&e2).unwrap(), mono(s, &[1, 2], 1));
        assert_eq!(e2.wedge(&e1).unwrap(), mono(s, &[1, 2], -1));
        let w = omega(s, z());
        assert_eq!(w.wedge(&w).unwrap(), mono(s, &[1, 2, 3, 4], 2));
    }

    #[test]
    fn wedge_rejects_mismatch() {
        let a = omega(Space::symplectic(2), z());
        let b = omega(Space::symplectic(3), z());
        assert!(matches!(a.wedge(&b), Err(Error::DimensionMismatch(_))));
        let c = omega(Space::symplectic(2), CoefficientRing::PrimeField(2));
        assert!(matches!(a.wedge(&c), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn contract_vector_examples() {
        let s = Space::symplectic(2);
        let e12 = mono(s, &[1, 2], 1);
        assert_eq!(e12.contract_vector(&mono(s, &[2], 1)).unwrap(), mono(s, &[2], 1));
        assert_eq!(e12.contract_vector(&mono(s, &[1], 1)).unwrap(), mono(s, &[1], 1));
        assert!(e12.contract_vector(&mono(s, &[3], 1)).unwrap().is_zero());
        assert!(e12.contract_vector(&e12).is_err());
    }

    #[test]
    fn contract_form_examples() {
        for g in 1..=5 {
            let s = Space::symplectic(g);
            let w = omega(s, z());
            let got = contract_form(&w, &w).unwrap();
            assert_eq!(got, Multivector::one(s, z()).scale(&BigInt::from(-(g as i64))));
            let top = omega_power(s, z(), g as i64);
            let sign = if g % 2 == 0 { 1 } else { -1 };
            assert_eq!(contract_form(&top, &top).unwrap(), mono(s, &[], sign));
        }
        let s = Space::symplectic(1);
        let e12 = mono(s, &[1, 2], 1);
        assert_eq!(contract_form(&e12, &e12).unwrap(), mono(s, &[], -1));
    }

    #[test]
    fn omega_power_examples() {
        let s2 = Space::symplectic(2);
        assert_eq!(omega_power(s2, z(), 0), Multivector::one(s2, z()));
        assert_eq!(omega_power(s2, z(), 2), mono(s2, &[1, 2, 3, 4], 1));
        assert!(omega_power(s2, z(), -1).is_zero());
        assert!(omega_power(s2, z(), 3).is_zero());
        let s3 = Space::symplectic(3);
        let expect = mono(s3, &[1, 2, 3, 4], 1)
            .add(&mono(s3, &[1, 2, 5, 6], 1))
            .unwrap()
            .add(&mono(s3, &[3, 4, 5, 6], 1))
            .unwrap();
        assert_eq!(omega_power(s3, z(), 2), expect);
    }

    #[test]
    fn star_examples() {
        let s = Space::symplectic(3);
        assert_eq!(
            star(&Multivector::one(s, z())).unwrap(),
            mono(s, &[1, 2, 3, 4, 5, 6], 1)
        );
        let s1 = Space::symplectic(1);
        assert_eq!(star(&mono(s1, &[1], 1)).unwrap(), mono(s1, &[1], 1));
        assert!(star(&Multivector::one(Space::extended(1), z())).is_err());
    }

    #[test]
    fn modular_reduction() {
        let s = Space::symplectic(2);
        let f2 = CoefficientRing::PrimeField(2);
        let w = omega(s, f2);
        assert!(w.wedge(&w).unwrap().is_zero());
        let neg = mono(s, &[1], -1).change_ring(CoefficientRing::IntegersMod(5));
        assert_eq!(neg.coefficient(Monomial::single(1)), BigInt::from(4));
    }
}
