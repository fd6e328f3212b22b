use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{omega, Monomial, Multivector, Space};
use crate::linalg::{cokernel, AbelianInvariants, IntMatrix};
use crate::ring::CoefficientRing;

/// An element of `R_k = ℤ[v_1, …, v_k]/(v_i²)`, keyed by the subset of
/// variables (bit `i−1` for `v_i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFreeElement {
    pub k: usize,
    terms: BTreeMap<u32, BigInt>,
}

impl PairFreeElement {
    pub fn zero(k: usize) -> Self {
        PairFreeElement {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        Self::monomial(k, 0, BigInt::one())
    }

    pub fn monomial(k: usize, set: u32, c: BigInt) -> Self {
        let mut x = Self::zero(k);
        if !c.is_zero() {
            x.terms.insert(set, c);
        }
        x
    }

    /// `v_i` for `1 ≤ i ≤ k`.
    pub fn var(k: usize, i: usize) -> Self {
        Self::monomial(k, 1 << (i - 1), BigInt::one())
    }

    /// `Σ v_i`.
    pub fn omega(k: usize) -> Self {
        (1..=k).fold(Self::zero(k), |acc, i| acc.add(&Self::var(k, i)))
    }

    /// `e^ω − 1 = Σ_{S ≠ ∅} v_S`, since `ω^r / r! = Σ_{|S| = r} v_S`.
    pub fn exp_omega_minus_one(k: usize) -> Self {
        let mut x = Self::zero(k);
        for s in 1..(1u32 << k) {
            x.terms.insert(s, BigInt::one());
        }
        x
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, set: u32) -> BigInt {
        self.terms.get(&set).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, set: u32, c: BigInt) {
        let e = self.terms.entry(set).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&set);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.k);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a & b == 0 {
                    out.add_term(a | b, x * y);
                }
            }
        }
        out
    }

    /// Coefficient vector indexed by subset mask.
    pub fn to_vector(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); 1 << self.k];
        for (s, c) in &self.terms {
            v[*s as usize] = c.clone();
        }
        v
    }
}

/// `φ(v_i) = v_i (1 + φ(v_1) + … + φ(v_{i−1})) = v_i Π_{j<i} (1 + v_j)`,
/// so that `Σ φ(v_i) = Π (1 + v_j) − 1 = e^ω − 1`.
pub fn phi_generators(k: usize) -> Vec<PairFreeElement> {
    let mut out: Vec<PairFreeElement> = Vec::with_capacity(k);
    let mut partial = PairFreeElement::one(k);
    for i in 1..=k {
        let next = PairFreeElement::var(k, i).mul(&partial);
        partial = partial.add(&next);
        out.push(next);
    }
    out
}

fn phi_of_set(gens: &[PairFreeElement], k: usize, set: u32) -> PairFreeElement {
    (0..k)
        .filter(|i| set >> i & 1 == 1)
        .fold(PairFreeElement::one(k), |acc, i| acc.mul(&gens[i]))
}

pub fn phi(k: usize, x: &PairFreeElement) -> PairFreeElement {
    let gens = phi_generators(k);
    let mut out = PairFreeElement::zero(k);
    for (s, c) in x.terms() {
        for (t, d) in phi_of_set(&gens, k, *s).terms() {
            out.add_term(*t, c * d);
        }
    }
    out
}

/// Matrix of `φ` on the subset basis of `R_k`.
pub fn phi_matrix(k: usize) -> IntMatrix {
    let gens = phi_generators(k);
    let cols: Vec<Vec<BigInt>> = (0..1u32 << k).map(|s| phi_of_set(&gens, k, s).to_vector()).collect();
    IntMatrix::from_column_vectors(1 << k, &cols)
}

/// Matrix of multiplication by `x` on `R_k`.
pub fn multiplication_matrix(x: &PairFreeElement) -> IntMatrix {
    let k = x.k;
    let cols: Vec<Vec<BigInt>> = (0..1u32 << k)
        .map(|s| x.mul(&PairFreeElement::monomial(k, s, BigInt::one())).to_vector())
        .collect();
    IntMatrix::from_column_vectors(1 << k, &cols)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub k: usize,
    pub unimodular: bool,
    pub generators_square_to_zero: bool,
    pub omega_maps_to_exp: bool,
    /// `φ ∘ (ω ·) = ((e^ω − 1) ·) ∘ φ` as matrices.
    pub intertwines: bool,
    pub omega_cokernel: AbelianInvariants,
    pub exp_cokernel: AbelianInvariants,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.unimodular
            && self.generators_square_to_zero
            && self.omega_maps_to_exp
            && self.intertwines
            && self.omega_cokernel == self.exp_cokernel
    }
}

pub fn pairfree_phi(k: usize) -> Result<PhiReport> {
    let gens = phi_generators(k);
    let p = phi_matrix(k);
    let w = PairFreeElement::omega(k);
    let e = PairFreeElement::exp_omega_minus_one(k);
    let mw = multiplication_matrix(&w);
    let me = multiplication_matrix(&e);
    let report = PhiReport {
        k,
        unimodular: p.is_unimodular(),
        generators_square_to_zero: gens.iter().all(|x| x.mul(x).is_zero()),
        omega_maps_to_exp: phi(k, &w) == e,
        intertwines: p.mul(&mw)? == me.mul(&p)?,
        omega_cokernel: cokernel(&mw),
        exp_cokernel: cokernel(&me),
    };
    if !report.passed() {
        return Err(Error::violation("pair-free ring isomorphism", format!("{report:?}")));
    }
    Ok(report)
}

/// Subsets of `{1, …, 2g}` containing no pair `{2i−1, 2i}`, as monomials.
pub fn pair_free_sets(g: usize) -> Vec<Monomial> {
    Space::symplectic(g)
        .basis_of_degrees(&(0..=2 * g).collect::<Vec<_>>())
        .into_iter()
        .filter(|m| m.full_pairs() == 0)
        .collect()
}

/// `e^S ∧ v_T` for a set of free pairs `T` (pair `i` is `{2i+1, 2i+2}`).
fn pair_free_basis_element(s: Space, set: Monomial, pairs: u32) -> Multivector {
    let z = CoefficientRing::Integers;
    let mut x = Multivector::monomial(s, z, set, BigInt::one());
    for i in 0..s.g {
        if pairs >> i & 1 == 1 {
            let v = Monomial::from_indices(&[2 * i + 1, 2 * i + 2]).expect("increasing");
            x = x
                .wedge(&Multivector::monomial(s, z, v, BigInt::one()))
                .expect("same space");
        }
    }
    x
}

/// Checks that the spaces `V(S)` partition the monomial basis and that
/// `e^S ∧ v_T ↦ v_T` turns `∧ω` on `V(S)` into multiplication by `ω` on
/// `R_{g−|S|}`. Returns `Σ dim V(S)`.
pub fn pair_free_check(g: usize) -> Result<usize> {
    let s = Space::symplectic(g);
    let w = omega(s, CoefficientRing::Integers);
    let mut total = 0;
    for set in pair_free_sets(g) {
        let touched: u32 = set.indices().map(|i| 1u32 << ((i - 1) / 2)).fold(0, |a, b| a | b);
        let free: Vec<usize> = (0..g).filter(|i| touched >> i & 1 == 0).collect();
        total += 1 << free.len();
        for t in 0u32..(1 << free.len()) {
            let pairs: u32 = free
                .iter()
                .enumerate()
                .filter(|(j, _)| t >> j & 1 == 1)
                .map(|(_, i)| 1 << i)
                .sum();
            let x = pair_free_basis_element(s, set, pairs);
            let mut expected = Multivector::zero(s, CoefficientRing::Integers);
            for &i in &free {
                if pairs >> i & 1 == 0 {
                    expected = expected.add(&pair_free_basis_element(s, set, pairs | 1 << i))?;
                }
            }
            if w.wedge(&x)? != expected {
                return Err(Error::violation("pair-free decomposition", format!("g={g}, x={x}")));
            }
        }
    }
    if total != 1 << (2 * g) {
        return Err(Error::violation(
            "pair-free decomposition",
            format!("dimensions sum to {total}"),
        ));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        assert_eq!(phi_generators(1)[0], PairFreeElement::var(1, 1));
        let g2 = phi_generators(2);
        let want = PairFreeElement::var(2, 2).add(&PairFreeElement::monomial(2, 0b11, BigInt::one()));
        assert_eq!(g2[1], want);
        for k in 1..=6 {
            assert!(pairfree_phi(k).unwrap().passed());
        }
    }

    #[test]
    fn decomposition_dimensions() {
        for g in 0..=4 {
            assert_eq!(pair_free_check(g).unwrap(), 1 << (2 * g));
        }
        assert_eq!(pair_free_sets(2).len(), 9);
    }
}
