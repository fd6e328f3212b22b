use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{operator_matrix, Basis, Operator, Space};
use crate::linalg::{cokernel, kernel_lattice, shared_components, AbelianInvariants, IntMatrix};
use crate::CoefficientRing;

/// A pair of groups indexed by parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityInvariants {
    pub even: AbelianInvariants,
    pub odd: AbelianInvariants,
}

impl ParityInvariants {
    pub fn new(even: AbelianInvariants, odd: AbelianInvariants) -> Self {
        ParityInvariants { even, odd }
    }

    pub fn total(&self) -> AbelianInvariants {
        self.even.direct_sum(&self.odd)
    }

    /// Swap the two parities, as multiplication by `e^0` does.
    pub fn shifted(&self) -> Self {
        ParityInvariants::new(self.odd.clone(), self.even.clone())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        ParityInvariants::new(self.even.direct_sum(&other.even), self.odd.direct_sum(&other.odd))
    }

    pub fn map(&self, f: impl Fn(&AbelianInvariants) -> AbelianInvariants) -> Self {
        ParityInvariants::new(f(&self.even), f(&self.odd))
    }
}

/// `G ⊗ R`.
pub fn tensor_ring(a: &AbelianInvariants, ring: CoefficientRing) -> AbelianInvariants {
    match ring.modulus() {
        None => a.clone(),
        Some(n) => a.tensor_mod(n),
    }
}

/// `Tor(G, R)`.
pub fn tor_ring(a: &AbelianInvariants, ring: CoefficientRing) -> AbelianInvariants {
    match ring.modulus() {
        None => AbelianInvariants::trivial(),
        Some(n) => a.tor_mod(n),
    }
}

/// `(Λ*(ℤ^{2g+1}), ι_∪)` for the triple cup product `e^0 ∧ ω` of `Σ_g × S¹`.
#[derive(Debug, Clone)]
pub struct CupComplex {
    pub g: usize,
    pub basis: Basis,
    pub differential: IntMatrix,
}

impl CupComplex {
    pub fn new(g: usize) -> Result<Self> {
        let s = Space::extended(g);
        let basis = Basis::new(s, &s.all_degrees());
        let differential = operator_matrix(&Operator::ContractCup, &basis, &basis)?;
        Ok(CupComplex { g, basis, differential })
    }

    pub fn squares_to_zero(&self) -> Result<bool> {
        Ok(self.differential.mul(&self.differential)?.is_zero())
    }

    /// Integral homology per parity, one `U`-period.
    pub fn integral_homology(&self) -> Result<ParityInvariants> {
        let parity: Vec<usize> = self.basis.monomials().iter().map(|m| m.degree() % 2).collect();
        graded_homology(&self.differential, &parity)
    }
}

/// Homology of a ℤ/2-graded complex `d` (square, parity-reversing), computed
/// on the connected blocks of `d`.
pub fn graded_homology(d: &IntMatrix, parity: &[usize]) -> Result<ParityInvariants> {
    let mut out = [Vec::new(), Vec::new()];
    for part in shared_components(d.cols(), &[d]) {
        for p in 0..2 {
            let here: Vec<usize> = part.iter().copied().filter(|&i| parity[i] == p).collect();
            let there: Vec<usize> = part.iter().copied().filter(|&i| parity[i] != p).collect();
            if here.is_empty() {
                continue;
            }
            let outgoing = d.select_rows(&there).select_columns(&here);
            let incoming = d.select_rows(&here).select_columns(&there);
            if outgoing.rows() > 0 && !outgoing.mul(&incoming)?.is_zero() {
                return Err(Error::violation("d² = 0", "differential does not square to zero"));
            }
            let cycles = kernel_lattice(&outgoing);
            if cycles.rank() == 0 {
                continue;
            }
            let boundaries: Vec<Vec<BigInt>> = (0..incoming.cols()).map(|j| incoming.column_dense(j)).collect();
            let m = cycles.coordinate_matrix_of(&boundaries)?;
            out[p].push(cokernel(&m));
        }
    }
    let [even, odd] = out;
    Ok(ParityInvariants::new(
        AbelianInvariants::sum_all(&even),
        AbelianInvariants::sum_all(&odd),
    ))
}

/// `HC_*(Σ_g × S¹; R)` per parity, one `U`-period. Over `ℤ/n` the groups come
/// from the integral ones by the universal coefficient theorem.
pub fn cup_homology(g: usize, ring: CoefficientRing) -> Result<ParityInvariants> {
    let h = CupComplex::new(g)?.integral_homology()?;
    Ok(ParityInvariants::new(
        tensor_ring(&h.even, ring).direct_sum(&tor_ring(&h.odd, ring)),
        tensor_ring(&h.odd, ring).direct_sum(&tor_ring(&h.even, ring)),
    ))
}

/// `coker` and `ker` of a parity-preserving operator on `Λ*(R^{2g})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelCokernel {
    pub cokernel: ParityInvariants,
    pub kernel: ParityInvariants,
}

pub fn kernel_cokernel(g: usize, op: &Operator, ring: CoefficientRing) -> Result<KernelCokernel> {
    let s = Space::symplectic(g);
    let mut coker = Vec::new();
    let mut ker = Vec::new();
    for degrees in [s.even_degrees(), s.odd_degrees()] {
        let b = Basis::new(s, &degrees);
        let m = operator_matrix(op, &b, &b)?;
        let inv = crate::linalg::invariant_factors(&m);
        let c = AbelianInvariants::from_cyclic(m.rows() - inv.len(), inv.iter().cloned());
        let k = AbelianInvariants::free(m.cols() - inv.len());
        coker.push(tensor_ring(&c, ring));
        ker.push(tensor_ring(&k, ring).direct_sum(&tor_ring(&c, ring)));
    }
    Ok(KernelCokernel {
        cokernel: ParityInvariants::new(coker[0].clone(), coker[1].clone()),
        kernel: ParityInvariants::new(ker[0].clone(), ker[1].clone()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CupDecomposition {
    pub g: usize,
    pub ring: CoefficientRing,
    pub cup: ParityInvariants,
    /// `coker(ω; R) ⊕ e^0 ker(ω; R)`.
    pub predicted: ParityInvariants,
    pub agree: bool,
}

/// `HC_* ≅ coker(ω) ⊕ e^0 ker(ω)`, parity by parity.
pub fn cup_decomposition_check(g: usize, ring: CoefficientRing) -> Result<CupDecomposition> {
    let cup = cup_homology(g, ring)?;
    let kc = kernel_cokernel(g, &Operator::ContractOmega(1), ring)?;
    let predicted = kc.cokernel.direct_sum(&kc.kernel.shifted());
    let agree = cup == predicted;
    if !agree {
        return Err(Error::violation(
            "HC_* ≅ coker(ω) ⊕ e^0 ker(ω)",
            format!(
                "g={g} {ring}: {} + {} vs {} + {}",
                cup.even, cup.odd, predicted.even, predicted.odd
            ),
        ));
    }
    Ok(CupDecomposition {
        g,
        ring,
        cup,
        predicted,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::fp::rank_mod_p;

    #[test]
    fn torus() {
        let c = CupComplex::new(1).unwrap();
        assert!(c.squares_to_zero().unwrap());
        let h = c.integral_homology().unwrap();
        assert_eq!(h.total(), AbelianInvariants::free(6));
    }

    #[test]
    fn zero_differential_gives_everything() {
        let d = IntMatrix::zeros(8, 8);
        let parity: Vec<usize> = (0..8).map(|i| i % 2).collect();
        assert_eq!(
            graded_homology(&d, &parity).unwrap().total(),
            AbelianInvariants::free(8)
        );
    }

    #[test]
    fn f2_by_ranks() {
        for g in 1..=3 {
            let c = CupComplex::new(g).unwrap();
            let n = c.basis.len();
            let rank = rank_mod_p(&c.differential, 2);
            let dim = cup_homology(g, CoefficientRing::PrimeField(2))
                .unwrap()
                .total()
                .num_summands();
            assert_eq!(dim, n - 2 * rank);
        }
    }

    #[test]
    fn decomposition() {
        for g in 1..=3 {
            for ring in [
                CoefficientRing::Integers,
                CoefficientRing::PrimeField(2),
                CoefficientRing::IntegersMod(4),
            ] {
                cup_decomposition_check(g, ring).unwrap();
            }
        }
    }
}
