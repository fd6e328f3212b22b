use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exterior::{degree_matrix, Basis, Multivector, Operator, Space};
use crate::linalg::{kernel_lattice, IntMatrix, Lattice};
use crate::ring::CoefficientRing;
use crate::util::primitive_rank;

/// The Lefschetz filtration `F_r Λ^k = {α : ω^{g-k+1+r} ∧ α = 0}` on one
/// exterior power, with an optional ℤ-splitting `F_r = G_r ⊕ F_{r-1}`.
#[derive(Debug, Clone)]
pub struct FiltrationData {
    pub g: usize,
    pub k: usize,
    /// `levels[r] = F_r Λ^k` for `0 ≤ r ≤ ⌊k/2⌋`; the last level is all of `Λ^k`.
    levels: Vec<Lattice>,
    splitting: Option<Vec<Lattice>>,
}

/// Matrix of `∧ω^m : Λ^k → Λ^{k+2m}`.
pub fn wedge_power_matrix(g: usize, k: usize, m: u32) -> IntMatrix {
    degree_matrix(
        &Operator::WedgeOmegaPower(m),
        Space::symplectic(g),
        k as i64,
        k as i64 + 2 * m as i64,
    )
    .expect("wedge powers stay inside the algebra")
}

fn compute_level(g: usize, k: usize, r: usize) -> Lattice {
    let n = Basis::degree(Space::symplectic(g), k as i64).len();
    let m = g as i64 - k as i64 + 1 + r as i64;
    if m <= 0 {
        return Lattice::zero(n);
    }
    if k as i64 + 2 * m > 2 * g as i64 {
        return Lattice::full(n);
    }
    kernel_lattice(&wedge_power_matrix(g, k, m as u32))
}

fn cache() -> &'static Mutex<HashMap<(usize, usize), Arc<FiltrationData>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<FiltrationData>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoised filtration of `Λ^k(ℤ^{2g})` (without splitting).
pub fn filtration(g: usize, k: usize) -> Arc<FiltrationData> {
    if let Some(f) = cache().lock().expect("cache lock").get(&(g, k)) {
        return f.clone();
    }
    let f = Arc::new(FiltrationData::compute(g, k));
    cache().lock().expect("cache lock").insert((g, k), f.clone());
    f
}

/// Saturated basis of the primitive lattice `P^k`; zero for `k > g` or `k < 0`.
pub fn primitive_basis(g: usize, k: i64) -> Lattice {
    let n = Basis::degree(Space::symplectic(g), k).len();
    if k < 0 || k as usize > g {
        return Lattice::zero(n);
    }
    filtration(g, k as usize).level(0)
}

impl FiltrationData {
    pub fn compute(g: usize, k: usize) -> Self {
        assert!(k <= 2 * g, "degree {k} exceeds 2g = {}", 2 * g);
        let levels = (0..=k / 2).map(|r| compute_level(g, k, r)).collect();
        FiltrationData {
            g,
            k,
            levels,
            splitting: None,
        }
    }

    pub fn space(&self) -> Space {
        Space::symplectic(self.g)
    }

    pub fn basis(&self) -> Basis {
        Basis::degree(self.space(), self.k as i64)
    }

    pub fn ambient(&self) -> usize {
        self.levels[0].ambient()
    }

    /// Index of the top level (`F_top = Λ^k`).
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// `F_r Λ^k` for any integer `r` (zero below, everything above the range).
    pub fn level(&self, r: i64) -> Lattice {
        if r < 0 {
            Lattice::zero(self.ambient())
        } else if r as usize >= self.levels.len() {
            self.levels[self.top()].clone()
        } else {
            self.levels[r as usize].clone()
        }
    }

    pub fn level_ref(&self, r: usize) -> &Lattice {
        &self.levels[r.min(self.top())]
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.levels.iter().map(Lattice::rank).collect()
    }

    /// `rank gr_r = rank F_r − rank F_{r−1}`.
    pub fn graded_rank(&self, r: i64) -> usize {
        self.level(r).rank() - self.level(r - 1).rank()
    }

    /// Expected `rank gr_r Λ^k`: `rank P^{k−2r}` once `r ≥ k − g`, zero below.
    pub fn expected_graded_rank(&self, r: i64) -> usize {
        if r < self.k as i64 - self.g as i64 {
            return 0;
        }
        primitive_rank(self.g, self.k as i64 - 2 * r)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.levels.iter().position(|l| l.rank() > 0)
    }

    pub fn splitting(&self) -> Option<&[Lattice]> {
        self.splitting.as_deref()
    }

    /// Attaches `G_0, …, G_top` after checking `G_r ∩ F_{r−1} = 0`,
    /// `G_r + F_{r−1} = F_r` and that the assembled basis is unimodular.
    pub fn with_splitting(&self, pieces: Vec<Lattice>) -> Result<FiltrationData> {
        let check = format!("splitting of Λ^{}(ℤ^{})", self.k, 2 * self.g);
        if pieces.len() != self.levels.len() {
            return Err(Error::violation(&check, "wrong number of pieces"));
        }
        for (r, gr) in pieces.iter().enumerate() {
            let prev = self.level(r as i64 - 1);
            let sum = gr.sum(&prev);
            if sum != self.levels[r] {
                return Err(Error::violation(&check, format!("G_{r} + F_{} ≠ F_{r}", r as i64 - 1)));
            }
            if sum.rank() != gr.rank() + prev.rank() {
                return Err(Error::violation(&check, format!("G_{r} meets F_{}", r as i64 - 1)));
            }
        }
        let all: Vec<Vec<BigInt>> = pieces.iter().flat_map(|p| p.basis().to_vec()).collect();
        let m = IntMatrix::from_column_vectors(self.ambient(), &all);
        if !m.is_unimodular() {
            return Err(Error::violation(&check, "assembled basis is not unimodular"));
        }
        let mut out = self.clone();
        out.splitting = Some(pieces);
        Ok(out)
    }

    /// Whether the multivector (homogeneous of degree `k`) lies in `F_r`.
    pub fn contains(&self, r: i64, x: &Multivector) -> Result<bool> {
        let v = self.basis().coordinates(x)?;
        Ok(self.level(r).contains(&v))
    }
}

/// Vector of a degree-`k` integer multivector in the monomial basis.
pub fn coords(g: usize, k: i64, x: &Multivector) -> Result<Vec<BigInt>> {
    Basis::degree(Space::symplectic(g), k).coordinates(x)
}

pub fn element(g: usize, k: i64, v: &[BigInt]) -> Multivector {
    Basis::degree(Space::symplectic(g), k).element(v, CoefficientRing::Integers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::operator_matrix;

    #[test]
    fn small_filtrations() {
        let f = FiltrationData::compute(2, 2);
        assert_eq!(f.ranks(), vec![5, 6]);
        let f = FiltrationData::compute(2, 4);
        assert_eq!(f.ranks(), vec![0, 0, 1]);
        assert_eq!(f.first_nonzero(), Some(2));
        let f = FiltrationData::compute(3, 0);
        assert_eq!(f.ranks(), vec![1]);
    }

    #[test]
    fn primitive_ranks() {
        assert_eq!(primitive_basis(4, 2).rank(), 27);
        assert_eq!(primitive_basis(1, 1).rank(), 2);
        assert_eq!(primitive_basis(3, 0).rank(), 1);
        assert_eq!(primitive_basis(2, 3).rank(), 0);
    }

    #[test]
    fn divided_and_plain_powers_have_equal_kernels() {
        for g in 1..=4 {
            let s = Space::symplectic(g);
            for k in 0..=2 * g {
                for m in 1..=g {
                    if k + 2 * m > 2 * g {
                        continue;
                    }
                    let plain = kernel_lattice(&wedge_power_matrix(g, k, m as u32));
                    let divided = kernel_lattice(
                        &operator_matrix(
                            &Operator::WedgeOmega(m as i64),
                            &Basis::degree(s, k as i64),
                            &Basis::degree(s, (k + 2 * m) as i64),
                        )
                        .unwrap(),
                    );
                    assert_eq!(plain, divided, "g={g} k={k} m={m}");
                }
            }
        }
    }
}
