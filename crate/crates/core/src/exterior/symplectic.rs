use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::monomial::{symplectic_pairing, Monomial};
use super::multivector::{omega, Multivector};
use super::space::Space;
use crate::linalg::IntMatrix;
use crate::ring::CoefficientRing;

/// The standard symplectic pairing on `ℤ^{2g}` with `ω(e^{2i-1}, e^{2i}) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticForm {
    pub g: usize,
}

impl SymplecticForm {
    pub fn new(g: usize) -> Self {
        SymplecticForm { g }
    }

    /// Gram matrix `J` with `J[a][b] = ω(e^{a+1}, e^{b+1})`.
    pub fn gram(&self) -> IntMatrix {
        let n = 2 * self.g;
        let cols = (0..n)
            .map(|b| {
                (0..n)
                    .filter_map(|a| {
                        let w = symplectic_pairing(a + 1, b + 1);
                        (w != 0).then(|| (a, BigInt::from(w)))
                    })
                    .collect()
            })
            .collect();
        IntMatrix::from_columns(n, cols)
    }

    /// `ω(x, y)` for coordinate vectors on `e^1, …, e^{2g}`.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..self.g {
            let (a, b) = (2 * i, 2 * i + 1);
            acc += &x[a] * &y[b] - &x[b] * &y[a];
        }
        acc
    }

    pub fn as_multivector(&self, ring: CoefficientRing) -> Multivector {
        omega(Space::symplectic(self.g), ring)
    }
}

/// An integer matrix acting on `ℤ^{2g}`; column `j` is the image of `e^{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub g: usize,
    pub matrix: IntMatrix,
}

impl LinearMap {
    pub fn identity(g: usize) -> Self {
        LinearMap {
            g,
            matrix: IntMatrix::identity(2 * g),
        }
    }

    /// The transvection `x ↦ x + ω(x, v) v`.
    pub fn transvection(g: usize, v: &[BigInt]) -> Self {
        assert_eq!(v.len(), 2 * g);
        let form = SymplecticForm::new(g);
        let n = 2 * g;
        let vectors: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                let c = form.pair(&e, v);
                for (x, y) in e.iter_mut().zip(v) {
                    *x += &c * y;
                }
                e
            })
            .collect();
        LinearMap {
            g,
            matrix: IntMatrix::from_column_vectors(n, &vectors),
        }
    }

    /// A transvection along a random vector with entries in `[-bound, bound]`.
    pub fn random_transvection<R: Rng>(g: usize, bound: i64, rng: &mut R) -> Self {
        let v: Vec<BigInt> = (0..2 * g)
            .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
            .collect();
        Self::transvection(g, &v)
    }

    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            g: self.g,
            matrix: self.matrix.mul(&other.matrix).expect("square maps of equal size"),
        }
    }

    /// `Aᵀ J A = J`.
    pub fn is_symplectic(&self) -> bool {
        let j = SymplecticForm::new(self.g).gram();
        let lhs = self
            .matrix
            .transpose()
            .mul(&j)
            .and_then(|x| x.mul(&self.matrix))
            .expect("square");
        lhs == j
    }

    /// Image of the basis vector with ambient index `i` (index 0 is fixed).
    fn image_of_index(&self, space: Space, ring: CoefficientRing, i: usize) -> Multivector {
        if i == 0 {
            return Multivector::monomial(space, ring, Monomial::single(0), BigInt::one());
        }
        let col = self.matrix.column(i - 1);
        Multivector::from_terms(
            space,
            ring,
            col.iter().map(|(r, v)| (Monomial::single(r + 1), v.clone())),
        )
    }

    /// The induced algebra map `Λ(A)` on a multivector.
    pub fn pushforward(&self, x: &Multivector) -> Multivector {
        let space = x.space();
        let ring = x.ring();
        let images: Vec<Multivector> = (0..=2 * self.g)
            .map(|i| {
                if i == 0 && !space.extended {
                    Multivector::zero(space, ring)
                } else {
                    self.image_of_index(space, ring, i)
                }
            })
            .collect();
        let mut out = Multivector::zero(space, ring);
        for (m, c) in x.terms() {
            let mut acc = Multivector::one(space, ring);
            for i in m.indices() {
                acc = acc.wedge(&images[i]).expect("same space");
            }
            out = out.add(&acc.scale(c)).expect("same space");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn transvections_are_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in 1..=4 {
            for _ in 0..10 {
                let t = LinearMap::random_transvection(g, 3, &mut rng);
                assert!(t.is_symplectic());
                let w = omega(Space::symplectic(g), CoefficientRing::Integers);
                assert_eq!(t.pushforward(&w), w);
            }
        }
    }

    #[test]
    fn gram_is_antisymmetric() {
        let j = SymplecticForm::new(3).gram();
        assert_eq!(j.transpose().scale(&BigInt::from(-1)), j);
        assert_eq!(j.get(0, 1), BigInt::one());
    }
}
