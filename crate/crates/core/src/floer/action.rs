use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cokernels::commutes_with;
use crate::error::{Error, Result};
use crate::exterior::{operator_matrix, Basis, LinearMap, Multivector, Operator, Space};
use crate::linalg::{cokernel, kernel_lattice, AbelianInvariants, FpMatrix, IntMatrix, Lattice, Subspace};
use crate::CoefficientRing;

/// A class `[c] + e^0 x` of `coker(ω) ⊕ e^0 ker(ω)`, held by representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelClass {
    pub coker: Multivector,
    pub ker: Multivector,
}

/// The action of `f ∈ H¹(Σ_g)`: fixes the cokernel factor and sends
/// `e^0 x` to `e^0 x − [f ∧ x]`.
pub fn transvection_action(f: &Multivector, class: &ModelClass) -> Result<ModelClass> {
    if !f.is_zero() && f.homogeneous_degree() != Some(1) {
        return Err(Error::InvalidArgument("f must be a degree one form".into()));
    }
    Ok(ModelClass {
        coker: class.coker.sub(&f.wedge(&class.ker)?)?,
        ker: class.ker.clone(),
    })
}

/// Matrices on `Λ*(ℤ^{2g})` (all degrees) used by the fixed-point and witness searches.
struct Setup {
    basis: Basis,
    omega: IntMatrix,
    wedges: Vec<IntMatrix>,
}

impl Setup {
    fn new(g: usize) -> Result<Self> {
        let s = Space::symplectic(g);
        let basis = Basis::new(s, &s.all_degrees());
        let omega = operator_matrix(&Operator::ContractOmega(1), &basis, &basis)?;
        let wedges = (1..=2 * g)
            .map(|i| operator_matrix(&Operator::WedgeForm(Multivector::basis_vector(s, i)), &basis, &basis))
            .collect::<Result<_>>()?;
        Ok(Setup { basis, omega, wedges })
    }
}

fn field_char(ring: CoefficientRing) -> Result<Option<u64>> {
    match ring {
        CoefficientRing::Integers => Ok(None),
        r if r.is_field() => Ok(r.modulus()),
        r => Err(Error::InvalidArgument(format!("{r}: need ℤ or a prime field"))),
    }
}

fn mod_p(m: &IntMatrix, p: u64) -> FpMatrix {
    FpMatrix::from_int(m, p)
}

fn column_space(m: &FpMatrix) -> Subspace {
    let cols: Vec<Vec<u64>> = (0..m.cols()).map(|j| m.column(j)).collect();
    Subspace::span(m.p(), m.rows(), &cols)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub g: usize,
    pub ring: CoefficientRing,
    pub cokernel: AbelianInvariants,
    /// Rank (or dimension) of `{x ∈ ker(ω) : [f ∧ x] = 0 for all f}`.
    pub extra: usize,
    pub fixed: AbelianInvariants,
    pub equals_cokernel: bool,
}

/// Common fixed points of the `H¹(Σ_g)` action on `coker(ω; R) ⊕ e^0 ker(ω; R)`.
pub fn transvection_fixed_points(g: usize, ring: CoefficientRing) -> Result<FixedPointReport> {
    let p = field_char(ring)?;
    let st = Setup::new(g)?;
    let n = st.basis.len();
    let (coker, extra) = match p {
        None => {
            let ker = kernel_lattice(&st.omega);
            let image = Lattice::column_span(&st.omega);
            let k = ker.basis_matrix();
            let blocks: Vec<IntMatrix> = st.wedges.iter().map(|w| w.mul(&k)).collect::<Result<_>>()?;
            let mut stacked = blocks[0].clone();
            for b in &blocks[1..] {
                stacked = stacked.vstack(b)?;
            }
            let mut gens = Vec::new();
            for i in 0..st.wedges.len() {
                for v in image.basis() {
                    let mut x = vec![BigInt::from(0); n * st.wedges.len()];
                    x[i * n..(i + 1) * n].clone_from_slice(v);
                    gens.push(x);
                }
            }
            let target = Lattice::from_generators(n * st.wedges.len(), &gens);
            (cokernel(&st.omega), Lattice::preimage(&stacked, &target).rank())
        }
        Some(p) => {
            let w = mod_p(&st.omega, p);
            let image = column_space(&w);
            let ker = w.kernel();
            let rows: Vec<Vec<u64>> = ker
                .iter()
                .map(|x| {
                    st.wedges
                        .iter()
                        .flat_map(|m| image.quotient_coordinates(&mod_p(m, p).mul_vec(x)))
                        .collect()
                })
                .collect();
            let width = rows.first().map_or(0, Vec::len);
            let rank = FpMatrix::from_rows(p, width, rows).rank();
            (
                AbelianInvariants::from_cyclic(0, std::iter::repeat(BigInt::from(p)).take(n - image.dim())),
                ker.len() - rank,
            )
        }
    };
    let fixed = coker.direct_sum(&match p {
        None => AbelianInvariants::free(extra),
        Some(p) => AbelianInvariants::from_cyclic(0, std::iter::repeat(BigInt::from(p)).take(extra)),
    });
    Ok(FixedPointReport {
        g,
        ring,
        equals_cokernel: extra == 0,
        cokernel: coker,
        extra,
        fixed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Which kernel element: `basis:i` or `random:i`.
    pub element: String,
    /// Index `i` of the form `e^i` with `[α ∧ e^i] ≠ 0`.
    pub form: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NondegeneracyCertificate {
    pub g: usize,
    pub ring: CoefficientRing,
    pub kernel_rank: usize,
    pub witnesses: Vec<Witness>,
    /// Kernel elements with `[α ∧ e^i] = 0` for every `i`, rendered.
    pub unwitnessed: Vec<String>,
}

impl NondegeneracyCertificate {
    pub fn holds(&self) -> bool {
        self.unwitnessed.is_empty()
    }
}

/// Like [`nondegeneracy_search`], but a kernel element without a witness is an error.
pub fn contraction_nondegeneracy(
    g: usize,
    ring: CoefficientRing,
    random: usize,
    seed: u64,
) -> Result<NondegeneracyCertificate> {
    let c = nondegeneracy_search(g, ring, random, seed)?;
    match c.unwitnessed.first() {
        None => Ok(c),
        Some(first) => Err(Error::violation(
            "[α ∧ f] ≠ 0 for some f",
            format!(
                "g={g} {ring}: {} elements without a witness, e.g. {first}",
                c.unwitnessed.len()
            ),
        )),
    }
}

/// For nonzero `α ∈ ker(ω; R)` (a basis and `random` combinations), look
/// for a form `e^i` with `[α ∧ e^i] ≠ 0` in `coker(ω; R)`.
pub fn nondegeneracy_search(
    g: usize,
    ring: CoefficientRing,
    random: usize,
    seed: u64,
) -> Result<NondegeneracyCertificate> {
    let p = field_char(ring)?;
    let st = Setup::new(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cert = NondegeneracyCertificate {
        g,
        ring,
        kernel_rank: 0,
        witnesses: Vec::new(),
        unwitnessed: Vec::new(),
    };
    let mut record = |label: String, form: Option<usize>, v: Vec<BigInt>| match form {
        Some(i) => cert.witnesses.push(Witness {
            element: label,
            form: i + 1,
        }),
        None => cert
            .unwitnessed
            .push(format!("{label} = {}", st.basis.element(&v, ring))),
    };
    let kernel_rank = match p {
        None => {
            let ker = kernel_lattice(&st.omega);
            let image = Lattice::column_span(&st.omega);
            let mut candidates: Vec<(String, Vec<BigInt>)> = ker
                .basis()
                .iter()
                .enumerate()
                .map(|(i, v)| (format!("basis:{i}"), v.clone()))
                .collect();
            for r in 0..random {
                let mut v = vec![BigInt::from(0); st.basis.len()];
                for b in ker.basis() {
                    let c = BigInt::from(rng.gen_range(-3i64..=3));
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += &c * y;
                    }
                }
                if v.iter().any(|x| x != &BigInt::from(0)) {
                    candidates.push((format!("random:{r}"), v));
                }
            }
            for (label, v) in candidates {
                let form = (0..st.wedges.len()).find(|&i| !image.contains(&st.wedges[i].mul_vec(&v)));
                record(label, form, v);
            }
            ker.rank()
        }
        Some(p) => {
            let w = mod_p(&st.omega, p);
            let image = column_space(&w);
            let wedges: Vec<FpMatrix> = st.wedges.iter().map(|m| mod_p(m, p)).collect();
            let ker = w.kernel();
            let mut candidates: Vec<(String, Vec<u64>)> = ker
                .iter()
                .enumerate()
                .map(|(i, v)| (format!("basis:{i}"), v.clone()))
                .collect();
            for r in 0..random {
                let mut v = vec![0u64; st.basis.len()];
                for b in &ker {
                    let c = rng.gen_range(0..p);
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = (*x + c * y) % p;
                    }
                }
                if v.iter().any(|&x| x != 0) {
                    candidates.push((format!("random:{r}"), v));
                }
            }
            for (label, v) in candidates {
                let form = (0..wedges.len()).find(|&i| !image.contains(&wedges[i].mul_vec(&v)));
                record(label, form, v.into_iter().map(BigInt::from).collect());
            }
            ker.len()
        }
    };
    cert.kernel_rank = kernel_rank;
    Ok(cert)
}

/// `ι_ω` and `ι_{e^ω−1}` commute with the action of random integral
/// symplectic transvections on `Λ*(ℤ^{2g})`.
pub fn sp_equivariance_check(g: usize, samples: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps: Vec<LinearMap> = (0..samples)
        .map(|_| LinearMap::random_transvection(g, 3, &mut rng))
        .collect();
    if !maps.iter().all(LinearMap::is_symplectic) {
        return Ok(false);
    }
    let s = Space::symplectic(g);
    let degrees = s.all_degrees();
    Ok(commutes_with(&Operator::ContractOmega(1), s, &degrees, &maps)?
        && commutes_with(&Operator::ContractExp, s, &degrees, &maps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Monomial;

    fn e(s: Space, idx: &[usize]) -> Multivector {
        Multivector::monomial(
            s,
            CoefficientRing::Integers,
            Monomial::from_indices(idx).unwrap(),
            1.into(),
        )
    }

    #[test]
    fn action_examples() {
        let s = Space::symplectic(1);
        let zero = Multivector::zero(s, CoefficientRing::Integers);
        let class = ModelClass {
            coker: zero.clone(),
            ker: e(s, &[2]),
        };
        assert_eq!(transvection_action(&zero, &class).unwrap(), class);
        let moved = transvection_action(&e(s, &[1]), &class).unwrap();
        assert_eq!(moved.coker, e(s, &[1, 2]).scale(&BigInt::from(-1)));
        let f1 = e(s, &[1]);
        let f2 = e(s, &[2]);
        let both = transvection_action(&f1, &transvection_action(&f2, &class).unwrap()).unwrap();
        assert_eq!(both, transvection_action(&f1.add(&f2).unwrap(), &class).unwrap());
    }

    fn rank_p(g: usize, j: usize) -> usize {
        let c = |n: usize, k: usize| (0..k).fold(1usize, |a, i| a * (n - i) / (i + 1));
        c(2 * g, j) - if j >= 2 { c(2 * g, j - 2) } else { 0 }
    }

    #[test]
    fn fixed_points() {
        let r = transvection_fixed_points(1, CoefficientRing::Integers).unwrap();
        assert!(r.equals_cokernel);
        assert_eq!(r.fixed, AbelianInvariants::free(3));
        assert!(
            transvection_fixed_points(1, CoefficientRing::PrimeField(2))
                .unwrap()
                .equals_cokernel
        );
        // over ℚ, [f ∧ x] vanishes for every x ∈ P^j with j ≤ g − 2
        for g in 2..=3 {
            let r = transvection_fixed_points(g, CoefficientRing::Integers).unwrap();
            assert_eq!(r.extra, (0..=g - 2).map(|j| rank_p(g, j)).sum::<usize>());
            assert_eq!(r.fixed, r.cokernel.direct_sum(&AbelianInvariants::free(r.extra)));
        }
        let r = transvection_fixed_points(2, CoefficientRing::PrimeField(2)).unwrap();
        assert_eq!(r.extra, 1);
    }

    #[test]
    fn constants_have_no_witness() {
        let s = Space::symplectic(2);
        let one = Multivector::one(s, CoefficientRing::Integers);
        let w = crate::exterior::omega(s, CoefficientRing::Integers);
        for i in 1..=2 {
            let image = crate::exterior::contract_form(&w, &e(s, &[i, 3, 4])).unwrap();
            let f = one.wedge(&e(s, &[i])).unwrap();
            assert!(image == f || image == f.scale(&BigInt::from(-1)));
        }
        let c = nondegeneracy_search(2, CoefficientRing::PrimeField(2), 0, 0).unwrap();
        assert_eq!(c.unwitnessed.len(), 1);
        assert!(contraction_nondegeneracy(2, CoefficientRing::Integers, 0, 0).is_err());
    }

    #[test]
    fn witnesses() {
        let c = contraction_nondegeneracy(1, CoefficientRing::Integers, 10, 0).unwrap();
        assert_eq!(c.kernel_rank, 3);
        assert!(c.holds());
        assert!(contraction_nondegeneracy(1, CoefficientRing::PrimeField(2), 10, 3)
            .unwrap()
            .holds());
    }

    #[test]
    fn equivariance() {
        assert!(sp_equivariance_check(2, 4, 1).unwrap());
    }
}
