//! Matrices of the standard operators in the monomial basis.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::monomial::Monomial;
use super::multivector::{
    contract_form, contract_triple_cup, exp_omega_minus_one, omega, omega_power, star, Multivector,
};
use super::space::Space;
use super::symplectic::LinearMap;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::ring::CoefficientRing;

/// An ordered monomial basis of a sum of homogeneous pieces, ascending by bitmask.
#[derive(Debug, Clone)]
pub struct Basis {
    space: Space,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    pub fn new(space: Space, degrees: &[usize]) -> Self {
        Self::from_monomials(space, space.basis_of_degrees(degrees))
    }

    pub fn degree(space: Space, k: i64) -> Self {
        if k < 0 || k as usize > space.dim() {
            return Self::from_monomials(space, Vec::new());
        }
        Self::new(space, &[k as usize])
    }

    pub fn from_monomials(space: Space, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Basis {
            space,
            monomials,
            index,
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> Monomial {
        self.monomials[i]
    }

    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.index.get(&m).copied()
    }

    /// Coefficient vector; fails if `x` has a term outside the basis.
    pub fn coordinates(&self, x: &Multivector) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.len()];
        for (m, c) in x.terms() {
            let i = self
                .index_of(*m)
                .ok_or_else(|| Error::DimensionMismatch(format!("term {m} lies outside the chosen basis")))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn element(&self, coords: &[BigInt], ring: CoefficientRing) -> Multivector {
        assert_eq!(coords.len(), self.len());
        Multivector::from_terms(
            self.space,
            ring,
            self.monomials.iter().zip(coords).map(|(m, c)| (*m, c.clone())),
        )
    }
}

/// A linear operator on the exterior algebra.
#[derive(Debug, Clone)]
pub enum Operator {
    /// `∧ ω_j`
    WedgeOmega(i64),
    /// `∧ ω^j` (undivided power)
    WedgeOmegaPower(u32),
    /// `ι_{ω_j}`
    ContractOmega(i64),
    /// `∧ (e^ω − 1)`
    WedgeExp,
    /// `ι_{e^ω − 1}`
    ContractExp,
    /// `x ↦ ι_x(ω_g)`
    Star,
    /// `ι_{e^0 ∧ ω}` on the extended algebra
    ContractCup,
    WedgeForm(Multivector),
    ContractForm(Multivector),
    Pushforward(LinearMap),
}

impl FromStr for Operator {
    type Err = Error;

    /// Names: `wedge_omega:J`, `wedge_omega_pow:J`, `contract_omega:J`,
    /// `wedge_exp`, `contract_exp`, `star`, `contract_cup`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let int_arg = || -> Result<i64> {
            arg.unwrap_or("1")
                .parse()
                .map_err(|_| Error::UnknownOperator(s.to_string()))
        };
        Ok(match name {
            "wedge_omega" => Operator::WedgeOmega(int_arg()?),
            "wedge_omega_pow" => {
                Operator::WedgeOmegaPower(u32::try_from(int_arg()?).map_err(|_| Error::UnknownOperator(s.to_string()))?)
            }
            "contract_omega" => Operator::ContractOmega(int_arg()?),
            "wedge_exp" if arg.is_none() => Operator::WedgeExp,
            "contract_exp" if arg.is_none() => Operator::ContractExp,
            "star" if arg.is_none() => Operator::Star,
            "contract_cup" if arg.is_none() => Operator::ContractCup,
            _ => return Err(Error::UnknownOperator(s.to_string())),
        })
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::WedgeOmega(j) => write!(f, "wedge_omega:{j}"),
            Operator::WedgeOmegaPower(j) => write!(f, "wedge_omega_pow:{j}"),
            Operator::ContractOmega(j) => write!(f, "contract_omega:{j}"),
            Operator::WedgeExp => write!(f, "wedge_exp"),
            Operator::ContractExp => write!(f, "contract_exp"),
            Operator::Star => write!(f, "star"),
            Operator::ContractCup => write!(f, "contract_cup"),
            Operator::WedgeForm(x) => write!(f, "wedge[{x}]"),
            Operator::ContractForm(x) => write!(f, "contract[{x}]"),
            Operator::Pushforward(_) => write!(f, "pushforward"),
        }
    }
}

impl Operator {
    /// Degrees hit by the operator when applied to `Λ^k`.
    pub fn target_degrees(&self, space: Space, k: usize) -> Vec<usize> {
        let top = space.dim() as i64;
        let shift = |d: i64| -> Vec<usize> {
            let t = k as i64 + d;
            if (0..=top).contains(&t) {
                vec![t as usize]
            } else {
                Vec::new()
            }
        };
        let same_parity = || -> Vec<usize> { (0..=space.dim()).filter(|d| d % 2 == k % 2).collect() };
        match self {
            Operator::WedgeOmega(j) => shift(2 * j),
            Operator::WedgeOmegaPower(j) => shift(2 * *j as i64),
            Operator::ContractOmega(j) => shift(-2 * j),
            Operator::WedgeExp | Operator::ContractExp => same_parity(),
            Operator::Star => vec![2 * space.g - k],
            Operator::ContractCup => shift(-3),
            Operator::Pushforward(_) => vec![k],
            Operator::WedgeForm(x) | Operator::ContractForm(x) => {
                let mut d: Vec<usize> = x
                    .terms()
                    .filter_map(|(m, _)| {
                        let s = if matches!(self, Operator::WedgeForm(_)) {
                            k as i64 + m.degree() as i64
                        } else {
                            k as i64 - m.degree() as i64
                        };
                        (0..=top).contains(&s).then_some(s as usize)
                    })
                    .collect();
                d.sort();
                d.dedup();
                d
            }
        }
    }

    pub fn apply(&self, x: &Multivector) -> Result<Multivector> {
        let space = x.space();
        let ring = x.ring();
        match self {
            Operator::WedgeOmega(j) => omega_power(space, ring, *j).wedge(x),
            Operator::WedgeOmegaPower(j) => {
                let w = omega(space, ring);
                let mut acc = x.clone();
                for _ in 0..*j {
                    acc = w.wedge(&acc)?;
                }
                Ok(acc)
            }
            Operator::ContractOmega(j) => contract_form(&omega_power(space, ring, *j), x),
            Operator::WedgeExp => exp_omega_minus_one(space, ring).wedge(x),
            Operator::ContractExp => contract_form(&exp_omega_minus_one(space, ring), x),
            Operator::Star => star(x),
            Operator::ContractCup => contract_triple_cup(x),
            Operator::WedgeForm(y) => y.change_ring(ring).wedge(x),
            Operator::ContractForm(y) => contract_form(&y.change_ring(ring), x),
            Operator::Pushforward(a) => Ok(a.pushforward(x)),
        }
    }
}

/// Matrix of `op` from `source` to `target` over ℤ; column `j` is the image of
/// `source.monomial(j)`.
pub fn operator_matrix(op: &Operator, source: &Basis, target: &Basis) -> Result<IntMatrix> {
    if source.space() != target.space() {
        return Err(Error::DimensionMismatch("source and target spaces differ".into()));
    }
    let space = source.space();
    let z = CoefficientRing::Integers;
    let mut cols = Vec::with_capacity(source.len());
    // Forms are built once; per-monomial work is then a sparse contraction or wedge.
    let prepared = prepare(op, space)?;
    for &m in source.monomials() {
        let x = Multivector::monomial(space, z, m, 1.into());
        let image = match &prepared {
            Some((form, true)) => form.wedge(&x)?,
            Some((form, false)) => contract_form(form, &x)?,
            None => op.apply(&x)?,
        };
        let mut col = Vec::with_capacity(image.len());
        for (n, c) in image.terms() {
            let i = target
                .index_of(*n)
                .ok_or_else(|| Error::DimensionMismatch(format!("{op} maps {m} to {n}, outside the target basis")))?;
            col.push((i, c.clone()));
        }
        cols.push(col);
    }
    Ok(IntMatrix::from_columns(target.len(), cols))
}

fn prepare(op: &Operator, space: Space) -> Result<Option<(Multivector, bool)>> {
    let z = CoefficientRing::Integers;
    Ok(match op {
        Operator::WedgeOmega(j) => Some((omega_power(space, z, *j), true)),
        Operator::ContractOmega(j) => Some((omega_power(space, z, *j), false)),
        Operator::WedgeExp => Some((exp_omega_minus_one(space, z), true)),
        Operator::ContractExp => Some((exp_omega_minus_one(space, z), false)),
        _ => None,
    })
}

/// Matrix of `op` on the given source degrees, with the target basis inferred.
pub fn operator_matrix_on(op: &Operator, space: Space, degrees: &[usize]) -> Result<(IntMatrix, Basis, Basis)> {
    let source = Basis::new(space, degrees);
    let mut tdeg: Vec<usize> = degrees.iter().flat_map(|&k| op.target_degrees(space, k)).collect();
    tdeg.sort();
    tdeg.dedup();
    let target = Basis::new(space, &tdeg);
    let m = operator_matrix(op, &source, &target)?;
    Ok((m, source, target))
}

/// `Λ^k → Λ^{k'}` matrix for degree-shifting operators; empty pieces give empty matrices.
pub fn degree_matrix(op: &Operator, space: Space, k: i64, target_k: i64) -> Result<IntMatrix> {
    operator_matrix(op, &Basis::degree(space, k), &Basis::degree(space, target_k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        let s1 = Space::symplectic(1);
        let m = degree_matrix(&Operator::ContractOmega(1), s1, 2, 0).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[&[-1]]));
        let (m, _, t) = operator_matrix_on(&Operator::WedgeOmega(1), s1, &[0]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(m.get(0, 0), BigInt::from(1));
    }

    #[test]
    fn exp_matrix_blocks() {
        let s = Space::symplectic(2);
        let (m, src, tgt) = operator_matrix_on(&Operator::ContractExp, s, &[4]).unwrap();
        assert_eq!(src.len(), 1);
        assert_eq!(tgt.len(), 1 + 6 + 1);
        let b2 = degree_matrix(&Operator::ContractOmega(1), s, 4, 2).unwrap();
        let b0 = degree_matrix(&Operator::ContractOmega(2), s, 4, 0).unwrap();
        for (i, &mono) in tgt.monomials().iter().enumerate() {
            let want = match mono.degree() {
                2 => b2.get(Basis::degree(s, 2).index_of(mono).unwrap(), 0),
                0 => b0.get(0, 0),
                _ => BigInt::zero(),
            };
            assert_eq!(m.get(i, 0), want);
        }
    }

    #[test]
    fn names() {
        assert!(matches!(
            "contract_omega:2".parse::<Operator>(),
            Ok(Operator::ContractOmega(2))
        ));
        assert!(matches!("bogus".parse::<Operator>(), Err(Error::UnknownOperator(_))));
        assert!(matches!("star:3".parse::<Operator>(), Err(Error::UnknownOperator(_))));
    }
}
