use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{cokernel, AbelianInvariants, IntMatrix};
use crate::util::binomial;

/// Stirling numbers of the second kind `S(d, j)` for `0 ≤ j ≤ d ≤ n`.
pub fn stirling2(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); n + 1]; n + 1];
    s[0][0] = BigInt::one();
    for d in 1..=n {
        for j in 1..=d {
            s[d][j] = &s[d - 1][j - 1] + BigInt::from(j) * &s[d - 1][j];
        }
    }
    s
}

/// `D_k` (differentiation), `E_k` (`a_{r,r+j} = C(r+j, j)`) and the Touchard
/// change of basis `φ_k` (column `d` holds the coefficients of `p_d`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedPairMatrices {
    pub k: usize,
    pub d: IntMatrix,
    pub e: IntMatrix,
    pub phi: IntMatrix,
    pub conjugate: bool,
    pub stirling_identity: bool,
    pub d_cokernel: AbelianInvariants,
    pub e_cokernel: AbelianInvariants,
    pub expected_cokernel: AbelianInvariants,
}

pub fn touchard_conjugation(k: usize) -> Result<GradedPairMatrices> {
    let n = k + 1;
    let mut d = vec![vec![BigInt::zero(); n]; n];
    let mut e = vec![vec![BigInt::zero(); n]; n];
    for s in 1..n {
        d[s - 1][s] = BigInt::from(s);
        for r in 0..s {
            e[r][s] = binomial(s as i64, (s - r) as i64);
        }
    }
    let st = stirling2(k);
    let phi_rows: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|c| st[c][i].clone()).collect()).collect();
    let d = IntMatrix::from_dense(n, n, &d);
    let e = IntMatrix::from_dense(n, n, &e);
    let phi = IntMatrix::from_dense(n, n, &phi_rows);
    let conjugate = phi.is_unimodular() && phi.mul(&e)? == d.mul(&phi)?;
    let mut stirling_identity = true;
    for dd in 0..=k {
        for l in 0..dd {
            let lhs = BigInt::from(l + 1) * &st[dd][l + 1];
            let rhs: BigInt = (1..=dd - l)
                .map(|i| binomial(dd as i64, i as i64) * &st[dd - i][l])
                .sum();
            stirling_identity &= lhs == rhs;
        }
    }
    let expected_cokernel = AbelianInvariants::from_cyclic(0, (0..=k).map(BigInt::from));
    let out = GradedPairMatrices {
        k,
        d_cokernel: cokernel(&d),
        e_cokernel: cokernel(&e),
        d,
        e,
        phi,
        conjugate,
        stirling_identity,
        expected_cokernel,
    };
    if !(out.conjugate
        && out.stirling_identity
        && out.d_cokernel == out.expected_cokernel
        && out.e_cokernel == out.expected_cokernel)
    {
        return Err(Error::violation("E_k = φ⁻¹ D_k φ", format!("fails at k={k}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_values() {
        let s = stirling2(5);
        assert_eq!(s[3][2], BigInt::from(3));
        assert_eq!(s[5][3], BigInt::from(25));
    }

    #[test]
    fn derivative_of_second_touchard_polynomial() {
        // p_2 = x² + x, p_2' = 2x + 1 = C(2,1) p_1 + C(2,2) p_0.
        let s = stirling2(2);
        let p2 = [s[2][0].clone(), s[2][1].clone(), s[2][2].clone()];
        assert_eq!(p2, [0.into(), 1.into(), 1.into()]);
        let t = touchard_conjugation(2).unwrap();
        assert!(t.conjugate);
    }

    #[test]
    fn small_cases() {
        let t = touchard_conjugation(1).unwrap();
        assert_eq!(t.d, t.e);
        assert!(t.phi.is_unimodular());
        for k in 0..=12 {
            touchard_conjugation(k).unwrap();
        }
    }
}
