//! Small combinatorial helpers shared across modules.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient with `C(n, k) = 0` whenever `k < 0` or `k > n ≥ 0`.
///
/// Negative upper arguments follow the extension
/// `C(-i, j) = (-1)^j C(i + j - 1, j)`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n < 0 {
        let v = binomial(-n + k - 1, k);
        return if k % 2 == 0 { v } else { -v };
    }
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient as a machine integer, for rank bookkeeping.
pub fn binom_u(n: i64, k: i64) -> usize {
    use num_traits::ToPrimitive;
    binomial(n, k).to_usize().expect("binomial out of range")
}

/// Rank of the primitive lattice `P^k(ℤ^{2g})`: `C(2g,k) - C(2g,k-2)` for
/// `0 ≤ k ≤ g`, zero otherwise.
pub fn primitive_rank(g: usize, k: i64) -> usize {
    if k < 0 || k > g as i64 {
        return 0;
    }
    let n = 2 * g as i64;
    binom_u(n, k) - binom_u(n, k - 2)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// All `k`-subsets of `{0, .., n-1}` as ascending bitmasks, in ascending
/// numeric order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    // Gosper's hack enumerates in increasing numeric order.
    let mut s: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while s < limit {
        out.push(s);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_upper_binomials() {
        // C(-1, j) = (-1)^j
        for j in 0..6 {
            assert_eq!(binomial(-1, j), BigInt::from(sign(j % 2 == 1)));
        }
        // C(-2, 3) = -C(4, 3) = -4
        assert_eq!(binomial(-2, 3), BigInt::from(-4));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn gosper_order() {
        let s = subsets_of_size(4, 2);
        assert_eq!(s, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(subsets_of_size(10, 5).len(), 252);
        assert_eq!(subsets_of_size(3, 0), vec![0]);
    }

    #[test]
    fn primitive_ranks() {
        assert_eq!(primitive_rank(4, 2), 27);
        assert_eq!(primitive_rank(1, 1), 2);
        assert_eq!(primitive_rank(3, 4), 0);
    }
}
