use std::fmt;

use serde::{Deserialize, Serialize};

/// A basis monomial `e^S = e^{i_1} ∧ ⋯ ∧ e^{i_k}` with `i_1 < ⋯ < i_k`.
///
/// Index `i` is stored as bit `i`, so index 0 (the circle direction of the
/// extended space) is the lowest bit and the canonical basis order is
/// ascending bitmask value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_indices(indices: &[usize]) -> Option<Monomial> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= 64 || bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(Monomial(bits))
    }

    pub fn single(i: usize) -> Monomial {
        Monomial(1 << i)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Number of indices of `self` strictly below `i`.
    pub fn count_below(self, i: usize) -> u32 {
        (self.0 & ((1u64 << i) - 1)).count_ones()
    }

    /// `e^self ∧ e^other` as `(sign, monomial)`, or `None` if they overlap.
    pub fn wedge(self, other: Monomial) -> Option<(bool, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // sign = parity of #{(a, b) : a ∈ self, b ∈ other, a > b}
        let mut inversions = 0u32;
        for b in other.indices() {
            inversions += (self.0 >> (b + 1)).count_ones();
        }
        Some((inversions % 2 == 1, Monomial(self.0 | other.0)))
    }

    /// Removes index `i`, returning the sign `(-1)^{position}` (0-based).
    pub fn remove(self, i: usize) -> Option<(bool, Monomial)> {
        if !self.contains(i) {
            return None;
        }
        Some((self.count_below(i) % 2 == 1, Monomial(self.0 & !(1 << i))))
    }

    /// `ι_{e^t}(e^self)` for the standard symplectic pairing.
    ///
    /// Only the symplectic partner of `t` contributes; index 0 pairs to zero.
    pub fn contract_index(self, t: usize) -> Option<(bool, Monomial)> {
        if t == 0 {
            return None;
        }
        let partner = symplectic_partner(t);
        let (pos_odd, rest) = self.remove(partner)?;
        // ω(e^partner, e^t) is +1 when t is even, -1 when t is odd
        let pairing_negative = t % 2 == 1;
        Some((pos_odd ^ pairing_negative, rest))
    }

    /// `ι_{e^T}(e^self) = ι_{e^{t_1}} ∘ ⋯ ∘ ι_{e^{t_j}} (e^self)`.
    pub fn contract_by(self, t: Monomial) -> Option<(bool, Monomial)> {
        let mut sign = false;
        let mut cur = self;
        let idx: Vec<usize> = t.indices().collect();
        for &i in idx.iter().rev() {
            let (s, next) = cur.contract_index(i)?;
            sign ^= s;
            cur = next;
        }
        Some((sign, cur))
    }

    /// Number of complete symplectic pairs `{2i-1, 2i}` contained in the monomial.
    pub fn full_pairs(self) -> u64 {
        // bit 2i-1 is odd position, bit 2i even; align odd bits onto even ones
        let odd = self.0 & 0xAAAA_AAAA_AAAA_AAAA; // bits 1,3,5,..
        let even = self.0 & 0x5555_5555_5555_5554; // bits 2,4,6,.. (bit 0 excluded)
        (odd << 1) & even
    }
}

/// `2i-1 ↔ 2i` for indices `≥ 1`.
pub fn symplectic_partner(t: usize) -> usize {
    debug_assert!(t >= 1);
    if t % 2 == 1 {
        t + 1
    } else {
        t - 1
    }
}

/// The standard pairing `ω(e^a, e^b)` on indices (index 0 pairs to zero).
pub fn symplectic_pairing(a: usize, b: usize) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    if a % 2 == 1 && b == a + 1 {
        1
    } else if a % 2 == 0 && b + 1 == a {
        -1
    } else {
        0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e{{")?;
        for (n, i) in self.indices().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ix: &[usize]) -> Monomial {
        Monomial::from_indices(ix).unwrap()
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(m(&[1]).wedge(m(&[2])), Some((false, m(&[1, 2]))));
        assert_eq!(m(&[2]).wedge(m(&[1])), Some((true, m(&[1, 2]))));
        assert_eq!(m(&[1]).wedge(m(&[1])), None);
        // e^{3} ∧ e^{1,2}: two inversions
        assert_eq!(m(&[3]).wedge(m(&[1, 2])), Some((false, m(&[1, 2, 3]))));
        assert_eq!(m(&[2, 3]).wedge(m(&[1])), Some((false, m(&[1, 2, 3]))));
        assert_eq!(m(&[2]).wedge(m(&[1, 3])), Some((true, m(&[1, 2, 3]))));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(m(&[1, 2]).contract_index(2), Some((false, m(&[2]))));
        assert_eq!(m(&[1, 2]).contract_index(1), Some((false, m(&[1]))));
        assert_eq!(m(&[1, 2]).contract_index(3), None);
        assert_eq!(m(&[0, 1, 2]).contract_index(0), None);
        // ι_{e^{12}}(e^{12}) = -1
        assert_eq!(m(&[1, 2]).contract_by(m(&[1, 2])), Some((true, Monomial::ONE)));
    }

    #[test]
    fn pairs_detected() {
        assert_eq!(m(&[1, 2, 4]).full_pairs().count_ones(), 1);
        assert_eq!(m(&[0, 1, 3]).full_pairs().count_ones(), 0);
        assert_eq!(m(&[1, 2, 3, 4]).full_pairs().count_ones(), 2);
        assert_eq!(m(&[2, 3]).full_pairs(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(m(&[1, 2]).to_string(), "e{1,2}");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
