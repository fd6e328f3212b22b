use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::IntMatrix;
use super::smith::{invariant_factors, normalize_chain};

/// Isomorphism type `ℤ^free ⊕ ℤ/d_1 ⊕ ⋯ ⊕ ℤ/d_m` of a finitely generated abelian group.
///
/// `torsion` is kept as the invariant factor chain `2 ≤ d_1 | d_2 | ⋯`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `ℤ^free` plus cyclic summands `ℤ/c`; entries `c = 0` count as free and `c = 1` vanish.
    pub fn from_cyclic(free: usize, cyclic: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = free;
        let mut tors = Vec::new();
        for c in cyclic {
            if c.is_zero() {
                free_rank += 1;
            } else {
                tors.push(c);
            }
        }
        let torsion = normalize_chain(tors).into_iter().filter(|d| !d.is_one()).collect();
        AbelianInvariants { free_rank, torsion }
    }

    /// `(ℤ/c)^n` for each `(c, n)` together with a free part.
    pub fn from_multiplicities(free: usize, parts: &[(BigInt, usize)]) -> Self {
        Self::from_cyclic(free, parts.iter().flat_map(|(c, n)| std::iter::repeat_n(c.clone(), *n)))
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        Self::from_cyclic(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    pub fn sum_all<'a>(parts: impl IntoIterator<Item = &'a AbelianInvariants>) -> AbelianInvariants {
        parts
            .into_iter()
            .fold(AbelianInvariants::trivial(), |acc, p| acc.direct_sum(p))
    }

    /// Sorted prime powers `(p, e)` with multiplicity, one entry per cyclic summand `ℤ/p^e`.
    pub fn primary_decomposition(&self) -> Vec<(BigInt, u32)> {
        let mut out = Vec::new();
        for d in &self.torsion {
            for (p, e) in factorize(d) {
                out.push((p, e));
            }
        }
        out.sort();
        out
    }

    /// Number of cyclic summands of order exactly `p^e` in the primary decomposition.
    pub fn primary_multiplicity(&self, p: u64, e: u32) -> usize {
        let p = BigInt::from(p);
        self.primary_decomposition()
            .iter()
            .filter(|(q, f)| *q == p && *f == e)
            .count()
    }

    /// Whether some element has order divisible by `n`.
    pub fn has_torsion_divisible_by(&self, n: u64) -> bool {
        let n = BigInt::from(n);
        self.torsion.iter().any(|d| (d % &n).is_zero())
    }

    /// `G ⊗ ℤ/n` as an abelian group.
    pub fn tensor_mod(&self, n: u64) -> AbelianInvariants {
        let n = BigInt::from(n);
        let cyc = std::iter::repeat_n(n.clone(), self.free_rank).chain(self.torsion.iter().map(|d| d.gcd(&n)));
        Self::from_cyclic(0, cyc)
    }

    /// `Tor(G, ℤ/n)`.
    pub fn tor_mod(&self, n: u64) -> AbelianInvariants {
        let n = BigInt::from(n);
        Self::from_cyclic(0, self.torsion.iter().map(|d| d.gcd(&n)))
    }

    /// Number of cyclic summands, i.e. the 𝔽_p-dimension for groups killed by `p`.
    pub fn num_summands(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Invariant-factor text, e.g. `Z^5 + Z/2^3 + Z/6`; `0` for the trivial group.
    pub fn invariant_factor_string(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(grouped(&self.torsion));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Primary text, e.g. `Z^5 + Z/2^3 + Z/3`.
    pub fn primary_string(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let orders: Vec<BigInt> = self
            .primary_decomposition()
            .into_iter()
            .map(|(p, e)| num_traits::pow(p, e as usize))
            .collect();
        parts.extend(grouped(&orders));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn grouped(orders: &[BigInt]) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < orders.len() {
        let mut j = i;
        while j < orders.len() && orders[j] == orders[i] {
            j += 1;
        }
        if j - i == 1 {
            out.push(format!("Z/{}", orders[i]));
        } else {
            out.push(format!("Z/{}^{}", orders[i], j - i));
        }
        i = j;
    }
    out
}

/// Trial-division factorisation; torsion orders arising here are small.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.magnitude().clone();
    let mut out = Vec::new();
    let mut p = num_bigint::BigUint::from(2u32);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((BigInt::from(p.clone()), e));
        }
        p += 1u32;
    }
    if n > num_bigint::BigUint::one() {
        out.push((BigInt::from(n), 1));
    }
    out
}

/// `ℤ^rows / (column span of a)`.
pub fn cokernel(a: &IntMatrix) -> AbelianInvariants {
    let inv = invariant_factors(a);
    let free = a.rows() - inv.len();
    AbelianInvariants::from_cyclic(free, inv)
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariant_factor_string())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(u64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct InvariantsJson {
    free_rank: usize,
    torsion: Vec<JsonInt>,
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        InvariantsJson {
            free_rank: self.free_rank,
            torsion: self
                .torsion
                .iter()
                .map(|d| match d.to_u64() {
                    Some(v) => JsonInt::Small(v),
                    None => JsonInt::Big(d.to_string()),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbelianInvariants {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = InvariantsJson::deserialize(d)?;
        let mut tors = Vec::new();
        for t in raw.torsion {
            let v = match t {
                JsonInt::Small(v) => BigInt::from(v),
                JsonInt::Big(s) => s.parse().map_err(|_| D::Error::custom(format!("bad integer `{s}`")))?,
            };
            if v < BigInt::from(2) {
                return Err(D::Error::custom("torsion coefficients must be at least 2"));
            }
            tors.push(v);
        }
        Ok(AbelianInvariants::from_cyclic(raw.free_rank, tors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(
            cokernel(&IntMatrix::from_i64(&[&[2]])),
            AbelianInvariants::from_cyclic(0, [b(2)])
        );
        assert_eq!(cokernel(&IntMatrix::from_i64(&[&[0]])), AbelianInvariants::free(1));
        let d = IntMatrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 0]]);
        assert_eq!(cokernel(&d), AbelianInvariants::from_cyclic(1, [b(2)]));
    }

    #[test]
    fn text_forms() {
        let g = AbelianInvariants::from_cyclic(5, [b(2), b(2), b(2), b(6)]);
        assert_eq!(g.invariant_factor_string(), "Z^5 + Z/2^3 + Z/6");
        assert_eq!(g.primary_string(), "Z^5 + Z/2^4 + Z/3");
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
    }

    #[test]
    fn tensor_and_tor() {
        let g = AbelianInvariants::from_cyclic(2, [b(4), b(3)]);
        assert_eq!(g.tensor_mod(2), AbelianInvariants::from_cyclic(0, [b(2), b(2), b(2)]));
        assert_eq!(g.tor_mod(2), AbelianInvariants::from_cyclic(0, [b(2)]));
        assert_eq!(g.tensor_mod(3).num_summands(), 3);
    }

    #[test]
    fn json() {
        let g = AbelianInvariants::from_cyclic(1, [b(2), b(4)]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"free_rank":1,"torsion":[2,4]}"#);
        assert_eq!(serde_json::from_str::<AbelianInvariants>(&s).unwrap(), g);
        assert!(serde_json::from_str::<AbelianInvariants>(r#"{"free_rank":0,"torsion":[1]}"#).is_err());
    }
}
