use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring for multivectors and (co)homology computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    /// ℤ/n for n ≥ 2.
    IntegersMod(u64),
    /// 𝔽_p for a prime p.
    PrimeField(u64),
}

impl CoefficientRing {
    pub fn integers_mod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("ℤ/{n} needs n ≥ 2")));
        }
        Ok(CoefficientRing::IntegersMod(n))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    /// The modulus, or `None` for ℤ.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            CoefficientRing::Integers => None,
            CoefficientRing::IntegersMod(n) | CoefficientRing::PrimeField(n) => Some(n),
        }
    }

    pub fn is_field(&self) -> bool {
        match *self {
            CoefficientRing::Integers => false,
            CoefficientRing::PrimeField(_) => true,
            CoefficientRing::IntegersMod(n) => is_prime(n),
        }
    }

    /// Canonical representative: unchanged over ℤ, in `[0, n)` otherwise.
    pub fn reduce(&self, x: BigInt) -> BigInt {
        match self.modulus() {
            None => x,
            Some(n) => x.mod_floor(&BigInt::from(n)),
        }
    }

    pub fn is_zero(&self, x: &BigInt) -> bool {
        match self.modulus() {
            None => x.is_zero(),
            Some(n) => (x % BigInt::from(n)).is_zero(),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "z"),
            CoefficientRing::PrimeField(p) => write!(f, "f{p}"),
            CoefficientRing::IntegersMod(n) => write!(f, "zmod:{n}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    /// Accepts `z`, `f<p>` (e.g. `f2`) and `zmod:<n>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "z" || s == "zz" || s == "integers" {
            return Ok(CoefficientRing::Integers);
        }
        if let Some(rest) = s.strip_prefix("zmod:") {
            let n: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in `{s}`")))?;
            return CoefficientRing::integers_mod(n);
        }
        if let Some(rest) = s.strip_prefix('f') {
            let p: u64 = rest.parse().map_err(|_| Error::Parse(format!("bad prime in `{s}`")))?;
            return CoefficientRing::prime_field(p);
        }
        Err(Error::Parse(format!("unknown ring `{s}`")))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rings() {
        assert_eq!("z".parse::<CoefficientRing>().unwrap(), CoefficientRing::Integers);
        assert_eq!("f2".parse::<CoefficientRing>().unwrap(), CoefficientRing::PrimeField(2));
        assert_eq!(
            "zmod:6".parse::<CoefficientRing>().unwrap(),
            CoefficientRing::IntegersMod(6)
        );
        assert!("f4".parse::<CoefficientRing>().is_err());
        assert!("zmod:1".parse::<CoefficientRing>().is_err());
    }

    #[test]
    fn reduction_is_canonical() {
        let r = CoefficientRing::IntegersMod(5);
        assert_eq!(r.reduce(BigInt::from(-3)), BigInt::from(2));
        assert_eq!(r.reduce(BigInt::from(12)), BigInt::from(2));
        assert_eq!(CoefficientRing::Integers.reduce(BigInt::from(-3)), BigInt::from(-3));
    }
}
