//! Text form of multivectors: `2 e{1,2} - e{3,4}`, with `1` for the empty monomial.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::monomial::Monomial;
use super::multivector::Multivector;
use super::space::Space;
use crate::error::{Error, Result};
use crate::ring::CoefficientRing;

pub(crate) fn write_multivector(f: &mut fmt::Formatter<'_>, v: &Multivector) -> fmt::Result {
    if v.is_zero() {
        return write!(f, "0");
    }
    for (n, (m, c)) in v.terms().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        match (n, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if *m == Monomial::ONE {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{abs} {m}")?;
        }
    }
    Ok(())
}

/// Parses the text form. Coefficients default to 1; `1` or a bare integer is
/// a multiple of the empty monomial.
pub fn parse_multivector(s: &str, space: Space, ring: CoefficientRing) -> Result<Multivector> {
    let mut out = Multivector::zero(space, ring);
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
        let mut negative = false;
        if chars[i] == '+' || chars[i] == '-' {
            negative = chars[i] == '-';
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(Error::Parse(format!("expected `+` or `-` at offset {i} in `{s}`")));
        }
        first = false;

        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<BigInt> = if i > start {
            let digits: String = chars[start..i].iter().collect();
            Some(
                digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{digits}`")))?,
            )
        } else {
            None
        };
        skip_ws(&mut i);
        if i < chars.len() && chars[i] == '*' {
            i += 1;
            skip_ws(&mut i);
        }

        let monomial = if i < chars.len() && chars[i] == 'e' {
            i += 1;
            if i >= chars.len() || chars[i] != '{' {
                return Err(Error::Parse(format!("expected `{{` after `e` in `{s}`")));
            }
            let close = chars[i..]
                .iter()
                .position(|&c| c == '}')
                .ok_or_else(|| Error::Parse(format!("unclosed `{{` in `{s}`")))?
                + i;
            let inner: String = chars[i + 1..close].iter().collect();
            i = close + 1;
            let mut idx = Vec::new();
            for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let n: usize = part.parse().map_err(|_| Error::Parse(format!("bad index `{part}`")))?;
                idx.push(n);
            }
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!(
                    "indices must be strictly increasing in e{{{inner}}}"
                )));
            }
            let m = Monomial::from_indices(&idx).ok_or_else(|| Error::Parse(format!("bad monomial e{{{inner}}}")))?;
            if !space.contains(m) {
                return Err(Error::DimensionMismatch(format!(
                    "{m} is outside an ambient space of dimension {}",
                    space.dim()
                )));
            }
            m
        } else if coeff.is_some() {
            Monomial::ONE
        } else {
            return Err(Error::Parse(format!("expected a term at offset {i} in `{s}`")));
        };
        let mut c = coeff.unwrap_or_else(BigInt::one);
        if negative {
            c = -c;
        }
        out.add_term(monomial, c);
    }
    if first {
        return Err(Error::Parse("empty multivector".into()));
    }
    Ok(out)
}

impl Multivector {
    pub fn parse(s: &str, space: Space, ring: CoefficientRing) -> Result<Multivector> {
        let t = s.trim();
        if t == "0" {
            return Ok(Multivector::zero(space, ring));
        }
        parse_multivector(t, space, ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = Space::symplectic(2);
        let z = CoefficientRing::Integers;
        for text in ["2 e{1,2} - e{3,4}", "1", "-3", "e{1} + 5 e{2,3,4}", "0"] {
            let v = Multivector::parse(text, s, z).unwrap();
            assert_eq!(v.to_string(), text);
        }
        let v = Multivector::parse("e{1,2}+e{3,4} - e{1,2}", s, z).unwrap();
        assert_eq!(v.to_string(), "e{3,4}");
    }

    #[test]
    fn rejects_bad_input() {
        let s = Space::symplectic(2);
        let z = CoefficientRing::Integers;
        assert!(Multivector::parse("e{2,1}", s, z).is_err());
        assert!(Multivector::parse("e{5}", s, z).is_err());
        assert!(Multivector::parse("e{0}", s, z).is_err());
        assert!(Multivector::parse("e{0}", Space::extended(2), z).is_ok());
        assert!(Multivector::parse("2 e{1} e{2}", s, z).is_err());
        assert!(Multivector::parse("", s, z).is_err());
    }
}
