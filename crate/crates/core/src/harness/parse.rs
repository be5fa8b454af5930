//! Parsers for command-line parameter strings. None of them panic.

use std::fmt;

use crate::arith::is_odd_prime;
use crate::error::{Error, Result};
use crate::padic::{parse_rational, RootOfUnity};
use crate::spectrum::{central_character, CentralCharacter};
use crate::tree::RationalMatrix;

const MAX_LIST: usize = 10_000;
/// Largest prime accepted on the command line.
pub const MAX_PRIME: u64 = 1_000_000;

fn parse_u64(s: &str) -> Result<u64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("invalid integer {s:?}")))
}

fn split_range(s: &str) -> Option<(&str, &str)> {
    s.split_once("..=").or_else(|| s.split_once("..")).or_else(|| s.split_once('-'))
}

/// "3,5,7", "3-13" or a mix; ranges keep only odd primes, explicit entries
/// must be odd primes. Sorted and deduplicated.
pub fn parse_primes(s: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        match split_range(item) {
            Some((a, b)) => {
                let (a, b) = (parse_u64(a)?, parse_u64(b)?);
                if b < a || b > MAX_PRIME {
                    return Err(Error::Parse(format!("bad prime range {item:?}")));
                }
                out.extend((a..=b).filter(|&n| is_odd_prime(n)));
            }
            None => {
                let p = parse_u64(item)?;
                if p > MAX_PRIME {
                    return Err(Error::Parse(format!("prime {p} exceeds {MAX_PRIME}")));
                }
                if !is_odd_prime(p) {
                    return Err(Error::NotOddPrime(p));
                }
                out.push(p);
            }
        }
        if out.len() > MAX_LIST {
            return Err(Error::Parse("prime list too long".into()));
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(Error::Parse(format!("no primes in {s:?}")));
    }
    Ok(out)
}

/// Comma-separated nonnegative integers, with "a-b" ranges.
pub fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        match split_range(item) {
            Some((a, b)) => {
                let (a, b) = (parse_u64(a)?, parse_u64(b)?);
                if b < a || (b - a) as usize >= MAX_LIST {
                    return Err(Error::Parse(format!("bad range {item:?}")));
                }
                out.extend(a..=b);
            }
            None => out.push(parse_u64(item)?),
        }
        if out.len() > MAX_LIST {
            return Err(Error::Parse("list too long".into()));
        }
    }
    if out.is_empty() {
        return Err(Error::Parse(format!("empty list {s:?}")));
    }
    Ok(out)
}

/// "a..b", "a-b" or a single "n" (meaning 0..n).
pub fn parse_range(s: &str) -> Result<(u32, u32)> {
    let s = s.trim();
    let (lo, hi) = match split_range(s) {
        Some((a, b)) => (parse_u64(a)?, parse_u64(b)?),
        None => (0, parse_u64(s)?),
    };
    if lo > hi || hi > u32::MAX as u64 {
        return Err(Error::Parse(format!("bad range {s:?}")));
    }
    Ok((lo as u32, hi as u32))
}

/// Central character spec "c:k" or "c:k@u/v": the character of Z_p^x of
/// level c sending the primitive root to e^{2 pi i k / phi(p^c)}, with
/// the uniformizer acting by e^{2 pi i u / v}. "trivial" is "0:0".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChiSpec {
    pub level: u32,
    pub k: i64,
    pub uniformizer: RootOfUnity,
}

impl ChiSpec {
    pub fn trivial() -> Self {
        ChiSpec { level: 0, k: 0, uniformizer: RootOfUnity::one() }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("trivial") {
            return Ok(Self::trivial());
        }
        let bad = || Error::Parse(format!("invalid central character {s:?}, expected c:k[@u/v]"));
        let (body, unif) = match s.split_once('@') {
            Some((b, u)) => (b, Some(u)),
            None => (s, None),
        };
        let (c, k) = body.split_once(':').ok_or_else(bad)?;
        let level: u32 = c.trim().parse().map_err(|_| bad())?;
        let k: i64 = k.trim().parse().map_err(|_| bad())?;
        if level > 4 {
            return Err(Error::Parse(format!("central character level {level} is too large")));
        }
        let uniformizer = match unif {
            None => RootOfUnity::one(),
            Some(u) => {
                let (n, d) = u.split_once('/').ok_or_else(bad)?;
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: u64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 || d > 1 << 20 {
                    return Err(bad());
                }
                RootOfUnity::new(n, d)
            }
        };
        Ok(ChiSpec { level, k, uniformizer })
    }

    pub fn resolve(&self, p: u64) -> Result<CentralCharacter> {
        central_character(p, self.level, self.k, self.uniformizer)
    }
}

impl fmt::Display for ChiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.level, self.k)?;
        if !self.uniformizer.is_one() {
            write!(f, "@{}", self.uniformizer)?;
        }
        Ok(())
    }
}

/// "a,b;c,d" with rational entries.
pub fn parse_matrix(s: &str) -> Result<RationalMatrix> {
    let bad = || Error::Parse(format!("invalid matrix {s:?}, expected a,b;c,d"));
    let (top, bottom) = s.split_once(';').ok_or_else(bad)?;
    let (a, b) = top.split_once(',').ok_or_else(bad)?;
    let (c, d) = bottom.split_once(',').ok_or_else(bad)?;
    let entries = [a, b, c, d].map(parse_rational);
    let [a, b, c, d] = entries;
    RationalMatrix::new(a?, b?, c?, d?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(parse_primes("3,5,7").unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_primes("3-13").unwrap(), vec![3, 5, 7, 11, 13]);
        assert_eq!(parse_primes("7, 3..5,7").unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_primes("2").unwrap_err(), Error::NotOddPrime(2));
        assert!(parse_primes("9").is_err());
        assert!(parse_primes("x").is_err());
        assert!(parse_primes("").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..4").unwrap(), (0, 4));
        assert_eq!(parse_range("2-3").unwrap(), (2, 3));
        assert_eq!(parse_range("5").unwrap(), (0, 5));
        assert!(parse_range("4..2").is_err());
    }

    #[test]
    fn chi_specs() {
        let c = ChiSpec::parse("1:2@1/3").unwrap();
        assert_eq!(c, ChiSpec { level: 1, k: 2, uniformizer: RootOfUnity::new(1, 3) });
        assert_eq!(ChiSpec::parse(&c.to_string()).unwrap(), c);
        assert_eq!(ChiSpec::parse("trivial").unwrap(), ChiSpec::trivial());
        assert_eq!(ChiSpec::trivial().to_string(), "0:0");
        assert!(ChiSpec::parse("1:2@1/0").is_err());
        assert!(ChiSpec::parse("1").is_err());
        assert_eq!(ChiSpec::parse("1:0").unwrap().resolve(5).unwrap().conductor().unwrap(), 0);
        assert_eq!(ChiSpec::parse("1:1").unwrap().resolve(5).unwrap().conductor().unwrap(), 1);
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("1, 1/2; 0, 3").unwrap();
        assert_eq!(m.to_string(), "1,1/2;0,3");
        assert!(parse_matrix("1,2;2,4").is_err());
        assert!(parse_matrix("1,2,3,4").is_err());
        assert!(parse_matrix("1,2;3").is_err());
    }
}
