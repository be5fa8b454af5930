use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational, always reduced with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// p^e as a rational, e may be negative.
pub fn p_power(p: u64, e: i64) -> Rational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

/// p-adic valuation with a dedicated sentinel for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// Valuation of a product.
    pub fn add(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

pub fn vp_int(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        n = q;
        v += 1;
    }
    Valuation::Finite(v)
}

pub fn vp(x: &Rational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let vn = vp_int(x.numer(), p).finite().unwrap_or(0);
    let vd = vp_int(x.denom(), p).finite().unwrap_or(0);
    Valuation::Finite(vn - vd)
}

pub fn is_p_integral(x: &Rational, p: u64) -> bool {
    vp(x, p) >= Valuation::Finite(0)
}

/// Image of a p-integral rational in Z/p^k.
pub fn reduce_mod_pk(x: &Rational, p: u64, k: u32) -> Option<u64> {
    if !is_p_integral(x, p) {
        return None;
    }
    let m = BigInt::from(p).pow(k);
    let num = x.numer().mod_floor(&m);
    let den = x.denom().mod_floor(&m);
    let inv = den.modinv(&m)?;
    let r = (num * inv).mod_floor(&m);
    Some(u64::try_from(r).expect("residue fits in u64"))
}

/// Legendre symbol of the unit part x / p^{v(x)} of a nonzero rational.
pub fn legendre_of_unit_part(x: &Rational, p: u64) -> i32 {
    let v = vp(x, p).finite().expect("nonzero");
    let u = x * p_power(p, -v);
    let r = reduce_mod_pk(&u, p, 1).expect("unit");
    crate::arith::legendre(r as i64, p)
}

/// Parses `n`, `-n`, or `n/d`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
