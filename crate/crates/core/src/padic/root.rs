use std::fmt;

use num_bigint::BigInt;

use super::rational::Rational;
use crate::arith::gcd;

/// e^{2 pi i num/den}, stored reduced with 0 <= num < den.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "root of unity needs a positive order");
        let n = num.rem_euclid(den as i64) as u64;
        let g = gcd(n, den);
        if n == 0 {
            return Self::one();
        }
        RootOfUnity { num: n / g, den: den / g }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn exponent(&self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let g = gcd(self.den, other.den);
        let den = self.den / g * other.den;
        let num = (self.num as u128 * (other.den / g) as u128
            + other.num as u128 * (self.den / g) as u128)
            % den as u128;
        Self::new(num as i64, den)
    }

    pub fn inverse(&self) -> Self {
        Self::new(-(self.num as i64), self.den)
    }

    pub fn pow(&self, k: i64) -> Self {
        let k = k.rem_euclid(self.den as i64) as u128;
        Self::new((self.num as u128 * k % self.den as u128) as i64, self.den)
    }

    /// The principal square root: exponent halved.
    pub fn half(&self) -> Self {
        Self::new(self.num as i64, 2 * self.den)
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let t = std::f64::consts::TAU * self.num as f64 / self.den as f64;
        (t.cos(), t.sin())
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
