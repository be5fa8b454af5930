use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{int, is_p_integral, legendre_of_unit_part, p_power, vp, Rational, Valuation};

/// Invertible 2x2 matrix [[a, b], [c, d]] over Q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl RationalMatrix {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let m = RationalMatrix { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(m)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(c), int(d))
    }

    pub fn identity() -> Self {
        RationalMatrix { a: int(1), b: int(0), c: int(0), d: int(1) }
    }

    pub fn diag(t1: Rational, t2: Rational) -> Result<Self> {
        Self::new(t1, int(0), int(0), t2)
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.d
    }

    /// tr^2 - 4 det
    pub fn discriminant(&self) -> Rational {
        let t = self.trace();
        &t * &t - int(4) * self.det()
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalMatrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        RationalMatrix {
            a: &self.d / &det,
            b: -&self.b / &det,
            c: -&self.c / &det,
            d: &self.a / &det,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalMatrix { a: &self.a * s, b: &self.b * s, c: &self.c * s, d: &self.d * s }
    }

    /// g^{-1} self g
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().mul(self).mul(g)
    }

    pub fn is_central(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn is_diagonal(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn min_valuation(&self, p: u64) -> Valuation {
        self.entries().iter().map(|x| vp(x, p)).min().expect("four entries")
    }

    /// Whether the matrix lies in Z * GL2(Z_p): some scalar multiple is integral with unit determinant.
    pub fn in_center_times_k(&self, p: u64) -> bool {
        self.in_center_times_gamma0(p, 0)
    }

    /// Whether the matrix lies in Z * Gamma0(p^r).
    pub fn in_center_times_gamma0(&self, p: u64, r: u32) -> bool {
        let v = vp(&self.det(), p).finite().expect("invertible");
        if v % 2 != 0 {
            return false;
        }
        let m = self.scale(&p_power(p, -v / 2));
        m.entries().iter().all(|x| is_p_integral(x, p)) && vp(&m.c, p) >= Valuation::Finite(r as i64)
    }

    /// Elliptic iff the characteristic polynomial has no root in Q_p.
    pub fn is_elliptic(&self, p: u64) -> bool {
        let disc = self.discriminant();
        match vp(&disc, p) {
            Valuation::Infinite => false,
            Valuation::Finite(v) => v % 2 != 0 || legendre_of_unit_part(&disc, p) == -1,
        }
    }

    /// Checks semisimple and noncentral.
    pub fn require_regular_semisimple(&self) -> Result<()> {
        if self.is_central() {
            return Err(Error::Central);
        }
        if self.discriminant().is_zero() {
            return Err(Error::NotSemisimple);
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::padic::format_rational as r;
        write!(f, "{},{};{},{}", r(&self.a), r(&self.b), r(&self.c), r(&self.d))
    }
}
