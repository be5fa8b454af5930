//! Trace combinatorics of level-raising test functions, the newform sieve,
//! dimension main terms against the classical formula, and Fejer values.

use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, euler_phi, factorize, gcd, ipow, legendre, mobius, num_divisors};
use crate::error::{Error, Result};
use crate::padic::{int, rat, Rational, RootOfUnity};

/// [GL2(Z_p) : Gamma0(p^r)].
pub fn gamma0_index(p: u64, r: u32) -> u64 {
    if r == 0 {
        1
    } else {
        ipow(p, r - 1) * (p + 1)
    }
}

/// Dimension of Gamma0(p^r)-fixed vectors in a representation of conductor c.
pub fn oldvector_trace(c: u32, r: u32) -> u64 {
    if c <= r {
        (r - c + 1) as u64
    } else {
        0
    }
}

/// Trace of the newform combination at level p^r on a representation of
/// conductor c, where p^f_ord is the conductor of the central character.
pub fn newform_trace(c: u32, r: u32, f_ord: u32) -> Result<i64> {
    if f_ord > r {
        return Err(Error::Precondition(format!("central conductor exponent {f_ord} exceeds level {r}")));
    }
    let t = |j: u32| oldvector_trace(c, j) as i64;
    Ok(match r - f_ord {
        0 => t(r),
        1 => t(r) - 2 * t(r - 1),
        _ => t(r) - 2 * t(r - 1) + t(r - 2),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelData {
    pub n: u64,
    pub k: u32,
    pub factorization: Vec<(u64, u32)>,
}

impl LevelData {
    pub fn new(n: u64, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("level must be positive".into()));
        }
        if k == 0 || k % 2 == 1 {
            return Err(Error::Unsupported(format!("weight {k}: only even positive weights")));
        }
        Ok(LevelData { n, k, factorization: factorize(n) })
    }

    /// [SL2(Z) : Gamma0(N)] = N prod (1 + 1/p).
    pub fn index(&self) -> u64 {
        self.factorization.iter().fold(self.n, |acc, &(p, _)| acc / p * (p + 1))
    }
}

/// tau(G) zeta_F(-1)-style main term for a totally real field of the given
/// degree: (-1)^d zeta_F(-1) 2^{1-d} * index * dim.
pub fn main_term_general(degree: u32, zeta_f_minus_one: &Rational, index: &Rational, dim_xi: u64) -> Rational {
    let sign = if degree % 2 == 0 { int(1) } else { int(-1) };
    let two_pow = crate::padic::p_power(2, 1 - degree as i64);
    sign * zeta_f_minus_one * two_pow * index * int(dim_xi as i64)
}

/// (k-1)/12 [SL2(Z) : Gamma0(N)].
pub fn dim_main_term(ld: &LevelData) -> Rational {
    main_term_general(1, &rat(-1, 12), &int(ld.index() as i64), (ld.k - 1) as u64)
}

fn nu2(n: u64) -> u64 {
    if n % 4 == 0 {
        return 0;
    }
    factorize(n).iter().filter(|&&(p, _)| p != 2).map(|&(p, _)| (1 + legendre(-1, p)) as u64).product()
}

fn nu3(n: u64) -> u64 {
    if n % 9 == 0 {
        return 0;
    }
    factorize(n)
        .iter()
        .map(|&(p, _)| if p == 3 { 1 } else if p == 2 { 0 } else { (1 + legendre(-3, p)) as u64 })
        .product()
}

fn cusps(n: u64) -> u64 {
    divisors(n).iter().map(|&d| euler_phi(gcd(d, n / d))).sum()
}

/// dim S_k(Gamma0(N)) from the genus, elliptic point and cusp counts.
pub fn classical_dim_oracle(ld: &LevelData) -> Result<u64> {
    let n = ld.n;
    let (mu, e2, e3, ec) = (ld.index() as i64, nu2(n) as i64, nu3(n) as i64, cusps(n) as i64);
    // 12(g - 1) = mu - 3 e2 - 4 e3 - 6 ec
    let twelve_g_minus_one = mu - 3 * e2 - 4 * e3 - 6 * ec;
    debug_assert_eq!(twelve_g_minus_one.rem_euclid(12), 0);
    let g = twelve_g_minus_one / 12 + 1;
    let k = ld.k as i64;
    let dim = if k == 2 {
        g
    } else {
        (k - 1) * (g - 1) + (k / 4) * e2 + (k / 3) * e3 + (k / 2 - 1) * ec
    };
    u64::try_from(dim).map_err(|_| Error::Precondition(format!("negative dimension at N={n} k={k}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewformDecomposition {
    /// (d, dim S_k^new(Gamma0(d))) over divisors d of N
    pub new_dims: Vec<(u64, i64)>,
    pub total: i64,
    pub oracle: u64,
    pub consistent: bool,
}

/// Newform dimensions by inversion of dim S_k(N) = sum new(d) tau(N/d),
/// then the reconstruction and nonnegativity checks.
pub fn atkin_lehner_consistency(n: u64, k: u32) -> Result<NewformDecomposition> {
    let divs = divisors(n);
    let dims: Vec<i64> = divs
        .iter()
        .map(|&d| classical_dim_oracle(&LevelData::new(d, k)?).map(|x| x as i64))
        .collect::<Result<_>>()?;
    let dim_of = |d: u64| dims[divs.iter().position(|&x| x == d).expect("divisor")];
    // inverse of tau under Dirichlet convolution is mu * mu
    let beta = |m: u64| -> i64 { divisors(m).iter().map(|&e| mobius(e) * mobius(m / e)).sum() };
    let new_dims: Vec<(u64, i64)> = divs
        .iter()
        .map(|&d| (d, divisors(d).iter().map(|&e| beta(d / e) * dim_of(e)).sum()))
        .collect();
    let total: i64 = new_dims.iter().map(|&(d, nd)| nd * num_divisors(n / d) as i64).sum();
    let oracle = dim_of(n) as u64;
    let consistent = total == oracle as i64 && new_dims.iter().all(|&(_, nd)| nd >= 0);
    Ok(NewformDecomposition { new_dims, total, oracle, consistent })
}

/// Element of Q(zeta_n) in the power basis, reduced modulo the cyclotomic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicValue {
    pub n: u64,
    pub coeffs: Vec<Rational>,
}

impl CyclotomicValue {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(x) when the value is the rational x.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Absolute value under zeta_n -> e^{2 pi i / n}.
    pub fn magnitude(&self) -> f64 {
        let (mut re, mut im) = (0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            let t = std::f64::consts::TAU * j as f64 / self.n as f64;
            let c = rational_to_f64(c);
            re += c * t.cos();
            im += c * t.sin();
        }
        re.hypot(im)
    }
}

pub(crate) fn rational_to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        poly = divide_monic(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// Reduce sum c_j zeta_n^j (indices mod n) into the power basis of Q(zeta_n).
fn reduce_cyclotomic(n: u64, mut coeffs: Vec<Rational>) -> CyclotomicValue {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..coeffs.len()).rev() {
        let c = std::mem::replace(&mut coeffs[i], Rational::zero());
        if c.is_zero() {
            continue;
        }
        for (j, &b) in phi.iter().enumerate().take(deg) {
            coeffs[i - deg + j] -= &c * int(b);
        }
    }
    coeffs.truncate(deg);
    CyclotomicValue { n, coeffs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FejerMode {
    RamifiedTwist,
    Unramified(RootOfUnity),
}

/// (1/M^2) sum_{|i| < M} (M - |i|) z^i, or 0 for a ramified twist.
pub fn fejer_hat(m: u64, mode: FejerMode) -> Result<CyclotomicValue> {
    if m == 0 {
        return Err(Error::Precondition("M must be positive".into()));
    }
    let z = match mode {
        FejerMode::RamifiedTwist => return Ok(CyclotomicValue { n: 1, coeffs: vec![Rational::zero()] }),
        FejerMode::Unramified(z) => z,
    };
    let n = z.order();
    let mut coeffs = vec![Rational::zero(); n as usize];
    let scale = rat(1, (m * m) as i64);
    for i in -(m as i64 - 1)..=(m as i64 - 1) {
        let weight = int(m as i64 - i.abs());
        let e = (i * z.num() as i64).rem_euclid(n as i64) as usize;
        coeffs[e] += weight * &scale;
    }
    Ok(reduce_cyclotomic(n, coeffs))
}

/// True iff x is nonnegative and at most one.
pub fn in_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn fejer_cases() {
        assert!(fejer_hat(5, FejerMode::RamifiedTwist).unwrap().is_zero());
        assert_eq!(fejer_hat(5, FejerMode::Unramified(RootOfUnity::one())).unwrap().as_rational(), Some(int(1)));
        assert!(fejer_hat(4, FejerMode::Unramified(RootOfUnity::new(1, 4))).unwrap().is_zero());
        let z3 = RootOfUnity::new(1, 3);
        assert_eq!(fejer_hat(8, FejerMode::Unramified(z3)).unwrap().as_rational(), Some(rat(1, 64)));
    }
}
