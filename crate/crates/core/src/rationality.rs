//! Lower bounds for fields of rationality, Weil q-integers, and the
//! quantitative ratios behind the rationality-counting argument.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_traits::Zero;

use crate::arith::{binomial, euler_phi, ipow, is_odd_prime, largest_with_phi_at_most};
use crate::error::{Error, Result};
use crate::padic::{int, Rational};
use crate::spectrum::{CentralCharacter, LocalSpectrum, OrbitKind, TemperedOrbit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBound {
    pub orbit: TemperedOrbit,
    pub lower_bound: u64,
}

pub fn cyclotomic_degree(n: u64) -> u64 {
    euler_phi(n)
}

/// Certified lower bound on [Q(O):Q] from the orders of the defining characters.
pub fn orbit_rationality_bound(o: &TemperedOrbit) -> DegreeBound {
    let half = |n: u64| cyclotomic_degree(n).div_ceil(2);
    let lower_bound = match o.kind() {
        OrbitKind::Type1(c) => half(c.order()),
        OrbitKind::Type2(a, b) => half(a.order()).max(half(b.order())),
        OrbitKind::Steinberg(c) => cyclotomic_degree(c.order()),
        OrbitKind::Supercuspidal { eta, .. } => half(eta.order()),
    };
    DegreeBound { orbit: o.clone(), lower_bound: lower_bound.max(1) }
}

/// Every orbit of conductor 3 or 4 at p has certified degree bound > A.
pub fn verify_rationality_gate(p: u64, a: u64) -> Result<bool> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if p <= 2 * a + 1 {
        return Err(Error::Precondition(format!("need p > 2A + 1, got p={p}, A={a}")));
    }
    let spectrum = LocalSpectrum::new(p, 4)?;
    Ok(spectrum
        .orbits()
        .iter()
        .filter(|o| (3..=4).contains(&o.conductor()))
        .all(|o| orbit_rationality_bound(o).lower_bound > a))
}

/// Largest n with phi(n) <= 2A.
pub fn rationality_cutoff(a: u64) -> u64 {
    largest_with_phi_at_most(2 * a)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilInteger {
    /// monic, leading coefficient first
    pub min_poly: Vec<i64>,
    pub weight: u32,
    pub q: u64,
}

impl WeilInteger {
    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn roots(&self) -> Vec<(f64, f64)> {
        numeric_roots(&self.min_poly)
    }

    /// Trace of the algebraic integer (minus the x^{d-1} coefficient).
    pub fn trace(&self) -> i64 {
        -self.min_poly[1]
    }
}

fn eval_poly(poly: &[i64], x: &Rational) -> Rational {
    poly.iter().fold(Rational::zero(), |acc, &c| acc * x + int(c))
}

fn divisors_abs(n: i64) -> Vec<i64> {
    let n = n.unsigned_abs();
    crate::arith::divisors(n).into_iter().map(|d| d as i64).collect()
}

fn has_rational_root(poly: &[i64]) -> bool {
    let lead = poly[0];
    let constant = *poly.last().expect("nonempty");
    if constant == 0 {
        return true;
    }
    for num in divisors_abs(constant) {
        for den in divisors_abs(lead) {
            for s in [1, -1] {
                if eval_poly(poly, &Rational::new((s * num).into(), den.into())).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Monic quartic splits into two monic integer quadratics.
fn has_quadratic_factor(poly: &[i64]) -> bool {
    // x^4 + a x^3 + b x^2 + c x + d = (x^2 + s x + t)(x^2 + u x + v)
    let (a, b, c, d) = (poly[1], poly[2], poly[3], poly[4]);
    for t in divisors_abs(d).into_iter().flat_map(|t| [t, -t]) {
        let v = d / t;
        // s + u = a, t + v + s u = b, s v + t u = c
        let bound = (a.abs() + b.abs() + c.abs() + d.abs() + 2) as i64;
        let mut s = -bound;
        while s <= bound {
            let u = a - s;
            if t + v + s * u == b && s * v + t * u == c {
                return true;
            }
            s += 1;
        }
    }
    false
}

pub fn is_irreducible(poly: &[i64]) -> bool {
    let d = poly.len() - 1;
    match d {
        0 => false,
        1 => true,
        2 | 3 => !has_rational_root(poly),
        4 => !has_rational_root(poly) && !has_quadratic_factor(poly),
        _ => unimplemented!("irreducibility is decided for degree <= 4"),
    }
}

pub fn numeric_roots(poly: &[i64]) -> Vec<(f64, f64)> {
    let d = poly.len() - 1;
    if d == 1 {
        return vec![(-(poly[1] as f64), 0.0)];
    }
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -(poly[d - i] as f64);
    }
    m.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect()
}

/// x^d P(q^w / x) = +-q^{dw/2} P(x), exactly.
fn functional_equation_holds(poly: &[i64], q: u64, weight: u32) -> bool {
    let d = poly.len() - 1;
    if (d as u32 * weight) % 2 == 1 {
        return false;
    }
    let qw = ipow(q, weight) as i128;
    let half = ipow(q, d as u32 * weight / 2) as i128;
    // coefficient of x^j on the left is c_{d-j} q^{w j} with c_i the coefficient of x^i
    let coeff = |i: usize| poly[d - i] as i128;
    [1i128, -1].iter().any(|&s| (0..=d).all(|j| coeff(d - j) * qw.pow(j as u32) == s * half * coeff(j)))
}

fn weil_condition(poly: &[i64], q: u64, weight: u32) -> bool {
    let d = poly.len() - 1;
    let qw = ipow(q, weight) as i64;
    match d {
        1 => poly[1] * poly[1] == qw,
        2 => {
            // complex conjugate pair with product q^w
            let (a1, a0) = (poly[1], poly[2]);
            a0 == qw && a1 * a1 < 4 * qw
        }
        _ => {
            functional_equation_holds(poly, q, weight)
                && numeric_roots(poly).iter().all(|&(re, im)| (re * re + im * im - qw as f64).abs() < 1e-9)
        }
    }
}

fn coefficient_bounds(d: u32, q: u64, weight: u32, margin: i64) -> Vec<i64> {
    // |c_j| <= binom(d, j) q^{j w / 2}
    (1..=d)
        .map(|j| {
            let b = binomial(d as u64, j as u64) as f64 * (q as f64).powf(j as f64 * weight as f64 / 2.0);
            b.floor() as i64 + margin
        })
        .collect()
}

fn scan(q: u64, weight: u32, max_degree: u32, margin: i64) -> Vec<WeilInteger> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        if (d * weight) % 2 == 1 {
            continue;
        }
        let bounds = coefficient_bounds(d, q, weight, margin);
        let top = ipow(q, d * weight / 2) as i64;
        let constants: Vec<i64> = if d == 1 { vec![-top, top] } else { vec![top] };
        let mut middle: Vec<i64> = bounds[..d as usize - 1].iter().map(|b| -b).collect();
        'odometer: loop {
            for &c0 in &constants {
                let mut poly = vec![1i64];
                poly.extend_from_slice(&middle);
                poly.push(c0);
                if weil_condition(&poly, q, weight) && is_irreducible(&poly) {
                    out.push(WeilInteger { min_poly: poly, weight, q });
                }
            }
            for j in 0..middle.len() {
                middle[j] += 1;
                if middle[j] <= bounds[j] {
                    continue 'odometer;
                }
                middle[j] = -bounds[j];
            }
            break;
        }
    }
    out.sort_by(|a, b| (a.degree(), &a.min_poly).cmp(&(b.degree(), &b.min_poly)));
    out
}

/// Minimal polynomials of Weil q-integers of the given weight and degree at
/// most `max_degree`. For degree >= 2 the constant term is +q^{dw/2}, so the
/// real pair +-q^{w/2} (odd w) is excluded.
pub fn weil_q_integers(q: u64, weight: u32, max_degree: u32) -> Result<Vec<WeilInteger>> {
    check_weil_args(q, weight, max_degree)?;
    Ok(scan(q, weight, max_degree, 0))
}

/// Same scan with every coefficient bound widened by `margin`.
pub fn weil_q_integers_with_margin(q: u64, weight: u32, max_degree: u32, margin: i64) -> Result<Vec<WeilInteger>> {
    check_weil_args(q, weight, max_degree)?;
    Ok(scan(q, weight, max_degree, margin))
}

fn check_weil_args(q: u64, weight: u32, max_degree: u32) -> Result<()> {
    if !crate::arith::is_prime(q) {
        return Err(Error::Precondition(format!("q = {q} must be prime")));
    }
    if weight == 0 || max_degree > 4 {
        return Err(Error::Precondition("need weight >= 1 and degree <= 4".into()));
    }
    if (q as f64).powf(2.0 * weight as f64) > 1e6 {
        return Err(Error::CostGuard(format!("coefficient box for q={q}, weight={weight} is too large")));
    }
    Ok(())
}

/// Rational values alpha + beta with alpha, beta Weil q-integers of degree <= 2A:
/// traces of quadratic conjugate pairs and sums of two rational ones.
pub fn unramified_small_rationality_points(q: u64, weight: u32, a: u32) -> Result<BTreeSet<i64>> {
    if a == 0 {
        return Ok(BTreeSet::new());
    }
    let all = weil_q_integers(q, weight, (2 * a).min(2))?;
    let mut out = BTreeSet::new();
    let rational: Vec<i64> = all.iter().filter(|w| w.degree() == 1).map(|w| w.trace()).collect();
    for w in all.iter().filter(|w| w.degree() == 2) {
        out.insert(w.trace());
    }
    for &x in &rational {
        for &y in &rational {
            out.insert(x + y);
        }
    }
    Ok(out)
}

/// Mass of conductor <= 2 slices whose degree bound exceeds A, over q(q+1).
pub fn small_rationality_ratio(p: u64, a: u64, chi: &CentralCharacter) -> Result<Rational> {
    if p <= 2 * a + 1 {
        return Err(Error::Precondition(format!("need p > 2A + 1, got p={p}, A={a}")));
    }
    if chi.conductor()? != 0 {
        return Err(Error::Precondition("central character must be unramified".into()));
    }
    let spectrum = LocalSpectrum::new(p, 2)?;
    let mass = spectrum
        .slices(chi)?
        .iter()
        .filter(|s| orbit_rationality_bound(&s.orbit).lower_bound > a)
        .fold(Rational::zero(), |acc, s| acc + s.total_mass());
    Ok(mass / int((p * (p + 1)) as i64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OldformBound {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// B - b + 1 <= (B - 1)(3 - b).
pub fn oldform_bound_check(big_b: i64, b: i64) -> Result<OldformBound> {
    if big_b < 3 || !(0..=2).contains(&b) {
        return Err(Error::Precondition("need B >= 3 and b in 0..=2".into()));
    }
    let lhs = big_b - b + 1;
    let rhs = (big_b - 1) * (3 - b);
    Ok(OldformBound { lhs, rhs, holds: lhs <= rhs })
}

/// (B - 1) N^{2 - B}.
pub fn oldform_decay_factor(big_b: i64, norm: u64) -> Rational {
    int(big_b - 1) * crate::padic::p_power(norm, 2 - big_b)
}
