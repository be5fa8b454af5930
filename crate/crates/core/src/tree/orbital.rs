use std::collections::{HashSet, VecDeque};

use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::vertex::{TreeContext, TreeVertex};
use crate::arith::ipow;
use crate::error::{Error, Result};
use crate::global::gamma0_index;
use crate::padic::{int, p_power, rat, reduce_mod_pk, vp, Rational};

/// vol(Gamma0(p^r)) with vol(GL2(Z_p)) = 1.
pub fn vol_gamma0(p: u64, r: u32) -> Rational {
    rat(1, gamma0_index(p, r) as i64)
}

/// g fixes w iff h^{-1} g h lies in Z * GL2(Z_p), h the basis matrix of w.
pub fn fixes_vertex(g: &RationalMatrix, w: &TreeVertex, p: u64) -> bool {
    g.conjugate_by(&w.basis(p)).in_center_times_k(p)
}

/// Number of non-backtracking walks of length r from `start` inside X^g.
fn fixed_walks(g: &RationalMatrix, start: &TreeVertex, r: u32, ctx: &TreeContext) -> Result<u64> {
    fn go(g: &RationalMatrix, prev: Option<&TreeVertex>, w: &TreeVertex, left: u32, ctx: &TreeContext) -> Result<u64> {
        if left == 0 {
            return Ok(1);
        }
        let mut total = 0;
        for u in ctx.neighbors(w).map_err(|_| Error::RadiusInsufficient { have: ctx.radius, need: ctx.depth(w) + left })? {
            if Some(&u) != prev && fixes_vertex(g, &u, ctx.p) {
                total += go(g, Some(w), &u, left - 1, ctx)?;
            }
        }
        Ok(total)
    }
    if !fixes_vertex(g, start, ctx.p) {
        return Ok(0);
    }
    go(g, None, start, r, ctx)
}

/// Connected component of X^g containing `seed`, restricted to vertices with
/// `keep`. Errors if the component reaches the edge of the ball.
fn fixed_component(
    g: &RationalMatrix,
    seed: &TreeVertex,
    ctx: &TreeContext,
    keep: impl Fn(&TreeVertex) -> bool,
) -> Result<Vec<TreeVertex>> {
    let mut seen = HashSet::from([seed.clone()]);
    let mut out = Vec::new();
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(w) = queue.pop_front() {
        let nbrs = ctx
            .neighbors(&w)
            .map_err(|_| Error::RadiusInsufficient { have: ctx.radius, need: ctx.radius + 1 })?;
        for u in nbrs {
            if !seen.contains(&u) && keep(&u) && fixes_vertex(g, &u, ctx.p) {
                seen.insert(u.clone());
                queue.push_back(u);
            }
        }
        out.push(w);
    }
    Ok(out)
}

/// The fixed set X^g, required to be finite and inside the ball.
pub fn fixed_set(g: &RationalMatrix, ctx: &TreeContext) -> Result<Vec<TreeVertex>> {
    let vdet = vp(&g.det(), ctx.p).finite().ok_or(Error::Singular)?;
    if vdet % 2 != 0 {
        return Ok(Vec::new());
    }
    let seed = ctx
        .ball()
        .into_iter()
        .find(|w| fixes_vertex(g, w, ctx.p))
        .ok_or(Error::RadiusInsufficient { have: ctx.radius, need: ctx.radius + 1 })?;
    let mut set = fixed_component(g, &seed, ctx, |_| true)?;
    set.sort();
    Ok(set)
}

/// Oriented length-r segments contained in X^g (for r = 0, the fixed vertices).
pub fn fixed_segment_count(g: &RationalMatrix, r: u32, ctx: &TreeContext) -> Result<u64> {
    let set = fixed_set(g, ctx)?;
    if let Some(far) = set.iter().map(|w| ctx.depth(w)).max() {
        ctx.require_radius(far + r + 1)?;
    }
    set.iter().map(|w| fixed_walks(g, w, r, ctx)).sum()
}

/// Oriented length-r segments in X^g starting at `anchor`.
pub fn anchored_fixed_segment_count(g: &RationalMatrix, r: u32, anchor: &TreeVertex, ctx: &TreeContext) -> Result<u64> {
    ctx.require_radius(ctx.depth(anchor) + r + 1)?;
    fixed_walks(g, anchor, r, ctx)
}

/// O_gamma(1_{Z Gamma0(p^r)}).
pub fn orbital_integral_gamma0(gamma: &RationalMatrix, r: u32, ctx: &TreeContext) -> Result<Rational> {
    gamma.require_regular_semisimple()?;
    let p = ctx.p;
    if gamma.is_elliptic(p) {
        let count = fixed_segment_count(gamma, r, ctx)?;
        return Ok(vol_gamma0(p, r) * int(count as i64));
    }
    let t = diagonalize_to_units(gamma, p)?;
    let v = vp(&(&t.a - &t.d), p).finite().expect("distinct eigenvalues");
    let q_t = constant_term_diagonal(&t, r, p)?.value;
    Ok(p_power(p, v) * q_t)
}

/// Conjugate of a split semisimple matrix with eigenvalues scaled to units.
fn diagonalize_to_units(gamma: &RationalMatrix, p: u64) -> Result<RationalMatrix> {
    if gamma.is_diagonal() {
        return scale_to_units(gamma.a.clone(), gamma.d.clone(), p);
    }
    // eigenvalues (tr +- sqrt(disc)) / 2 must be rational here
    let disc = gamma.discriminant();
    let root = rational_sqrt(&disc).ok_or_else(|| {
        Error::Unsupported("split element with irrational eigenvalues; pass its diagonal form".into())
    })?;
    let tr = gamma.trace();
    let t1 = (&tr + &root) / int(2);
    let t2 = (&tr - &root) / int(2);
    scale_to_units(t1, t2, p)
}

fn scale_to_units(t1: Rational, t2: Rational, p: u64) -> Result<RationalMatrix> {
    let v1 = vp(&t1, p).finite().ok_or(Error::Singular)?;
    let v2 = vp(&t2, p).finite().ok_or(Error::Singular)?;
    if v1 != v2 {
        return Err(Error::Unsupported("eigenvalues of different valuation: not in Z K".into()));
    }
    let s = p_power(p, -v1);
    RationalMatrix::diag(t1 * &s, t2 * &s)
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x < &Rational::zero() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

/// Q_z(1_{Z Gamma0(p^r)}) for central z, closed form.
pub fn constant_term_central(p: u64, r: u32) -> Rational {
    let k = (r / 2) as i64;
    if r % 2 == 1 {
        rat(2, p as i64 + 1) * p_power(p, -k)
    } else {
        p_power(p, -k)
    }
}

/// The same constant term as a sum over shells v(b) = j of the unipotent
/// variable; an anchored segment fixed by [[1,b],[0,1]] with v(b) = j < r
/// has q^{floor((r+j)/2)} choices.
pub fn constant_term_central_shell(p: u64, r: u32) -> Rational {
    let q = p as i64;
    let mut sum = Rational::zero();
    for j in 0..r as i64 {
        sum += int(q - 1) * p_power(p, -j - 1) * p_power(p, (r as i64 + j) / 2);
    }
    p_power(p, -(r as i64)) + vol_gamma0(p, r) * sum
}

/// The shell sum exactly as printed, with q^{floor(j/2)} per shell.
pub fn constant_term_central_shell_as_printed(p: u64, r: u32) -> Rational {
    let q = p as i64;
    let mut sum = Rational::zero();
    for j in 0..r as i64 {
        sum += int(q - 1) * p_power(p, -j - 1) * p_power(p, j / 2);
    }
    p_power(p, -(r as i64)) + vol_gamma0(p, r) * sum
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalConstantTerm {
    pub value: Rational,
    pub bound: Rational,
    pub within_bound: bool,
}

/// Largest |GL2(Z/p^M)| the coset oracle will enumerate.
pub const COSET_GUARD: u64 = 10_000_000;

/// Q_t(1_{Z Gamma0(p^r)}) for t = diag(t1, t2) with distinct unit entries,
/// by integrating over GL2(Z/p^M) x (Z/p^M) with M = max(r, 1), together
/// with the upper bound 1 (r <= v) or 2 q^v vol(Gamma0(p^r)) (r > v).
pub fn constant_term_diagonal(t: &RationalMatrix, r: u32, p: u64) -> Result<DiagonalConstantTerm> {
    if !t.is_diagonal() || t.a == t.d {
        return Err(Error::Precondition("need diag(t1, t2) with t1 != t2".into()));
    }
    let units = [&t.a, &t.d].iter().all(|x| vp(x, p) == crate::padic::Valuation::Finite(0));
    if !units {
        return Err(Error::Precondition("diagonal entries must be p-adic units".into()));
    }
    let v = vp(&(&t.a - &t.d), p).finite().expect("distinct");
    let m_exp = r.max(1);
    let modulus = ipow(p, m_exp);
    let gl2_order = ipow(p, 4 * (m_exp - 1)) * (p * p - 1) * (p * p - p);
    if gl2_order > COSET_GUARD {
        return Err(Error::CostGuard(format!(
            "|GL2(Z/{p}^{m_exp})| = {gl2_order} exceeds {COSET_GUARD}; use the segment method"
        )));
    }
    let t1 = reduce_mod_pk(&t.a, p, m_exp).expect("unit");
    let t2 = reduce_mod_pk(&t.d, p, m_exp).expect("unit");
    let level = ipow(p, r);
    let m = modulus as u128;
    let mut hits: u64 = 0;
    // k = [[a, b], [c, d]], X = k^{-1} (t n) k; only the lower-left entry matters:
    // det(k) * X_21 = -c * (t1 a + t1 n c) + a * (t2 c)
    for a in 0..modulus {
        for b in 0..modulus {
            for c in 0..modulus {
                for d in 0..modulus {
                    let det = (a as u128 * d as u128 + m * m - b as u128 * c as u128 % m) % m;
                    if det % p as u128 == 0 {
                        continue;
                    }
                    for n in 0..modulus {
                        let first = (t1 as u128 * a as u128 + t1 as u128 * (n as u128 * c as u128 % m)) % m;
                        let x21 = (a as u128 * (t2 as u128 * c as u128 % m) % m + m * m - c as u128 * first % m) % m;
                        if x21 % level as u128 == 0 {
                            hits += 1;
                        }
                    }
                }
            }
        }
    }
    let value = Rational::new(hits.into(), (gl2_order as u128 * modulus as u128).into());
    let bound = if r as i64 <= v {
        Rational::one()
    } else {
        int(2) * p_power(p, v) * vol_gamma0(p, r)
    };
    let within_bound = value <= bound;
    Ok(DiagonalConstantTerm { value, bound, within_bound })
}

/// Diagonal orbital integral by segment counting: vol(Gamma0(p^r)) times the
/// oriented length-r segments in X^t whose first vertex projects to w_{0,0}.
pub fn diagonal_orbital_integral_by_segments(t: &RationalMatrix, r: u32, ctx: &TreeContext) -> Result<Rational> {
    t.require_regular_semisimple()?;
    if !t.is_diagonal() {
        return Err(Error::Precondition("need a diagonal matrix".into()));
    }
    let p = ctx.p;
    let origin = TreeVertex::origin();
    if !fixes_vertex(t, &origin, p) {
        return Err(Error::Precondition("diagonal entries must have equal valuation".into()));
    }
    let starts = fixed_component(t, &origin, ctx, |w| w.dist_to_standard_apartment(p).1 == origin)?;
    let far = starts.iter().map(|w| ctx.depth(w)).max().unwrap_or(0);
    ctx.require_radius(far + r + 1)?;
    let count: u64 = starts.iter().map(|w| fixed_walks(t, w, r, ctx)).sum::<Result<u64>>()?;
    Ok(vol_gamma0(p, r) * int(count as i64))
}
