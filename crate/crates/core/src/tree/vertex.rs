use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::RationalMatrix;
use crate::error::{Error, Result};
use crate::padic::{format_rational, int, p_power, reduce_mod_pk, vp, Rational, Valuation};

/// Vertex w_{a,s}: the class of the lattice with basis {e1, a e1 + p^s e2}.
/// `a` is kept in canonical form k / p^j with 0 <= k < p^j.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeVertex {
    s: i64,
    a: Rational,
}

fn canonical_a(a: &Rational, p: u64) -> Rational {
    match vp(a, p) {
        Valuation::Finite(v) if v < 0 => {
            let j = (-v) as u32;
            let u = a * p_power(p, j as i64);
            let k = reduce_mod_pk(&u, p, j).expect("unit part is p-integral");
            Rational::new(BigInt::from(k), BigInt::from(p).pow(j))
        }
        _ => Rational::zero(),
    }
}

impl TreeVertex {
    pub fn new(a: Rational, s: i64, p: u64) -> Self {
        TreeVertex { s, a: canonical_a(&a, p) }
    }

    pub fn origin() -> Self {
        TreeVertex { s: 0, a: Rational::zero() }
    }

    /// w_{0,s} on the standard apartment.
    pub fn on_apartment(s: i64) -> Self {
        TreeVertex { s, a: Rational::zero() }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// Columns e1 and a e1 + p^s e2.
    pub fn basis(&self, p: u64) -> RationalMatrix {
        RationalMatrix { a: int(1), b: self.a.clone(), c: int(0), d: p_power(p, self.s) }
    }

    /// Vertex of the lattice spanned by the columns of an invertible matrix.
    pub fn from_basis(m: &RationalMatrix, p: u64) -> Self {
        let (mut x11, mut x12, mut x21, mut x22) = (m.a.clone(), m.b.clone(), m.c.clone(), m.d.clone());
        if vp(&x21, p) < vp(&x22, p) {
            std::mem::swap(&mut x11, &mut x12);
            std::mem::swap(&mut x21, &mut x22);
        }
        // clear the bottom-left entry with a Z_p column operation
        let t = &x21 / &x22;
        let y11 = &x11 - &t * &x12;
        // [[y11, x12], [0, x22]]: scale by 1/y11, then absorb the unit part of x22/y11
        let z = &x22 / &y11;
        let s = vp(&z, p).finite().expect("invertible");
        let unit = z * p_power(p, -s);
        let a = &x12 / (&y11 * unit);
        TreeVertex::new(a, s, p)
    }

    pub fn apply(&self, g: &RationalMatrix, p: u64) -> Self {
        Self::from_basis(&g.mul(&self.basis(p)), p)
    }

    /// Neighbors w_{pa, s+1} and w_{(a+t)/p, s-1}, t = 0..p-1.
    pub fn raw_neighbors(&self, p: u64) -> Vec<TreeVertex> {
        let pr = int(p as i64);
        let mut out = Vec::with_capacity(p as usize + 1);
        out.push(TreeVertex::new(&self.a * &pr, self.s + 1, p));
        for t in 0..p as i64 {
            out.push(TreeVertex::new((&self.a + int(t)) / &pr, self.s - 1, p));
        }
        out
    }

    /// d(w, A0) and the projection to the standard apartment.
    pub fn dist_to_standard_apartment(&self, p: u64) -> (u32, TreeVertex) {
        match vp(&self.a, p) {
            Valuation::Finite(v) if v < 0 => ((-v) as u32, TreeVertex::on_apartment(self.s - v)),
            _ => (0, self.clone()),
        }
    }

    pub fn distance(&self, other: &TreeVertex, p: u64) -> u32 {
        let m = self.basis(p).inverse().mul(&other.basis(p));
        let vdet = vp(&m.det(), p).finite().expect("invertible");
        let vmin = m.min_valuation(p).finite().expect("nonzero matrix");
        (vdet - 2 * vmin) as u32
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w({},{})", format_rational(&self.a), self.s)
    }
}

/// The ball of the given radius around w_{0,0}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeContext {
    pub p: u64,
    pub radius: u32,
}

impl TreeContext {
    pub fn new(p: u64, radius: u32) -> Result<Self> {
        if !crate::arith::is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if radius == 0 {
            return Err(Error::Precondition("radius must be positive".into()));
        }
        Ok(TreeContext { p, radius })
    }

    pub fn depth(&self, w: &TreeVertex) -> u32 {
        w.distance(&TreeVertex::origin(), self.p)
    }

    pub fn contains(&self, w: &TreeVertex) -> bool {
        self.depth(w) <= self.radius
    }

    pub fn require_radius(&self, need: u32) -> Result<()> {
        if self.radius < need {
            Err(Error::RadiusInsufficient { have: self.radius, need })
        } else {
            Ok(())
        }
    }

    pub fn neighbors(&self, w: &TreeVertex) -> Result<Vec<TreeVertex>> {
        if self.depth(w) >= self.radius {
            return Err(Error::OutOfRadius);
        }
        Ok(w.raw_neighbors(self.p))
    }

    /// Vertices of the ball in breadth-first order from w_{0,0}.
    pub fn ball(&self) -> Vec<TreeVertex> {
        let mut seen = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([(TreeVertex::origin(), 0u32)]);
        seen.insert(TreeVertex::origin());
        while let Some((w, d)) = queue.pop_front() {
            if d < self.radius {
                for u in w.raw_neighbors(self.p) {
                    if seen.insert(u.clone()) {
                        queue.push_back((u, d + 1));
                    }
                }
            }
            order.push(w);
        }
        order
    }
}

/// Geodesic path w_0, ..., w_r.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    vertices: Vec<TreeVertex>,
}

impl Segment {
    pub fn new(vertices: Vec<TreeVertex>, p: u64) -> Result<Self> {
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i].distance(&vertices[j], p) as usize != j - i {
                    return Err(Error::Precondition("vertices do not form a geodesic".into()));
                }
            }
        }
        Ok(Segment { vertices })
    }

    /// S_r = {w_{0,0}, ..., w_{0,r}}.
    pub fn standard(r: u32) -> Self {
        Segment { vertices: (0..=r as i64).map(TreeVertex::on_apartment).collect() }
    }

    pub fn vertices(&self) -> &[TreeVertex] {
        &self.vertices
    }

    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn apply(&self, g: &RationalMatrix, p: u64) -> Segment {
        Segment { vertices: self.vertices.iter().map(|w| w.apply(g, p)).collect() }
    }
}
