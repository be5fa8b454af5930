use std::collections::HashSet;
use std::sync::Arc;

use super::ring::{Extension, QuadElem, QuadRing, RamifiedClass, RingKind};
use crate::arith::{factorize, lcm};
use crate::error::{Error, Result};

/// Product of cyclic groups of the given orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianPresentation {
    pub generator_orders: Vec<u64>,
}

impl FiniteAbelianPresentation {
    pub fn order(&self) -> u64 {
        self.generator_orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.generator_orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }
}

const NOT_A_UNIT: u32 = u32::MAX;

/// Unit group of a truncated local ring with a deterministic basis, a discrete
/// log table, and generators for every filtration step 1 + P^c.
#[derive(Debug)]
pub struct UnitGroup {
    ring: QuadRing,
    presentation: FiniteAbelianPresentation,
    gens: Vec<QuadElem>,
    strides: Vec<u64>,
    exponent: u64,
    dlog: Vec<u32>,
    by_index: Vec<QuadElem>,
    filtration: Vec<Vec<Vec<u64>>>,
}

impl UnitGroup {
    pub fn base(p: u64, level: u32) -> Arc<UnitGroup> {
        Arc::new(Self::build(QuadRing::new(p, RingKind::Base, level)))
    }

    pub fn quadratic(p: u64, ext: Extension, level: u32) -> Arc<UnitGroup> {
        Arc::new(Self::build(QuadRing::new(p, RingKind::Quadratic(ext), level)))
    }

    pub fn unramified(p: u64, level: u32) -> Arc<UnitGroup> {
        Self::quadratic(p, Extension::Unramified, level)
    }

    pub fn ramified(p: u64, class: RamifiedClass, level: u32) -> Arc<UnitGroup> {
        Self::quadratic(p, Extension::Ramified(class), level)
    }

    fn build(ring: QuadRing) -> UnitGroup {
        let units: Vec<QuadElem> = (0..ring.size())
            .map(|c| ring.decode(c))
            .filter(|&x| ring.is_unit(x))
            .collect();
        let n = units.len() as u64;
        let one = ring.one();

        // Repeatedly adjoin the first element of maximal order modulo the
        // span so far, lifted to an element of that same order.
        let mut in_span = vec![false; ring.size() as usize];
        let mut span = vec![one];
        in_span[ring.code(one) as usize] = true;
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        while (span.len() as u64) < n {
            let quotient = n / span.len() as u64;
            let primes: Vec<u64> = factorize(quotient).into_iter().map(|(l, _)| l).collect();
            let mut best: Option<(QuadElem, u64)> = None;
            for &x in &units {
                if in_span[ring.code(x) as usize] {
                    continue;
                }
                let mut d = quotient;
                for &l in &primes {
                    while d % l == 0 && in_span[ring.code(ring.pow(x, d / l)) as usize] {
                        d /= l;
                    }
                }
                if best.map_or(true, |(_, o)| d > o) {
                    best = Some((x, d));
                }
            }
            let (x, o) = best.expect("proper span leaves a unit outside");
            let g = span
                .iter()
                .map(|&h| ring.mul(x, h))
                .find(|&y| ring.pow(y, o) == one)
                .expect("a lift of the same order exists in a finite abelian group");
            let mut next = Vec::with_capacity(span.len() * o as usize);
            let mut gk = one;
            for _ in 0..o {
                for &h in &span {
                    let y = ring.mul(h, gk);
                    in_span[ring.code(y) as usize] = true;
                    next.push(y);
                }
                gk = ring.mul(gk, g);
            }
            span = next;
            gens.push(g);
            orders.push(o);
        }

        let mut strides = Vec::with_capacity(orders.len());
        let mut s = 1u64;
        for &o in &orders {
            strides.push(s);
            s *= o;
        }
        // span[idx] = prod g_i^{k_i} with idx = sum k_i stride_i, by construction above
        let mut dlog = vec![NOT_A_UNIT; ring.size() as usize];
        for (idx, &y) in span.iter().enumerate() {
            debug_assert_eq!(dlog[ring.code(y) as usize], NOT_A_UNIT);
            dlog[ring.code(y) as usize] = idx as u32;
        }
        let presentation = FiniteAbelianPresentation { generator_orders: orders };
        let exponent = presentation.exponent();
        let mut group = UnitGroup {
            ring,
            presentation,
            gens,
            strides,
            exponent,
            dlog,
            by_index: span,
            filtration: Vec::new(),
        };
        group.filtration = (0..=group.ring.level).map(|c| group.filtration_generators(c)).collect();
        group
    }

    fn filtration_generators(&self, c: u32) -> Vec<Vec<u64>> {
        if c == 0 {
            return (0..self.gens.len())
                .map(|i| {
                    let mut e = vec![0; self.gens.len()];
                    e[i] = 1;
                    e
                })
                .collect();
        }
        let mut span: HashSet<u64> = HashSet::from([0]);
        let mut out = Vec::new();
        for (idx, &x) in self.by_index.iter().enumerate() {
            if !self.ring.in_filtration(x, c) || span.contains(&(idx as u64)) {
                continue;
            }
            let ex = self.decode_index(idx as u64);
            let mut new_span = span.clone();
            let mut power = ex.clone();
            while !span.contains(&self.encode(&power)) {
                for &s in &span {
                    let prod = self.add_exps(&self.decode_index(s), &power);
                    new_span.insert(self.encode(&prod));
                }
                power = self.add_exps(&power, &ex);
            }
            span = new_span;
            out.push(ex);
        }
        out
    }

    pub fn ring(&self) -> &QuadRing {
        &self.ring
    }

    pub fn p(&self) -> u64 {
        self.ring.p
    }

    pub fn kind(&self) -> RingKind {
        self.ring.kind
    }

    pub fn level(&self) -> u32 {
        self.ring.level
    }

    pub fn presentation(&self) -> &FiniteAbelianPresentation {
        &self.presentation
    }

    pub fn orders(&self) -> &[u64] {
        &self.presentation.generator_orders
    }

    pub fn generators(&self) -> &[QuadElem] {
        &self.gens
    }

    pub fn order(&self) -> u64 {
        self.by_index.len() as u64
    }

    /// lcm of the generator orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Exponent vectors generating the image of 1 + P^c.
    pub fn filtration(&self, c: u32) -> &[Vec<u64>] {
        &self.filtration[c.min(self.ring.level) as usize]
    }

    pub fn decode_index(&self, idx: u64) -> Vec<u64> {
        self.presentation
            .generator_orders
            .iter()
            .zip(&self.strides)
            .map(|(&o, &s)| idx / s % o)
            .collect()
    }

    pub fn encode(&self, exps: &[u64]) -> u64 {
        exps.iter()
            .zip(&self.strides)
            .zip(&self.presentation.generator_orders)
            .map(|((&e, &s), &o)| (e % o) * s)
            .sum()
    }

    fn add_exps(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.presentation.generator_orders)
            .map(|((&a, &b), &o)| (a + b) % o)
            .collect()
    }

    pub fn element(&self, exps: &[u64]) -> QuadElem {
        self.by_index[self.encode(exps) as usize]
    }

    pub fn elements(&self) -> &[QuadElem] {
        &self.by_index
    }

    /// Discrete log with respect to the basis.
    pub fn dlog(&self, x: QuadElem) -> Result<Vec<u64>> {
        let x = QuadElem { a: x.a % self.ring.mod_a, b: x.b % self.ring.mod_b };
        match self.dlog[self.ring.code(x) as usize] {
            NOT_A_UNIT => Err(Error::Precondition(format!("({}, {}) is not a unit", x.a, x.b))),
            idx => Ok(self.decode_index(idx as u64)),
        }
    }

    pub fn dlog_integer(&self, n: i64) -> Result<Vec<u64>> {
        self.dlog(self.ring.from_integer(n))
    }
}
