use std::fmt;

use crate::arith::{ipow, smallest_nonresidue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RamifiedClass {
    /// Q_p(sqrt p)
    SqrtP,
    /// Q_p(sqrt(n p)), n the smallest non-residue
    SqrtNP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extension {
    Unramified,
    Ramified(RamifiedClass),
}

impl Extension {
    pub const ALL: [Extension; 3] = [
        Extension::Unramified,
        Extension::Ramified(RamifiedClass::SqrtP),
        Extension::Ramified(RamifiedClass::SqrtNP),
    ];

    pub fn is_ramified(self) -> bool {
        matches!(self, Extension::Ramified(_))
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extension::Unramified => "unramified",
            Extension::Ramified(RamifiedClass::SqrtP) => "ramified-sqrt-p",
            Extension::Ramified(RamifiedClass::SqrtNP) => "ramified-sqrt-np",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    Base,
    Quadratic(Extension),
}

/// a + b sqrt(D), with a taken mod `mod_a` and b mod `mod_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadElem {
    pub a: u64,
    pub b: u64,
}

/// Residue ring o/P^level of Q_p or of one of its quadratic extensions.
/// For ramified rings `level` counts powers of the uniformizer sqrt(D).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadRing {
    pub p: u64,
    pub kind: RingKind,
    pub level: u32,
    /// D as an integer (0 for the base ring)
    pub d_exact: i64,
    d: u64,
    pub mod_a: u64,
    pub mod_b: u64,
}

impl QuadRing {
    pub fn new(p: u64, kind: RingKind, level: u32) -> Self {
        assert!(level >= 1, "unit groups are truncated at level >= 1");
        let n = smallest_nonresidue(p) as i64;
        let (d_exact, mod_a, mod_b) = match kind {
            RingKind::Base => (0, ipow(p, level), 1),
            RingKind::Quadratic(Extension::Unramified) => (n, ipow(p, level), ipow(p, level)),
            RingKind::Quadratic(Extension::Ramified(c)) => {
                let d = match c {
                    RamifiedClass::SqrtP => p as i64,
                    RamifiedClass::SqrtNP => n * p as i64,
                };
                (d, ipow(p, level.div_ceil(2)), ipow(p, level / 2))
            }
        };
        QuadRing { p, kind, level, d_exact, d: d_exact.rem_euclid(mod_a as i64) as u64, mod_a, mod_b }
    }

    pub fn size(&self) -> u64 {
        self.mod_a * self.mod_b
    }

    pub fn code(&self, x: QuadElem) -> u64 {
        x.a * self.mod_b + x.b
    }

    pub fn decode(&self, code: u64) -> QuadElem {
        QuadElem { a: code / self.mod_b, b: code % self.mod_b }
    }

    pub fn one(&self) -> QuadElem {
        QuadElem { a: 1 % self.mod_a, b: 0 }
    }

    pub fn is_unit(&self, x: QuadElem) -> bool {
        match self.kind {
            RingKind::Quadratic(Extension::Unramified) => x.a % self.p != 0 || x.b % self.p != 0,
            _ => x.a % self.p != 0,
        }
    }

    pub fn mul(&self, x: QuadElem, y: QuadElem) -> QuadElem {
        let (ma, mb) = (self.mod_a as u128, self.mod_b as u128);
        let a = (x.a as u128 * y.a as u128 % ma + (self.d as u128 * (x.b as u128 * y.b as u128 % ma)) % ma) % ma;
        let b = (x.a as u128 * y.b as u128 + x.b as u128 * y.a as u128) % mb;
        QuadElem { a: a as u64, b: b as u64 }
    }

    pub fn pow(&self, x: QuadElem, mut e: u64) -> QuadElem {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Membership in 1 + P^c.
    pub fn in_filtration(&self, x: QuadElem, c: u32) -> bool {
        let p = self.p;
        match self.kind {
            RingKind::Base => {
                let m = ipow(p, c.min(self.level));
                (x.a + self.mod_a - 1) % self.mod_a % m == 0
            }
            RingKind::Quadratic(Extension::Unramified) => {
                let m = ipow(p, c.min(self.level));
                (x.a + self.mod_a - 1) % self.mod_a % m == 0 && x.b % m == 0
            }
            RingKind::Quadratic(Extension::Ramified(_)) => {
                let c = c.min(self.level);
                let ma = ipow(p, c.div_ceil(2));
                let mb = ipow(p, c / 2);
                (x.a + self.mod_a - 1) % self.mod_a % ma == 0 && x.b % mb == 0
            }
        }
    }

    /// The nontrivial Galois automorphism b -> -b.
    pub fn conj(&self, x: QuadElem) -> QuadElem {
        QuadElem { a: x.a, b: (self.mod_b - x.b) % self.mod_b }
    }

    /// Level of the base ring that receives the norm map.
    pub fn norm_level(&self) -> u32 {
        match self.kind {
            RingKind::Quadratic(Extension::Ramified(_)) => self.level.div_ceil(2),
            _ => self.level,
        }
    }

    /// N(a + b sqrt D) = a^2 - D b^2, reduced mod p^norm_level.
    pub fn norm(&self, x: QuadElem) -> u64 {
        let m = ipow(self.p, self.norm_level()) as i128;
        let a = x.a as i128 % m;
        let b = x.b as i128 % m;
        ((a * a - self.d_exact as i128 * (b * b % m)) % m).rem_euclid(m) as u64
    }

    /// Norm of the chosen uniformizer, as an exact integer.
    pub fn uniformizer_norm(&self) -> i64 {
        match self.kind {
            RingKind::Base => self.p as i64,
            RingKind::Quadratic(Extension::Unramified) => (self.p * self.p) as i64,
            RingKind::Quadratic(Extension::Ramified(_)) => -self.d_exact,
        }
    }

    /// sigma(pi)/pi for the chosen uniformizer: +1 or -1.
    pub fn uniformizer_conj_ratio(&self) -> i64 {
        match self.kind {
            RingKind::Quadratic(Extension::Ramified(_)) => -1,
            _ => 1,
        }
    }

    /// Image of an integer under Z -> o/P^level.
    pub fn from_integer(&self, n: i64) -> QuadElem {
        QuadElem { a: n.rem_euclid(self.mod_a as i64) as u64, b: 0 }
    }

    /// Reduction to a ring of the same kind and lower level.
    pub fn reduce_to(&self, x: QuadElem, target: &QuadRing) -> QuadElem {
        debug_assert!(target.kind == self.kind && target.level <= self.level);
        QuadElem { a: x.a % target.mod_a, b: x.b % target.mod_b }
    }
}
