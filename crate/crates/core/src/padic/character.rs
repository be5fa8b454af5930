use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::group::UnitGroup;
use super::rational::Rational;
use super::ring::{QuadElem, RingKind};
use super::root::RootOfUnity;
use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};

/// Character of a truncated unit group. `exps[i]` is the numerator k_i of the
/// value e^{2 pi i k_i / o_i} on the i-th generator.
#[derive(Clone)]
pub struct FiniteCharacter {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
    level: u32,
}

impl FiniteCharacter {
    pub fn new(group: Arc<UnitGroup>, exps: Vec<u64>) -> Self {
        assert_eq!(exps.len(), group.orders().len());
        let exps = exps.iter().zip(group.orders()).map(|(&k, &o)| k % o).collect();
        let level = group.level();
        FiniteCharacter { group, exps, level }
    }

    /// From exponents in Q/Z, one per generator. Denominators must divide the generator orders.
    pub fn from_exponents(group: Arc<UnitGroup>, exponents: &[Rational]) -> Result<Self> {
        if exponents.len() != group.orders().len() {
            return Err(Error::Precondition("one exponent per generator".into()));
        }
        let mut exps = Vec::with_capacity(exponents.len());
        for (e, &o) in exponents.iter().zip(group.orders()) {
            let scaled = e * Rational::from_integer(o.into());
            if !scaled.is_integer() {
                return Err(Error::Precondition(format!("exponent {e} does not have order dividing {o}")));
            }
            let k: i64 = scaled.to_integer().try_into().map_err(|_| Error::Precondition("exponent too large".into()))?;
            exps.push(k.rem_euclid(o as i64) as u64);
        }
        Ok(Self::new(group, exps))
    }

    pub fn trivial(group: Arc<UnitGroup>) -> Self {
        let n = group.orders().len();
        Self::new(group, vec![0; n])
    }

    /// Every character of the group, in lexicographic order of exponent vectors.
    pub fn all(group: &Arc<UnitGroup>) -> Vec<FiniteCharacter> {
        let orders = group.orders().to_vec();
        let total: u64 = orders.iter().product();
        let mut out = Vec::with_capacity(total as usize);
        let mut exps = vec![0u64; orders.len()];
        for _ in 0..total {
            out.push(FiniteCharacter { group: group.clone(), exps: exps.clone(), level: group.level() });
            for i in (0..orders.len()).rev() {
                exps[i] += 1;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
            }
        }
        out
    }

    /// Same character, claimed to be defined at a lower truncation level.
    pub fn with_level(mut self, level: u32) -> Self {
        self.level = level.min(self.group.level());
        self
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn p(&self) -> u64 {
        self.group.p()
    }

    pub fn exponents(&self) -> Vec<Rational> {
        self.exps
            .iter()
            .zip(self.group.orders())
            .map(|(&k, &o)| Rational::new(k.into(), o.into()))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&k| k == 0)
    }

    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .zip(self.group.orders())
            .fold(1, |acc, (&k, &o)| lcm(acc, o / gcd(k, o)))
    }

    pub fn eval_exps(&self, e: &[u64]) -> RootOfUnity {
        let n = self.group.exponent();
        let num = self
            .exps
            .iter()
            .zip(e)
            .zip(self.group.orders())
            .map(|((&k, &x), &o)| (k as u128 * x as u128 % o as u128) * (n / o) as u128)
            .sum::<u128>()
            % n as u128;
        RootOfUnity::new(num as i64, n)
    }

    pub fn eval(&self, x: QuadElem) -> Result<RootOfUnity> {
        Ok(self.eval_exps(&self.group.dlog(x)?))
    }

    pub fn eval_integer(&self, n: i64) -> Result<RootOfUnity> {
        Ok(self.eval_exps(&self.group.dlog_integer(n)?))
    }

    fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.same_group(other), "characters of different groups");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .zip(self.group.orders())
            .map(|((&a, &b), &o)| (a + b) % o)
            .collect();
        FiniteCharacter { group: self.group.clone(), exps, level: self.level.max(other.level) }
    }

    pub fn inverse(&self) -> Self {
        let exps = self.exps.iter().zip(self.group.orders()).map(|(&a, &o)| (o - a) % o).collect();
        FiniteCharacter { group: self.group.clone(), exps, level: self.level }
    }

    pub fn pow(&self, k: i64) -> Self {
        let exps = self
            .exps
            .iter()
            .zip(self.group.orders())
            .map(|(&a, &o)| ((a as i128 * k as i128).rem_euclid(o as i128)) as u64)
            .collect();
        FiniteCharacter { group: self.group.clone(), exps, level: self.level }
    }

    /// Smallest c with the character trivial on 1 + P^c.
    pub fn conductor(&self) -> Result<u32> {
        let top = self.group.level();
        let c = (0..=top)
            .find(|&c| self.group.filtration(c).iter().all(|e| self.eval_exps(e).is_one()))
            .unwrap_or(top);
        if c > self.level {
            return Err(Error::LevelTooSmall { level: self.level, lower_bound: c });
        }
        Ok(c)
    }

    /// Character x -> chi(map(x)) on `domain`, where `map` is a homomorphism
    /// into this character's group.
    pub fn pullback(&self, domain: &Arc<UnitGroup>, map: impl Fn(QuadElem) -> QuadElem) -> Result<FiniteCharacter> {
        let exps = domain
            .generators()
            .iter()
            .zip(domain.orders())
            .map(|(&g, &o)| {
                let v = self.eval(map(g))?;
                debug_assert_eq!(o % v.den(), 0, "pullback along a non-homomorphism");
                Ok(v.num() * (o / v.den()))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(FiniteCharacter::new(domain.clone(), exps))
    }

    /// eta o sigma for the nontrivial Galois automorphism.
    pub fn galois_conjugate(&self) -> Result<FiniteCharacter> {
        if self.group.kind() == RingKind::Base {
            return Err(Error::BaseFieldCharacter);
        }
        let ring = self.group.ring().clone();
        Ok(self.pullback(&self.group, |x| ring.conj(x))?.with_level(self.level))
    }

    /// Restriction to Z_p^x (through the diagonal embedding), as a character of `base`.
    pub fn restrict_to_base(&self, base: &Arc<UnitGroup>) -> Result<FiniteCharacter> {
        let ring = self.group.ring().clone();
        let base_ring = base.ring().clone();
        if base_ring.mod_a < ring.mod_a {
            return Err(Error::Precondition("base group too shallow for restriction".into()));
        }
        self.pullback(base, |x| {
            debug_assert_eq!(base_ring.kind, RingKind::Base);
            ring.from_integer(x.a as i64)
        })
    }

    /// chi o N for a character of the base group at the norm level.
    pub fn compose_norm(&self, ext: &Arc<UnitGroup>) -> Result<FiniteCharacter> {
        let ring = ext.ring().clone();
        let base = self.group.ring().clone();
        if base.kind != RingKind::Base || base.level != ring.norm_level() {
            return Err(Error::Precondition("norm composition needs the base group at the norm level".into()));
        }
        self.pullback(ext, |x| base.from_integer(ring.norm(x) as i64))
    }

    /// Key independent of the truncation level: value on the smallest
    /// primitive root modulo p^2 (base-field characters only).
    pub fn base_key(&self) -> Result<RootOfUnity> {
        if self.group.kind() != RingKind::Base {
            return Err(Error::Precondition("base_key needs a base-field character".into()));
        }
        self.eval_integer(crate::arith::primitive_root(self.p()) as i64)
    }
}

impl PartialEq for FiniteCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.exps == other.exps
    }
}

impl Eq for FiniteCharacter {}

impl PartialOrd for FiniteCharacter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteCharacter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl std::hash::Hash for FiniteCharacter {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl fmt::Debug for FiniteCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteCharacter({:?} p={} L{} {:?})", self.group.kind(), self.p(), self.level, self.exps)
    }
}

impl fmt::Display for FiniteCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .zip(self.group.orders())
            .map(|(&k, &o)| RootOfUnity::new(k as i64, o).to_string())
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}
