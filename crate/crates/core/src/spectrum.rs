//! Tempered orbits of GL2(Q_p), their conductors, fixed-central-character
//! slices and Plancherel masses.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::global::{gamma0_index, oldvector_trace};
use crate::padic::{int, p_power, rat, Extension, FiniteCharacter, Rational, RingKind, RootOfUnity, UnitGroup};

pub const MAX_CONDUCTOR: u32 = 4;

/// Central character: restriction to Z_p^x and the value at p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharacter {
    restriction: FiniteCharacter,
    uniformizer_value: RootOfUnity,
}

impl CentralCharacter {
    pub fn new(restriction: FiniteCharacter, uniformizer_value: RootOfUnity) -> Result<Self> {
        if restriction.group().kind() != RingKind::Base {
            return Err(Error::Precondition("central character must live on Z_p^x".into()));
        }
        Ok(CentralCharacter { restriction, uniformizer_value })
    }

    pub fn trivial(p: u64) -> Self {
        CentralCharacter { restriction: FiniteCharacter::trivial(UnitGroup::base(p, 1)), uniformizer_value: RootOfUnity::one() }
    }

    pub fn restriction(&self) -> &FiniteCharacter {
        &self.restriction
    }

    pub fn uniformizer_value(&self) -> RootOfUnity {
        self.uniformizer_value
    }

    pub fn p(&self) -> u64 {
        self.restriction.p()
    }

    pub fn conductor(&self) -> Result<u32> {
        self.restriction.conductor()
    }

    /// Level-independent identifier of the restriction to units.
    pub fn key(&self) -> RootOfUnity {
        self.restriction.base_key().expect("base character")
    }
}

impl fmt::Display for CentralCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g->{} p->{}", self.key(), self.uniformizer_value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitKind {
    /// chi0 x chi0 up to unramified twist
    Type1(FiniteCharacter),
    /// chi0 x chi0', stored with chi0 < chi0'
    Type2(FiniteCharacter, FiniteCharacter),
    Steinberg(FiniteCharacter),
    /// {eta0, conj(eta0)} on the units of the extension, stored with eta0 < conj(eta0)
    Supercuspidal { extension: Extension, eta: FiniteCharacter, eta_bar: FiniteCharacter },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemperedOrbit {
    kind: OrbitKind,
    conductor: u32,
    central_restriction: FiniteCharacter,
}

fn legendre_character(base: &Arc<UnitGroup>) -> FiniteCharacter {
    // the basis generator of a cyclic group is a non-residue
    let o = base.orders()[0];
    FiniteCharacter::new(base.clone(), vec![o / 2])
}

impl TemperedOrbit {
    pub fn type1(chi0: FiniteCharacter) -> Result<Self> {
        ensure_base(&chi0)?;
        let conductor = 2 * chi0.conductor()?;
        let central_restriction = chi0.pow(2);
        Ok(TemperedOrbit { kind: OrbitKind::Type1(chi0), conductor, central_restriction })
    }

    pub fn type2(a: FiniteCharacter, b: FiniteCharacter) -> Result<Self> {
        ensure_base(&a)?;
        ensure_base(&b)?;
        if a == b {
            return Err(Error::Precondition("type 2 orbits need distinct characters".into()));
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let conductor = a.conductor()? + b.conductor()?;
        let central_restriction = a.mul(&b);
        Ok(TemperedOrbit { kind: OrbitKind::Type2(a, b), conductor, central_restriction })
    }

    pub fn steinberg(chi0: FiniteCharacter) -> Result<Self> {
        ensure_base(&chi0)?;
        let c = chi0.conductor()?;
        let conductor = if c == 0 { 1 } else { 2 * c };
        let central_restriction = chi0.pow(2);
        Ok(TemperedOrbit { kind: OrbitKind::Steinberg(chi0), conductor, central_restriction })
    }

    /// `base` receives the central restriction; it must be at least as deep as the extension's units.
    pub fn supercuspidal(eta: FiniteCharacter, base: &Arc<UnitGroup>) -> Result<Self> {
        let extension = match eta.group().kind() {
            RingKind::Quadratic(e) => e,
            RingKind::Base => return Err(Error::BaseFieldCharacter),
        };
        let eta_bar = eta.galois_conjugate()?;
        if eta_bar == eta {
            return Err(Error::GaloisInvariant);
        }
        let c = eta.conductor()?;
        let conductor = if extension.is_ramified() { c + 1 } else { 2 * c };
        let mut central_restriction = eta.restrict_to_base(base)?;
        if extension.is_ramified() {
            central_restriction = central_restriction.mul(&legendre_character(base));
        }
        let (eta, eta_bar) = if eta < eta_bar { (eta, eta_bar) } else { (eta_bar, eta) };
        Ok(TemperedOrbit { kind: OrbitKind::Supercuspidal { extension, eta, eta_bar }, conductor, central_restriction })
    }

    pub fn kind(&self) -> &OrbitKind {
        &self.kind
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn central_restriction(&self) -> &FiniteCharacter {
        &self.central_restriction
    }

    pub fn p(&self) -> u64 {
        self.central_restriction.p()
    }

    pub fn type_tag(&self) -> &'static str {
        match self.kind {
            OrbitKind::Type1(_) => "type1",
            OrbitKind::Type2(..) => "type2",
            OrbitKind::Steinberg(_) => "steinberg",
            OrbitKind::Supercuspidal { extension: Extension::Unramified, .. } => "supercuspidal-unramified",
            OrbitKind::Supercuspidal { .. } => "supercuspidal-ramified",
        }
    }

    pub fn is_discrete_series(&self) -> bool {
        matches!(self.kind, OrbitKind::Steinberg(_) | OrbitKind::Supercuspidal { .. })
    }

    /// Human-readable parameters: base characters by their value on the
    /// canonical generator, extension characters by their exponent vectors.
    pub fn parameters(&self) -> String {
        let key = |c: &FiniteCharacter| c.base_key().map(|k| k.to_string()).unwrap_or_default();
        match &self.kind {
            OrbitKind::Type1(c) | OrbitKind::Steinberg(c) => format!("chi0={}", key(c)),
            OrbitKind::Type2(a, b) => format!("chi0={} chi0'={}", key(a), key(b)),
            OrbitKind::Supercuspidal { extension, eta, .. } => format!("{extension} eta0={eta}"),
        }
    }
}

impl fmt::Display for TemperedOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} c={} {}", self.type_tag(), self.conductor, self.parameters())
    }
}

fn ensure_base(chi: &FiniteCharacter) -> Result<()> {
    if chi.group().kind() == RingKind::Base {
        Ok(())
    } else {
        Err(Error::Precondition("principal series data must be characters of Z_p^x".into()))
    }
}

pub fn orbit_conductor(o: &TemperedOrbit) -> u32 {
    o.conductor()
}

/// Minimal conductor of eta0 (chi o N) over characters chi of Z_p^x.
pub fn supercuspidal_alpha(eta: &FiniteCharacter) -> Result<u32> {
    let ring = eta.group().ring().clone();
    if ring.kind == RingKind::Base {
        return Err(Error::BaseFieldCharacter);
    }
    if eta.galois_conjugate()? == *eta {
        return Err(Error::GaloisInvariant);
    }
    let base = UnitGroup::base(ring.p, ring.norm_level());
    let generator = FiniteCharacter::new(base.clone(), vec![1]);
    let psi = generator.compose_norm(eta.group())?;
    let mut best = eta.conductor()?;
    let mut twist = FiniteCharacter::trivial(eta.group().clone());
    for _ in 0..base.order() {
        best = best.min(eta.mul(&twist).conductor()?);
        twist = twist.mul(&psi);
    }
    if best > eta.level() {
        return Err(Error::LevelTooSmall { level: eta.level(), lower_bound: best });
    }
    Ok(best)
}

/// Number of isomorphism classes in a supercuspidal orbit with fixed central
/// character, by enumerating the character data (eta0, eta(uniformizer))
/// twisted by the unramified characters of order at most 2.
pub fn supercuspidal_point_count(eta: &FiniteCharacter) -> Result<u32> {
    let ring = eta.group().ring().clone();
    let eta_bar = eta.galois_conjugate()?;
    let f = crate::padic::vp(&int(ring.uniformizer_norm()), ring.p).finite().expect("nonzero norm");
    let eps = eta.eval_integer(ring.uniformizer_conj_ratio())?;
    let canonical = |units: &FiniteCharacter, w: RootOfUnity| {
        let (other_units, other_w) = if units == eta { (&eta_bar, eps.mul(&w)) } else { (eta, eps.mul(&w)) };
        let a = (units.exps().to_vec(), w);
        let b = (other_units.exps().to_vec(), other_w);
        a.min(b)
    };
    let w0 = RootOfUnity::one();
    let classes: BTreeSet<_> = [RootOfUnity::one(), RootOfUnity::new(1, 2)]
        .iter()
        .map(|nu| canonical(eta, w0.mul(&nu.pow(f))))
        .collect();
    Ok(classes.len() as u32)
}

/// Formal degree of a supercuspidal with the given alpha.
pub fn supercuspidal_formal_degree(p: u64, extension: Extension, alpha: u32) -> Rational {
    let q = p as i64;
    match extension {
        Extension::Unramified => int(q - 1) * p_power(p, alpha as i64 - 1),
        Extension::Ramified(_) => {
            debug_assert!(alpha % 2 == 0);
            rat(q * q - 1, 2) * p_power(p, alpha as i64 / 2 - 1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SliceShape {
    DiscretePoints { count: u32, mass_per_point: Rational },
    Circle { total_mass: Rational },
}

impl SliceShape {
    pub fn total_mass(&self) -> Rational {
        match self {
            SliceShape::DiscretePoints { count, mass_per_point } => mass_per_point * int(*count as i64),
            SliceShape::Circle { total_mass } => total_mass.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SliceShape::DiscretePoints { count, .. } => format!("points:{count}"),
            SliceShape::Circle { .. } => "circle".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSlice {
    pub orbit: TemperedOrbit,
    pub central: CentralCharacter,
    pub shape: SliceShape,
}

impl OrbitSlice {
    pub fn total_mass(&self) -> Rational {
        self.shape.total_mass()
    }

    pub fn conductor(&self) -> u32 {
        self.orbit.conductor()
    }
}

fn same_restriction(orbit: &TemperedOrbit, chi: &CentralCharacter) -> Result<bool> {
    Ok(orbit.central_restriction().base_key()? == chi.key())
}

/// The Plancherel slice of `o` over the central character `chi`.
pub fn slice_mass(o: &TemperedOrbit, chi: &CentralCharacter) -> Result<OrbitSlice> {
    if o.p() != chi.p() || !same_restriction(o, chi)? {
        return Err(Error::EmptySlice);
    }
    let p = o.p();
    let q = p as i64;
    let shape = match &o.kind {
        OrbitKind::Type1(_) => SliceShape::Circle { total_mass: int(1) },
        OrbitKind::Type2(a, b) => {
            let c = a.inverse().mul(b).conductor()?;
            SliceShape::Circle { total_mass: rat(q + 1, q) * p_power(p, c as i64) }
        }
        OrbitKind::Steinberg(_) => SliceShape::DiscretePoints { count: 2, mass_per_point: rat(q - 1, 2) },
        OrbitKind::Supercuspidal { extension, eta, .. } => {
            let alpha = supercuspidal_alpha(eta)?;
            let count = supercuspidal_point_count(eta)?;
            SliceShape::DiscretePoints { count, mass_per_point: supercuspidal_formal_degree(p, *extension, alpha) }
        }
    };
    Ok(OrbitSlice { orbit: o.clone(), central: chi.clone(), shape })
}

/// Every tempered orbit of conductor at most `max_conductor` at one prime,
/// indexed by central restriction.
#[derive(Debug)]
pub struct LocalSpectrum {
    p: u64,
    max_conductor: u32,
    base: Arc<UnitGroup>,
    orbits: Vec<TemperedOrbit>,
    by_central: HashMap<RootOfUnity, Vec<usize>>,
}

impl LocalSpectrum {
    pub fn new(p: u64, max_conductor: u32) -> Result<Self> {
        if !crate::arith::is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if max_conductor > MAX_CONDUCTOR {
            return Err(Error::ConductorCap(max_conductor));
        }
        let cap = max_conductor;
        let base = UnitGroup::base(p, cap.max(1));
        let chars: Vec<(FiniteCharacter, u32)> = FiniteCharacter::all(&base)
            .into_iter()
            .map(|c| {
                let k = c.conductor()?;
                Ok((c, k))
            })
            .collect::<Result<_>>()?;
        let mut orbits = Vec::new();
        for (c, k) in &chars {
            if 2 * k <= cap {
                orbits.push(TemperedOrbit::type1(c.clone())?);
            }
        }
        for (i, (a, ka)) in chars.iter().enumerate() {
            for (b, kb) in &chars[i + 1..] {
                if ka + kb <= cap {
                    orbits.push(TemperedOrbit::type2(a.clone(), b.clone())?);
                }
            }
        }
        for (c, k) in &chars {
            if (if *k == 0 { 1 } else { 2 * k }) <= cap {
                orbits.push(TemperedOrbit::steinberg(c.clone())?);
            }
        }
        for ext in Extension::ALL {
            let level = match ext {
                Extension::Unramified => cap / 2,
                Extension::Ramified(_) => cap.saturating_sub(1),
            };
            let group = UnitGroup::quadratic(p, ext, level.max(1));
            for eta in FiniteCharacter::all(&group) {
                let c = eta.conductor()?;
                let orbit_c = if ext.is_ramified() { c + 1 } else { 2 * c };
                if orbit_c > cap {
                    continue;
                }
                let bar = eta.galois_conjugate()?;
                if eta < bar {
                    orbits.push(TemperedOrbit::supercuspidal(eta, &base)?);
                }
            }
        }
        let mut by_central: HashMap<RootOfUnity, Vec<usize>> = HashMap::new();
        for (i, o) in orbits.iter().enumerate() {
            by_central.entry(o.central_restriction().base_key()?).or_default().push(i);
        }
        Ok(LocalSpectrum { p, max_conductor, base, orbits, by_central })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn max_conductor(&self) -> u32 {
        self.max_conductor
    }

    pub fn base_group(&self) -> &Arc<UnitGroup> {
        &self.base
    }

    pub fn orbits(&self) -> &[TemperedOrbit] {
        &self.orbits
    }

    /// Central characters of Z_p^x (at the spectrum's base level) with at least one orbit.
    pub fn central_characters(&self) -> Vec<CentralCharacter> {
        FiniteCharacter::all(&self.base)
            .into_iter()
            .filter(|c| self.by_central.contains_key(&c.base_key().expect("base character")))
            .map(|c| CentralCharacter { restriction: c, uniformizer_value: RootOfUnity::one() })
            .collect()
    }

    pub fn slices(&self, chi: &CentralCharacter) -> Result<Vec<OrbitSlice>> {
        if chi.p() != self.p {
            return Err(Error::Precondition(format!("central character lives at p={}, spectrum at p={}", chi.p(), self.p)));
        }
        match self.by_central.get(&chi.key()) {
            None => Ok(Vec::new()),
            Some(ix) => ix.iter().map(|&i| slice_mass(&self.orbits[i], chi)).collect(),
        }
    }
}

pub fn enumerate_slices(p: u64, chi: &CentralCharacter, max_conductor: u32) -> Result<Vec<OrbitSlice>> {
    LocalSpectrum::new(p, max_conductor)?.slices(chi)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassIdentity {
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

/// Weighted mass sum over slices of conductor at most r against the index of Gamma0(p^r).
pub fn mass_identity_from_slices(p: u64, r: u32, slices: &[OrbitSlice]) -> MassIdentity {
    let lhs = slices.iter().fold(Rational::zero(), |acc, s| {
        acc + s.total_mass() * int(oldvector_trace(s.conductor(), r) as i64)
    });
    let rhs = Rational::from_integer(gamma0_index(p, r).into());
    let equal = lhs == rhs;
    MassIdentity { lhs, rhs, equal }
}

pub fn mass_identity_check(p: u64, r: u32, chi: &CentralCharacter) -> Result<MassIdentity> {
    let c = chi.conductor()?;
    if c > r {
        return Err(Error::Precondition(format!("central character conductor {c} exceeds level {r}")));
    }
    let slices = enumerate_slices(p, chi, r)?;
    Ok(mass_identity_from_slices(p, r, &slices))
}

/// Central character of Z_p^x from a generator exponent: g -> e^{2 pi i k / phi(p^level)}.
pub fn central_character(p: u64, level: u32, k: i64, uniformizer_value: RootOfUnity) -> Result<CentralCharacter> {
    if !crate::arith::is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let base = UnitGroup::base(p, level.max(1));
    let o = base.orders()[0] as i64;
    let chi = FiniteCharacter::new(base, vec![k.rem_euclid(o) as u64]);
    CentralCharacter::new(chi, uniformizer_value)
}
