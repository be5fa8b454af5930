//! Exact arithmetic substrate: rationals, valuations, roots of unity and
//! characters of truncated local unit groups.

mod character;
mod group;
mod rational;
mod ring;
mod root;

pub use character::FiniteCharacter;
pub use group::{FiniteAbelianPresentation, UnitGroup};
pub use rational::{
    format_rational, int, is_p_integral, legendre_of_unit_part, p_power, parse_rational, rat, reduce_mod_pk, vp, vp_int, Rational,
    Valuation,
};
pub use ring::{Extension, QuadElem, QuadRing, RamifiedClass, RingKind};
pub use root::RootOfUnity;

/// Order of a character.
pub fn char_order(chi: &FiniteCharacter) -> u64 {
    chi.order()
}

/// Conductor of a character.
pub fn char_conductor(chi: &FiniteCharacter) -> crate::error::Result<u32> {
    chi.conductor()
}

pub fn galois_conjugate(eta: &FiniteCharacter) -> crate::error::Result<FiniteCharacter> {
    eta.galois_conjugate()
}
