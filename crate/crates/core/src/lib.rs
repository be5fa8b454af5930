//! Exact computations on the tempered spectrum of GL2(Q_p), p odd: orbits,
//! conductors, Plancherel masses with fixed central character, orbital
//! integrals on the Bruhat-Tits tree, and the global counting identities
//! built from them.

pub mod arith;
pub mod error;
pub mod global;
pub mod harness;
pub mod padic;
pub mod rationality;
pub mod spectrum;
pub mod tree;

pub use error::{Error, Result};
