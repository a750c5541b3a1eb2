//! Minimum periods of homeomorphisms of compact surfaces.
//!
//! The minimum period `m(f)` of a map is the least `n ≥ 1` such that `f^n` has
//! a fixed point. For the class of all homeomorphisms of the surface of genus
//! `g` with `b` boundary components (orientation-preserving or reversing), the
//! class value is the largest minimum period any member attains.
//!
//! Modules, bottom-up:
//! - [`algebra`]: Newton identities, symplectic extension of Lefschetz
//!   sequences, Möbius inversion.
//! - [`types`]: finite-order types `⟨n; B; p_1..p_R⟩`, their Lefschetz
//!   sequences and a catalog of constructible types.
//! - [`groups`]: signatures of planar discontinuous groups and existence of
//!   cyclic actions with surface kernel.
//! - [`bounds`]: boundary-cycle compositions, the α/β/γ mismatch functions,
//!   upper bounds and constructive lower bounds.
//! - [`minperiod`]: exact values and intervals for `m`.
//! - [`foliation`]: singularity bookkeeping for pseudo-Anosov foliations.
//! - [`tables`]: reference tables and their recomputation.

pub mod algebra;
pub mod bounds;
pub mod cli;
pub mod foliation;
pub mod groups;
pub mod minperiod;
pub mod tables;
pub mod types;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

pub use num::{BigInt, BigRational};

/// Orientation behaviour of a homeomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::Preserving, Orientation::Reversing];

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Preserving => "preserving",
            Orientation::Reversing => "reversing",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "preserving" | "+" | "p" => Ok(Orientation::Preserving),
            "reversing" | "-" | "r" => Ok(Orientation::Reversing),
            other => Err(format!("unknown orientation `{other}` (expected preserving or reversing)")),
        }
    }
}

/// A period value: finite, infinite, or undecided because a search horizon
/// was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Period {
    Finite(u64),
    Infinite,
    HorizonExceeded(usize),
}

impl Period {
    pub fn finite(self) -> Option<u64> {
        match self {
            Period::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Ordering where `Infinite` is the top element. `HorizonExceeded(h)`
    /// sits just above every finite value up to `h` and below `Infinite`.
    fn rank(self) -> (u8, u64) {
        match self {
            Period::Finite(v) => (0, v),
            Period::HorizonExceeded(h) => (1, h as u64),
            Period::Infinite => (2, 0),
        }
    }
}

impl PartialOrd for Period {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Period {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Period::Finite(v) => write!(f, "{v}"),
            Period::Infinite => f.write_str("inf"),
            Period::HorizonExceeded(h) => write!(f, ">{h}"),
        }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    num::integer::gcd(a, b)
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    num::integer::lcm(a, b)
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}
