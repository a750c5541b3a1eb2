//! Singularity bookkeeping for invariant foliations of pseudo-Anosov maps.
//!
//! An interior point with `p` prongs contributes `2 - p` to the
//! Euler–Poincaré sum and a boundary component with `p` prongs contributes
//! `-p`; the total is `2χ`. Regular marked points have `p = 2`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorOrbit {
    pub period: u64,
    pub prongs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityData {
    pub genus: u64,
    pub boundary: u64,
    pub interior: Vec<InteriorOrbit>,
    pub boundary_prongs: Vec<u64>,
}

impl SingularityData {
    pub fn closed(genus: u64, interior: Vec<InteriorOrbit>) -> Self {
        SingularityData { genus, boundary: 0, interior, boundary_prongs: vec![] }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    /// `Σ n_i (2 - p_i) - Σ p_B`.
    pub fn prong_sum(&self) -> i64 {
        let inner: i64 = self.interior.iter().map(|o| o.period as i64 * (2 - o.prongs as i64)).sum();
        inner - self.boundary_prongs.iter().map(|&p| p as i64).sum::<i64>()
    }

    fn well_formed(&self) -> bool {
        self.boundary_prongs.len() as u64 == self.boundary
            && self.boundary_prongs.iter().all(|&p| p >= 1)
            && self.interior.iter().all(|o| o.period >= 1 && o.prongs >= 1)
    }

    fn has_singular_orbit(&self) -> bool {
        self.interior.iter().any(|o| o.prongs != 2)
    }
}

/// The Euler–Poincaré identity `Σ (2 - p) = 2χ`.
pub fn euler_poincare_check(d: &SingularityData) -> bool {
    d.well_formed() && d.prong_sum() == 2 * d.euler_characteristic()
}

/// Necessary conditions for `d` to be the singularity data of a
/// pseudo-Anosov map of `Σ_{g,b}`: planar surfaces need at least four
/// boundary components, closed surfaces other than the torus need a singular
/// orbit, and the Euler–Poincaré identity must hold.
pub fn pa_feasibility(genus: u64, boundary: u64, d: &SingularityData) -> bool {
    if d.genus != genus || d.boundary != boundary {
        return false;
    }
    if genus == 0 && boundary <= 3 {
        return false;
    }
    if boundary == 0 && genus != 1 && !d.has_singular_orbit() {
        return false;
    }
    euler_poincare_check(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Interior,
    Boundary,
}

/// Whether the map preserves (`+`) or reverses (`-`) the orientation of the
/// local foliation near the fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// A fixed point of type `(p, k)^±`: `p` prongs, rotated by `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointTypeTag {
    pub prongs: u64,
    pub rotation: u64,
    pub sign: LocalSign,
    pub location: Location,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoliationError {
    #[error("prong count must be positive")]
    NoProngs,
    #[error("rotation {rotation} out of range for {prongs} prongs")]
    Rotation { prongs: u64, rotation: u64 },
}

/// Index of a fixed point, or the indices of the two fixed points a
/// boundary component carries (an unordered pair).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexValue {
    Single(i64),
    Pair(i64, i64),
}

impl IndexValue {
    pub fn total(self) -> i64 {
        match self {
            IndexValue::Single(v) => v,
            IndexValue::Pair(a, b) => a + b,
        }
    }
}

pub fn pa_index(tag: FixedPointTypeTag) -> Result<IndexValue, FoliationError> {
    let FixedPointTypeTag { prongs: p, rotation: k, sign, location } = tag;
    if p == 0 {
        return Err(FoliationError::NoProngs);
    }
    let bad = Err(FoliationError::Rotation { prongs: p, rotation: k });
    if k >= p {
        return bad;
    }
    let p_i = p as i64;
    let even = p % 2 == 0;
    Ok(match (location, sign) {
        (Location::Interior, LocalSign::Plus) if k == 0 => IndexValue::Single(1 - p_i),
        (Location::Interior, LocalSign::Plus) => IndexValue::Single(1),
        (Location::Interior, LocalSign::Minus) => match (even, k) {
            (true, 0) => IndexValue::Single(-1),
            (true, 1) => IndexValue::Single(1),
            (false, 0) => IndexValue::Single(0),
            _ => return bad,
        },
        (Location::Boundary, LocalSign::Plus) if k == 0 => IndexValue::Single(-p_i),
        (Location::Boundary, LocalSign::Plus) => IndexValue::Single(0),
        (Location::Boundary, LocalSign::Minus) => match (even, k) {
            (true, 0) => IndexValue::Pair(0, 0),
            (true, 1) => IndexValue::Pair(1, 1),
            (false, 0) => IndexValue::Pair(1, 0),
            _ => return bad,
        },
    })
}

/// Whether the indices of a complete list of fixed-point classes add up to
/// the given Lefschetz number.
pub fn index_sum_matches(tags: &[FixedPointTypeTag], lefschetz: i64) -> Result<bool, FoliationError> {
    let mut sum = 0;
    for &t in tags {
        sum += pa_index(t)?.total();
    }
    Ok(sum == lefschetz)
}

/// Singularity data that satisfy the identity by construction, for genus
/// `0..=g_max` and `b ≤ b_max` with `χ < 0`: one fixed singularity with all
/// excess prongs and one-pronged boundaries; its split into an orbit of
/// period 2 when the prong count allows; and two equal singularities.
pub fn consistent_examples(g_max: u64, b_max: u64) -> Vec<SingularityData> {
    let mut out = Vec::new();
    for g in 0..=g_max {
        for b in 0..=b_max {
            let chi = 2 - 2 * g as i64 - b as i64;
            if chi >= 0 {
                continue;
            }
            let boundary_prongs = vec![1; b as usize];
            // 2 - p - b = 2χ.
            let p = (2 - b as i64 - 2 * chi) as u64;
            let one = |interior| SingularityData { genus: g, boundary: b, interior, boundary_prongs: boundary_prongs.clone() };
            out.push(one(vec![InteriorOrbit { period: 1, prongs: p }]));
            // An orbit of period 2 with q prongs: 2(2 - q) = 2 - p.
            if p.is_multiple_of(2) && p >= 4 {
                let q = (p + 2) / 2;
                out.push(one(vec![InteriorOrbit { period: 2, prongs: q }]));
                out.push(one(vec![InteriorOrbit { period: 1, prongs: q }, InteriorOrbit { period: 1, prongs: q }]));
            }
            out.push(one(vec![InteriorOrbit { period: 1, prongs: p }, InteriorOrbit { period: 3, prongs: 2 }]));
        }
    }
    out
}
