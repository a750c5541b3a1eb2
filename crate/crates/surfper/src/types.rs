//! Finite-order types and the catalog of constructible ones.
//!
//! A periodic homeomorphism `f` of order `n` on a closed surface has a type
//! `⟨n; B; p_1, ..., p_R⟩`: `B` is the number of families of curves fixed
//! pointwise by `f^{n/2}` (reversing maps only) and `p_1 ≤ ... ≤ p_R` are the
//! periods of the exceptional orbits, i.e. those with period smaller than `n`.

use num::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::groups;
use crate::{divisors, gcd, Orientation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteOrderType {
    pub orientation: Orientation,
    pub order: u64,
    pub curve_families: u64,
    /// Sorted ascending.
    pub orbit_periods: Vec<u64>,
}

impl FiniteOrderType {
    pub fn new(orientation: Orientation, order: u64, curve_families: u64, periods: &[u64]) -> Self {
        let mut orbit_periods = periods.to_vec();
        orbit_periods.sort_unstable();
        FiniteOrderType { orientation, order, curve_families, orbit_periods }
    }

    pub fn preserving(order: u64, periods: &[u64]) -> Self {
        Self::new(Orientation::Preserving, order, 0, periods)
    }

    pub fn reversing(order: u64, curve_families: u64, periods: &[u64]) -> Self {
        Self::new(Orientation::Reversing, order, curve_families, periods)
    }

    pub fn period_sum(&self) -> u64 {
        self.orbit_periods.iter().sum()
    }

    /// Number of points of `Σ_g` fixed by `f^i` for `i` not a multiple of the
    /// order, counted as the sum of the periods dividing `i`.
    fn orbit_points_dividing(&self, i: u64) -> u64 {
        self.orbit_periods.iter().filter(|&&p| i.is_multiple_of(p)).sum()
    }
}

impl fmt::Display for FiniteOrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let periods = if self.orbit_periods.is_empty() {
            "-".to_string()
        } else {
            self.orbit_periods.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        };
        match self.orientation {
            Orientation::Preserving => write!(f, "({};{})", self.order, periods),
            Orientation::Reversing => {
                write!(f, "({};{};{})", self.order, self.curve_families, periods)
            }
        }
    }
}

/// Parses `n;B;p1,p2,...` (orientation-neutral; the caller chooses the
/// orientation) or the shorter `n;p1,p2,...` with `B = 0`. An empty period
/// list may be written as `-` or left empty.
pub fn parse_type(s: &str, orientation: Orientation) -> Result<FiniteOrderType, String> {
    let parts: Vec<&str> = s.split(';').map(str::trim).collect();
    let (n, b, ps) = match parts.as_slice() {
        [n, ps] => (*n, "0", *ps),
        [n, b, ps] => (*n, *b, *ps),
        _ => return Err(format!("type `{s}` must look like `n;B;p1,p2,...`")),
    };
    let order = u64::from_str(n).map_err(|e| format!("order `{n}`: {e}"))?;
    let curves = u64::from_str(b).map_err(|e| format!("curve count `{b}`: {e}"))?;
    let periods = parse_periods(ps)?;
    Ok(FiniteOrderType::new(orientation, order, curves, &periods))
}

/// Parses a comma-separated list of positive integers; `-` or empty means none.
pub fn parse_periods(s: &str) -> Result<Vec<u64>, String> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| u64::from_str(p.trim()).map_err(|e| format!("period `{p}`: {e}")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum Violation {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("orbit period {period} must satisfy 1 <= p < n")]
    PeriodOutOfRange { period: u64 },
    #[error("orbit period {period} does not divide the order")]
    PeriodNotDividing { period: u64 },
    #[error("orientation-preserving types carry no curve families")]
    CurvesOnPreserving,
    #[error("orientation-reversing maps have even order")]
    OddReversingOrder,
    #[error("quotient rank T = {numerator}/{denominator} is not an integer")]
    RankNotInteger { numerator: i64, denominator: u64 },
    #[error("quotient rank T = {rank} is negative")]
    RankNegative { rank: i64 },
}

/// Structural checks on a type for genus `g`; returns the quotient rank
/// `T = 2 - B - R + (2g - 2 + Σp_i)/n`.
pub fn validate_type(t: &FiniteOrderType, genus: u64) -> Result<u64, Vec<Violation>> {
    let mut v = Vec::new();
    if t.order == 0 {
        return Err(vec![Violation::ZeroOrder]);
    }
    for &p in &t.orbit_periods {
        if p == 0 || p >= t.order {
            v.push(Violation::PeriodOutOfRange { period: p });
        } else if !t.order.is_multiple_of(p) {
            v.push(Violation::PeriodNotDividing { period: p });
        }
    }
    match t.orientation {
        Orientation::Preserving if t.curve_families != 0 => v.push(Violation::CurvesOnPreserving),
        Orientation::Reversing if t.order % 2 == 1 => v.push(Violation::OddReversingOrder),
        _ => {}
    }
    let mut rank = 0;
    match quotient_rank(t, genus) {
        Ok(r) if r < 0 => v.push(Violation::RankNegative { rank: r }),
        Ok(r) => rank = r,
        Err(e) => v.push(e),
    }
    if v.is_empty() {
        Ok(rank as u64)
    } else {
        Err(v)
    }
}

/// `T = 2 - B - R + (2g - 2 + Σp)/n` when integral.
pub fn quotient_rank(t: &FiniteOrderType, genus: u64) -> Result<i64, Violation> {
    let num = 2 * genus as i64 - 2 + t.period_sum() as i64;
    let n = t.order as i64;
    if num.rem_euclid(n) != 0 {
        return Err(Violation::RankNotInteger { numerator: num, denominator: t.order });
    }
    Ok(2 - t.curve_families as i64 - t.orbit_periods.len() as i64 + num.div_euclid(n))
}

/// Lefschetz numbers `L(f), ..., L(f^horizon)` of a map of the given type on
/// the closed genus-`g` surface.
///
/// Iterates that are the identity give `χ = 2 - 2g`. Otherwise an
/// orientation-preserving iterate has isolated fixed points of index one, so
/// `L` counts them; an orientation-reversing iterate fixes only curves, of
/// index zero.
pub fn lefschetz_of_type(t: &FiniteOrderType, genus: u64, horizon: usize) -> Vec<BigInt> {
    let chi = 2 - 2 * genus as i64;
    (1..=horizon as u64)
        .map(|i| {
            if i % t.order == 0 {
                BigInt::from(chi)
            } else if t.orientation == Orientation::Reversing && i % 2 == 1 {
                BigInt::from(0)
            } else {
                BigInt::from(t.orbit_points_dividing(i))
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot delete {deleted} orbits from a type with {available}")]
pub struct DeletionOutOfRange {
    pub deleted: usize,
    pub available: usize,
}

/// Minimum period of the restriction of a finite-order map to the surface
/// obtained by deleting disks around its `s` smallest exceptional orbits.
pub fn min_period_after_deleting_orbits(t: &FiniteOrderType, s: usize) -> Result<u64, DeletionOutOfRange> {
    let r = t.orbit_periods.len();
    if s > r {
        return Err(DeletionOutOfRange { deleted: s, available: r });
    }
    Ok(if s < r { t.orbit_periods[s] } else { t.order })
}

/// Where a catalog entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `(2g+k; 1,1,k)` for `k | g`.
    TriangleDivisor,
    /// `(3g; 1,1,g)`.
    TripleGenus,
    /// `(4g; 1,1,2g)`.
    QuadrupleGenus,
    /// `(4g+2; 1,2,2g+1)`, the maximal preserving order.
    MaxPreserving,
    /// `(2g+1; 1,1,1)`.
    ThreeFixedPoints,
    /// `(2g+2; 1,1,2)`.
    TwoFixedPointsOneSwap,
    /// `(6; 2,2,3,3)` on genus 2.
    Genus2FourOrbits,
    /// Orbifold quotients of the torus: `(2;1,1,1,1)`, `(3;1,1,1)`, `(4;1,1,2)`, `(6;1,2,3)`.
    TorusOrbifold,
    /// Free translations of the torus `(n; -)`.
    TorusTranslation,
    /// `(4g+4; 0; 4, 2g+2)`, `g` even, with an invariant annulus.
    AnnulusMaxEven,
    /// `(4g-4; 0; 2g-2)`, `g ≥ 3` odd, with an invariant annulus.
    AnnulusMaxOdd,
    /// `(2g-2; 0; -)`, `g` even, with an invariant annulus.
    AnnulusFree,
    /// `(4g; 0; 2, 2g)`, `g` even, with an invariant annulus.
    AnnulusTwoOrbit,
    /// `(2g-2+p; 0; p)` for odd `g`, even `p | 2g-2`.
    ReversingOneOrbit,
    /// `(2g-2+p1+p2; 0; p1, p2)` for even `g`, `gcd(p1,p2) = 2`.
    ReversingTwoOrbit,
    /// Any type accepted by the existence criteria (used by exhaustive searches).
    Enumerated,
}

/// Orders of torus translations listed in the genus-1 catalog.
pub const TORUS_TRANSLATION_ORDERS: std::ops::RangeInclusive<u64> = 1..=12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(rename = "type")]
    pub ty: FiniteOrderType,
    pub genus: u64,
    /// The map has an invariant annulus on which it acts as a reflection
    /// swapping the boundary curves; this allows deleting disks around fixed
    /// points of the modified map.
    pub has_invariant_annulus: bool,
    /// Dimension of `Fix(f^{n/2})` for reversing types (1 iff curves are fixed).
    pub dim_fix_half: Option<u8>,
    pub source: Family,
}

impl CatalogEntry {
    pub fn new(ty: FiniteOrderType, genus: u64, annulus: bool, source: Family) -> Self {
        let dim_fix_half = match ty.orientation {
            Orientation::Preserving => None,
            Orientation::Reversing => Some(u8::from(ty.curve_families > 0)),
        };
        CatalogEntry { ty, genus, has_invariant_annulus: annulus, dim_fix_half, source }
    }
}

/// The catalog of types known to be realized on the closed genus-`g` surface,
/// with construction metadata.
pub fn catalog(genus: u64, orientation: Orientation) -> Vec<CatalogEntry> {
    let g = genus;
    let mut out: Vec<CatalogEntry> = Vec::new();
    let mut push = |ty: FiniteOrderType, annulus: bool, source: Family| {
        if let Some(e) = out.iter_mut().find(|e| e.ty == ty) {
            e.has_invariant_annulus |= annulus;
            return;
        }
        if groups::type_exists(&ty, g) {
            out.push(CatalogEntry::new(ty, g, annulus, source));
        }
    };
    match (orientation, g) {
        (_, 0) => {}
        (Orientation::Preserving, 1) => {
            for (order, ps) in [(2, &[1, 1, 1, 1][..]), (3, &[1, 1, 1]), (4, &[1, 1, 2]), (6, &[1, 2, 3])] {
                push(FiniteOrderType::preserving(order, ps), false, Family::TorusOrbifold);
            }
            for n in TORUS_TRANSLATION_ORDERS {
                push(FiniteOrderType::preserving(n, &[]), false, Family::TorusTranslation);
            }
        }
        (Orientation::Reversing, 1) => {}
        (Orientation::Preserving, _) => {
            for k in divisors(g) {
                push(FiniteOrderType::preserving(2 * g + k, &[1, 1, k]), false, Family::TriangleDivisor);
            }
            push(FiniteOrderType::preserving(3 * g, &[1, 1, g]), false, Family::TripleGenus);
            push(FiniteOrderType::preserving(4 * g, &[1, 1, 2 * g]), false, Family::QuadrupleGenus);
            push(FiniteOrderType::preserving(4 * g + 2, &[1, 2, 2 * g + 1]), false, Family::MaxPreserving);
            push(FiniteOrderType::preserving(2 * g + 1, &[1, 1, 1]), false, Family::ThreeFixedPoints);
            push(FiniteOrderType::preserving(2 * g + 2, &[1, 1, 2]), false, Family::TwoFixedPointsOneSwap);
            if g == 2 {
                push(FiniteOrderType::preserving(6, &[2, 2, 3, 3]), false, Family::Genus2FourOrbits);
            }
        }
        (Orientation::Reversing, _) => {
            if g.is_multiple_of(2) {
                push(FiniteOrderType::reversing(4 * g + 4, 0, &[4, 2 * g + 2]), true, Family::AnnulusMaxEven);
                push(FiniteOrderType::reversing(4 * g, 0, &[2, 2 * g]), true, Family::AnnulusTwoOrbit);
                push(FiniteOrderType::reversing(2 * g - 2, 0, &[]), true, Family::AnnulusFree);
                for p1 in (2..=2 * g + 6).step_by(2) {
                    for p2 in (p1..=2 * g + 6).step_by(2) {
                        let n = 2 * g - 2 + p1 + p2;
                        if gcd(p1, p2) == 2 && n.is_multiple_of(p1) && n.is_multiple_of(p2) {
                            push(FiniteOrderType::reversing(n, 0, &[p1, p2]), false, Family::ReversingTwoOrbit);
                        }
                    }
                }
            } else {
                if g >= 3 {
                    push(FiniteOrderType::reversing(4 * g - 4, 0, &[2 * g - 2]), true, Family::AnnulusMaxOdd);
                }
                for p in divisors(2 * g - 2).into_iter().filter(|p| p % 2 == 0) {
                    push(FiniteOrderType::reversing(2 * g - 2 + p, 0, &[p]), false, Family::ReversingOneOrbit);
                }
            }
        }
    }
    out
}

/// Every type accepted by the existence criteria on the closed genus-`g`
/// surface (`g ≥ 2`) with order at most `max_order`. Deterministic order.
pub fn enumerate_types(genus: u64, orientation: Orientation, max_order: u64) -> Vec<FiniteOrderType> {
    let mut out = Vec::new();
    if genus < 2 {
        return out;
    }
    for n in 2..=max_order {
        if orientation == Orientation::Reversing && n % 2 == 1 {
            continue;
        }
        let divs: Vec<u64> = divisors(n).into_iter().filter(|&d| d < n).collect();
        let max_r = 4 + (4 * genus - 4) / n;
        let mut stack: Vec<u64> = Vec::new();
        collect_multisets(&divs, 0, max_r as usize, &mut stack, &mut |ps| {
            match orientation {
                Orientation::Preserving => {
                    if groups::exists_preserving(genus, n, ps) {
                        out.push(FiniteOrderType::preserving(n, ps));
                    }
                }
                Orientation::Reversing => {
                    let num = 2 * genus - 2 + ps.iter().sum::<u64>();
                    let b_max = (2 + num / n).saturating_sub(ps.len() as u64);
                    for b in 0..=b_max {
                        if groups::exists_reversing(genus, n, b, ps) {
                            out.push(FiniteOrderType::reversing(n, b, ps));
                        }
                    }
                }
            }
        });
    }
    out
}

fn collect_multisets(
    items: &[u64],
    start: usize,
    remaining: usize,
    stack: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]),
) {
    visit(stack);
    if remaining == 0 {
        return;
    }
    for i in start..items.len() {
        stack.push(items[i]);
        collect_multisets(items, i, remaining - 1, stack, visit);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ints;

    #[test]
    fn validation_examples() {
        assert_eq!(validate_type(&FiniteOrderType::preserving(6, &[2, 2, 3, 3]), 2), Ok(0));
        let bad = FiniteOrderType::new(Orientation::Preserving, 3, 1, &[]);
        assert!(validate_type(&bad, 2).unwrap_err().contains(&Violation::CurvesOnPreserving));
        let odd = FiniteOrderType::reversing(9, 0, &[3]);
        assert!(validate_type(&odd, 2).unwrap_err().contains(&Violation::OddReversingOrder));
        let frac = FiniteOrderType::preserving(4, &[1, 1, 2]);
        assert!(matches!(validate_type(&frac, 2).unwrap_err()[0], Violation::RankNotInteger { .. }));
    }

    #[test]
    fn lefschetz_examples() {
        assert_eq!(
            lefschetz_of_type(&FiniteOrderType::preserving(8, &[1, 1, 4]), 2, 8),
            ints(&[2, 2, 2, 6, 2, 2, 2, -2])
        );
        assert_eq!(
            lefschetz_of_type(&FiniteOrderType::preserving(10, &[1, 2, 5]), 2, 10),
            ints(&[1, 3, 1, 3, 6, 3, 1, 3, 1, -2])
        );
        assert_eq!(
            lefschetz_of_type(&FiniteOrderType::reversing(12, 0, &[4, 6]), 2, 12),
            ints(&[0, 0, 0, 4, 0, 6, 0, 4, 0, 0, 0, -2])
        );
    }

    #[test]
    fn deleting_orbits() {
        let t = FiniteOrderType::preserving(10, &[1, 2, 5]);
        assert_eq!(min_period_after_deleting_orbits(&t, 2), Ok(5));
        assert_eq!(min_period_after_deleting_orbits(&t, 3), Ok(10));
        assert!(min_period_after_deleting_orbits(&t, 4).is_err());
        let t = FiniteOrderType::preserving(5, &[1, 1, 1]);
        assert_eq!(min_period_after_deleting_orbits(&t, 0), Ok(1));
    }

    #[test]
    fn parsing() {
        let t = parse_type("12;0;6,4", Orientation::Reversing).unwrap();
        assert_eq!(t, FiniteOrderType::reversing(12, 0, &[4, 6]));
        assert_eq!(t.to_string(), "(12;0;4,6)");
        let t = parse_type("2;-", Orientation::Preserving).unwrap();
        assert!(t.orbit_periods.is_empty());
        assert!(parse_type("x;1", Orientation::Preserving).is_err());
    }

    #[test]
    fn genus2_catalog() {
        let pres: Vec<String> =
            catalog(2, Orientation::Preserving).iter().map(|e| e.ty.to_string()).collect();
        for t in ["(5;1,1,1)", "(6;1,1,2)", "(8;1,1,4)", "(10;1,2,5)", "(6;2,2,3,3)"] {
            assert!(pres.contains(&t.to_string()), "{t} missing from {pres:?}");
        }
        assert!(!pres.contains(&"(4;1,1,2)".to_string()));
        let rev = catalog(2, Orientation::Reversing);
        for t in ["(8;0;2,4)", "(12;0;4,6)"] {
            let e = rev.iter().find(|e| e.ty.to_string() == t).expect(t);
            assert!(e.has_invariant_annulus);
            assert_eq!(e.dim_fix_half, Some(0));
        }
    }

    #[test]
    fn torus_catalog() {
        let c = catalog(1, Orientation::Preserving);
        let names: Vec<String> = c.iter().map(|e| e.ty.to_string()).collect();
        for t in ["(2;1,1,1,1)", "(3;1,1,1)", "(4;1,1,2)", "(6;1,2,3)", "(5;-)"] {
            assert!(names.contains(&t.to_string()), "{t}");
        }
    }

    #[test]
    fn enumeration_contains_catalog() {
        for g in 2..=5 {
            for o in Orientation::BOTH {
                let all = enumerate_types(g, o, 4 * g + 4);
                for e in catalog(g, o) {
                    assert!(all.contains(&e.ty), "g={g} {o}: {} not enumerated", e.ty);
                }
            }
        }
    }
}
