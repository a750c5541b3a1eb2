//! Class values `m(H_{g,b}^±)` and `m(F_{g,b}^±)`.

use num::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{extend_lefschetz, genus2_gamma34, l_values};
use crate::bounds::{
    default_horizon, gamma_upper, static_upper, BoundReport, Contribution, LowerBoundSearch, Side,
};
use crate::tables;
use crate::types::{catalog, enumerate_types, lefschetz_of_type, FiniteOrderType};
use crate::{gcd, divisors, Orientation, Period};

/// Which maps a class value ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapClass {
    AllHomeos,
    FiniteOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Exact { value: u64 },
    Infinite,
    Interval { lower: u64, upper: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinPeriodResult {
    #[serde(rename = "g")]
    pub genus: u64,
    #[serde(rename = "b")]
    pub boundary: u64,
    pub orientation: Orientation,
    #[serde(flatten)]
    pub status: Status,
    pub provenance: Vec<Contribution>,
}

impl MinPeriodResult {
    fn exact(genus: u64, boundary: u64, orientation: Orientation, value: Period, provenance: Vec<Contribution>) -> Self {
        let status = match value {
            Period::Finite(v) => Status::Exact { value: v },
            _ => Status::Infinite,
        };
        MinPeriodResult { genus, boundary, orientation, status, provenance }
    }

    /// The exact value, if known.
    pub fn value(&self) -> Option<Period> {
        match self.status {
            Status::Exact { value } => Some(Period::Finite(value)),
            Status::Infinite => Some(Period::Infinite),
            Status::Interval { .. } => None,
        }
    }

    /// `(lower, upper)`; equal for exact results.
    pub fn range(&self) -> (Period, Period) {
        match self.status {
            Status::Exact { value } => (Period::Finite(value), Period::Finite(value)),
            Status::Infinite => (Period::Infinite, Period::Infinite),
            Status::Interval { lower, upper } => (Period::Finite(lower), Period::Finite(upper)),
        }
    }
}

/// Closed surfaces.
pub fn m_closed(genus: u64, orientation: Orientation, class: MapClass) -> MinPeriodResult {
    let g = genus;
    let value = match (g, orientation) {
        (0, Orientation::Preserving) => Period::Finite(1),
        (0, Orientation::Reversing) => Period::Finite(2),
        (1, _) => Period::Infinite,
        (2, Orientation::Reversing) => Period::Finite(4),
        (2, Orientation::Preserving) => Period::Finite(2),
        (_, Orientation::Reversing) => Period::Finite(2 * g - 2),
        (_, Orientation::Preserving) => match class {
            MapClass::AllHomeos => Period::Finite(2 * g - 2),
            MapClass::FiniteOrder => Period::Finite(g - 1),
        },
    };
    let id = match class {
        MapClass::AllHomeos => "closed_surface",
        MapClass::FiniteOrder => "closed_surface_finite_order",
    };
    let prov = vec![Contribution::lower(id, value), Contribution::upper(id, value)];
    MinPeriodResult::exact(g, 0, orientation, value, prov)
}

fn pairwise_coprime_triple(total: u64, target: u64) -> bool {
    let ds = divisors(total);
    ds.iter().any(|&a| {
        ds.iter().filter(|&&b| b >= a && a + b < target).any(|&b| {
            let c = target - a - b;
            c >= b && total.is_multiple_of(c) && gcd(a, b) == 1 && gcd(a, c) == 1 && gcd(b, c) == 1
        })
    })
}

fn gcd_two_pair(total: u64, target: u64) -> bool {
    divisors(total)
        .into_iter()
        .any(|a| a < target && total.is_multiple_of(target - a) && gcd(a, target - a) == 2)
}

fn divides(d: u64, n: u64) -> bool {
    d != 0 && n.is_multiple_of(d)
}

/// `m(F^+_{g,b}) = 2g+b-2` exactly when `b ∈ {2,3,4}` or three pairwise
/// coprime divisors of `2g+b-2` sum to `b`. Requires `g ≥ 2`.
pub fn finite_order_preserving_extremal(genus: u64, b: u64) -> bool {
    (2..=4).contains(&b) || (b >= 3 && pairwise_coprime_triple(2 * genus + b - 2, b))
}

/// `m(F^-_{g,b}) = 2g+b-2` exactly when `b ∈ {2,4}`, or `g` is even and two
/// divisors of `2g+b-2` with gcd 2 sum to `b`, or `g` is odd and `b` is an
/// even divisor of `2g-2`. Requires `g ≥ 2`.
pub fn finite_order_reversing_extremal(genus: u64, b: u64) -> bool {
    let g = genus;
    if b == 2 || b == 4 {
        return true;
    }
    if g.is_multiple_of(2) {
        b >= 2 && gcd_two_pair(2 * g + b - 2, b)
    } else {
        b.is_multiple_of(2) && divides(b, 2 * g - 2)
    }
}

/// Sufficient conditions for `m(H^+_{g,b}) = 2g+b-2` (`g ≥ 2`).
pub fn preserving_extremal(genus: u64, b: u64) -> bool {
    let g = genus;
    (b >= 3 && pairwise_coprime_triple(2 * g + b - 2, b))
        || (b > 2 && divides(b - 2, 2 * g))
        || (b > 3 && divides(b - 3, 2 * g + 1))
        || [1, 2, 3, 4, g + 2, 2 * g + 2, 2 * g + 4].contains(&b)
}

/// What is known about `m(H^-_{g,b})` from boundary parity and from
/// finite-order constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReversingExtremal {
    /// `b` when `b` is odd: some odd iterate maps a boundary curve to itself
    /// reversing it, so it has a fixed point.
    pub odd_upper: Option<u64>,
    /// The odd bound is attained (`b ≤ 2g-2`).
    pub odd_attained: bool,
    /// `m = 2g+b-2`.
    pub extremal: bool,
}

/// Reversing analogue of [`preserving_extremal`] (`g ≥ 2`).
///
/// The clauses built from the pairs `(2, b-2)` and `(4, b-4)` are only
/// applied when that pair has gcd 2; for odd `b` they would contradict the
/// odd-boundary bound.
pub fn reversing_extremal(genus: u64, b: u64) -> ReversingExtremal {
    let g = genus;
    let odd = b % 2 == 1;
    let extremal = if g % 2 == 1 {
        b == 2 || b == 4 || (!odd && divides(b, 2 * g - 2)) || b == g - 1 || b == 2 * g - 2
    } else {
        b == 2
            || b == 4
            || (b >= 2 && gcd_two_pair(2 * g + b - 2, b))
            || (b > 2 && divides(b - 2, 2 * g) && gcd(2, b - 2) == 2)
            || (b > 4 && divides(b - 4, 2 * g + 2) && gcd(4, b - 4) == 2)
            || [g + 2, 2 * g + 2, 2 * g + 6].contains(&b)
    };
    ReversingExtremal {
        odd_upper: odd.then_some(b),
        odd_attained: odd && b <= 2 * g - 2,
        extremal,
    }
}

/// Genus 0, 1 and 2 with boundary.
pub fn m_low_genus(genus: u64, b: u64, orientation: Orientation) -> MinPeriodResult {
    use Orientation::*;
    let value = match (genus, orientation, b) {
        (0, _, 1) => Period::Finite(1),
        (0 | 1, _, 0) => return m_closed(genus, orientation, MapClass::AllHomeos),
        (0, _, 2) => Period::Infinite,
        (0, Reversing, 3) => Period::Finite(2),
        (0, _, _) => Period::Finite(b - 2),
        (1, Preserving, 1) => Period::Finite(2),
        (1, _, _) => Period::Finite(b),
        (2, _, 0) => return m_closed(2, orientation, MapClass::AllHomeos),
        (2, _, _) => Period::Finite(tables::genus2_value(b, orientation)),
        _ => panic!("m_low_genus called with genus {genus}"),
    };
    let mut prov = Vec::new();
    let id = match (genus, orientation) {
        (0, _) => "planar_surfaces",
        (1, Preserving) => "genus1_preserving",
        // The statement prints b-2; the construction and the odd-iterate
        // argument both give b.
        (1, Reversing) => "genus1_reversing_proof_value",
        _ => "genus2_table",
    };
    prov.push(Contribution::lower(id, value));
    prov.push(Contribution::upper(id, value));
    if genus == 2 {
        let (lower, upper) = genus2_pipeline(b, orientation);
        prov.extend(lower.provenance);
        prov.extend(upper.provenance);
    }
    MinPeriodResult::exact(genus, b, orientation, value, prov)
}

/// A class of genus-2 maps sharing `(L(f), L(f^2))`, hence the whole
/// Lefschetz sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct L2Class {
    pub l1: i64,
    pub l2: i64,
    /// `L(f), ..., L(f^horizon)`.
    pub sequence: Vec<BigInt>,
    /// A finite-order type in the class, when there is one.
    pub representative: Option<FiniteOrderType>,
}

impl L2Class {
    /// `l`-values, preferring the representative's sequence.
    pub fn l_values(&self, horizon: usize) -> Vec<BigInt> {
        let seq = match &self.representative {
            Some(t) => lefschetz_of_type(t, 2, horizon),
            None => extend_lefschetz(&self.sequence[..2], 2, self.orientation(), horizon)
                .expect("class prefixes are integral")
                .values,
        };
        l_values(&seq)
    }

    fn orientation(&self) -> Orientation {
        self.representative.as_ref().map_or(Orientation::Preserving, |t| t.orientation)
    }
}

/// Prefixes `(L(f̃), L(f̃^2))` of genus-2 maps whose collapsed map can have
/// minimum period above 4 on a surface with at least 5 boundary components.
///
/// Preserving: `l_1 ∈ {0..3}`, and `l_3, l_4 ≥ 0` via the closed forms in
/// `l_1, l_2`. Reversing: `L(f̃) = 0`, `0 ≤ L(f̃^2) ≤ 4`, with an integral
/// extension.
pub fn admissible_l2_classes(orientation: Orientation) -> Vec<L2Class> {
    let horizon = 24;
    let mut prefixes = Vec::new();
    match orientation {
        Orientation::Preserving => {
            for g1 in 0..=3i64 {
                for g2 in -10..=10i64 {
                    let (a, b) = (BigInt::from(g1), BigInt::from(g2));
                    if let Ok((g3, g4)) = genus2_gamma34(&a, &b) {
                        if g2 >= 0 && g3 >= BigInt::from(0) && g4 >= BigInt::from(0) {
                            prefixes.push((g1, g1 + g2));
                        }
                    }
                }
            }
        }
        Orientation::Reversing => {
            for l2 in 0..=4i64 {
                let p = [BigInt::from(0), BigInt::from(l2)];
                if extend_lefschetz(&p, 2, orientation, 2).is_ok() {
                    prefixes.push((0, l2));
                }
            }
        }
    }
    let mut types = catalog(2, orientation).into_iter().map(|e| e.ty).collect::<Vec<_>>();
    types.extend(enumerate_types(2, orientation, 12));
    prefixes
        .into_iter()
        .map(|(l1, l2)| {
            let p = [BigInt::from(l1), BigInt::from(l2)];
            let sequence = extend_lefschetz(&p, 2, orientation, horizon).expect("integral prefix").values;
            let representative =
                types.iter().find(|t| lefschetz_of_type(t, 2, horizon) == sequence).cloned();
            L2Class { l1, l2, sequence, representative }
        })
        .collect()
}

/// Upper bound on `m(H^±_{2,b})` from boundary profiles: every genus-2 map
/// has an integral prefix `(L(f̃), L(f̃^2))`, and `γ` of its sequence bounds
/// `m`. Prefixes with `l_1 ∉ [0,b]` or `l_2 ∉ [0,b]` give at most 2.
pub fn genus2_profile_upper(b: u64, orientation: Orientation, horizon: usize) -> Period {
    let mut best = Period::Finite(2);
    for l1 in 0..=b as i64 {
        for l2 in l1..=l1 + b as i64 {
            let p = [BigInt::from(l1), BigInt::from(l2)];
            let Ok(ext) = extend_lefschetz(&p, 2, orientation, horizon) else {
                continue;
            };
            best = best.max(gamma_upper(&l_values(&ext.values), b, horizon));
        }
    }
    best
}

/// Independent lower and upper bounds for `m(H^±_{2,b})`.
pub fn genus2_pipeline(b: u64, orientation: Orientation) -> (BoundReport, BoundReport) {
    let lower = lower_search(2, orientation).best(b);
    let mut upper = static_upper(2, b, orientation);
    let horizon = horizon_for(2, b);
    let profile = genus2_profile_upper(b, orientation, horizon);
    upper.provenance.push(Contribution::upper("boundary_profile_mismatch", profile));
    upper.value = upper.value.min(profile);
    (lower, upper)
}

fn horizon_for(genus: u64, b: u64) -> usize {
    let default = default_horizon(genus, b);
    std::env::var("SURFPER_HORIZON")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map_or(default, |h| h.max(b as usize))
}

type SearchCache = Mutex<HashMap<(u64, Orientation), Arc<LowerBoundSearch>>>;

fn lower_search(genus: u64, orientation: Orientation) -> Arc<LowerBoundSearch> {
    static CACHE: OnceLock<SearchCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&(genus, orientation)) {
        return s.clone();
    }
    let search = Arc::new(LowerBoundSearch::new(genus, orientation));
    cache.lock().unwrap().entry((genus, orientation)).or_insert(search).clone()
}

/// `m(H^±_{g,b})`: exact where a theorem pins it down, otherwise the
/// interval between the best construction and the best upper bound.
pub fn min_period(genus: u64, b: u64, orientation: Orientation) -> MinPeriodResult {
    let g = genus;
    if b == 0 {
        return m_closed(g, orientation, MapClass::AllHomeos);
    }
    if g <= 2 {
        return m_low_genus(g, b, orientation);
    }
    let upper = static_upper(g, b, orientation);
    let mut prov = upper.provenance.clone();
    let lower = lower_search(g, orientation).best(b);
    let mut low = lower.value;
    prov.extend(lower.provenance);
    let mut theorem = |id: &str, v: u64| {
        prov.push(Contribution::lower(id, Period::Finite(v)));
        low = low.max(Period::Finite(v));
    };
    match orientation {
        Orientation::Preserving => {
            if preserving_extremal(g, b) {
                theorem("extremal_preserving", 2 * g + b - 2);
            }
            if b >= 6 * g + 6 {
                theorem("max_order_preserving", 4 * g + 2);
            }
        }
        Orientation::Reversing => {
            let info = reversing_extremal(g, b);
            if info.extremal {
                theorem("extremal_reversing", 2 * g + b - 2);
            }
            if info.odd_attained {
                theorem("odd_boundary", b);
            }
            let (top, from) = if g.is_multiple_of(2) { (4 * g + 4, 6 * g + 10) } else { (4 * g - 4, 6 * g - 6) };
            if b >= from {
                theorem("max_order_reversing", top);
            }
        }
    }
    let lo = low.finite().expect("lower bounds are finite for g >= 3");
    let hi = upper.value.finite().expect("upper bounds are finite for g >= 3");
    assert!(lo <= hi, "lower bound {lo} exceeds upper bound {hi} at g={g}, b={b}, {orientation}");
    let status = if lo == hi { Status::Exact { value: lo } } else { Status::Interval { lower: lo, upper: hi } };
    prov.sort_by_key(|c| (c.side == Side::Upper, c.value));
    MinPeriodResult { genus: g, boundary: b, orientation, status, provenance: prov }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Orientation::*;

    #[test]
    fn closed_examples() {
        assert_eq!(m_closed(1, Preserving, MapClass::AllHomeos).value(), Some(Period::Infinite));
        assert_eq!(m_closed(2, Reversing, MapClass::AllHomeos).value(), Some(Period::Finite(4)));
        assert_eq!(m_closed(5, Preserving, MapClass::FiniteOrder).value(), Some(Period::Finite(4)));
        assert_eq!(m_closed(2, Preserving, MapClass::AllHomeos).value(), Some(Period::Finite(2)));
        assert_eq!(m_closed(0, Reversing, MapClass::FiniteOrder).value(), Some(Period::Finite(2)));
    }

    #[test]
    fn decider_examples() {
        assert!(finite_order_preserving_extremal(2, 8));
        assert!(!finite_order_preserving_extremal(2, 5));
        assert!(finite_order_reversing_extremal(2, 6));
        assert!(preserving_extremal(3, 10));
        assert!(preserving_extremal(2, 1));
        assert!(reversing_extremal(2, 4).extremal);
        assert_eq!(reversing_extremal(3, 3).odd_upper, Some(3));
        assert!(reversing_extremal(3, 3).odd_attained);
        assert!(!reversing_extremal(2, 3).extremal);
    }

    #[test]
    fn low_genus_examples() {
        assert_eq!(m_low_genus(0, 2, Preserving).value(), Some(Period::Infinite));
        assert_eq!(m_low_genus(2, 10, Reversing).value(), Some(Period::Finite(12)));
        assert_eq!(m_low_genus(2, 7, Preserving).value(), Some(Period::Finite(4)));
        assert_eq!(m_low_genus(1, 5, Reversing).value(), Some(Period::Finite(5)));
        assert_eq!(m_low_genus(0, 3, Reversing).value(), Some(Period::Finite(2)));
    }

    #[test]
    fn class_examples() {
        let pres: Vec<(i64, i64)> = admissible_l2_classes(Preserving).iter().map(|c| (c.l1, c.l2)).collect();
        assert_eq!(pres, vec![(0, 4), (0, 6), (1, 3), (2, 2), (2, 4), (3, 3)]);
        let rev: Vec<(i64, i64)> = admissible_l2_classes(Reversing).iter().map(|c| (c.l1, c.l2)).collect();
        assert_eq!(rev, vec![(0, 0), (0, 2), (0, 4)]);
        for c in admissible_l2_classes(Preserving) {
            assert!(c.l_values(12)[0] >= BigInt::from(0));
            assert_eq!(c.representative.is_none(), (c.l1, c.l2) == (0, 6));
        }
        assert!(admissible_l2_classes(Reversing).iter().all(|c| c.representative.is_some()));
    }

    #[test]
    fn min_period_examples() {
        assert_eq!(min_period(4, 100, Preserving).status, Status::Exact { value: 18 });
        assert_eq!(min_period(3, 10, Preserving).status, Status::Exact { value: 14 });
        match min_period(3, 7, Preserving).status {
            Status::Interval { lower, upper } => {
                assert!(lower <= upper && upper <= 11);
            }
            other => panic!("expected an interval, got {other:?}"),
        }
    }
}
