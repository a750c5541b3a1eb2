//! Upper and lower bounds for minimum periods on bounded surfaces.
//!
//! A homeomorphism `f` of `Σ_{g,b}` permutes the boundary curves; collapsing
//! each curve to a point gives a map `f̃` of the closed surface `Σ_g`. If the
//! boundary cycles have profile `x = (k_1, 2k_2, ..., n k_n)` (`k_j` cycles of
//! period `j`) and `m(f) > i`, then `f̃^i` fixes only collapsed points, so the
//! `l`-values of `f̃` agree with `x` up to `i`. The first mismatch `α(x, l)`
//! therefore bounds `m(f)` from above; maximizing over profiles gives `γ`.
//!
//! Conversely, starting from a finite-order map and deleting invariant disks
//! around chosen periodic orbits (and perturbing), one builds maps whose
//! minimum period is `min(a_f, β(x, l))`, which gives constructive lower
//! bounds.

use num::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

use crate::algebra::{l_values, saturating_i64};
use crate::types::{catalog, enumerate_types, lefschetz_of_type, CatalogEntry, Family};
use crate::{Orientation, Period};

/// Boundary-cycle counts `k_1..k_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    pub counts: Vec<u64>,
}

impl Composition {
    pub fn from_profile(profile: &[u64]) -> Option<Self> {
        let mut counts = Vec::with_capacity(profile.len());
        for (i, &x) in profile.iter().enumerate() {
            let j = i as u64 + 1;
            if x % j != 0 {
                return None;
            }
            counts.push(x / j);
        }
        Some(Composition { counts })
    }

    /// `x_i = i k_i`.
    pub fn profile(&self) -> Vec<u64> {
        self.counts.iter().enumerate().map(|(i, k)| (i as u64 + 1) * k).collect()
    }

    pub fn total(&self) -> u64 {
        self.profile().iter().sum()
    }
}

/// All compositions in `C_{b,n}`: profiles of length `n` with `x_i` a
/// multiple of `i` and `Σ x_i = b`. Ordered by decreasing `k_n`, then
/// decreasing `k_{n-1}`, and so on.
pub fn compositions(b: u64, n: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut counts = vec![0u64; n];
    fill(b, n, &mut counts, &mut out);
    out
}

fn fill(rest: u64, i: usize, counts: &mut Vec<u64>, out: &mut Vec<Composition>) {
    if i == 0 {
        if rest == 0 {
            out.push(Composition { counts: counts.clone() });
        }
        return;
    }
    let j = i as u64;
    for k in (0..=rest / j).rev() {
        counts[i - 1] = k;
        fill(rest - k * j, i - 1, counts, out);
    }
    counts[i - 1] = 0;
}

fn x_at(x: &[u64], i: usize) -> i128 {
    x.get(i - 1).copied().unwrap_or(0) as i128
}

fn y_at(y: &[BigInt], i: usize) -> i128 {
    y.get(i - 1).map(saturating_i64).unwrap_or(0) as i128
}

/// First index `i ≤ horizon` where the zero-padded profile differs from `y`;
/// `Infinite` when they agree up to the horizon.
pub fn alpha(x: &[u64], y: &[BigInt], horizon: usize) -> Period {
    (1..=horizon)
        .find(|&i| x_at(x, i) != y_at(y, i))
        .map_or(Period::Infinite, |i| Period::Finite(i as u64))
}

/// `min({i : x_i < y_i} ∪ {x_i - y_i : x_i > y_i})`, `Infinite` when equal.
pub fn beta(x: &[u64], y: &[BigInt]) -> Period {
    let len = x.len().max(y.len());
    let mut best: Option<u64> = None;
    for i in 1..=len {
        let (xi, yi) = (x_at(x, i), y_at(y, i));
        let c = if xi < yi {
            i as u64
        } else if xi > yi {
            u64::try_from(xi - yi).unwrap_or(u64::MAX)
        } else {
            continue;
        };
        best = Some(best.map_or(c, |b| b.min(c)));
    }
    best.map_or(Period::Infinite, Period::Finite)
}

/// `γ(l, b)`: the largest first mismatch `α(x, l)` over `x ∈ C_{b,b}`, with
/// profiles zero-padded to `horizon`.
///
/// A profile whose first mismatch is at `i` agrees with `l` before `i`, so the
/// candidates lie on a single forced path; at each step it suffices to decide
/// whether some completion mismatches there.
pub fn gamma_upper(l: &[BigInt], b: u64, horizon: usize) -> Period {
    let horizon = horizon.max(b as usize);
    let mut rest = b as i128;
    let mut best: Option<u64> = None;
    for i in 1..=horizon {
        let yi = y_at(l, i);
        let step = i as i128;
        // Can x_i = c·i differ from y_i with the remainder placed beyond i?
        let mut c = 0i128;
        while c * step <= rest {
            let left = rest - c * step;
            if c * step != yi && (left == 0 || (left > step && left <= b as i128)) {
                best = Some(i as u64);
                break;
            }
            c += 1;
        }
        let can_match = yi >= 0 && yi % step == 0 && yi <= rest;
        if !can_match {
            return best.map_or(Period::Finite(1), Period::Finite);
        }
        rest -= yi;
    }
    if rest == 0 {
        Period::HorizonExceeded(horizon)
    } else {
        best.map_or(Period::Finite(1), Period::Finite)
    }
}

/// Default horizon for `γ`: `max(b, 4g+4, 2σ)` where `σ` bounds the orders in
/// the genus-`g` catalog.
pub fn default_horizon(genus: u64, b: u64) -> usize {
    let sigma_max = [Orientation::Preserving, Orientation::Reversing]
        .iter()
        .flat_map(|&o| catalog(genus, o))
        .map(|e| e.ty.order)
        .max()
        .unwrap_or(1);
    (b.max(4 * genus + 4).max(2 * sigma_max)) as usize
}

/// A composition realizing a constructive bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "type")]
    pub ty: String,
    pub profile: Vec<u64>,
}

/// Whether a contribution bounds the class value from below or above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

/// One contributor to a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub theorem: String,
    pub side: Side,
    pub value: Period,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Contribution {
    pub fn lower(theorem: &str, value: Period) -> Self {
        Contribution { theorem: theorem.to_string(), side: Side::Lower, value, witness: None }
    }

    pub fn upper(theorem: &str, value: Period) -> Self {
        Contribution { theorem: theorem.to_string(), side: Side::Upper, value, witness: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub value: Period,
    pub provenance: Vec<Contribution>,
}

/// Upper bounds valid for every homeomorphism of `Σ_{g,b}`, `b ≥ 1`:
/// `2g+b-2` when `2g+b ≥ 4`; Fuller's `max(1, 2g+b-1)`; `4g+2` for
/// preserving and `4g+(-1)^g 4` for reversing maps when `g ≥ 2`; `b` for
/// reversing maps with `b` odd and `g ≥ 2`. The annulus admits fixed-point
/// free iterates of every order.
pub fn static_upper(genus: u64, b: u64, orientation: Orientation) -> BoundReport {
    let g = genus;
    let mut prov = Vec::new();
    if (g, b) == (0, 2) {
        prov.push(Contribution::upper("annulus_rotation", Period::Infinite));
        return BoundReport { value: Period::Infinite, provenance: prov };
    }
    if 2 * g + b >= 4 {
        prov.push(Contribution::upper("euler_characteristic", Period::Finite(2 * g + b - 2)));
    }
    prov.push(Contribution::upper("fuller", Period::Finite((2 * g + b).saturating_sub(1).max(1))));
    if g >= 2 {
        match orientation {
            Orientation::Preserving => {
                prov.push(Contribution::upper("max_order_preserving", Period::Finite(4 * g + 2)));
            }
            Orientation::Reversing => {
                let v = if g.is_multiple_of(2) { 4 * g + 4 } else { 4 * g - 4 };
                prov.push(Contribution::upper("max_order_reversing", Period::Finite(v)));
                if b % 2 == 1 {
                    prov.push(Contribution::upper("odd_boundary", Period::Finite(b)));
                }
            }
        }
    }
    let value = prov.iter().map(|c| c.value).min().unwrap();
    BoundReport { value, provenance: prov }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("profile entry x_{index} = {value} is not a multiple of {index}")]
    NotMultiple { index: usize, value: u64 },
    #[error("profile sums to {got}, expected {expected}")]
    WrongTotal { got: u64, expected: u64 },
    #[error("profile has {got} entries but the order is {order}")]
    TooLong { got: usize, order: u64 },
    #[error("x_{index} must be 0 because l_{index} = 0")]
    ZeroLValue { index: usize },
    #[error("annulus construction needs Fix(f^(n/2)) to be finite")]
    FixedCurves,
}

/// How a catalog entry is turned into maps on bounded surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// Preserving: `min(σ, β)`.
    Preserving,
    /// Reversing, orbits only: `min(a_f, β)` with `a_f ∈ {σ, σ/2}`.
    Reversing { cap: u64 },
    /// Reversing with an invariant annulus: fixed points may be cut out too.
    Annulus,
}

fn rule_of(entry: &CatalogEntry) -> Rule {
    let sigma = entry.ty.order;
    match entry.ty.orientation {
        Orientation::Preserving => Rule::Preserving,
        Orientation::Reversing if entry.has_invariant_annulus && entry.dim_fix_half == Some(0) => Rule::Annulus,
        Orientation::Reversing => Rule::Reversing {
            cap: if entry.dim_fix_half == Some(1) { sigma / 2 } else { sigma },
        },
    }
}

fn cap_of(rule: Rule, sigma: u64) -> u64 {
    match rule {
        Rule::Reversing { cap } => cap,
        _ => sigma,
    }
}

fn entry_l_values(entry: &CatalogEntry) -> Vec<BigInt> {
    let sigma = entry.ty.order as usize;
    l_values(&lefschetz_of_type(&entry.ty, entry.genus, sigma))
}

/// Minimum period of the map built from `entry` by deleting disks around
/// boundary cycles with profile `profile` (indices up to the order).
pub fn construction_lower(entry: &CatalogEntry, b: u64, profile: &[u64]) -> Result<BoundReport, ConstructionError> {
    let sigma = entry.ty.order;
    if profile.len() as u64 > sigma {
        return Err(ConstructionError::TooLong { got: profile.len(), order: sigma });
    }
    for (i, &x) in profile.iter().enumerate() {
        if x % (i as u64 + 1) != 0 {
            return Err(ConstructionError::NotMultiple { index: i + 1, value: x });
        }
    }
    let total: u64 = profile.iter().sum();
    if total != b {
        return Err(ConstructionError::WrongTotal { got: total, expected: b });
    }
    let y = entry_l_values(entry);
    let rule = rule_of(entry);
    if entry.has_invariant_annulus && entry.dim_fix_half == Some(1) && profile.first().is_some_and(|&x| x > 0) {
        return Err(ConstructionError::FixedCurves);
    }
    for (i, &x) in profile.iter().enumerate() {
        let free = i == 0 && rule == Rule::Annulus;
        if x > 0 && y[i] == BigInt::from(0) && !free {
            return Err(ConstructionError::ZeroLValue { index: i + 1 });
        }
    }
    let value = beta(profile, &y).min(Period::Finite(cap_of(rule, sigma)));
    let witness = Witness { ty: entry.ty.to_string(), profile: profile.to_vec() };
    Ok(BoundReport {
        value,
        provenance: vec![Contribution {
            theorem: construction_name(entry),
            side: Side::Lower,
            value,
            witness: Some(witness),
        }],
    })
}

fn construction_name(entry: &CatalogEntry) -> String {
    let kind = match rule_of(entry) {
        Rule::Preserving => "orbit_deletion",
        Rule::Reversing { .. } => "orbit_deletion_reversing",
        Rule::Annulus => "annulus_surgery",
    };
    let family = serde_json::to_value(entry.source).ok().and_then(|v| v.as_str().map(str::to_string));
    format!("{kind}:{}", family.unwrap_or_default())
}

/// Candidate finite-order maps for constructive lower bounds on genus `g`,
/// with precomputed `l`-values. Reuse across many `b`.
pub struct LowerBoundSearch {
    genus: u64,
    orientation: Orientation,
    candidates: Vec<(CatalogEntry, Vec<i64>)>,
}

impl LowerBoundSearch {
    /// Catalog entries first, then every other type the existence criteria
    /// accept (order at most `4g+2` preserving, `4g+4` reversing).
    pub fn new(genus: u64, orientation: Orientation) -> Self {
        let mut entries = catalog(genus, orientation);
        let seen: BTreeSet<_> = entries.iter().map(|e| e.ty.clone()).collect();
        let max_order = match orientation {
            Orientation::Preserving => 4 * genus + 2,
            Orientation::Reversing => 4 * genus + 4,
        };
        for ty in enumerate_types(genus, orientation, max_order) {
            if !seen.contains(&ty) {
                entries.push(CatalogEntry::new(ty, genus, false, Family::Enumerated));
            }
        }
        let candidates = entries
            .into_iter()
            .map(|e| {
                let y = entry_l_values(&e).iter().map(saturating_i64).collect();
                (e, y)
            })
            .collect();
        LowerBoundSearch { genus, orientation, candidates }
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    /// Best construction for `b` boundary components.
    pub fn best(&self, b: u64) -> BoundReport {
        let mut best: Option<(u64, &CatalogEntry, Vec<u64>)> = None;
        for (entry, y) in &self.candidates {
            if let Some((v, profile)) = optimize(entry, y, b) {
                if best.as_ref().is_none_or(|(bv, _, _)| v > *bv) {
                    best = Some((v, entry, profile));
                }
            }
        }
        match best {
            Some((_, entry, profile)) => {
                construction_lower(entry, b, &profile).expect("optimizer produced an admissible profile")
            }
            None => BoundReport {
                value: Period::Finite(1),
                provenance: vec![Contribution::lower("trivial", Period::Finite(1))],
            },
        }
    }
}

/// Largest `min(cap, β(x, y))` over admissible profiles `x` summing to `b`,
/// with a maximizing profile.
fn optimize(entry: &CatalogEntry, y: &[i64], b: u64) -> Option<(u64, Vec<u64>)> {
    let sigma = entry.ty.order;
    let rule = rule_of(entry);
    let cap = cap_of(rule, sigma);
    let support: Vec<usize> = (1..=sigma as usize)
        .filter(|&j| y[j - 1] != 0 || (j == 1 && rule == Rule::Annulus))
        .collect();
    for t in (1..=cap).rev() {
        if let Some(profile) = feasible(&support, y, b, t, sigma as usize) {
            return Some((t, profile));
        }
    }
    None
}

/// A profile supported on `support`, summing to `b`, with every index
/// contributing at least `t` to `β`.
fn feasible(support: &[usize], y: &[i64], b: u64, t: u64, len: usize) -> Option<Vec<u64>> {
    let b = b as usize;
    let t = t as i64;
    let choices: Vec<Vec<usize>> = support
        .iter()
        .map(|&j| {
            let yj = y[j - 1];
            (0..=b / j)
                .map(|k| k * j)
                .filter(|&x| {
                    let x = x as i64;
                    x == yj || (x < yj && j as i64 >= t) || (x > yj && x - yj >= t)
                })
                .collect()
        })
        .collect();
    // reach[s] after processing a prefix of the support.
    let mut layers: Vec<Vec<bool>> = vec![vec![false; b + 1]];
    layers[0][0] = true;
    for opts in &choices {
        let prev = layers.last().unwrap();
        let mut next = vec![false; b + 1];
        for s in 0..=b {
            if prev[s] {
                for &x in opts {
                    if s + x <= b {
                        next[s + x] = true;
                    }
                }
            }
        }
        layers.push(next);
    }
    if !layers.last().unwrap()[b] {
        return None;
    }
    let mut profile = vec![0u64; len];
    let mut s = b;
    for (idx, opts) in choices.iter().enumerate().rev() {
        let x = *opts.iter().find(|&&x| x <= s && layers[idx][s - x]).unwrap();
        profile[support[idx] - 1] = x as u64;
        s -= x;
    }
    while profile.len() > 1 && profile.last() == Some(&0) {
        profile.pop();
    }
    Some(profile)
}

/// Best constructive lower bound for `m` on `Σ_{g,b}` (`g ≥ 2`).
pub fn best_lower_bound(genus: u64, b: u64, orientation: Orientation) -> BoundReport {
    LowerBoundSearch::new(genus, orientation).best(b)
}
