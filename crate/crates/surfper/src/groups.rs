//! Signatures of planar discontinuous groups and cyclic actions.
//!
//! A finite-order homeomorphism of order `n` of a closed surface corresponds to
//! an epimorphism `θ: G → Z_n` from a planar discontinuous group `G` whose
//! kernel is the (orientable) surface group. The signature
//! `(ϑ, T, [m_1..m_R], B)` records the presentation of `G`:
//! `R` elliptic generators `σ_i` of order `m_i`, `T` handle or cross-cap
//! generators `τ_i` (sign `+` or `-`), and `B` boundary generators `π_i`
//! each carrying one reflection `ρ_{i,1}`.
//!
//! Since the target is abelian, a homomorphism is an assignment of residues to
//! generators that satisfies the abelianized relations.

use num::{BigInt, BigRational, Integer, One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::types::{quotient_rank, validate_type, FiniteOrderType};
use crate::{divisors, gcd, lcm, Orientation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub sign: Sign,
    pub rank: u64,
    /// Sorted ascending, each at least 2.
    pub periods: Vec<u64>,
    /// Link periods of each boundary cycle.
    pub boundary: Vec<Vec<u64>>,
}

impl Signature {
    /// Signature whose boundary cycles carry no link periods.
    pub fn restricted(sign: Sign, rank: u64, periods: &[u64], boundary: u64) -> Self {
        let mut periods = periods.to_vec();
        periods.sort_unstable();
        Signature { sign, rank, periods, boundary: vec![Vec::new(); boundary as usize] }
    }

    pub fn boundary_count(&self) -> u64 {
        self.boundary.len() as u64
    }

    pub fn is_restricted(&self) -> bool {
        self.boundary.iter().all(Vec::is_empty)
    }

    /// Reflections reverse orientation, so the group is orientable exactly
    /// when the sign is `+` and there are no boundary cycles.
    pub fn is_orientable(&self) -> bool {
        self.sign == Sign::Plus && self.boundary.is_empty()
    }

    pub fn check(&self) -> Result<(), GroupError> {
        if self.sign == Sign::Plus && self.rank % 2 == 1 {
            return Err(GroupError::InvalidSignature("sign + requires an even rank".into()));
        }
        if self.rank == 0 && self.boundary.is_empty() && self.sign == Sign::Minus {
            return Err(GroupError::InvalidSignature("rank 0 without boundary requires sign +".into()));
        }
        if self.periods.iter().chain(self.boundary.iter().flatten()).any(|&m| m < 2) {
            return Err(GroupError::InvalidSignature("all periods must be at least 2".into()));
        }
        Ok(())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            Sign::Plus => "+",
            Sign::Minus => "-",
        };
        let ps = self.periods.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({sign},{},[{ps}],{})", self.rank, self.boundary.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("signature must be orientable")]
    NotOrientable,
    #[error("signature must be non-orientable")]
    Orientable,
    #[error("only signatures without link periods are supported")]
    NotRestricted,
    #[error("Euler characteristic is {0}, outside the supported range")]
    WrongCurvature(String),
    #[error("period {0} does not divide n")]
    PeriodNotDividing(u64),
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("no epimorphism exists for this signature and order")]
    NoEpimorphism,
    #[error("type is not valid: {0}")]
    InvalidType(String),
    #[error("genus would be {0}, not a non-negative integer")]
    NonIntegralGenus(String),
}

fn frac(n: i64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Euler characteristic `μ = 2 - T - B - Σ(1 - 1/m_i) - ½ΣΣ(1 - 1/m_ij)`.
pub fn mu(sig: &Signature) -> BigRational {
    let mut v = BigRational::from_integer(BigInt::from(2 - sig.rank as i64 - sig.boundary.len() as i64));
    for &m in &sig.periods {
        v -= BigRational::one() - frac(1, m);
    }
    for &m in sig.boundary.iter().flatten() {
        v -= (BigRational::one() - frac(1, m)) / BigRational::from_integer(BigInt::from(2));
    }
    v
}

/// `μ(H) = [G:H] μ(G)`.
pub fn riemann_hurwitz(mu_g: &BigRational, index: u64) -> BigRational {
    mu_g * BigRational::from_integer(BigInt::from(index))
}

/// Signature of the group uniformizing the quotient orbifold of a map of the
/// given type, with `m_i = n / p_i`.
///
/// A reversing type with curve families has a non-orientable group whatever
/// the sign; the sign is chosen as `+` for even rank and `-` for odd rank.
pub fn signature_of_type(t: &FiniteOrderType, genus: u64) -> Result<Signature, GroupError> {
    let rank = validate_type(t, genus).map_err(|v| {
        GroupError::InvalidType(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
    })?;
    let periods: Vec<u64> = t.orbit_periods.iter().map(|p| t.order / p).collect();
    let sign = match t.orientation {
        Orientation::Preserving => Sign::Plus,
        Orientation::Reversing if t.curve_families == 0 => Sign::Minus,
        Orientation::Reversing if rank % 2 == 0 => Sign::Plus,
        Orientation::Reversing => Sign::Minus,
    };
    Ok(Signature::restricted(sign, rank, &periods, t.curve_families))
}

/// Genus of the kernel of an epimorphism of order `n`:
/// `1 + (n(T + B + R - 2) - Σ n/m_i) / 2`.
pub fn genus_of(sig: &Signature, n: u64) -> Result<u64, GroupError> {
    let r = sig.periods.len() as i64;
    let mut num = n as i64 * (sig.rank as i64 + sig.boundary.len() as i64 + r - 2);
    for &m in &sig.periods {
        if !n.is_multiple_of(m) {
            return Err(GroupError::PeriodNotDividing(m));
        }
        num -= (n / m) as i64;
    }
    if num % 2 != 0 || num < -2 {
        return Err(GroupError::NonIntegralGenus(format!("1 + {num}/2")));
    }
    Ok((1 + num / 2) as u64)
}

fn period_lcm(periods: &[u64]) -> u64 {
    periods.iter().fold(1, |a, &m| lcm(a, m))
}

/// Existence of an epimorphism from an orientable group with `μ < 0` onto
/// `Z_n` with surface kernel (Harvey's conditions).
pub fn harvey(sig: &Signature, n: u64) -> Result<bool, GroupError> {
    sig.check()?;
    if !sig.is_orientable() {
        return Err(GroupError::NotOrientable);
    }
    let ms = &sig.periods;
    let r = ms.len();
    let big_m = period_lcm(ms);
    let cond1 = (0..r).all(|i| {
        let rest: Vec<u64> = ms.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &m)| m).collect();
        period_lcm(&rest) == big_m
    });
    let cond2 = n.is_multiple_of(big_m) && (sig.rank != 0 || big_m == n);
    let cond3 = r != 1 && (sig.rank != 0 || r >= 3);
    let two_power = big_m.trailing_zeros();
    let cond4 = two_power == 0 || {
        let q = 1u64 << two_power;
        ms.iter().filter(|&&m| m % q == 0).count() % 2 == 0
    };
    Ok(cond1 && cond2 && cond3 && cond4)
}

/// Existence for orientable groups with `μ = 0`: exactly the five Euclidean
/// cases admit a torus kernel.
pub fn euclidean_exists(sig: &Signature, n: u64) -> Result<bool, GroupError> {
    sig.check()?;
    if !sig.is_orientable() {
        return Err(GroupError::NotOrientable);
    }
    let m = mu(sig);
    if !m.is_zero() {
        return Err(GroupError::WrongCurvature(m.to_string()));
    }
    Ok(match (sig.rank, sig.periods.as_slice()) {
        (0, [2, 2, 2, 2]) => n == 2,
        (0, [3, 3, 3]) => n == 3,
        (0, [2, 4, 4]) => n == 4,
        (0, [2, 3, 6]) => n == 6,
        (2, []) => true,
        _ => false,
    })
}

/// `gcd(n/m_1, ..., n/m_R)`, zero for an empty period list.
pub fn gcd_g_n(sig: &Signature, n: u64) -> Result<u64, GroupError> {
    let mut d = 0;
    for &m in &sig.periods {
        if !n.is_multiple_of(m) {
            return Err(GroupError::PeriodNotDividing(m));
        }
        d = gcd(d, n / m);
    }
    Ok(d)
}

/// `½ Σ n/m_i`, zero for an empty period list.
pub fn p_g_n(sig: &Signature, n: u64) -> Result<BigRational, GroupError> {
    let mut s = 0u64;
    for &m in &sig.periods {
        if !n.is_multiple_of(m) {
            return Err(GroupError::PeriodNotDividing(m));
        }
        s += n / m;
    }
    Ok(frac(s as i64, 2))
}

fn restricted_non_orientable(sig: &Signature) -> Result<(), GroupError> {
    sig.check()?;
    if sig.is_orientable() {
        return Err(GroupError::Orientable);
    }
    if !sig.is_restricted() {
        return Err(GroupError::NotRestricted);
    }
    Ok(())
}

/// Existence of an epimorphism from a non-orientable group onto `Z_n` whose
/// kernel is an orientable surface group.
pub fn nonorientable_exists(sig: &Signature, n: u64) -> Result<bool, GroupError> {
    restricted_non_orientable(sig)?;
    if !n.is_multiple_of(2) || sig.periods.iter().any(|&m| !n.is_multiple_of(m)) {
        return Ok(false);
    }
    let d = gcd_g_n(sig, n)?;
    if d % 2 != 0 {
        return Ok(false);
    }
    let b = sig.boundary_count();
    let t = sig.rank;
    let p = p_g_n(sig, n)?;
    let p_parity_matches = p.is_integer() && (p.to_integer() - BigInt::from(t + 1)).is_even();
    if (b >= 1 || p_parity_matches) && (n / 2).is_multiple_of(2) {
        return Ok(false);
    }
    if t + b == 1 && d != 2 {
        return Ok(false);
    }
    Ok(true)
}

/// Residue images of the canonical generators under an epimorphism onto `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpimorphismWitness {
    pub modulus: u64,
    pub sigma: Vec<u64>,
    pub tau: Vec<u64>,
    pub pi: Vec<u64>,
    pub rho: Vec<u64>,
}

fn residue(v: i64, n: u64) -> u64 {
    v.rem_euclid(n as i64) as u64
}

/// Explicit epimorphism for a non-orientable signature accepted by
/// [`nonorientable_exists`].
pub fn epimorphism_witness(sig: &Signature, n: u64) -> Result<EpimorphismWitness, GroupError> {
    if !nonorientable_exists(sig, n)? {
        return Err(GroupError::NoEpimorphism);
    }
    let t = sig.rank as usize;
    let b = sig.boundary.len();
    let half = (n / 2) as i64;
    let sigma: Vec<u64> = sig.periods.iter().map(|m| n / m).collect();
    // Σ n/m_i = 2p.
    let p = (sigma.iter().sum::<u64>() / 2) as i64;
    let rho = vec![n / 2; b];
    let alternating = |i: usize| if i.is_multiple_of(2) { 1 } else { -1 };
    let sign = if t == 0 { Sign::Plus } else { sig.sign };
    let (tau, pi) = match sign {
        Sign::Minus if t % 2 == 1 => {
            // Σσ + Σπ + 2Στ = 2p + 2B + 2τ_1, since the alternating tail sums to 0.
            let mut t1 = -p - b as i64;
            if t1.rem_euclid(2) == 0 {
                t1 += half;
            }
            let mut tau = vec![residue(t1, n)];
            tau.extend((2..=t).map(|i| residue(alternating(i), n)));
            (tau, vec![2 % n; b])
        }
        Sign::Minus => {
            // Here the alternating tail sums to 1 and π_i = 0.
            let mut t1 = -p - 1;
            if t1.rem_euclid(2) == 0 {
                t1 += half;
            }
            let mut tau = vec![residue(t1, n)];
            tau.extend((2..=t).map(|i| residue(alternating(i), n)));
            (tau, vec![0; b])
        }
        Sign::Plus => {
            let mut pi = vec![residue(2, n); b];
            pi[0] = residue(2 - 2 * b as i64 - 2 * p, n);
            (vec![residue(2, n); t], pi)
        }
    };
    let w = EpimorphismWitness { modulus: n, sigma, tau, pi, rho };
    verify_witness(sig, &w)?;
    Ok(w)
}

/// Checks that `w` defines an epimorphism onto `Z_n` with orientable surface
/// kernel: relations hold, images generate, elliptic images have the right
/// orders, reflections map to the element of order 2, and (for non-orientable
/// groups) the orientation-reversing generators are exactly those with odd
/// image.
pub fn verify_witness(sig: &Signature, w: &EpimorphismWitness) -> Result<(), GroupError> {
    let n = w.modulus;
    let fail = |what: &str| Err(GroupError::InvalidSignature(format!("witness rejected: {what}")));
    if w.sigma.len() != sig.periods.len()
        || w.tau.len() != sig.rank as usize
        || w.pi.len() != sig.boundary.len()
        || w.rho.len() != sig.boundary.len()
    {
        return fail("generator count");
    }
    let all = || w.sigma.iter().chain(&w.tau).chain(&w.pi).chain(&w.rho);
    if all().any(|&r| r >= n) {
        return fail("residue out of range");
    }
    for (&r, &m) in w.sigma.iter().zip(&sig.periods) {
        if n / gcd(r, n) != m {
            return fail("elliptic image has the wrong order");
        }
    }
    if w.rho.iter().any(|&r| 2 * r != n) {
        return fail("reflection image is not of order 2");
    }
    let tau_coef = if sig.sign == Sign::Minus { 2 } else { 0 };
    let long: u64 = w.sigma.iter().chain(&w.pi).sum::<u64>() + tau_coef * w.tau.iter().sum::<u64>();
    if !long.is_multiple_of(n) {
        return fail("long relation");
    }
    if all().fold(n, |d, &r| gcd(d, r)) != 1 {
        return fail("not surjective");
    }
    if !sig.is_orientable() {
        if !n.is_multiple_of(2) {
            return fail("odd modulus for a non-orientable group");
        }
        let tau_odd = sig.sign == Sign::Minus;
        let ok = w.sigma.iter().all(|r| r % 2 == 0)
            && w.pi.iter().all(|r| r % 2 == 0)
            && w.rho.iter().all(|r| r % 2 == 1)
            && w.tau.iter().all(|r| (r % 2 == 1) == tau_odd);
        if !ok {
            return fail("parity of orientation character");
        }
    }
    Ok(())
}

/// Exhaustive decision of whether some epimorphism onto `Z_n` with surface
/// kernel exists (orientable kernel too when `kernel_orientable` is set).
///
/// Each generator ranges over every admissible residue; assignments are
/// folded generator by generator into states `(long-relation sum, gcd of
/// images with n)`, which is exactly the information the final test needs.
pub fn brute_force_epimorphism(sig: &Signature, n: u64, kernel_orientable: bool) -> Result<bool, GroupError> {
    sig.check()?;
    if !sig.is_restricted() {
        return Err(GroupError::NotRestricted);
    }
    if sig.periods.len() > 6 || n > 60 || n == 0 || sig.rank + sig.boundary_count() > 4 {
        return Err(GroupError::Budget(format!("R={}, n={n}, T+B={}", sig.periods.len(), sig.rank + sig.boundary_count())));
    }
    let parity = kernel_orientable && !sig.is_orientable();
    if parity && n % 2 == 1 {
        return Ok(false);
    }
    // (allowed residues, coefficient in the long relation)
    let mut gens: Vec<(Vec<u64>, u64)> = Vec::new();
    let even_ok = |r: u64| !parity || r.is_multiple_of(2);
    let odd_ok = |r: u64| !parity || r % 2 == 1;
    for &m in &sig.periods {
        gens.push(((0..n).filter(|&r| n / gcd(r, n) == m && even_ok(r)).collect(), 1));
    }
    for _ in 0..sig.boundary.len() {
        gens.push(((0..n).filter(|&r| 2 * r == n && odd_ok(r)).collect(), 0));
        gens.push(((0..n).filter(|&r| even_ok(r)).collect(), 1));
    }
    for _ in 0..sig.rank {
        match sig.sign {
            Sign::Plus => gens.push(((0..n).filter(|&r| even_ok(r)).collect(), 0)),
            Sign::Minus => gens.push(((0..n).filter(|&r| odd_ok(r)).collect(), 2)),
        }
    }
    let divs = divisors(n);
    let idx = |d: u64| divs.iter().position(|&x| x == d).unwrap();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rotate = |mask: u64, s: u64| -> u64 {
        if s == 0 {
            mask
        } else {
            ((mask << s) | (mask >> (n - s))) & full
        }
    };
    // states[d_idx] = bitmask of reachable sums.
    let mut states = vec![0u64; divs.len()];
    states[idx(n)] = 1;
    for (allowed, coef) in &gens {
        let mut next = vec![0u64; divs.len()];
        for (di, &mask) in states.iter().enumerate() {
            if mask == 0 {
                continue;
            }
            for &r in allowed {
                let nd = gcd(divs[di], r);
                next[idx(nd)] |= rotate(mask, (coef * r) % n);
            }
        }
        states = next;
    }
    Ok(states[idx(1)] & 1 == 1)
}

fn gcd_all(ps: &[u64]) -> u64 {
    ps.iter().fold(0, |d, &p| gcd(d, p))
}

/// Existence of an orientation-preserving map of order `n` on the closed
/// genus-`g` surface (`g ≥ 2`) with exceptional orbit periods `periods`.
pub fn exists_preserving(genus: u64, n: u64, periods: &[u64]) -> bool {
    if genus < 2 || n < 2 || periods.iter().any(|&p| p == 0 || p >= n) {
        return false;
    }
    let r = periods.len() as i64;
    let num = 2 * genus as i64 - 2 + periods.iter().sum::<u64>() as i64;
    if num % n as i64 != 0 {
        return false;
    }
    let t = num / n as i64 - r + 2;
    if t < 0 || t % 2 != 0 {
        return false;
    }
    let d = gcd_all(periods);
    let cond2 = (0..periods.len()).all(|i| {
        let rest: Vec<u64> = periods.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect();
        gcd_all(&rest) == d
    });
    let cond3 = periods.iter().all(|&p| n.is_multiple_of(p));
    let cond4 = t != 0 || d == 1;
    let cond5 = r != 1 && (t != 0 || r >= 3);
    cond2 && cond3 && cond4 && cond5
}

/// Existence of an orientation-reversing map of order `n` on the closed
/// genus-`g` surface (`g ≥ 2`) with `b` curve families and orbit periods.
pub fn exists_reversing(genus: u64, n: u64, b: u64, periods: &[u64]) -> bool {
    if genus < 2 || n < 2 || periods.iter().any(|&p| p == 0 || p >= n) {
        return false;
    }
    if !periods.iter().all(|&p| n.is_multiple_of(p)) || !n.is_multiple_of(2) {
        return false;
    }
    let r = periods.len() as i64;
    let sum = periods.iter().sum::<u64>();
    let num = 2 * genus as i64 - 2 + sum as i64;
    if num % n as i64 != 0 {
        return false;
    }
    let t = 2 - r - b as i64 + num / n as i64;
    if t < 0 || (b == 0 && t < 1) {
        return false;
    }
    let d = gcd_all(periods);
    if !d.is_multiple_of(2) {
        return false;
    }
    if b as i64 + t == 1 && d != 2 {
        return false;
    }
    let half_sum_parity_matches = sum % 2 == 0 && (sum / 2) % 2 == ((t + 1) % 2) as u64;
    if (b >= 1 || half_sum_parity_matches) && (n / 2).is_multiple_of(2) {
        return false;
    }
    true
}

/// Existence of a preserving map of order `2g-2+p1+p2+p3` with three
/// exceptional orbits.
pub fn triangle_exists(genus: u64, p1: u64, p2: u64, p3: u64) -> bool {
    let n = 2 * genus + p1 + p2 + p3;
    if n < 2 || p1 == 0 || p2 == 0 || p3 == 0 {
        return false;
    }
    let n = n - 2;
    gcd(p1, p2) == 1 && gcd(p1, p3) == 1 && gcd(p2, p3) == 1 && [p1, p2, p3].iter().all(|&p| n.is_multiple_of(p))
}

/// Existence of a reversing map of order `2g-2+Σp` with one or two exceptional
/// orbits and no fixed curves.
pub fn small_reversing_exists(genus: u64, periods: &[u64]) -> bool {
    match *periods {
        [p] => genus % 2 == 1 && p % 2 == 0 && p > 0 && (2 * genus - 2).is_multiple_of(p),
        [p1, p2] => {
            let n = 2 * genus - 2 + p1 + p2;
            genus.is_multiple_of(2) && p1 > 0 && p2 > 0 && gcd(p1, p2) == 2 && n.is_multiple_of(p1) && n.is_multiple_of(p2)
        }
        _ => false,
    }
}

/// Whether a map of type `t` exists on the closed genus-`g` surface.
///
/// Genus at least 2 uses the arithmetic criteria. Genus 1 uses the Euclidean
/// classification of the quotient; reversing torus maps are not covered and
/// report `false`.
pub fn type_exists(t: &FiniteOrderType, genus: u64) -> bool {
    match genus {
        0 => false,
        1 => {
            if t.orientation == Orientation::Reversing || t.curve_families != 0 {
                return false;
            }
            if t.order == 1 {
                return t.orbit_periods.is_empty();
            }
            match quotient_rank(t, 1) {
                Ok(rank) if rank >= 0 && rank % 2 == 0 => {
                    let Ok(sig) = signature_of_type(t, 1) else { return false };
                    euclidean_exists(&sig, t.order).unwrap_or(false)
                }
                _ => false,
            }
        }
        g => match t.orientation {
            Orientation::Preserving => t.curve_families == 0 && exists_preserving(g, t.order, &t.orbit_periods),
            Orientation::Reversing => exists_reversing(g, t.order, t.curve_families, &t.orbit_periods),
        },
    }
}

/// Outcome of [`oracle_sweep`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub cases: usize,
    pub positive: usize,
    pub witnesses_checked: usize,
    pub mismatches: Vec<String>,
}

fn multisets(values: &[u64], max_len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.last().copied().unwrap_or(0);
            for &v in values.iter().filter(|&&v| v >= start) {
                let mut e: Vec<u64> = m.clone();
                e.push(v);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Compares the closed-form deciders with the exhaustive oracle on every
/// restricted signature with `μ < 0`, at most `max_r` periods in
/// `2..=max_m`, `T + B ≤ max_tb`, against every `n` in `2..=max_n`. Witnesses
/// are built and verified for each accepted non-orientable case.
pub fn oracle_sweep(max_r: usize, max_m: u64, max_tb: u64, max_n: u64) -> OracleReport {
    let mut report = OracleReport::default();
    let values: Vec<u64> = (2..=max_m).collect();
    let mut shapes = Vec::new();
    for t in 0..=max_tb {
        for b in 0..=max_tb - t {
            if t % 2 == 0 {
                shapes.push((Sign::Plus, t, b));
            }
            if t >= 1 {
                shapes.push((Sign::Minus, t, b));
            }
        }
    }
    for ps in multisets(&values, max_r) {
        for &(sign, t, b) in &shapes {
            let sig = Signature::restricted(sign, t, &ps, b);
            if mu(&sig) >= BigRational::zero() {
                continue;
            }
            for n in 2..=max_n {
                report.cases += 1;
                let decided = if sig.is_orientable() { harvey(&sig, n) } else { nonorientable_exists(&sig, n) };
                let decided = match decided {
                    Ok(v) => v,
                    Err(e) => {
                        report.mismatches.push(format!("{sig} n={n}: decider error {e}"));
                        continue;
                    }
                };
                let oracle = if ps.iter().any(|&m| n % m != 0) {
                    Ok(false)
                } else {
                    brute_force_epimorphism(&sig, n, true)
                };
                match oracle {
                    Ok(o) if o == decided => {}
                    Ok(o) => report.mismatches.push(format!("{sig} n={n}: decider {decided}, oracle {o}")),
                    Err(e) => report.mismatches.push(format!("{sig} n={n}: oracle error {e}")),
                }
                if decided {
                    report.positive += 1;
                    if !sig.is_orientable() {
                        match epimorphism_witness(&sig, n) {
                            Ok(_) => report.witnesses_checked += 1,
                            Err(e) => report.mismatches.push(format!("{sig} n={n}: witness {e}")),
                        }
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus, Plus};

    fn sig(s: Sign, t: u64, ps: &[u64], b: u64) -> Signature {
        Signature::restricted(s, t, ps, b)
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&sig(Plus, 2, &[], 0)), BigRational::zero());
        assert_eq!(mu(&sig(Plus, 0, &[2, 3, 6], 0)), BigRational::zero());
        assert_eq!(mu(&sig(Plus, 0, &[5, 5, 5], 0)), frac(-2, 5));
        assert_eq!(riemann_hurwitz(&frac(-2, 5), 5), frac(-2, 1));
        assert_eq!(riemann_hurwitz(&frac(-1, 1), 2), frac(-2, 1));
    }

    #[test]
    fn bridge_examples() {
        let t = FiniteOrderType::preserving(6, &[2, 2, 3, 3]);
        assert_eq!(signature_of_type(&t, 2).unwrap(), sig(Plus, 0, &[2, 2, 3, 3], 0));
        assert_eq!(genus_of(&sig(Plus, 0, &[5, 5, 5], 0), 5).unwrap(), 2);
        let t = FiniteOrderType::reversing(12, 0, &[4, 6]);
        let s = signature_of_type(&t, 2).unwrap();
        assert_eq!(s, sig(Minus, 1, &[2, 3], 0));
        assert_eq!(genus_of(&s, 12).unwrap(), 2);
    }

    #[test]
    fn harvey_examples() {
        assert!(harvey(&sig(Plus, 0, &[5, 5, 5], 0), 5).unwrap());
        assert!(!harvey(&sig(Plus, 0, &[2, 2, 2], 0), 2).unwrap());
        assert!(harvey(&sig(Plus, 2, &[3, 3], 0), 3).unwrap());
        assert_eq!(harvey(&sig(Plus, 0, &[2, 3], 1), 6), Err(GroupError::NotOrientable));
    }

    #[test]
    fn euclidean_examples() {
        assert!(euclidean_exists(&sig(Plus, 0, &[2, 4, 4], 0), 4).unwrap());
        assert!(!euclidean_exists(&sig(Plus, 0, &[2, 4, 4], 0), 8).unwrap());
        assert!(euclidean_exists(&sig(Plus, 2, &[], 0), 7).unwrap());
        assert!(euclidean_exists(&sig(Plus, 0, &[5, 5, 5], 0), 5).is_err());
    }

    #[test]
    fn gcd_and_p() {
        let s = sig(Minus, 1, &[2, 3], 0);
        assert_eq!(gcd_g_n(&s, 12).unwrap(), 2);
        assert_eq!(p_g_n(&s, 12).unwrap(), frac(5, 1));
        let s = sig(Minus, 1, &[2], 0);
        assert_eq!(gcd_g_n(&s, 8).unwrap(), 4);
        assert_eq!(p_g_n(&s, 8).unwrap(), frac(2, 1));
        let s = sig(Minus, 2, &[], 0);
        assert_eq!(gcd_g_n(&s, 6).unwrap(), 0);
        assert_eq!(p_g_n(&s, 6).unwrap(), BigRational::zero());
    }

    #[test]
    fn nonorientable_examples() {
        assert!(nonorientable_exists(&sig(Minus, 1, &[2, 3], 0), 12).unwrap());
        assert!(nonorientable_exists(&sig(Minus, 2, &[2], 0), 8).unwrap());
        assert!(!nonorientable_exists(&sig(Minus, 2, &[2], 0), 4).unwrap());
        assert_eq!(nonorientable_exists(&sig(Plus, 0, &[2, 2, 2], 0), 2), Err(GroupError::Orientable));
    }

    #[test]
    fn witnesses_verify() {
        let mut built = 0;
        for (sign, t, b) in [(Minus, 1, 0), (Minus, 2, 0), (Minus, 1, 1), (Plus, 0, 1), (Plus, 0, 2), (Plus, 2, 1)] {
            for ps in [&[][..], &[2], &[3], &[3, 3], &[2, 6]] {
                for n in (2..=30).step_by(2) {
                    let s = sig(sign, t, ps, b);
                    if nonorientable_exists(&s, n).unwrap() {
                        let w = epimorphism_witness(&s, n).unwrap();
                        assert_eq!(verify_witness(&s, &w), Ok(()), "{s} n={n}");
                        built += 1;
                    }
                }
            }
        }
        assert!(built > 20);
        let w = epimorphism_witness(&sig(Minus, 1, &[2, 3], 0), 12).unwrap();
        assert_eq!(w.sigma, vec![6, 4]);
        assert!(epimorphism_witness(&sig(Minus, 2, &[2], 0), 4).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert!(brute_force_epimorphism(&sig(Plus, 0, &[5, 5, 5], 0), 5, true).unwrap());
        assert!(!brute_force_epimorphism(&sig(Plus, 0, &[2, 2, 2], 0), 2, true).unwrap());
        assert!(!brute_force_epimorphism(&sig(Minus, 2, &[2], 0), 4, true).unwrap());
        assert!(brute_force_epimorphism(&sig(Plus, 0, &[2; 7], 0), 2, true).is_err());
    }

    #[test]
    fn corollary_examples() {
        assert!(exists_preserving(2, 6, &[2, 2, 3, 3]));
        assert!(!exists_preserving(2, 3, &[1]));
        assert!(exists_preserving(2, 5, &[1, 1, 1]));
        assert!(exists_reversing(2, 12, 0, &[4, 6]));
        assert!(exists_reversing(2, 8, 0, &[2, 4]));
        assert!(!exists_reversing(2, 4, 0, &[2]));
        assert!(triangle_exists(2, 1, 2, 5));
        assert!(!triangle_exists(2, 1, 1, 3));
        assert!(small_reversing_exists(3, &[4]));
    }
}
