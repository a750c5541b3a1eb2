//! Exact Newton-identity engine.
//!
//! Power sums `p_i = trace(A^i)` and the coefficients `s_j` of the characteristic
//! polynomial `x^k + s_1 x^{k-1} + ... + s_k` are linked by Newton's identities.
//! For the action of a surface homeomorphism on first homology the Lefschetz
//! numbers of its iterates are affine functions of the power sums, and the
//! coefficients obey a palindromic (symplectic) symmetry. Together these facts
//! determine the whole Lefschetz sequence of a map on a closed genus-`g`
//! surface from its first `g` terms.
//!
//! Everything here is exact: integers are [`BigInt`], coefficients are
//! [`BigRational`].

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Orientation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("coefficient s_{index} = {value} is not an integer; the prefix is not realizable by an integral symplectic action")]
    NonIntegral { index: usize, value: String },
    #[error("expected at least {expected} values, got {got}")]
    TooShort { expected: usize, got: usize },
    #[error("horizon {horizon} is smaller than the required {required}")]
    Horizon { horizon: usize, required: usize },
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("numerator {numerator} is odd, so the value is not an integer")]
    Fractional { numerator: String },
}

/// Where the map lives: closed surface of genus `g`, or genus `g` with `b ≥ 1`
/// boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Context {
    Closed { genus: u64 },
    Bounded { genus: u64, boundary: u64 },
}

/// Palindromic relation satisfied by the characteristic polynomial of the
/// homology action of a closed-surface homeomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryKind {
    /// `s_h = s_{2g-h}`, `s_{2g} = 1` (orientation-preserving).
    Proper,
    /// `s_h = (-1)^{g+h} s_{2g-h}`, `s_{2g} = (-1)^g` (orientation-reversing).
    Improper,
}

impl SymmetryKind {
    pub fn of(orientation: Orientation) -> Self {
        match orientation {
            Orientation::Preserving => SymmetryKind::Proper,
            Orientation::Reversing => SymmetryKind::Improper,
        }
    }
}

/// Characteristic-polynomial coefficients `s_1..s_k`, possibly fractional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryCoeffs {
    values: Vec<BigRational>,
}

impl ElementaryCoeffs {
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    /// Index (1-based) of the first non-integral coefficient.
    pub fn first_fractional(&self) -> Option<usize> {
        self.values.iter().position(|v| !v.is_integer()).map(|i| i + 1)
    }

    /// Integer view, failing on the first fractional coefficient.
    pub fn to_integers(&self) -> Result<Vec<BigInt>, AlgebraError> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(AlgebraError::NonIntegral { index: i + 1, value: v.to_string() })
                }
            })
            .collect()
    }
}

/// Newton's identities run forward: from `s_1..s_k` to `p_1..p_n`.
///
/// For `m ≤ k`: `p_m + s_1 p_{m-1} + ... + s_{m-1} p_1 + m s_m = 0`;
/// for `m > k`: `p_m + s_1 p_{m-1} + ... + s_k p_{m-k} = 0`.
pub fn power_sums_from_elementary(s: &[BigInt], n: usize) -> Vec<BigInt> {
    let k = s.len();
    let mut p: Vec<BigInt> = Vec::with_capacity(n);
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1..m.min(k + 1) {
            acc += &s[j - 1] * &p[m - j - 1];
        }
        if m <= k {
            acc += BigInt::from(m) * &s[m - 1];
        }
        p.push(-acc);
    }
    p
}

/// Newton's identities solved downward: from `p_1..p_k` to `s_1..s_k`.
pub fn elementary_from_power_sums(p: &[BigInt]) -> ElementaryCoeffs {
    let mut s: Vec<BigRational> = Vec::with_capacity(p.len());
    for m in 1..=p.len() {
        let mut acc = BigRational::from_integer(p[m - 1].clone());
        for j in 1..m {
            acc += &s[j - 1] * BigRational::from_integer(p[m - j - 1].clone());
        }
        s.push(-acc / BigRational::from_integer(BigInt::from(m)));
    }
    ElementaryCoeffs { values: s }
}

/// Complete `s_1..s_g` to `s_1..s_{2g}` using the palindromic relation.
///
/// The relation at `h = g` reads `s_g = s_g` in both kinds, so there is never a
/// conflict to report once exactly `g` values are supplied.
pub fn symplectic_extend(s: &[BigInt], kind: SymmetryKind) -> Vec<BigInt> {
    let g = s.len();
    let mut out = s.to_vec();
    for h in (g + 1)..=(2 * g) {
        let mirror = 2 * g - h;
        let v = if mirror == 0 {
            match kind {
                SymmetryKind::Proper => BigInt::one(),
                SymmetryKind::Improper => sign_pow(g),
            }
        } else {
            match kind {
                SymmetryKind::Proper => s[mirror - 1].clone(),
                SymmetryKind::Improper => sign_pow(g + mirror) * &s[mirror - 1],
            }
        };
        out.push(v);
    }
    out
}

fn sign_pow(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// True iff the `i`-th iterate of a map with the given orientation reverses
/// orientation.
pub fn iterate_reverses(orientation: Orientation, i: usize) -> bool {
    orientation == Orientation::Reversing && i % 2 == 1
}

/// Lefschetz number of `f^i` from the power sum `p_i`.
///
/// Closed: `2 - p_i` when `f^i` preserves orientation, `-p_i` otherwise.
/// Bounded: `1 - p_i`.
pub fn power_sum_to_lefschetz(
    p: &BigInt,
    i: usize,
    orientation: Orientation,
    context: Context,
) -> Result<BigInt, AlgebraError> {
    Ok(lefschetz_offset(i, orientation, context)? - p)
}

/// Inverse of [`power_sum_to_lefschetz`].
pub fn lefschetz_to_power_sum(
    l: &BigInt,
    i: usize,
    orientation: Orientation,
    context: Context,
) -> Result<BigInt, AlgebraError> {
    Ok(lefschetz_offset(i, orientation, context)? - l)
}

fn lefschetz_offset(i: usize, orientation: Orientation, context: Context) -> Result<BigInt, AlgebraError> {
    if i == 0 {
        return Err(AlgebraError::ZeroIndex);
    }
    Ok(match context {
        Context::Bounded { .. } => BigInt::one(),
        Context::Closed { .. } if iterate_reverses(orientation, i) => BigInt::zero(),
        Context::Closed { .. } => BigInt::from(2),
    })
}

/// Result of [`extend_lefschetz`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    /// `L_1..L_n`.
    pub values: Vec<BigInt>,
    /// The full characteristic polynomial coefficients `s_1..s_{2g}`.
    pub coefficients: Vec<BigInt>,
    /// Set when more than `g` input values were given; only the first `g`
    /// were used.
    pub truncated_input: bool,
}

/// Extend the Lefschetz numbers `L(f), ..., L(f^g)` of a homeomorphism of the
/// closed genus-`g` surface to `L(f), ..., L(f^n)`.
///
/// The prefix is converted to power sums, Newton's identities give
/// `s_1..s_g`, the symplectic symmetry gives `s_{g+1}..s_{2g}`, and Newton's
/// identities are run forward again.
pub fn extend_lefschetz(
    prefix: &[BigInt],
    genus: u64,
    orientation: Orientation,
    n: usize,
) -> Result<Extension, AlgebraError> {
    let g = genus as usize;
    if prefix.len() < g {
        return Err(AlgebraError::TooShort { expected: g, got: prefix.len() });
    }
    if n < g {
        return Err(AlgebraError::Horizon { horizon: n, required: g });
    }
    let context = Context::Closed { genus };
    let p = prefix[..g]
        .iter()
        .enumerate()
        .map(|(i, l)| lefschetz_to_power_sum(l, i + 1, orientation, context))
        .collect::<Result<Vec<_>, _>>()?;
    let s = elementary_from_power_sums(&p).to_integers()?;
    let full = symplectic_extend(&s, SymmetryKind::of(orientation));
    let p_all = power_sums_from_elementary(&full, n);
    let values = p_all
        .iter()
        .enumerate()
        .map(|(i, p)| power_sum_to_lefschetz(p, i + 1, orientation, context))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Extension { values, coefficients: full, truncated_input: prefix.len() > g })
}

/// Möbius function.
pub fn mobius(m: u64) -> i8 {
    assert!(m >= 1, "mobius is defined on positive integers");
    let mut m = m;
    let mut sign = 1i8;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Möbius inversion `l_i = Σ_{d | i} μ(d) L_{i/d}`.
///
/// When every fixed point of every iterate has index one, `l_i` is the number
/// of points of least period `i`.
pub fn l_values(lefschetz: &[BigInt]) -> Vec<BigInt> {
    (1..=lefschetz.len())
        .map(|i| {
            let mut acc = BigInt::zero();
            for d in 1..=i {
                if i % d == 0 {
                    match mobius(d as u64) {
                        1 => acc += &lefschetz[i / d - 1],
                        -1 => acc -= &lefschetz[i / d - 1],
                        _ => {}
                    }
                }
            }
            acc
        })
        .collect()
}

/// Inverse of [`l_values`]: `L_i = Σ_{d | i} l_d`.
pub fn lefschetz_from_l_values(l: &[BigInt]) -> Vec<BigInt> {
    (1..=l.len())
        .map(|i| (1..=i).filter(|d| i % d == 0).map(|d| &l[d - 1]).sum())
        .collect()
}

/// First index `i` (1-based, `i ≤ upto`) where `i ∤ l_i`.
pub fn first_dold_failure(l: &[BigInt], upto: usize) -> Option<usize> {
    (1..=upto.min(l.len())).find(|&i| !l[i - 1].is_multiple_of(&BigInt::from(i)))
}

/// Closed forms for `γ_3, γ_4` (the third and fourth `l`-values) of an
/// orientation-preserving map on the closed genus-2 surface, in terms of
/// `γ_1 = l_1` and `γ_2 = l_2`.
pub fn genus2_gamma34(g1: &BigInt, g2: &BigInt) -> Result<(BigInt, BigInt), AlgebraError> {
    let g1_2 = g1 * g1;
    let g1_3 = &g1_2 * g1;
    let g1_4 = &g1_3 * g1;
    let n3 = BigInt::from(-12) + 4 * g1 + 3 * &g1_2 - &g1_3 + 6 * g2 - 3 * g1 * g2;
    let n4 = BigInt::from(-24) + 26 * g1 + 3 * &g1_2 - 6 * &g1_3 + &g1_4 + 10 * g2 - 10 * g1 * g2
        + 2 * &g1_2 * g2
        - g2 * g2;
    Ok((halve(n3)?, halve(n4)?))
}

fn halve(n: BigInt) -> Result<BigInt, AlgebraError> {
    if n.is_odd() {
        Err(AlgebraError::Fractional { numerator: n.to_string() })
    } else {
        Ok(n / 2)
    }
}

/// Convenience: `BigInt` vector from small integers.
pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Small-integer view of a `BigInt`, saturating to `i64::MIN`/`i64::MAX`.
pub fn saturating_i64(v: &BigInt) -> i64 {
    v.to_i64().unwrap_or(if v.is_negative() { i64::MIN } else { i64::MAX })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        ints(v)
    }

    #[test]
    fn forward_newton_examples() {
        assert_eq!(power_sums_from_elementary(&b(&[-1]), 4), b(&[1, 1, 1, 1]));
        assert_eq!(power_sums_from_elementary(&b(&[0, -1]), 4), b(&[0, 2, 0, 2]));
        assert_eq!(
            power_sums_from_elementary(&b(&[-2, 4, -2, 1]), 5),
            b(&[2, -4, -10, -4, 22])
        );
    }

    #[test]
    fn backward_newton_examples() {
        let s = elementary_from_power_sums(&b(&[1, 1, 1]));
        assert!(s.is_integral());
        assert_eq!(s.to_integers().unwrap(), b(&[-1, 0, 0]));
        assert_eq!(elementary_from_power_sums(&b(&[2, -4])).to_integers().unwrap(), b(&[-2, 4]));
        let frac = elementary_from_power_sums(&b(&[1, 2]));
        assert!(!frac.is_integral());
        assert_eq!(frac.first_fractional(), Some(2));
        assert_eq!(frac.values()[1], BigRational::new(BigInt::from(-1), BigInt::from(2)));
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(symplectic_extend(&b(&[-2, 4]), SymmetryKind::Proper), b(&[-2, 4, -2, 1]));
        assert_eq!(symplectic_extend(&b(&[0, -1]), SymmetryKind::Improper), b(&[0, -1, 0, 1]));
        assert_eq!(
            symplectic_extend(&b(&[1, 0, 5]), SymmetryKind::Improper),
            b(&[1, 0, 5, 0, 1, -1])
        );
    }

    #[test]
    fn conversion_examples() {
        let closed2 = Context::Closed { genus: 2 };
        let zero = BigInt::zero();
        assert_eq!(lefschetz_to_power_sum(&zero, 1, Orientation::Reversing, closed2).unwrap(), zero);
        assert_eq!(
            power_sum_to_lefschetz(&BigInt::from(-4), 2, Orientation::Reversing, closed2).unwrap(),
            BigInt::from(6)
        );
        let bounded = Context::Bounded { genus: 2, boundary: 3 };
        assert_eq!(
            lefschetz_to_power_sum(&BigInt::one(), 3, Orientation::Preserving, bounded).unwrap(),
            zero
        );
        assert_eq!(
            lefschetz_to_power_sum(&zero, 0, Orientation::Preserving, bounded),
            Err(AlgebraError::ZeroIndex)
        );
    }

    #[test]
    fn extension_examples() {
        let e = extend_lefschetz(&b(&[0, 6]), 2, Orientation::Preserving, 5).unwrap();
        assert_eq!(e.values, b(&[0, 6, 12, 6, -20]));
        assert!(!e.truncated_input);
        let e = extend_lefschetz(&b(&[0, 6, 99]), 2, Orientation::Preserving, 3).unwrap();
        assert!(e.truncated_input);
        // All-ones prefix: the polynomial is (x-1)(x^(2g-1)-1), so
        // p_{g+1} = 1 + (2g-1)[2g-1 | g+1], which is 4 at g = 2 and 1 above.
        for g in 2..=10u64 {
            let ones = vec![BigInt::one(); g as usize];
            let e = extend_lefschetz(&ones, g, Orientation::Preserving, g as usize + 1).unwrap();
            let want = if g == 2 { -2 } else { 1 };
            assert_eq!(e.values[g as usize], BigInt::from(want), "g={g}");
        }
        let e = extend_lefschetz(&b(&[0, 0]), 2, Orientation::Reversing, 8).unwrap();
        assert_eq!(e.values[2], BigInt::zero());
        assert!(matches!(
            extend_lefschetz(&b(&[0, 1]), 2, Orientation::Preserving, 4),
            Err(AlgebraError::NonIntegral { index: 2, .. })
        ));
    }

    #[test]
    fn mobius_examples() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expect.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), m, "mu({})", i + 1);
        }
    }

    #[test]
    fn l_value_examples() {
        assert_eq!(l_values(&b(&[2, 2, 2, 2])), b(&[2, 0, 0, 0]));
        assert_eq!(l_values(&b(&[0, 6, 12, 6, -20])), b(&[0, 6, 12, 0, -20]));
        assert_eq!(
            l_values(&b(&[1, 3, 1, 3, 6, 3, 1, 3, 1, -2])),
            b(&[1, 2, 0, 0, 5, 0, 0, 0, 0, -10])
        );
        let l = b(&[3, -1, 4, 1, -5, 9, 2, 6]);
        assert_eq!(l_values(&lefschetz_from_l_values(&l)), l);
    }

    #[test]
    fn gamma34_examples() {
        let g = |a: i64, c: i64| genus2_gamma34(&BigInt::from(a), &BigInt::from(c)).unwrap();
        assert_eq!(g(0, 4), (BigInt::from(6), BigInt::zero()));
        assert_eq!(g(3, 0), (BigInt::zero(), BigInt::zero()));
        assert_eq!(g(1, 2), (BigInt::zero(), BigInt::zero()));
        assert!(genus2_gamma34(&BigInt::from(1), &BigInt::from(1)).is_err());
    }
}
