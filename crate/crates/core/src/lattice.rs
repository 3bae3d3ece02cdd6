//! The Picard lattice of the blow-up of the plane at `r` points.
//!
//! A class `dH - n1 E1 - ... - nr Er` is stored as its degree `d` and the
//! vector `(n1, ..., nr)`. With this sign convention the exceptional divisor
//! `E_i` itself is `(0; 0, ..., -1, ..., 0)` and the canonical class is
//! `(-3; -1, ..., -1)`.
//!
//! Coefficients are bounded by [`DivisorClass::MAX_COEFFICIENT`] so that every
//! intersection number is computed exactly in `i128`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integral divisor class `dH - sum n_i E_i`.
///
/// The derived ordering compares the degree first and then the
/// multiplicities lexicographically, which is the order used for every
/// sorted listing of classes in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    degree: i64,
    mults: Vec<i64>,
}

/// Numerical invariants of a class `C` on the blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NumericalProfile {
    /// `C . C`
    pub self_int: i128,
    /// `C . K`
    pub k_degree: i128,
    /// Riemann-Roch characteristic `(C.C - C.K)/2 + 1`.
    pub chi: i128,
    /// Expected projective dimension of the linear system, clamped at -1.
    pub expected_dim: i128,
    /// `binom(d+2, 2) - 1 - sum binom(n_i+1, 2)` without clamping.
    pub raw_virtual_dim: i128,
}

/// Records how [`DivisorClass::normalize_with_permutation`] reordered the
/// multiplicities: slot `k` of the sorted class holds original entry
/// `order[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Permutation {
    order: Vec<usize>,
}

impl Permutation {
    pub fn identity(r: usize) -> Self {
        Self { order: (0..r).collect() }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order.iter().enumerate().all(|(k, &i)| k == i)
    }

    /// Reorders `class` the same way the original class was reordered.
    pub fn apply(&self, class: &DivisorClass) -> Result<DivisorClass> {
        self.check_len(class)?;
        let mults = self.order.iter().map(|&i| class.mults[i]).collect();
        Ok(DivisorClass { degree: class.degree, mults })
    }

    /// Inverse of [`Permutation::apply`]: takes a class expressed in sorted
    /// coordinates back to the original labelling of the points.
    pub fn unapply(&self, class: &DivisorClass) -> Result<DivisorClass> {
        self.check_len(class)?;
        let mut mults = vec![0; class.r()];
        for (k, &i) in self.order.iter().enumerate() {
            mults[i] = class.mults[k];
        }
        Ok(DivisorClass { degree: class.degree, mults })
    }

    fn check_len(&self, class: &DivisorClass) -> Result<()> {
        if class.r() != self.order.len() {
            return Err(Error::DimensionMismatch {
                left: self.order.len(),
                right: class.r(),
            });
        }
        Ok(())
    }
}

fn check_coefficient(x: i128) -> Result<i64> {
    if x.abs() > DivisorClass::MAX_COEFFICIENT as i128 {
        return Err(Error::Overflow);
    }
    Ok(x as i64)
}

fn binom2_of_succ(n: i128) -> i128 {
    // binom(n+1, 2), zero for n <= 0
    if n <= 0 {
        0
    } else {
        n * (n + 1) / 2
    }
}

impl DivisorClass {
    /// Largest absolute value of any coefficient.
    pub const MAX_COEFFICIENT: i64 = 1 << 40;

    pub fn new(degree: i64, mults: Vec<i64>) -> Result<Self> {
        if mults.is_empty() {
            return Err(Error::InvalidInput(
                "a class needs at least one blown-up point (r >= 1)".into(),
            ));
        }
        check_coefficient(degree as i128)?;
        for &m in &mults {
            check_coefficient(m as i128)?;
        }
        Ok(Self { degree, mults })
    }

    pub(crate) fn from_wide(degree: i128, mults: &[i128]) -> Result<Self> {
        let degree = check_coefficient(degree)?;
        let mults = mults
            .iter()
            .map(|&m| check_coefficient(m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, mults)
    }

    pub fn zero(r: usize) -> Result<Self> {
        Self::new(0, vec![0; r])
    }

    /// The pull-back `H` of a line.
    pub fn hyperplane(r: usize) -> Result<Self> {
        Self::new(1, vec![0; r])
    }

    /// The exceptional divisor `E_i`, with `i` counted from 1.
    pub fn exceptional(i: usize, r: usize) -> Result<Self> {
        if i == 0 || i > r {
            return Err(Error::InvalidInput(format!(
                "exceptional divisor index {i} outside 1..={r}"
            )));
        }
        let mut mults = vec![0; r];
        mults[i - 1] = -1;
        Self::new(0, mults)
    }

    /// `dH - m (E_1 + ... + E_r)`.
    pub fn uniform(d: i64, m: i64, r: usize) -> Result<Self> {
        Self::new(d, vec![m; r])
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    /// Number of blown-up points.
    pub fn r(&self) -> usize {
        self.mults.len()
    }

    /// Returns the same class padded with zero multiplicities up to `r`
    /// points.
    pub fn padded(&self, r: usize) -> Result<Self> {
        if r < self.r() {
            return Err(Error::InvalidInput(format!(
                "cannot pad a class on {} points down to {r}",
                self.r()
            )));
        }
        let mut mults = self.mults.clone();
        mults.resize(r, 0);
        Ok(Self { degree: self.degree, mults })
    }

    pub fn is_normalized(&self) -> bool {
        self.mults.windows(2).all(|w| w[0] >= w[1])
    }

    /// Sorts the multiplicities into non-increasing order.
    pub fn normalize(&self) -> Self {
        self.normalize_with_permutation().0
    }

    /// Like [`DivisorClass::normalize`], also returning the permutation
    /// that was applied. The sort is stable, so an already normalized class
    /// yields the identity.
    pub fn normalize_with_permutation(&self) -> (Self, Permutation) {
        let mut order: Vec<usize> = (0..self.r()).collect();
        order.sort_by(|&a, &b| self.mults[b].cmp(&self.mults[a]));
        let mults = order.iter().map(|&i| self.mults[i]).collect();
        (
            Self { degree: self.degree, mults },
            Permutation { order },
        )
    }

    /// The intersection pairing `d d' - sum n_i n'_i`.
    pub fn intersect(&self, other: &Self) -> Result<i128> {
        if self.r() != other.r() {
            return Err(Error::DimensionMismatch {
                left: self.r(),
                right: other.r(),
            });
        }
        Ok(self.dot(other))
    }

    // Callers guarantee equal r. Coefficients are at most 2^40, so each
    // product is below 2^80 and the sum cannot overflow i128.
    pub(crate) fn dot(&self, other: &Self) -> i128 {
        debug_assert_eq!(self.r(), other.r());
        let pairs: i128 = self
            .mults
            .iter()
            .zip(&other.mults)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum();
        self.degree as i128 * other.degree as i128 - pairs
    }

    pub fn self_intersection(&self) -> i128 {
        self.dot(self)
    }

    /// `C . K` computed directly as `-3d + sum n_i`.
    pub fn canonical_degree(&self) -> i128 {
        -3 * self.degree as i128 + self.mults.iter().map(|&n| n as i128).sum::<i128>()
    }

    pub fn profile(&self) -> NumericalProfile {
        let self_int = self.self_intersection();
        let k_degree = self.canonical_degree();
        // C.C - C.K = d^2 + 3d - sum n_i (n_i + 1), always even
        let chi = (self_int - k_degree) / 2 + 1;
        let d = self.degree as i128;
        let curves = if d < 0 { 0 } else { (d + 2) * (d + 1) / 2 };
        let conditions: i128 = self.mults.iter().map(|&n| binom2_of_succ(n as i128)).sum();
        let raw_virtual_dim = curves - 1 - conditions;
        NumericalProfile {
            self_int,
            k_degree,
            chi,
            expected_dim: raw_virtual_dim.max(-1),
            raw_virtual_dim,
        }
    }

    /// Numerical test for a (-1)-class: `C.C = C.K = -1`. Says nothing about
    /// irreducibility.
    pub fn is_minus_one_class(&self) -> bool {
        self.self_intersection() == -1 && self.canonical_degree() == -1
    }

    /// The class `N = L - K`, so that `L = K + N`.
    pub fn adjoint_twist(&self) -> Result<Self> {
        let mults: Vec<i128> = self.mults.iter().map(|&m| m as i128 + 1).collect();
        Self::from_wide(self.degree as i128 + 3, &mults)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    /// `self + factor * other`
    pub fn combine(&self, other: &Self, factor: i128) -> Result<Self> {
        if self.r() != other.r() {
            return Err(Error::DimensionMismatch {
                left: self.r(),
                right: other.r(),
            });
        }
        let mults: Vec<i128> = self
            .mults
            .iter()
            .zip(&other.mults)
            .map(|(&a, &b)| a as i128 + factor * b as i128)
            .collect();
        Self::from_wide(self.degree as i128 + factor * other.degree as i128, &mults)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let mults: Vec<i128> = self.mults.iter().map(|&m| m as i128 * k as i128).collect();
        Self::from_wide(self.degree as i128 * k as i128, &mults)
    }

    /// Drops zero multiplicities, keeping the order of the rest. Returns
    /// `None` when nothing is left.
    pub fn positive_support(&self) -> Option<Self> {
        let mults: Vec<i64> = self.mults.iter().copied().filter(|&m| m != 0).collect();
        if mults.is_empty() {
            None
        } else {
            Some(Self { degree: self.degree, mults })
        }
    }

    /// Human-readable form such as `6H-3E1-2E2-2E3`.
    pub fn to_divisor_string(&self) -> String {
        let mut out = match self.degree {
            0 => String::new(),
            1 => "H".to_string(),
            -1 => "-H".to_string(),
            d => format!("{d}H"),
        };
        for (i, &n) in self.mults.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let sign = if n > 0 { '-' } else { '+' };
            if out.is_empty() && sign == '+' {
                // leading term
            } else {
                out.push(sign);
            }
            if n.abs() != 1 {
                out.push_str(&n.abs().to_string());
            }
            out.push_str(&format!("E{}", i + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// The canonical class `K = -3H + E_1 + ... + E_r`.
pub fn canonical_class(r: usize) -> Result<DivisorClass> {
    if r < 1 {
        return Err(Error::InvalidInput("canonical class needs r >= 1".into()));
    }
    DivisorClass::new(-3, vec![-1; r])
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.degree)?;
        for m in &self.mults {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    /// Parses `d; n1 n2 ... nr`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (head, tail) = s
            .split_once(';')
            .ok_or_else(|| err("expected `d; n1 ... nr`"))?;
        let degree: i64 = head
            .trim()
            .parse()
            .map_err(|_| err("degree is not an integer"))?;
        let mults = tail
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| err("multiplicity is not an integer"))?;
        if mults.is_empty() {
            return Err(err("no multiplicities given"));
        }
        Self::new(degree, mults).map_err(|e| err(&e.to_string()))
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// Operator forms panic on mismatched r or coefficient overflow; use the
// `checked_*` methods when either can happen.

impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: Self) -> DivisorClass {
        self.checked_add(rhs).expect("class addition")
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: Self) -> DivisorClass {
        self.checked_sub(rhs).expect("class subtraction")
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        self.checked_scale(-1).expect("class negation")
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.checked_scale(self).expect("class scaling")
    }
}
