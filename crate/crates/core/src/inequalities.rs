//! Exact evaluation of the multiplicity inequalities behind the uniform
//! bounds, and brute-force sweeps over finite grids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// A non-empty, non-increasing list of integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MultiplicityVector(Vec<i64>);

impl MultiplicityVector {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("multiplicity vector is empty".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "multiplicities must be non-increasing: {values:?}"
            )));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn first(&self) -> i64 {
        self.0[0]
    }

    fn last(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    fn sum(&self) -> i128 {
        self.0.iter().map(|&x| x as i128).sum()
    }

    fn sum_sq(&self) -> i128 {
        self.0.iter().map(|&x| x as i128 * x as i128).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaOutcome {
    HoldsStrict,
    HoldsEquality,
    Violated,
    /// `r = 2` with `n = (2, 2)`, where the inequality is not claimed.
    Excluded,
}

/// Compares `(r+3) (sum m_i^2) (sum n_i^2 - n_r)` with `(r+2) (sum m_i n_i)^2`.
///
/// Needs `r >= 2`, `n_1 >= 2`, `n_r > 0`, `m_i >= 0` and `m` of length `r`.
/// All-zero `m` reads `0 >= 0` and counts as equality.
pub fn lemma_key(m: &[i64], n: &MultiplicityVector) -> Result<LemmaOutcome> {
    let r = n.len();
    if r < 2 || m.len() != r {
        return Err(Error::InvalidInput(format!(
            "need r >= 2 and |m| = |n|, got |m| = {}, |n| = {r}",
            m.len()
        )));
    }
    if n.first() < 2 || n.last() <= 0 || m.iter().any(|&x| x < 0) {
        return Err(Error::InvalidInput(
            "need n_1 >= 2, n_r > 0 and all m_i >= 0".into(),
        ));
    }
    if r == 2 && n.values() == [2, 2] {
        return Ok(LemmaOutcome::Excluded);
    }
    let r_ = r as i128;
    let m_sq = m.iter().try_fold(0i128, |acc, &x| acc.checked_add((x as i128).checked_mul(x as i128)?));
    let dot = m
        .iter()
        .zip(n.values())
        .try_fold(0i128, |acc, (&a, &b)| acc.checked_add((a as i128).checked_mul(b as i128)?));
    let lhs = m_sq
        .and_then(|s| s.checked_mul(n.sum_sq() - n.last() as i128))
        .and_then(|s| s.checked_mul(r_ + 3));
    let rhs = dot.and_then(|p| p.checked_mul(p)).and_then(|s| s.checked_mul(r_ + 2));
    let (Some(lhs), Some(rhs)) = (lhs, rhs) else {
        return Err(Error::Overflow);
    };
    Ok(match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => LemmaOutcome::HoldsStrict,
        std::cmp::Ordering::Equal => LemmaOutcome::HoldsEquality,
        std::cmp::Ordering::Less => LemmaOutcome::Violated,
    })
}

/// The two vectors for which equality may occur with `m != 0`:
/// `(2, 1, ..., 1)` and, on three points, `(2, 2, 2)`.
pub fn is_equality_family(n: &MultiplicityVector) -> bool {
    let v = n.values();
    (v[0] == 2 && v[1..].iter().all(|&x| x == 1)) || v == [2, 2, 2]
}

/// `r (3r+40) (sum n_i^2 - n_r) > (3r+39) (sum n_i)^2`, for `r >= 9`,
/// `n_r >= 3` and `n_1 >= 12`.
pub fn lemma_key2(n: &MultiplicityVector) -> Result<bool> {
    let r = n.len();
    if r < 9 || n.last() < 3 || n.first() < 12 {
        return Err(Error::InvalidInput(
            "need r >= 9, n_r >= 3 and n_1 >= 12".into(),
        ));
    }
    let r_ = r as i128;
    let s = n.sum();
    Ok(r_ * (3 * r_ + 40) * (n.sum_sq() - n.last() as i128) > (3 * r_ + 39) * s * s)
}

/// `4 r (r+3) (sum n_i^2 - 1) > (r+2) (2 sum n_i + 1)^2`, for `r >= 2`,
/// `n_r > 0` and `n_1 >= 12`.
pub fn lemma_key1(n: &MultiplicityVector) -> Result<bool> {
    let r = n.len();
    if r < 2 || n.last() <= 0 || n.first() < 12 {
        return Err(Error::InvalidInput(
            "need r >= 2, n_r > 0 and n_1 >= 12".into(),
        ));
    }
    let r_ = r as i128;
    let t = 2 * n.sum() + 1;
    Ok(4 * r_ * (r_ + 3) * (n.sum_sq() - 1) > (r_ + 2) * t * t)
}

/// `e^2 >= sum n_i^2 - n_s` with `n_s` the last positive entry. Every
/// irreducible curve through general points satisfies it; the converse
/// fails.
pub fn xu_lower_bound(e: i64, n: &MultiplicityVector) -> Result<bool> {
    if e < 1 {
        return Err(Error::InvalidInput(format!("need e >= 1, got {e}")));
    }
    let Some(&last) = n.values().iter().rev().find(|&&x| x > 0) else {
        return Err(Error::InvalidInput("need a positive multiplicity".into()));
    };
    let e = e as i128;
    Ok(e * e >= n.sum_sq() - last as i128)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub cases: u64,
    pub violations: u64,
    pub equality_cases: u64,
    /// Equalities with `m != 0` outside [`is_equality_family`].
    pub unexpected_equalities: u64,
}

impl SweepReport {
    fn merge(mut self, other: Self) -> Self {
        self.cases += other.cases;
        self.violations += other.violations;
        self.equality_cases += other.equality_cases;
        self.unexpected_equalities += other.unexpected_equalities;
        self
    }
}

/// All non-increasing vectors of length `len` with entries in `lo..=hi`.
pub fn non_increasing_vectors(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in (lo..=hi).rev() {
            cur.push(x);
            rec(len, lo, x, cur, out);
            cur.pop();
        }
    }
    if lo <= hi || len == 0 {
        rec(len, lo, hi, &mut cur, &mut out);
    }
    out
}

fn all_vectors(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// [`lemma_key`] over every `r` in `rs`, `m` in `[0, m_max]^r` and
/// non-increasing `n` in `[1, n_max]^r` with `n_1 >= 2`, skipping the
/// excluded case.
pub fn sweep_lemma_key(rs: std::ops::RangeInclusive<usize>, m_max: i64, n_max: i64) -> SweepReport {
    rs.flat_map(|r| non_increasing_vectors(r, 1, n_max))
        .filter(|n| n[0] >= 2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let n = MultiplicityVector::new(n).expect("non-increasing");
            let family = is_equality_family(&n);
            let mut report = SweepReport::default();
            for m in all_vectors(n.len(), 0, m_max) {
                let outcome = lemma_key(&m, &n).expect("valid grid point");
                if outcome == LemmaOutcome::Excluded {
                    continue;
                }
                report.cases += 1;
                match outcome {
                    LemmaOutcome::Violated => report.violations += 1,
                    LemmaOutcome::HoldsEquality => {
                        report.equality_cases += 1;
                        if m.iter().any(|&x| x != 0) && !family {
                            report.unexpected_equalities += 1;
                        }
                    }
                    _ => {}
                }
            }
            report
        })
        .reduce(SweepReport::default, SweepReport::merge)
}

fn tally(outcomes: impl ParallelIterator<Item = bool>) -> SweepReport {
    outcomes
        .map(|ok| SweepReport { cases: 1, violations: u64::from(!ok), ..SweepReport::default() })
        .reduce(SweepReport::default, SweepReport::merge)
}

fn with_head(n1: i64, tail: Vec<i64>) -> MultiplicityVector {
    let mut v = Vec::with_capacity(tail.len() + 1);
    v.push(n1);
    v.extend(tail);
    MultiplicityVector::new(v).expect("non-increasing")
}

/// [`lemma_key2`] on every `n = (n_1, ...)` of length `r` with `n_1` in
/// `n1s` and the rest non-increasing in `[3, n_1]`.
pub fn sweep_lemma_key2_exhaustive(r: usize, n1s: std::ops::RangeInclusive<i64>) -> SweepReport {
    let vectors: Vec<MultiplicityVector> = n1s
        .flat_map(|n1| non_increasing_vectors(r - 1, 3, n1).into_iter().map(move |t| with_head(n1, t)))
        .collect();
    tally(vectors.into_par_iter().map(|n| lemma_key2(&n).expect("valid grid point")))
}

/// [`lemma_key2`] on `samples` random vectors of length `r`, drawn as in
/// [`sweep_lemma_key2_exhaustive`].
pub fn sweep_lemma_key2_sampled(
    r: usize,
    n1s: std::ops::RangeInclusive<i64>,
    samples: usize,
    seed: u64,
) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vectors: Vec<MultiplicityVector> = (0..samples)
        .map(|_| {
            let n1 = rng.gen_range(n1s.clone());
            let mut tail: Vec<i64> = (1..r).map(|_| rng.gen_range(3..=n1)).collect();
            tail.sort_unstable_by(|a, b| b.cmp(a));
            with_head(n1, tail)
        })
        .collect();
    tally(vectors.into_par_iter().map(|n| lemma_key2(&n).expect("valid grid point")))
}

/// [`lemma_key1`] on every `n` of length `r` in `rs` with `n_1` in `n1s`
/// and the rest non-increasing in `[1, n_1]`.
pub fn sweep_lemma_key1(rs: std::ops::RangeInclusive<usize>, n1s: std::ops::RangeInclusive<i64>) -> SweepReport {
    let vectors: Vec<MultiplicityVector> = rs
        .flat_map(|r| {
            n1s.clone().flat_map(move |n1| {
                non_increasing_vectors(r - 1, 1, n1).into_iter().map(move |t| with_head(n1, t))
            })
        })
        .collect();
    tally(vectors.into_par_iter().map(|n| lemma_key1(&n).expect("valid grid point")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(v: &[i64]) -> MultiplicityVector {
        MultiplicityVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn vector_validation() {
        assert!(MultiplicityVector::new(vec![]).is_err());
        assert!(MultiplicityVector::new(vec![1, 2]).is_err());
    }

    #[test]
    fn lemma_key_examples() {
        assert_eq!(lemma_key(&[1, 1, 1], &mv(&[2, 2, 2])).unwrap(), LemmaOutcome::HoldsEquality);
        assert_eq!(lemma_key(&[2, 1, 1, 1], &mv(&[2, 1, 1, 1])).unwrap(), LemmaOutcome::HoldsEquality);
        assert_eq!(lemma_key(&[1, 1], &mv(&[2, 2])).unwrap(), LemmaOutcome::Excluded);
        assert_eq!(lemma_key(&[0, 0, 0], &mv(&[3, 2, 1])).unwrap(), LemmaOutcome::HoldsEquality);
        assert_eq!(lemma_key(&[1, 1, 1], &mv(&[3, 2, 1])).unwrap(), LemmaOutcome::HoldsStrict);
        assert!(lemma_key(&[1, 1], &mv(&[1, 1])).is_err());
        assert!(lemma_key(&[1], &mv(&[2, 1])).is_err());
        assert!(lemma_key(&[1, 1], &mv(&[2, 0])).is_err());
    }

    #[test]
    fn lemma_key2_examples() {
        let mut n = vec![12];
        n.extend([3; 8]);
        assert!(lemma_key2(&mv(&n)).unwrap());
        n[1..].fill(4);
        assert!(lemma_key2(&mv(&n)).unwrap());
        n[0] = 11;
        n[1..].fill(3);
        assert!(lemma_key2(&mv(&n)).is_err());
    }

    #[test]
    fn lemma_key1_examples() {
        assert!(lemma_key1(&mv(&[12, 1])).unwrap());
        assert!(lemma_key1(&mv(&[12, 12, 12])).unwrap());
        assert!(lemma_key1(&mv(&[11, 5])).is_err());
    }

    #[test]
    fn xu_examples() {
        assert!(xu_lower_bound(2, &mv(&[1; 5])).unwrap());
        assert!(xu_lower_bound(48, &mv(&[17; 8])).unwrap());
        let mut n = vec![2];
        n.extend([1; 13]);
        assert!(xu_lower_bound(4, &mv(&n)).unwrap());
        assert!(!xu_lower_bound(3, &mv(&n)).unwrap());
        assert!(xu_lower_bound(2, &mv(&[1, 1, 1, 1, 1, 0])).unwrap());
        assert!(xu_lower_bound(0, &mv(&[1])).is_err());
        assert!(xu_lower_bound(1, &mv(&[0])).is_err());
    }

    #[test]
    fn non_increasing_counts() {
        // multisets of size 3 from 4 values
        assert_eq!(non_increasing_vectors(3, 1, 4).len(), 20);
        assert_eq!(non_increasing_vectors(0, 1, 4), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn small_sweep() {
        let report = sweep_lemma_key(2..=3, 2, 3);
        assert!(report.cases > 0);
        assert_eq!(report.violations, 0);
        assert_eq!(report.unexpected_equalities, 0);
    }
}
