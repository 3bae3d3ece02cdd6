use num_bigint::BigInt;

use crate::certificate::{Conjecture, HypothesisRecord, Property, Verdict};
use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::weyl::{certify_nef_with, exceptional_patterns, NefStatus};

use super::UniformBundle;

fn sq(x: i64) -> i128 {
    x as i128 * x as i128
}

fn mult(m: &[i64], i: usize) -> i128 {
    // 1-based, zero past the end
    m.get(i - 1).copied().unwrap_or(0) as i128
}

/// Hypotheses on lines, conics and cubics shared by the general tests.
pub(super) fn curve_records(d: i128, m: &[i64]) -> Vec<HypothesisRecord> {
    let sum = |range: std::ops::RangeInclusive<usize>| range.map(|i| mult(m, i)).sum::<i128>();
    vec![
        HypothesisRecord::gt("line: d > m1+m2", d, sum(1..=2)),
        HypothesisRecord::gt("conic: 2d > m1+...+m5", 2 * d, sum(1..=5)),
        HypothesisRecord::gt("cubic: 3d > 2m1+m2+...+m7", 3 * d, mult(m, 1) + sum(1..=7)),
    ]
}

/// `d^2 (s+2) >= (s+3) sum_{i<=s} m_i^2` for each `s` in `range`.
fn square_sum_records(d: i64, m: &[i64], range: std::ops::RangeInclusive<usize>) -> Vec<HypothesisRecord> {
    let mut prefix = 0i128;
    let mut out = Vec::new();
    for s in 1..=*range.end() {
        prefix += sq(m.get(s - 1).copied().unwrap_or(0));
        if range.contains(&s) {
            let s_ = s as i128;
            out.push(HypothesisRecord::ge(
                format!("square-sum s={s}: d^2*(s+2) >= (s+3)*sum m_i^2"),
                sq(d) * (s_ + 2),
                (s_ + 3) * prefix,
            ));
        }
    }
    out
}

/// The record with the smallest ratio `lhs / rhs`.
fn tightest<'a>(records: impl Iterator<Item = &'a HypothesisRecord>) -> Option<&'a HypothesisRecord> {
    records
        .filter(|h| h.rhs > BigInt::from(0))
        .min_by(|a, b| (&a.lhs * &b.rhs).cmp(&(&b.lhs * &a.rhs)))
}

#[allow(clippy::result_large_err)]
fn general_preconditions(property: Property, id: &str, l: &DivisorClass) -> std::result::Result<(), Verdict> {
    if l.degree() <= 0 {
        return Err(Verdict::not_applicable(property, id, "needs d > 0").with_class(l.clone()));
    }
    if l.mults().iter().any(|&n| n < 0) {
        return Err(Verdict::not_applicable(property, id, "needs all multiplicities >= 0")
            .with_class(l.clone()));
    }
    Ok(())
}

/// Truncates to the positive support, recording a note when points were dropped.
fn support(l: &DivisorClass) -> (Option<DivisorClass>, Option<String>) {
    let sorted = l.normalize();
    let dropped = sorted.mults().iter().filter(|&&n| n == 0).count();
    let note = (dropped > 0).then(|| {
        format!(
            "{dropped} point(s) with multiplicity 0 dropped; the verdict is for the blow-up at the remaining {} point(s)",
            l.r() - dropped
        )
    });
    (sorted.positive_support(), note)
}

/// Line, conic and cubic tests plus the square-sum family for every
/// `2 <= s <= r`, after sorting and dropping zero multiplicities.
///
/// On a single point the class is ample exactly when `d > m1 > 0`.
pub fn ample_general(l: &DivisorClass) -> Verdict {
    const ID: &str = "ample-general";
    if let Err(v) = general_preconditions(Property::Ample, ID, l) {
        return v;
    }
    let (Some(core), note) = support(l) else {
        return Verdict::not_applicable(Property::Ample, ID, "needs a positive multiplicity")
            .with_class(l.clone());
    };
    let d = core.degree();
    let m = core.mults();
    let r = m.len();
    let mut v = if r == 1 {
        Verdict::from_records(
            Property::Ample,
            ID,
            vec![HypothesisRecord::gt("point: d > m1", d, m[0])],
        )
    } else {
        let mut records = curve_records(d as i128, m);
        records.extend(square_sum_records(d, m, 2..=r));
        let mut v = Verdict::from_records(Property::Ample, ID, records);
        let worst = tightest(v.hypotheses.iter().filter(|h| h.label.starts_with("square-sum")))
            .map(|h| h.label.split(':').next().unwrap_or_default().to_string());
        if let Some(worst) = worst {
            v = v.with_note(format!("tightest square-sum hypothesis: {worst}"));
        }
        v
    };
    if let Some(note) = note {
        v = v.with_note(note);
    }
    v.with_class(l.clone())
}

const R9_CLASSES: [&str; 3] = [
    "4; 2 2 2 1 1 1 1 1",
    "5; 2 2 2 2 2 2 1 1",
    "6; 3 2 2 2 2 2 2 2",
];

/// Variant for `r >= 9` points: the square-sum family only for
/// `9 <= s <= r`, plus positivity on three (-1)-classes of degrees 4, 5, 6.
pub fn ample_r9(l: &DivisorClass) -> Verdict {
    const ID: &str = "ample-r9";
    let r = l.r();
    if r < 9 {
        return Verdict::not_applicable(Property::Ample, ID, format!("needs r >= 9, got r = {r}"))
            .with_class(l.clone());
    }
    if l.degree() <= 0 || l.mults().iter().any(|&n| n <= 0) {
        return Verdict::not_applicable(Property::Ample, ID, "needs d > 0 and all multiplicities > 0")
            .with_class(l.clone());
    }
    let sorted = l.normalize();
    let d = sorted.degree();
    let m = sorted.mults();
    let mut records = curve_records(d as i128, m);
    records.extend(square_sum_records(d, m, 9..=r));
    for text in R9_CLASSES {
        let c: DivisorClass = text.parse::<DivisorClass>().expect("fixed class").padded(r).expect("r >= 8");
        records.push(HypothesisRecord::gt(
            format!("exceptional {}: L.C > 0", c.to_divisor_string()),
            sorted.dot(&c),
            0,
        ));
    }
    Verdict::from_records(Property::Ample, ID, records).with_class(l.clone())
}

/// `d > lambda_r m` with `lambda_2 = lambda_3 = 2`, `lambda_5 = 5/2` and
/// `lambda_r = sqrt(r(r+3)/(r+2))` otherwise.
pub fn ample_uniform_lambda(b: &UniformBundle) -> Verdict {
    const ID: &str = "ample-uniform-lambda";
    let (d, r, m) = (b.d as i128, b.r as i128, b.m as i128);
    if b.r < 2 {
        return Verdict::not_applicable(Property::Ample, ID, "needs r >= 2")
            .with_class(b.to_class());
    }
    let (record, lambda) = match b.r {
        2 | 3 => (HypothesisRecord::gt("lambda: d > 2m", d, 2 * m), 2.0),
        5 => (HypothesisRecord::gt("lambda: 2d > 5m", 2 * d, 5 * m), 2.5),
        _ => (
            HypothesisRecord::gt(
                "lambda: d^2*(r+2) > r*(r+3)*m^2",
                d * d * (r + 2),
                r * (r + 3) * m * m,
            ),
            ((r * (r + 3)) as f64 / (r + 2) as f64).sqrt(),
        ),
    };
    Verdict::from_records(Property::Ample, ID, vec![record])
        .with_note(format!("lambda_r * m = {:.4} (display only)", lambda * b.m as f64))
        .with_class(b.to_class())
}

/// The (-1)-class on `r <= 8` points with positive degree maximizing
/// `sum n_i / e`, if any.
fn steepest_exceptional(r: usize) -> Option<DivisorClass> {
    let patterns = exceptional_patterns(r, None).expect("finite list for r <= 8");
    let ratio_sum = |c: &DivisorClass| c.mults().iter().map(|&n| n as i128).sum::<i128>();
    patterns
        .iter()
        .filter(|c| c.degree() > 0)
        .max_by(|a, b| {
            (ratio_sum(a) * b.degree() as i128).cmp(&(ratio_sum(b) * a.degree() as i128))
        })
        .cloned()
}

/// `32d > 95m` and `d^2 (3r+39) >= r (3r+40) m^2`.
///
/// For `r <= 8` the slope condition is replaced by `d e > m sum n_i` for
/// the (-1)-class of largest `sum n_i / e`; on eight points that is
/// `6H - 3E1 - 2E2 - ... - 2E8` with slope 17/6.
pub fn ample_uniform(b: &UniformBundle) -> Verdict {
    const ID: &str = "ample-uniform";
    let (d, r, m) = (b.d as i128, b.r as i128, b.m as i128);
    let mut records = Vec::new();
    if b.r <= 8 {
        if let Some(c) = steepest_exceptional(b.r) {
            let total: i128 = c.mults().iter().map(|&n| n as i128).sum();
            records.push(HypothesisRecord::gt(
                format!("exceptional {}: d*e > m*sum n_i", c.to_divisor_string()),
                d * c.degree() as i128,
                m * total,
            ));
        }
    } else {
        records.push(HypothesisRecord::gt("slope: 32d > 95m", 32 * d, 95 * m));
    }
    records.push(HypothesisRecord::ge(
        "square: d^2*(3r+39) >= r*(3r+40)*m^2",
        d * d * (3 * r + 39),
        r * (3 * r + 40) * m * m,
    ));
    Verdict::from_records(Property::Ample, ID, records).with_class(b.to_class())
}

/// On `r >= 9` points the Nagata conjecture makes `L` ample once `L^2 > 0`.
pub fn ample_nagata_conditional(b: &UniformBundle) -> Verdict {
    const ID: &str = "ample-nagata";
    if b.r < 9 {
        return Verdict::not_applicable(Property::Ample, ID, "needs r >= 9")
            .with_class(b.to_class());
    }
    let (d, r, m) = (b.d as i128, b.r as i128, b.m as i128);
    let record = HypothesisRecord::gt("square: d^2 > r*m^2", d * d, r * m * m);
    Verdict::conditional(Property::Ample, ID, Conjecture::Nagata, vec![record])
        .with_class(b.to_class())
}

/// Under the SHGH conjecture, a class in the fundamental domain with
/// positive square and positive multiplicities meets every (-1)-curve
/// positively, hence is ample.
pub fn ample_shgh_conditional(l: &DivisorClass) -> Verdict {
    const ID: &str = "ample-shgh";
    if let Err(v) = general_preconditions(Property::Ample, ID, l) {
        return v;
    }
    let (core, note) = support(l);
    let Some(core) = core.filter(|c| c.r() >= 3) else {
        return Verdict::not_applicable(Property::Ample, ID, "needs at least 3 positive multiplicities")
            .with_class(l.clone());
    };
    let m = core.mults();
    let d = core.degree() as i128;
    let records = vec![
        HypothesisRecord::ge(
            "fundamental: d >= m1+m2+m3",
            d,
            m[..3].iter().map(|&n| n as i128).sum::<i128>(),
        ),
        HypothesisRecord::gt(
            "square: d^2 > sum m_i^2",
            d * d,
            m.iter().map(|&n| sq(n)).sum::<i128>(),
        ),
    ];
    let mut v = Verdict::conditional(Property::Ample, ID, Conjecture::Shgh, records);
    if let Some(note) = note {
        v = v.with_note(note);
    }
    v.with_class(l.clone())
}

/// Certifies `L = kF + aH` with `F` nef, `k >= 1` and `a >= 1`: the sum of
/// a nef class and an ample class is ample.
pub fn ample_by_nef_decomposition(l: &DivisorClass, f: &DivisorClass, cap: i64) -> Result<Verdict> {
    const ID: &str = "ample-nef-decomposition";
    if l.r() != f.r() {
        return Err(Error::DimensionMismatch { left: l.r(), right: f.r() });
    }
    if l.mults().iter().any(|&n| n <= 0) {
        return Ok(Verdict::not_applicable(Property::Ample, ID, "needs all multiplicities of L > 0")
            .with_class(l.clone()));
    }
    let nef = certify_nef_with(f, cap)?;
    let mut records: Vec<HypothesisRecord> = nef
        .evidence
        .iter()
        .map(|h| HypothesisRecord { label: format!("F {}", h.label), ..h.clone() })
        .collect();
    records.push(HypothesisRecord::ge(
        "F nef certified",
        i32::from(nef.status == NefStatus::Nef),
        1,
    ));
    let mut notes = Vec::new();
    match decomposition_factor(l, f) {
        Some(k) => {
            let a = l.degree() as i128 - k as i128 * f.degree() as i128;
            records.push(HypothesisRecord::ge("k >= 1", k, 1));
            records.push(HypothesisRecord::ge("a >= 1", a, 1));
            notes.push(format!("L = {k}F + {a}H"));
        }
        None => {
            records.push(HypothesisRecord::ge("count of k with L - kF = aH", 0, 1));
            notes.push("no-decomposition".to_string());
        }
    }
    let mut v = Verdict::from_records(Property::Ample, ID, records)
        .with_class(l.clone())
        .with_witnesses(vec![f.clone(), DivisorClass::hyperplane(l.r())?]);
    v.notes = notes;
    Ok(v)
}

/// The `k` in `1..=max(1, deg L)` with `L - kF` a multiple of `H`.
fn decomposition_factor(l: &DivisorClass, f: &DivisorClass) -> Option<i64> {
    let j = f.mults().iter().position(|&n| n != 0)?;
    let (num, den) = (l.mults()[j], f.mults()[j]);
    if num % den != 0 {
        return None;
    }
    let k = num / den;
    let fits = l.mults().iter().zip(f.mults()).all(|(&a, &b)| a as i128 == k as i128 * b as i128);
    (fits && k >= 1 && k <= l.degree().max(1)).then_some(k)
}
