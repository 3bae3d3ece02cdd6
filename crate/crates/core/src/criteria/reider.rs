//! Global generation and very ampleness through Reider's theorem applied
//! to `N = L - K = (d+3)H - sum (m_i+1) E_i`.

use crate::certificate::{HypothesisRecord, Property, Verdict};
use crate::error::{Error, Result};
use crate::lattice::DivisorClass;

use super::UniformBundle;

fn sq(x: i128) -> i128 {
    x * x
}

/// The general test on `N = L - K`: line, conic and cubic conditions on
/// `d+3` and `m_i+1`, and `(d+3)^2 (s+2) >= (s+3) sum_{i<=s} (m_i+1)^2` for
/// every `2 <= s <= r`. Indices past `r` count as `m_j = 0`.
///
/// Needs `r >= 5` and all `m_i >= 2`. With `permissive` set, trailing
/// multiplicities 1 are accepted, zeros are dropped, and `N^2 >= 5` is
/// recorded as an extra hypothesis.
pub fn gg_general(l: &DivisorClass, permissive: bool) -> Verdict {
    let id = if permissive { "gg-general-permissive" } else { "gg-general" };
    let prop = Property::GloballyGenerated;
    if l.degree() <= 0 || l.mults().iter().any(|&n| n < 0) {
        return Verdict::not_applicable(prop, id, "needs d > 0 and multiplicities >= 0")
            .with_class(l.clone());
    }
    let sorted = l.normalize();
    let core = if permissive { sorted.positive_support() } else { Some(sorted) };
    let Some(core) = core.filter(|c| c.r() >= 5) else {
        return Verdict::not_applicable(prop, id, "needs at least 5 points").with_class(l.clone());
    };
    let m = core.mults();
    if !permissive && m.iter().any(|&n| n < 2) {
        return Verdict::not_applicable(
            prop,
            id,
            "needs all multiplicities >= 2 (permissive mode accepts trailing 1s)",
        )
        .with_class(l.clone());
    }
    let d3 = core.degree() as i128 + 3;
    let n = |i: usize| m.get(i - 1).copied().unwrap_or(0) as i128 + 1;
    let sum = |range: std::ops::RangeInclusive<usize>| range.map(n).sum::<i128>();
    let mut records = vec![
        HypothesisRecord::gt("line: d+3 > m1+m2+2", d3, sum(1..=2)),
        HypothesisRecord::gt("conic: 2(d+3) > m1+...+m5+5", 2 * d3, sum(1..=5)),
        HypothesisRecord::gt("cubic: 3(d+3) > 2m1+m2+...+m7+8", 3 * d3, n(1) + sum(1..=7)),
    ];
    let mut prefix = 0i128;
    for s in 1..=m.len() {
        prefix += sq(n(s));
        if s >= 2 {
            let s_ = s as i128;
            records.push(HypothesisRecord::ge(
                format!("square-sum s={s}: (d+3)^2*(s+2) >= (s+3)*sum (m_i+1)^2"),
                sq(d3) * (s_ + 2),
                (s_ + 3) * prefix,
            ));
        }
    }
    let mut notes = Vec::new();
    if permissive {
        records.push(HypothesisRecord::ge("reider: N^2 >= 5", sq(d3) - prefix, 5));
        notes.push("permissive mode: multiplicities below 2 accepted".to_string());
        if core.r() < l.r() {
            notes.push(format!(
                "{} point(s) with multiplicity 0 dropped",
                l.r() - core.r()
            ));
        }
    }
    let mut v = Verdict::from_records(prop, id, records).with_class(l.clone());
    v.notes = notes;
    v
}

/// `32d >= 95m` and `(d+3)^2 (3r+4) >= r (3r+5) (m+1)^2`, for `r >= 2`, `m >= 6`.
pub fn gg_uniform(b: &UniformBundle) -> Verdict {
    const ID: &str = "gg-uniform";
    if b.r < 2 || b.m < 6 {
        return Verdict::not_applicable(Property::GloballyGenerated, ID, "needs r >= 2 and m >= 6")
            .with_class(b.to_class());
    }
    let (d, r, m) = (b.d as i128, b.r as i128, b.m as i128);
    let records = vec![
        HypothesisRecord::ge("slope: 32d >= 95m", 32 * d, 95 * m),
        HypothesisRecord::ge(
            "square: (d+3)^2*(3r+4) >= r*(3r+5)*(m+1)^2",
            sq(d + 3) * (3 * r + 4),
            r * (3 * r + 5) * sq(m + 1),
        ),
    ];
    Verdict::from_records(Property::GloballyGenerated, ID, records).with_class(b.to_class())
}

/// `d >= 3m` and `(d+3)^2 (r+2) >= r (r+3) (m+1)^2`, for `r >= 3`, `m >= 4`.
pub fn va_uniform(b: &UniformBundle) -> Verdict {
    const ID: &str = "va-uniform";
    if b.r < 3 || b.m < 4 {
        return Verdict::not_applicable(Property::VeryAmple, ID, "needs r >= 3 and m >= 4")
            .with_class(b.to_class());
    }
    let (d, r, m) = (b.d as i128, b.r as i128, b.m as i128);
    let records = vec![
        HypothesisRecord::ge("slope: d >= 3m", d, 3 * m),
        HypothesisRecord::ge(
            "square: (d+3)^2*(r+2) >= r*(r+3)*(m+1)^2",
            sq(d + 3) * (r + 2),
            r * (r + 3) * sq(m + 1),
        ),
    ];
    Verdict::from_records(Property::VeryAmple, ID, records).with_class(b.to_class())
}

/// Earlier uniform bounds kept for comparison: ample when `d >= 3m+1` and
/// `d^2 >= (r+1) m^2`; globally generated when `d >= 3m+1` and
/// `(d+3)^2 >= (r+1)(m+1)^2`. Both need `m >= 2`.
pub fn st_criterion(b: &UniformBundle, property: Property) -> Result<Verdict> {
    let (d, r, m) = (b.d as i128, b.r as i128, b.m as i128);
    let (id, square) = match property {
        Property::Ample => (
            "st-ample",
            HypothesisRecord::ge("square: d^2 >= (r+1)*m^2", d * d, (r + 1) * m * m),
        ),
        Property::GloballyGenerated => (
            "st-gg",
            HypothesisRecord::ge(
                "square: (d+3)^2 >= (r+1)*(m+1)^2",
                sq(d + 3),
                (r + 1) * sq(m + 1),
            ),
        ),
        Property::VeryAmple => {
            return Err(Error::InvalidInput(
                "the comparison bounds cover ampleness and global generation only".into(),
            ))
        }
    };
    if b.m < 2 {
        return Ok(Verdict::not_applicable(property, id, "needs m >= 2").with_class(b.to_class()));
    }
    let records = vec![HypothesisRecord::ge("slope: d >= 3m+1", d, 3 * m + 1), square];
    Ok(Verdict::from_records(property, id, records).with_class(b.to_class()))
}
