//! Sufficient conditions for ampleness, global generation and very
//! ampleness, each returning a [`Verdict`] with its instantiated
//! hypotheses.
//!
//! All conditions are cleared of denominators and square roots before they
//! are evaluated, e.g. `d^2 >= (s+3)/(s+2) * sum m_i^2` is checked as
//! `d^2 (s+2) >= (s+3) sum m_i^2`.

mod ample;
mod reider;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::certificate::{Property, Verdict};
use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::weyl::{exceptional_patterns, DEFAULT_DEGREE_CAP};

pub use ample::{
    ample_by_nef_decomposition, ample_general, ample_nagata_conditional, ample_r9,
    ample_shgh_conditional, ample_uniform, ample_uniform_lambda,
};
pub use reider::{gg_general, gg_uniform, st_criterion, va_uniform};

/// `dH - m (E_1 + ... + E_r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct UniformBundle {
    pub d: i64,
    pub r: usize,
    pub m: i64,
}

impl UniformBundle {
    pub fn new(d: i64, r: usize, m: i64) -> Result<Self> {
        if d < 1 || r < 1 || m < 1 {
            return Err(Error::InvalidInput(format!(
                "uniform bundle needs d, r, m >= 1, got d = {d}, r = {r}, m = {m}"
            )));
        }
        DivisorClass::uniform(d, m, r)?;
        Ok(Self { d, r, m })
    }

    pub fn to_class(&self) -> DivisorClass {
        DivisorClass::uniform(self.d, self.m, self.r).expect("validated in new")
    }

    /// Reads a class back as a uniform bundle when all multiplicities agree.
    pub fn from_class(class: &DivisorClass) -> Option<Self> {
        let m = class.mults()[0];
        if class.mults().iter().any(|&n| n != m) {
            return None;
        }
        Self::new(class.degree(), class.r(), m).ok()
    }

    pub fn with_degree(&self, d: i64) -> Result<Self> {
        Self::new(d, self.r, self.m)
    }
}

impl fmt::Display for UniformBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} r={} m={}", self.d, self.r, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertifierId {
    AmpleGeneral,
    AmpleR9,
    AmpleUniformLambda,
    AmpleUniform,
    AmpleNagata,
    AmpleShgh,
    AmpleNefDecomposition,
    GgGeneral,
    GgUniform,
    VaUniform,
    StAmple,
    StGg,
}

impl CertifierId {
    pub const ALL: [CertifierId; 12] = [
        CertifierId::AmpleGeneral,
        CertifierId::AmpleR9,
        CertifierId::AmpleUniformLambda,
        CertifierId::AmpleUniform,
        CertifierId::AmpleNagata,
        CertifierId::AmpleShgh,
        CertifierId::AmpleNefDecomposition,
        CertifierId::GgGeneral,
        CertifierId::GgUniform,
        CertifierId::VaUniform,
        CertifierId::StAmple,
        CertifierId::StGg,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CertifierId::AmpleGeneral => "ample-general",
            CertifierId::AmpleR9 => "ample-r9",
            CertifierId::AmpleUniformLambda => "ample-uniform-lambda",
            CertifierId::AmpleUniform => "ample-uniform",
            CertifierId::AmpleNagata => "ample-nagata",
            CertifierId::AmpleShgh => "ample-shgh",
            CertifierId::AmpleNefDecomposition => "ample-nef-decomposition",
            CertifierId::GgGeneral => "gg-general",
            CertifierId::GgUniform => "gg-uniform",
            CertifierId::VaUniform => "va-uniform",
            CertifierId::StAmple => "st-ample",
            CertifierId::StGg => "st-gg",
        }
    }

    pub fn property(&self) -> Property {
        match self {
            CertifierId::GgGeneral | CertifierId::GgUniform | CertifierId::StGg => {
                Property::GloballyGenerated
            }
            CertifierId::VaUniform => Property::VeryAmple,
            _ => Property::Ample,
        }
    }

    /// Whether the certifier only ever answers conditionally.
    pub fn is_conditional(&self) -> bool {
        matches!(self, CertifierId::AmpleNagata | CertifierId::AmpleShgh)
    }

    /// Whether the certifier takes a uniform bundle rather than a class.
    pub fn is_uniform(&self) -> bool {
        matches!(
            self,
            CertifierId::AmpleUniformLambda
                | CertifierId::AmpleUniform
                | CertifierId::AmpleNagata
                | CertifierId::GgUniform
                | CertifierId::VaUniform
                | CertifierId::StAmple
                | CertifierId::StGg
        )
    }
}

impl fmt::Display for CertifierId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CertifierId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown certifier {s:?}")))
    }
}

/// The multiplicity data a certifier is run against, degree left free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multiplicities {
    General(Vec<i64>),
    Uniform { r: usize, m: i64 },
}

impl Multiplicities {
    pub fn with_degree(&self, d: i64) -> Result<DivisorClass> {
        match self {
            Multiplicities::General(m) => DivisorClass::new(d, m.clone()),
            Multiplicities::Uniform { r, m } => DivisorClass::uniform(d, *m, *r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriteriaConfig {
    /// Lets the general global generation test accept trailing
    /// multiplicities 0 and 1.
    pub permissive: bool,
    /// Degree cap for (-1)-classes when `r >= 9`.
    pub exceptional_cap: i64,
    /// The nef class used by [`CertifierId::AmpleNefDecomposition`].
    pub nef_class: Option<DivisorClass>,
}

impl Default for CriteriaConfig {
    fn default() -> Self {
        Self { permissive: false, exceptional_cap: DEFAULT_DEGREE_CAP, nef_class: None }
    }
}

/// Runs certifier `id` on degree `d` with the given multiplicities.
///
/// Uniform certifiers given non-uniform data return `NotApplicable`.
pub fn evaluate(
    id: CertifierId,
    d: i64,
    data: &Multiplicities,
    config: &CriteriaConfig,
) -> Result<Verdict> {
    let class = data.with_degree(d)?;
    if id.is_uniform() {
        let Some(bundle) = UniformBundle::from_class(&class) else {
            return Ok(Verdict::not_applicable(
                id.property(),
                id.as_str(),
                "needs d >= 1 and equal positive multiplicities",
            )
            .with_class(class));
        };
        return Ok(match id {
            CertifierId::AmpleUniformLambda => ample_uniform_lambda(&bundle),
            CertifierId::AmpleUniform => ample_uniform(&bundle),
            CertifierId::AmpleNagata => ample_nagata_conditional(&bundle),
            CertifierId::GgUniform => gg_uniform(&bundle),
            CertifierId::VaUniform => va_uniform(&bundle),
            CertifierId::StAmple => st_criterion(&bundle, Property::Ample)?,
            CertifierId::StGg => st_criterion(&bundle, Property::GloballyGenerated)?,
            _ => unreachable!(),
        });
    }
    match id {
        CertifierId::AmpleGeneral => Ok(ample_general(&class)),
        CertifierId::AmpleR9 => Ok(ample_r9(&class)),
        CertifierId::AmpleShgh => Ok(ample_shgh_conditional(&class)),
        CertifierId::AmpleNefDecomposition => match &config.nef_class {
            Some(f) => ample_by_nef_decomposition(&class, f, config.exceptional_cap),
            None => Err(Error::InvalidInput(
                "the nef decomposition test needs a nef class".into(),
            )),
        },
        CertifierId::GgGeneral => Ok(gg_general(&class, config.permissive)),
        _ => unreachable!(),
    }
}

const MAX_SEARCH_DEGREE: i64 = 1 << 30;

/// Smallest `d >= 1` at which certifier `id` certifies.
///
/// Every certifier is monotone in `d`, so this runs a doubling search
/// followed by bisection.
pub fn min_degree(id: CertifierId, data: &Multiplicities, config: &CriteriaConfig) -> Result<i64> {
    if id.is_conditional() {
        return Err(Error::InvalidInput(format!(
            "{id} only gives conditional verdicts"
        )));
    }
    let certifies = |d: i64| -> Result<bool> {
        let v = evaluate(id, d, data, config)?;
        if !v.is_applicable() {
            return Err(Error::NotApplicable(format!(
                "{id} at d = {d}: {}",
                v.notes.join("; ")
            )));
        }
        Ok(v.is_certified())
    };
    if certifies(1)? {
        return Ok(1);
    }
    let mut lo = 1;
    let mut hi = 2;
    while !certifies(hi)? {
        lo = hi;
        hi *= 2;
        if hi > MAX_SEARCH_DEGREE {
            return Err(Error::Refused(format!(
                "{id} does not certify below d = {MAX_SEARCH_DEGREE}"
            )));
        }
    }
    // certifies(hi) and !certifies(lo)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if certifies(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// A curve class meeting `L` non-positively, or `L` itself when `L^2 <= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub class: DivisorClass,
    pub value: i128,
}

/// Reasons `L` cannot be ample among the curves this crate can list.
///
/// Contains `(L, L^2)` when `L^2 <= 0`, and for every (-1)-class pattern
/// (all of them for `r <= 8`, degree at most `cap` otherwise) the
/// arrangement with the smallest intersection, if that is `<= 0`. On one
/// point `H - E1` is checked as well. An empty list is not a proof of
/// ampleness.
pub fn necessary_obstructions(l: &DivisorClass, cap: i64) -> Result<Vec<Obstruction>> {
    let r = l.r();
    let mut out = Vec::new();
    let square = l.self_intersection();
    if square <= 0 {
        out.push(Obstruction { class: l.clone(), value: square });
    }
    let (sorted, perm) = l.normalize_with_permutation();
    let patterns = exceptional_patterns(r, (r >= 9).then_some(cap))?;
    let mut curves: Vec<DivisorClass> = patterns.to_vec();
    if r == 1 {
        curves.push(DivisorClass::new(1, vec![1])?);
    }
    for c in curves {
        let value = sorted.dot(&c);
        if value <= 0 {
            out.push(Obstruction { class: perm.unapply(&c)?, value });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> DivisorClass {
        s.parse().unwrap()
    }

    #[test]
    fn certifier_ids_round_trip() {
        for id in CertifierId::ALL {
            assert_eq!(id.as_str().parse::<CertifierId>().unwrap(), id);
        }
        assert!("ample".parse::<CertifierId>().is_err());
    }

    #[test]
    fn uniform_bundle_validation() {
        assert!(UniformBundle::new(0, 3, 1).is_err());
        assert!(UniformBundle::new(3, 0, 1).is_err());
        let b = UniformBundle::new(17, 8, 6).unwrap();
        assert_eq!(UniformBundle::from_class(&b.to_class()), Some(b));
        assert_eq!(UniformBundle::from_class(&c("5; 2 1")), None);
    }

    #[test]
    fn min_degree_examples() {
        let cfg = CriteriaConfig::default();
        let general = |m: &[i64]| Multiplicities::General(m.to_vec());
        assert_eq!(
            min_degree(CertifierId::AmpleGeneral, &general(&[3, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1]), &cfg).unwrap(),
            7
        );
        assert_eq!(
            min_degree(CertifierId::AmpleGeneral, &general(&[3, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1]), &cfg).unwrap(),
            8
        );
        assert_eq!(
            min_degree(CertifierId::VaUniform, &Multiplicities::Uniform { r: 30, m: 10 }, &cfg).unwrap(),
            59
        );
        assert!(min_degree(CertifierId::AmpleNagata, &Multiplicities::Uniform { r: 10, m: 1 }, &cfg).is_err());
        assert!(min_degree(CertifierId::GgUniform, &Multiplicities::Uniform { r: 10, m: 2 }, &cfg).is_err());
    }

    #[test]
    fn obstructions_for_conic_and_sextic() {
        let obs = necessary_obstructions(&c("25; 10 10 10 10 10"), 32).unwrap();
        assert_eq!(obs, vec![Obstruction { class: c("2; 1 1 1 1 1"), value: 0 }]);
        let l170 = DivisorClass::uniform(170, 60, 8).unwrap();
        let obs = necessary_obstructions(&l170, 32).unwrap();
        assert_eq!(obs, vec![Obstruction { class: c("6; 3 2 2 2 2 2 2 2"), value: 0 }]);
        assert!(necessary_obstructions(&c("7; 3 2 2 2 2 2 2 2 1 1 1 1"), 32).unwrap().is_empty());
    }

    #[test]
    fn obstructions_keep_original_labels() {
        let l = c("3; 1 2 2");
        let obs = necessary_obstructions(&l, 32).unwrap();
        assert!(obs.iter().any(|o| o.class == c("1; 0 1 1")));
        for o in &obs {
            assert_eq!(l.intersect(&o.class).unwrap(), o.value);
        }
    }

    #[test]
    fn obstructions_on_one_point() {
        let obs = necessary_obstructions(&c("2; 2"), 32).unwrap();
        assert!(obs.contains(&Obstruction { class: c("1; 1"), value: 0 }));
        assert!(obs.contains(&Obstruction { class: c("2; 2"), value: 0 }));
    }
}
