use anyhow::{bail, Result};
use blowup_positivity::criteria::{
    evaluate, necessary_obstructions, CertifierId, CriteriaConfig, Multiplicities, UniformBundle,
};
use blowup_positivity::{DivisorClass, Outcome, Property, Verdict};

use crate::{parse_class, parse_pairs, PropertyArg, EXIT_CERTIFIED, EXIT_CONDITIONAL, EXIT_NOT_CERTIFIED};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Auto,
    Certifier(CertifierId),
}

#[derive(Debug, Clone)]
pub struct CheckRequest {
    pub property: Property,
    pub class: DivisorClass,
    /// Set when the class was given as `--uniform` or has equal multiplicities.
    pub uniform: Option<UniformBundle>,
    pub mode: Mode,
    pub conditional: bool,
    pub config: CriteriaConfig,
}

impl CheckRequest {
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        property: PropertyArg,
        class: Option<String>,
        uniform: Option<Vec<String>>,
        mode: &str,
        mut permissive: bool,
        mut conditional: bool,
        cap: i64,
        nef_class: Option<String>,
    ) -> Result<Self> {
        let property = property.property();
        let class = match (class, uniform) {
            (Some(s), None) => parse_class(&s)?,
            (None, Some(pairs)) => {
                let p = parse_pairs(&pairs, &["d", "r", "m"])?;
                let r = usize::try_from(p["r"]).map_err(|_| anyhow::anyhow!("r must be positive"))?;
                UniformBundle::new(p["d"], r, p["m"])?.to_class()
            }
            (Some(_), Some(_)) => bail!("give a class or --uniform, not both"),
            (None, None) => bail!("give a class or --uniform d=.. r=.. m=.."),
        };
        let mode = match mode {
            "auto" => Mode::Auto,
            "conditional" => {
                conditional = true;
                Mode::Auto
            }
            "permissive" => {
                permissive = true;
                Mode::Auto
            }
            id => {
                let id: CertifierId = id.parse()?;
                if id.property() != property {
                    bail!("{id} certifies {}, not {property}", id.property());
                }
                Mode::Certifier(id)
            }
        };
        let nef_class = nef_class.map(|s| parse_class(&s)).transpose()?;
        Ok(Self {
            property,
            uniform: UniformBundle::from_class(&class),
            class,
            mode,
            conditional,
            config: CriteriaConfig { permissive, exceptional_cap: cap, nef_class },
        })
    }

    fn data(&self) -> Multiplicities {
        Multiplicities::General(self.class.mults().to_vec())
    }

    fn auto_order(&self) -> Vec<CertifierId> {
        match (self.property, self.uniform.is_some()) {
            (Property::Ample, true) => vec![
                CertifierId::AmpleUniform,
                CertifierId::AmpleUniformLambda,
                CertifierId::AmpleGeneral,
            ],
            (Property::Ample, false) => vec![CertifierId::AmpleGeneral, CertifierId::AmpleR9],
            (Property::GloballyGenerated, _) => vec![CertifierId::GgUniform, CertifierId::GgGeneral],
            (Property::VeryAmple, _) => vec![CertifierId::VaUniform],
        }
    }

    fn conditional_order(&self) -> Vec<CertifierId> {
        match self.property {
            Property::Ample => vec![CertifierId::AmpleNagata, CertifierId::AmpleShgh],
            _ => Vec::new(),
        }
    }
}

/// Runs the requested certifier, or the automatic sequence.
///
/// In automatic mode the first certified verdict wins. Failing that, and
/// with `conditional` set, the first conditional one. Otherwise the first
/// applicable verdict is returned with the known obstructions attached.
pub fn run(req: &CheckRequest) -> Result<Verdict> {
    let d = req.class.degree();
    let data = req.data();
    if let Mode::Certifier(id) = req.mode {
        return Ok(evaluate(id, d, &data, &req.config)?);
    }
    let mut tried = Vec::new();
    let mut verdicts = Vec::new();
    for id in req.auto_order() {
        let v = evaluate(id, d, &data, &req.config)?;
        tried.push(id.as_str());
        if v.is_certified() {
            return Ok(v.with_note(format!("auto: tried {}", tried.join(", "))));
        }
        verdicts.push(v);
    }
    if req.conditional {
        for id in req.conditional_order() {
            let v = evaluate(id, d, &data, &req.config)?;
            tried.push(id.as_str());
            if matches!(v.outcome, Outcome::Conditional(_)) {
                return Ok(v.with_note(format!("auto: tried {}", tried.join(", "))));
            }
            verdicts.push(v);
        }
    }
    let pick = verdicts
        .iter()
        .position(Verdict::is_applicable)
        .unwrap_or(0);
    let mut v = verdicts.swap_remove(pick);
    if v.is_applicable() {
        // global generation only forces nefness, so zero pairings are no obstruction
        let strict = req.property == Property::GloballyGenerated;
        let obstructions: Vec<_> = necessary_obstructions(&req.class, req.config.exceptional_cap)?
            .into_iter()
            .filter(|o| !strict || o.value < 0)
            .collect();
        for o in &obstructions {
            let what = if o.class == req.class { "L.L" } else { "L.C" };
            v.notes.push(format!("obstruction {what} = {} for C = {}", o.value, o.class));
        }
        v.witnesses = obstructions.into_iter().map(|o| o.class).collect();
    }
    Ok(v.with_note(format!("auto: tried {}", tried.join(", "))))
}

pub fn exit_code(v: &Verdict) -> u8 {
    match v.outcome {
        Outcome::Certified => EXIT_CERTIFIED,
        Outcome::Conditional(_) => EXIT_CONDITIONAL,
        Outcome::NotCertified | Outcome::NotApplicable => EXIT_NOT_CERTIFIED,
    }
}

pub fn print_text(v: &Verdict) {
    let outcome = match v.outcome {
        Outcome::Conditional(c) => format!("conditional on {c}"),
        other => other.label().to_string(),
    };
    println!("{}: {outcome} ({})", v.property, v.criterion);
    if let Some(class) = &v.class {
        println!("class: {class}  ({})", class.to_divisor_string());
    }
    for h in &v.hypotheses {
        println!(
            "  [{}] {}: {} {} {}",
            if h.pass { "pass" } else { "FAIL" },
            h.label,
            h.lhs,
            h.relation.symbol(),
            h.rhs
        );
    }
    for w in &v.witnesses {
        println!("witness: {w}  ({})", w.to_divisor_string());
    }
    for n in &v.notes {
        println!("note: {n}");
    }
}
