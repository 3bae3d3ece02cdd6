//! Worked examples bound to golden JSON files.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use blowup_positivity::criteria::{
    ample_by_nef_decomposition, ample_general, ample_nagata_conditional, ample_r9,
    ample_shgh_conditional, ample_uniform, ample_uniform_lambda, gg_general, gg_uniform,
    min_degree, necessary_obstructions, st_criterion, va_uniform, CertifierId, CriteriaConfig,
    Multiplicities, UniformBundle,
};
use blowup_positivity::interpolation::{minimal_report, OracleConfig};
use blowup_positivity::weyl::{
    enumerate_exceptional_classes, exceptional_patterns, is_exceptional_class, reduce_to_fundamental,
};
use blowup_positivity::{DivisorClass, Property};
use serde_json::{json, Value};

use crate::{EXIT_CERTIFIED, EXIT_INVALID, EXIT_NOT_CERTIFIED};

pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

struct Case {
    id: &'static str,
    description: &'static str,
    build: fn() -> Result<Value>,
}

const CASES: &[Case] = &[
    Case {
        id: "twelve-points-general",
        description: "7H - 3E1 - 2(E2+...+E8) - (E9+...+E12): smallest certified degree",
        build: twelve_points_general,
    },
    Case {
        id: "twelve-points-double",
        description: "dH - 3E1 - 2(E2+...+E10) - E11 - E12: degree 8 certified, 7 only under SHGH",
        build: twelve_points_double,
    },
    Case {
        id: "five-points-m10",
        description: "dH - 10(E1+...+E5): the conic obstructs d = 25",
        build: five_points_m10,
    },
    Case {
        id: "eight-points-m60",
        description: "dH - 60(E1+...+E8) between d = 170 and d = 178",
        build: eight_points_m60,
    },
    Case {
        id: "uniform-ample-table",
        description: "uniform ampleness thresholds against the earlier bounds",
        build: uniform_ample_table,
    },
    Case {
        id: "uniform-gg-table",
        description: "uniform global generation thresholds",
        build: uniform_gg_table,
    },
    Case {
        id: "uniform-va-table",
        description: "uniform very ampleness thresholds",
        build: uniform_va_table,
    },
    Case {
        id: "general-gg-permissive",
        description: "general global generation with trailing multiplicities 1",
        build: general_gg_permissive,
    },
    Case {
        id: "exceptional-curves",
        description: "(-1)-classes: counts, membership and reduction",
        build: exceptional_curves,
    },
    Case {
        id: "interpolation",
        description: "interpolation oracle on named systems",
        build: interpolation,
    },
];

fn c(s: &str) -> DivisorClass {
    s.parse().expect("fixed class")
}

fn u(d: i64, r: usize, m: i64) -> UniformBundle {
    UniformBundle::new(d, r, m).expect("fixed bundle")
}

fn to_value(x: &impl serde::Serialize) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn mindeg(id: CertifierId, data: &Multiplicities) -> Result<i64> {
    let cfg = CriteriaConfig { permissive: true, ..CriteriaConfig::default() };
    Ok(min_degree(id, data, &cfg)?)
}

fn twelve_points_general() -> Result<Value> {
    let mults = vec![3, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1];
    let data = Multiplicities::General(mults);
    Ok(json!({
        "min_degree": mindeg(CertifierId::AmpleGeneral, &data)?,
        "d7": to_value(&ample_general(&data.with_degree(7)?))?,
        "d6": to_value(&ample_general(&data.with_degree(6)?))?,
        "d7_r9": to_value(&ample_r9(&data.with_degree(7)?))?,
        "d7_obstructions": to_value(&necessary_obstructions(&data.with_degree(7)?, 32)?)?,
    }))
}

fn twelve_points_double() -> Result<Value> {
    let data = Multiplicities::General(vec![3, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1]);
    Ok(json!({
        "min_degree": mindeg(CertifierId::AmpleGeneral, &data)?,
        "d8": to_value(&ample_general(&data.with_degree(8)?))?,
        "d7": to_value(&ample_general(&data.with_degree(7)?))?,
        "d7_shgh": to_value(&ample_shgh_conditional(&data.with_degree(7)?))?,
        "d7_square": data.with_degree(7)?.self_intersection().to_string(),
    }))
}

fn five_points_m10() -> Result<Value> {
    let l25 = c("25; 10 10 10 10 10");
    Ok(json!({
        "d25": to_value(&ample_general(&l25))?,
        "d26": to_value(&ample_general(&c("26; 10 10 10 10 10")))?,
        "d25_obstructions": to_value(&necessary_obstructions(&l25, 32)?)?,
        "d25_square": l25.self_intersection().to_string(),
        "d26_lambda": to_value(&ample_uniform_lambda(&u(26, 5, 10)))?,
        "d25_gg": to_value(&gg_general(&l25, false))?,
    }))
}

fn eight_points_m60() -> Result<Value> {
    let f = c("17; 6 6 6 6 6 6 6 6");
    let l170 = u(170, 8, 60).to_class();
    let trace = reduce_to_fundamental(&f)?;
    Ok(json!({
        "lambda_177": to_value(&ample_uniform_lambda(&u(177, 8, 60)))?,
        "lambda_178": to_value(&ample_uniform_lambda(&u(178, 8, 60)))?,
        "uniform_171": to_value(&ample_uniform(&u(171, 8, 60)))?,
        "uniform_172": to_value(&ample_uniform(&u(172, 8, 60)))?,
        "nef_decomposition_170": to_value(&ample_by_nef_decomposition(&l170, &f, 32)?)?,
        "nef_decomposition_171": to_value(&ample_by_nef_decomposition(&u(171, 8, 60).to_class(), &f, 32)?)?,
        "obstructions_170": to_value(&necessary_obstructions(&l170, 32)?)?,
        "l170_dot_c48": l170.intersect(&c("48; 17 17 17 17 17 17 17 17"))?.to_string(),
        "f_reduction_end": trace.end.to_string(),
        "f_reduction_cremona_steps": trace.cremona_steps(),
    }))
}

fn uniform_ample_table() -> Result<Value> {
    let mut rows = Vec::new();
    for (r, m) in [(10, 10), (10, 30), (30, 10)] {
        let data = Multiplicities::Uniform { r, m };
        let d = mindeg(CertifierId::AmpleUniform, &data)?;
        rows.push(json!({
            "r": r,
            "m": m,
            "ample_uniform": d,
            "ample_uniform_lambda": mindeg(CertifierId::AmpleUniformLambda, &data)?,
            "st_ample": mindeg(CertifierId::StAmple, &data)?,
            "at_threshold": to_value(&ample_uniform(&u(d, r, m)))?,
            "below_threshold": to_value(&ample_uniform(&u(d - 1, r, m)))?,
        }));
    }
    Ok(json!({
        "rows": rows,
        "nagata_32_10_10": to_value(&ample_nagata_conditional(&u(32, 10, 10)))?,
        "nagata_95_10_30": to_value(&ample_nagata_conditional(&u(95, 10, 30)))?,
        "nagata_31_10_10": to_value(&ample_nagata_conditional(&u(31, 10, 10)))?,
    }))
}

fn uniform_gg_table() -> Result<Value> {
    let mut rows = Vec::new();
    for (r, m) in [(10, 10), (10, 30), (30, 10)] {
        let data = Multiplicities::Uniform { r, m };
        let d = mindeg(CertifierId::GgUniform, &data)?;
        rows.push(json!({
            "r": r,
            "m": m,
            "gg_uniform": d,
            "st_gg": mindeg(CertifierId::StGg, &data)?,
            "at_threshold": to_value(&gg_uniform(&u(d, r, m)))?,
            "below_threshold": to_value(&gg_uniform(&u(d - 1, r, m)))?,
            "st_at_threshold": to_value(&st_criterion(&u(d, r, m), Property::GloballyGenerated)?)?,
        }));
    }
    Ok(json!({ "rows": rows }))
}

fn uniform_va_table() -> Result<Value> {
    let mut rows = Vec::new();
    for (r, m) in [(10, 10), (10, 30), (30, 10)] {
        let data = Multiplicities::Uniform { r, m };
        let d = mindeg(CertifierId::VaUniform, &data)?;
        rows.push(json!({
            "r": r,
            "m": m,
            "va_uniform": d,
            "at_threshold": to_value(&va_uniform(&u(d, r, m)))?,
            "below_threshold": to_value(&va_uniform(&u(d - 1, r, m)))?,
        }));
    }
    Ok(json!({ "rows": rows }))
}

fn general_gg_permissive() -> Result<Value> {
    let mut out = serde_json::Map::new();
    for s in ["8; 3 2 2 2 2 2 2 2 1 1 1 1", "8; 3 2 2 2 2 2 2 2 2 2 1 1", "25; 10 10 10 10 10"] {
        out.insert(s.to_string(), to_value(&gg_general(&c(s), true))?);
    }
    Ok(Value::Object(out))
}

fn exceptional_curves() -> Result<Value> {
    let counts: Vec<Value> = (1..=8)
        .map(|r| Ok(json!({ "r": r, "count": enumerate_exceptional_classes(r, None)?.len() })))
        .collect::<Result<_>>()?;
    let patterns8: Vec<String> = exceptional_patterns(8, None)?.iter().map(ToString::to_string).collect();
    let check = is_exceptional_class(&c("32; 15 10 10 10 10 10 10 10 10"))?;
    Ok(json!({
        "counts": counts,
        "patterns_r8": patterns8,
        "r9_cap32_patterns": exceptional_patterns(9, Some(32))?.len(),
        "degree_32_check": {
            "is_exceptional": check.is_exceptional,
            "cremona_steps": check.trace.as_ref().map(|t| t.cremona_steps()),
            "root_decomposition": check.trace.as_ref().map(|t| t.root_decomposition()).transpose()?,
        },
    }))
}

fn interpolation() -> Result<Value> {
    let cfg = OracleConfig::default();
    let mut out = Vec::new();
    for s in [
        "2; 1 1 1 1 1",
        "4; 2 1 1 1 1 1 1 1 1 1 1 1 1 1",
        "2; 2 2",
        "3; 2 1 1 1 1 1 1",
        "6; 3 2 2 2 2 2 2 2",
        "48; 17 17 17 17 17 17 17 17",
    ] {
        out.push(to_value(&minimal_report(&c(s), &cfg)?)?);
    }
    Ok(json!({ "trials": cfg.trials, "reports": out }))
}

/// Paths at which `golden` and `actual` differ.
fn diff(path: &str, golden: &Value, actual: &Value, out: &mut Vec<String>) {
    match (golden, actual) {
        (Value::Object(g), Value::Object(a)) => {
            for (k, gv) in g {
                match a.get(k) {
                    Some(av) => diff(&format!("{path}.{k}"), gv, av, out),
                    None => out.push(format!("{path}.{k}: missing from output")),
                }
            }
            for k in a.keys().filter(|k| !g.contains_key(*k)) {
                out.push(format!("{path}.{k}: not in golden file"));
            }
        }
        (Value::Array(g), Value::Array(a)) if g.len() == a.len() => {
            for (i, (gv, av)) in g.iter().zip(a).enumerate() {
                diff(&format!("{path}[{i}]"), gv, av, out);
            }
        }
        _ if golden == actual => {}
        _ => out.push(format!("{path}: golden {golden}, got {actual}")),
    }
}

pub fn run(only: Option<&str>, dir: &Path, bless: bool, list: bool) -> Result<u8> {
    if list {
        for case in CASES {
            println!("{:<24} {}", case.id, case.description);
        }
        return Ok(EXIT_CERTIFIED);
    }
    let selected: Vec<&Case> = CASES.iter().filter(|c| only.is_none_or(|id| c.id == id)).collect();
    if selected.is_empty() {
        bail!("no example named {:?}; see `repro --list`", only.unwrap_or_default());
    }
    let mut mismatches = 0;
    let mut missing = 0;
    for case in selected {
        let actual = json!({
            "schema": blowup_positivity::SCHEMA_VERSION,
            "id": case.id,
            "description": case.description,
            "result": (case.build)().with_context(|| format!("example {}", case.id))?,
        });
        let path = dir.join(format!("{}.json", case.id));
        if bless {
            fs::create_dir_all(dir)?;
            fs::write(&path, serde_json::to_string_pretty(&actual)? + "\n")?;
            println!("BLESS {:<24} {}", case.id, path.display());
            continue;
        }
        let Ok(text) = fs::read_to_string(&path) else {
            println!("MISSING {:<22} {}", case.id, path.display());
            missing += 1;
            continue;
        };
        let golden: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let mut diffs = Vec::new();
        diff("", &golden, &actual, &mut diffs);
        if diffs.is_empty() {
            println!("PASS  {:<24} {}", case.id, case.description);
        } else {
            mismatches += 1;
            println!("FAIL  {:<24} {}", case.id, case.description);
            for d in diffs {
                println!("      {d}");
            }
        }
    }
    Ok(if missing > 0 {
        EXIT_INVALID
    } else if mismatches > 0 {
        EXIT_NOT_CERTIFIED
    } else {
        EXIT_CERTIFIED
    })
}
