mod check;
mod repro;

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use blowup_positivity::criteria::{min_degree, CertifierId, CriteriaConfig, Multiplicities};
use blowup_positivity::inequalities::{
    sweep_lemma_key, sweep_lemma_key1, sweep_lemma_key2_exhaustive, sweep_lemma_key2_sampled,
};
use blowup_positivity::interpolation::{minimal_report, OracleConfig};
use blowup_positivity::weyl::{
    enumerate_exceptional_classes, is_exceptional_class, reduce_to_fundamental, DEFAULT_DEGREE_CAP,
};
use blowup_positivity::{DivisorClass, Property};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

pub const EXIT_CERTIFIED: u8 = 0;
pub const EXIT_NOT_CERTIFIED: u8 = 1;
pub const EXIT_CONDITIONAL: u8 = 2;
pub const EXIT_INVALID: u8 = 3;

#[derive(Parser)]
#[command(name = "blowup-positivity", version, about = "Positivity certificates for line bundles on blow-ups of the plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    Ample,
    Gg,
    Va,
}

impl PropertyArg {
    pub fn property(self) -> Property {
        match self {
            PropertyArg::Ample => Property::Ample,
            PropertyArg::Gg => Property::GloballyGenerated,
            PropertyArg::Va => Property::VeryAmple,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Certify ampleness, global generation or very ampleness.
    Check {
        property: PropertyArg,
        /// Class as "d; n1 n2 ... nr".
        class: Option<String>,
        /// Uniform bundle as d=.. r=.. m=..
        #[arg(long, num_args = 3, value_name = "KEY=VALUE")]
        uniform: Option<Vec<String>>,
        /// auto, conditional, permissive, or a certifier id.
        #[arg(long, default_value = "auto")]
        mode: String,
        #[arg(long)]
        permissive: bool,
        /// Fall back to conditional certificates.
        #[arg(long)]
        conditional: bool,
        /// Degree cap for (-1)-classes on 9 or more points.
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        cap: i64,
        /// Nef class for the ample-nef-decomposition certifier.
        #[arg(long)]
        nef_class: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a class into the fundamental domain of the Weyl group.
    Reduce {
        class: String,
        #[arg(long)]
        json: bool,
    },
    /// Test a class for being a (-1)-class, or list (-1)-classes.
    Exceptional {
        class: Option<String>,
        /// Number of points, as r=N.
        #[arg(long, value_name = "r=N")]
        enumerate: Option<String>,
        #[arg(long)]
        cap: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Smallest degree a certifier accepts.
    Mindeg {
        /// ample, gg, va, or a certifier id.
        certifier: String,
        /// Multiplicities as "n1 n2 ... nr".
        #[arg(long)]
        mults: Option<String>,
        /// Uniform multiplicities as r=.. m=..
        #[arg(long, num_args = 2, value_name = "KEY=VALUE")]
        uniform: Option<Vec<String>>,
        #[arg(long)]
        permissive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Dimension of a linear system by interpolation over a prime field.
    Dim {
        class: String,
        #[arg(long)]
        prime: Option<u64>,
        /// Defaults to BLOWUP_POSITIVITY_SEED or a fixed value.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Re-run the worked examples and compare with the golden files.
    Repro {
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        /// Overwrite the golden files with the current output.
        #[arg(long)]
        bless: bool,
        #[arg(long)]
        list: bool,
    },
    /// Brute-force sweeps of the multiplicity inequalities.
    Sweep {
        #[arg(value_parser = ["lemma-key", "lemma-key1", "lemma-key2"])]
        which: String,
    },
}

pub fn parse_class(s: &str) -> Result<DivisorClass> {
    Ok(s.parse::<DivisorClass>()?)
}

pub fn parse_pairs(items: &[String], keys: &[&str]) -> Result<HashMap<String, i64>> {
    let mut out = HashMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("expected KEY=VALUE, got {item:?}"))?;
        if !keys.contains(&k) {
            bail!("unknown key {k:?}, expected one of {keys:?}");
        }
        let v: i64 = v.parse().with_context(|| format!("{k} must be an integer"))?;
        if out.insert(k.to_string(), v).is_some() {
            bail!("{k} given twice");
        }
    }
    for k in keys {
        if !out.contains_key(*k) {
            bail!("missing {k}=..");
        }
    }
    Ok(out)
}

pub fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { property, class, uniform, mode, permissive, conditional, cap, nef_class, json } => {
            let request = check::CheckRequest::build(
                property, class, uniform, &mode, permissive, conditional, cap, nef_class,
            )?;
            let verdict = check::run(&request)?;
            if json {
                print_json(&verdict)?;
            } else {
                check::print_text(&verdict);
            }
            Ok(check::exit_code(&verdict))
        }
        Command::Reduce { class, json } => {
            let class = parse_class(&class)?;
            let trace = reduce_to_fundamental(&class)?;
            if json {
                print_json(&trace)?;
            } else {
                println!("start: {}", trace.start);
                println!("end: {}", trace.end);
                println!("terminal: {:?}", trace.terminal);
                println!("cremona steps: {}", trace.cremona_steps());
                println!("steps: {:?}", trace.steps);
            }
            Ok(EXIT_CERTIFIED)
        }
        Command::Exceptional { class, enumerate, cap, json } => match (class, enumerate) {
            (Some(class), None) => {
                let check = is_exceptional_class(&parse_class(&class)?)?;
                if json {
                    print_json(&check)?;
                } else {
                    println!("{}: {}", check.class, if check.is_exceptional { "exceptional" } else { "not exceptional" });
                }
                Ok(if check.is_exceptional { EXIT_CERTIFIED } else { EXIT_NOT_CERTIFIED })
            }
            (None, Some(arg)) => {
                let raw = arg.strip_prefix("r=").unwrap_or(&arg);
                let r: usize = raw.parse().with_context(|| format!("bad point count {arg:?}"))?;
                let classes = enumerate_exceptional_classes(r, cap)?;
                if json {
                    print_json(&json!({ "r": r, "cap": cap, "count": classes.len(), "classes": classes }))?;
                } else {
                    for c in &classes {
                        println!("{c}");
                    }
                }
                Ok(EXIT_CERTIFIED)
            }
            _ => bail!("give either a class or --enumerate r=N"),
        },
        Command::Mindeg { certifier, mults, uniform, permissive, json } => {
            let data = match (mults, uniform) {
                (Some(m), None) => Multiplicities::General(
                    m.split_whitespace()
                        .map(|x| x.parse::<i64>().with_context(|| format!("bad multiplicity {x:?}")))
                        .collect::<Result<_>>()?,
                ),
                (None, Some(pairs)) => {
                    let p = parse_pairs(&pairs, &["r", "m"])?;
                    let r = usize::try_from(p["r"]).context("r must be positive")?;
                    Multiplicities::Uniform { r, m: p["m"] }
                }
                _ => bail!("give either --mults or --uniform r=.. m=.."),
            };
            let uniform = matches!(data, Multiplicities::Uniform { .. });
            let id = match certifier.as_str() {
                "ample" if uniform => CertifierId::AmpleUniform,
                "ample" => CertifierId::AmpleGeneral,
                "gg" if uniform => CertifierId::GgUniform,
                "gg" => CertifierId::GgGeneral,
                "va" => CertifierId::VaUniform,
                other => other.parse()?,
            };
            let cfg = CriteriaConfig { permissive, ..CriteriaConfig::default() };
            let d = min_degree(id, &data, &cfg)?;
            if json {
                print_json(&json!({ "certifier": id, "min_degree": d }))?;
            } else {
                println!("{d}");
            }
            Ok(EXIT_CERTIFIED)
        }
        Command::Dim { class, prime, seed, trials } => {
            let mut cfg = OracleConfig::from_env()?;
            if let Some(p) = prime {
                cfg.prime = p;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(t) = trials {
                cfg.trials = t;
            }
            print_json(&minimal_report(&parse_class(&class)?, &cfg)?)?;
            Ok(EXIT_CERTIFIED)
        }
        Command::Repro { only, golden_dir, bless, list } => {
            let dir = golden_dir.unwrap_or_else(repro::default_golden_dir);
            repro::run(only.as_deref(), &dir, bless, list)
        }
        Command::Sweep { which } => {
            let report = match which.as_str() {
                "lemma-key" => sweep_lemma_key(2..=6, 4, 5),
                "lemma-key1" => sweep_lemma_key1(2..=6, 12..=15),
                _ => {
                    let mut report = sweep_lemma_key2_exhaustive(9, 12..=15);
                    for r in [10, 11] {
                        let s = sweep_lemma_key2_sampled(r, 12..=15, 20_000, r as u64);
                        report.cases += s.cases;
                        report.violations += s.violations;
                    }
                    report
                }
            };
            print_json(&report)?;
            Ok(if report.violations == 0 { EXIT_CERTIFIED } else { EXIT_NOT_CERTIFIED })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_CERTIFIED };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
