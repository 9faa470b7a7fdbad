// SPDX-License-Identifier: Apache-2.0

//! `s4census`: enumerate cubic and quartic fields and check S4 invariants.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use s4census_core::arith::{ConductorShape, DiscriminantShape};
use s4census_core::census::checks::parse_checks;
use s4census_core::census::io::{write_jsonl, Header};
use s4census_core::census::{
    enumerate_cubic_fields_with, enumerate_quartic_fields_with, CensusOptions, ClassGroupCache, GroupFilter,
};
use s4census_core::classgrp::{cubic_class_group, quadratic_class_group, ClassGroupData};
use s4census_core::orders::{canonical_polynomial_of, maximal_order};
use s4census_core::poly::IntPolynomial;
use s4census_core::s4param::{
    conductor_count_bound, discriminant_count_bound, quadratic_resolvent_disc, s4_data, QuarticField,
};
use s4census_core::Error;

/// Largest census bound accepted without `--force`.
const MAX_DISC_LIMIT: u128 = 200_000;

#[derive(Parser, Debug)]
#[command(name = "s4census", version, about = "Census of cubic and quartic number fields with S4 invariants")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "S4CENSUS_JOBS")]
    jobs: Option<usize>,
    /// Directory for cached class groups.
    #[arg(long, global = true, env = "S4CENSUS_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write every field with |disc| <= X as JSON lines.
    Enumerate {
        #[arg(long)]
        max_disc: u128,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(3..=4))]
        degree: u8,
        #[arg(long, default_value = "all")]
        group: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Accept bounds above the resource limit.
        #[arg(long)]
        force: bool,
    },
    /// Run verification passes over the census to X.
    Verify {
        #[arg(long)]
        max_disc: u128,
        #[arg(long, default_value = "tables,shape,gerth,fibers,lemma1,lemma2,scaling")]
        checks: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// The triple (a, b, cS) of an S4 quartic field.
    Triple {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Conductor away from 2 and 3 of an S4 quartic field.
    Conductor {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Class group of a quadratic or cubic field.
    #[command(group(ArgGroup::new("field").required(true).args(["quadratic_disc", "poly"])))]
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        quadratic_disc: Option<i128>,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Counting bounds for a discriminant or conductor shape.
    #[command(group(ArgGroup::new("target").required(true).args(["disc", "conductor"])))]
    Bounds {
        #[arg(long)]
        disc: Option<u128>,
        #[arg(long)]
        conductor: Option<u128>,
        #[arg(long, default_value_t = 1.0)]
        constant: f64,
    },
}

enum Failure {
    Verification(Value),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification(_)
        | Error::TableViolation { .. }
        | Error::InconsistentTriple(_)
        | Error::Certification(_) => 1,
        Error::Range(_) => 3,
        Error::Io(_) | Error::Overflow(_) => 1,
        _ => 2,
    }
}

fn parse_poly(s: &str) -> Result<IntPolynomial, Error> {
    let f: IntPolynomial = s.parse()?;
    if f.is_zero() {
        return Err(Error::Parse("zero polynomial".into()));
    }
    Ok(f)
}

fn emit(output: Option<&PathBuf>, v: &Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(v)?;
    match output {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn check_range(x: u128, force: bool) -> Result<(), Error> {
    if x == 0 {
        return Err(Error::Domain("--max-disc must be positive".into()));
    }
    if x > MAX_DISC_LIMIT && !force {
        return Err(Error::Range(format!("--max-disc {x} exceeds the limit {MAX_DISC_LIMIT}; pass --force")));
    }
    Ok(())
}

fn class_json(cg: &ClassGroupData) -> Value {
    json!({
        "h": cg.order(),
        "elementary_divisors": cg.elementary_divisors,
        "rk2": cg.p_rank(2),
        "rk3": cg.p_rank(3),
        "certification": cg.certification,
    })
}

fn s4_field(poly: &str) -> Result<QuarticField, Error> {
    let k = QuarticField::new(&parse_poly(poly)?)?;
    quadratic_resolvent_disc(&k)?;
    Ok(k)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let jobs = cli.jobs.unwrap_or_else(s4census_core::par::available_jobs).max(1);
    let cache = match &cli.cache_dir {
        Some(d) => ClassGroupCache::with_dir(d)?,
        None => ClassGroupCache::in_memory(),
    };
    let opts = CensusOptions { jobs, cache: Some(&cache) };
    match cli.cmd {
        Cmd::Enumerate { max_disc, degree, group, output, force } => {
            check_range(max_disc, force)?;
            let group: GroupFilter = group.parse()?;
            let degree = degree as usize;
            if (degree == 3 && group == GroupFilter::S4) || (degree == 4 && group == GroupFilter::S3) {
                return Err(Error::Domain(format!("no {group:?} fields in degree {degree}")).into());
            }
            let records = if degree == 4 {
                enumerate_quartic_fields_with(max_disc, &opts)?
            } else {
                enumerate_cubic_fields_with(max_disc, &opts)?
            };
            let records: Vec<_> = records.into_iter().filter(|r| group.keeps(r.galois)).collect();
            let header = Header::new(degree, max_disc, group, records.len());
            match output {
                Some(p) => write_jsonl(BufWriter::new(File::create(p).map_err(Error::from)?), &header, &records)?,
                None => write_jsonl(std::io::stdout().lock(), &header, &records)?,
            }
        }
        Cmd::Verify { max_disc, checks, output, force } => {
            check_range(max_disc, force)?;
            let checks = parse_checks(&checks)?;
            let report = s4census_core::census::census_verify(max_disc, &checks, &opts)?;
            let v = serde_json::to_value(&report).map_err(Error::from)?;
            emit(output.as_ref(), &v)?;
            if !report.passed {
                let failed: Vec<_> = report.checks.iter().filter(|(_, r)| !r.passed).map(|(k, _)| k.clone()).collect();
                return Err(Failure::Verification(json!({ "failed_checks": failed })));
            }
        }
        Cmd::Triple { poly } => {
            let k = s4_field(&poly)?;
            let data = s4_data(&k)?;
            let m = canonical_polynomial_of(&data.resolvent)?;
            emit(
                None,
                &json!({
                    "poly": k.poly().coeffs(),
                    "disc": k.disc(),
                    "k_disc": data.k_disc,
                    "resolvent": { "poly": m.coeffs(), "disc": data.resolvent.field_disc() },
                    "triple": data.triple,
                    "c_23": "undetermined",
                    "tame": data.rows,
                }),
            )?;
        }
        Cmd::Conductor { poly } => {
            let k = s4_field(&poly)?;
            let data = s4_data(&k)?;
            emit(
                None,
                &json!({
                    "poly": k.poly().coeffs(),
                    "disc": k.disc(),
                    "conductor_S": data.conductor_s,
                    "conductor_23": "undetermined",
                    "shape": ConductorShape::parse(data.conductor_s)?,
                    "tame": data.rows,
                }),
            )?;
        }
        Cmd::Classgroup { quadratic_disc, poly } => {
            let v = match (quadratic_disc, poly) {
                (Some(d), _) => {
                    let mut v = class_json(&quadratic_class_group(d)?);
                    v["disc"] = json!(d);
                    v
                }
                (None, Some(p)) => {
                    let f = parse_poly(&p)?;
                    if f.degree() != 3 {
                        return Err(Error::UnsupportedDegree(f.degree()).into());
                    }
                    let f = if f.is_monic() { f } else { f.monicize() };
                    let ord = maximal_order(&f)?;
                    let mut v = class_json(&cubic_class_group(&ord)?);
                    v["disc"] = json!(ord.field_disc());
                    v
                }
                (None, None) => unreachable!("clap requires one of the arguments"),
            };
            emit(None, &v)?;
        }
        Cmd::Bounds { disc, conductor, constant } => {
            if !(constant.is_finite() && constant > 0.0) {
                return Err(Error::Domain("--constant must be positive".into()).into());
            }
            let v = match (disc, conductor) {
                (Some(d), _) => {
                    let shape = DiscriminantShape::parse(d)?;
                    json!({"disc": d, "shape": shape, "constant": constant,
                           "bound": discriminant_count_bound(&shape, constant)?})
                }
                (None, Some(n)) => {
                    let shape = ConductorShape::parse(n)?;
                    json!({"conductor": n, "shape": shape, "constant": constant,
                           "bound": conductor_count_bound(&shape, constant)?})
                }
                (None, None) => unreachable!("clap requires one of the arguments"),
            };
            emit(None, &v)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(v)) => {
            let _ = writeln!(std::io::stderr(), "verification failed: {v}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
