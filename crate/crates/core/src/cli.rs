//! Command line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::{gradation_type, leibniz_defect, StructureTable};
use crate::families::FamilyParams;
use crate::io::{canonical_json, read_json, write_json};
use crate::isomorphism::{
    decide_iso, dedup, oracle_transform, transform_params, IsoVerdict, IsoWitness, SearchConfig, Witness,
};
use crate::{random, Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDING: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INADMISSIBLE: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "filiform", version, about = "Filiform Leibniz algebra toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Via {
    /// Triangular recurrence on the parameters.
    Theorem,
    /// Change of basis on the full table.
    Oracle,
}

#[derive(Debug, clap::Args)]
pub struct SearchArgs {
    /// Seed of the witness search.
    #[arg(long, env = "FILIFORM_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Residual tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Number of search starts.
    #[arg(long, default_value_t = 64)]
    pub starts: usize,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig { tol: self.tol, starts: self.starts, seed: self.seed, ..SearchConfig::default() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the structure table of a parameter file.
    Build {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the Leibniz identity on every basis triple.
    CheckLeibniz {
        #[arg(long)]
        table: PathBuf,
    },
    /// Print the type of the naturally graded algebra.
    Grade {
        #[arg(long)]
        table: PathBuf,
    },
    /// Transform parameters by a witness.
    Transform {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Via::Theorem)]
        via: Via,
    },
    /// Decide whether two parameter files give isomorphic algebras.
    Iso {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Partition a list of parameter sets into isomorphism classes.
    Dedup {
        #[arg(long)]
        list: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compare the parameter recurrence with the change-of-basis oracle on random inputs.
    OracleCheck {
        #[arg(long)]
        family: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "FILIFORM_SEED", default_value_t = 0)]
        seed: u64,
    },
}

/// Exit code for a failed command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InadmissibleWitness(_) => EXIT_INADMISSIBLE,
        _ => EXIT_INPUT,
    }
}

fn describe_witness(w: &IsoWitness) -> String {
    match w {
        IsoWitness::Exact(w) => {
            let mut s = format!("A = {}, B = {}", w.a, w.b);
            if let Some(d) = &w.d {
                s.push_str(&format!(", D = {d}"));
            }
            s
        }
        IsoWitness::Approximate(w) => {
            let mut s = format!("A ~ {}, B ~ {}", w.a, w.b);
            if let Some(d) = &w.d {
                s.push_str(&format!(", D ~ {d}"));
            }
            s
        }
    }
}

fn iso_exit(verdict: &IsoVerdict) -> i32 {
    match verdict {
        IsoVerdict::Isomorphic { .. } => EXIT_OK,
        IsoVerdict::NotIsomorphic { .. } => EXIT_FINDING,
        IsoVerdict::Unknown { .. } => EXIT_UNKNOWN,
    }
}

/// Runs a parsed command, writing reports to `out`; returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let io_err = |e: std::io::Error| Error::Parse(e.to_string());
    match cli.command {
        Command::Build { params, out: path } => {
            let p: FamilyParams = read_json(&params)?;
            write_json(&path, &p.table())?;
            Ok(EXIT_OK)
        }
        Command::CheckLeibniz { table } => {
            let t: StructureTable = read_json(&table)?;
            let defects = leibniz_defect(&t);
            if defects.is_empty() {
                writeln!(out, "OK").map_err(io_err)?;
                return Ok(EXIT_OK);
            }
            for d in &defects {
                let coords: Vec<String> = d.defect.coords().iter().map(ToString::to_string).collect();
                writeln!(out, "defect at (e_{}, e_{}, e_{}): [{}]", d.i, d.j, d.k, coords.join(", ")).map_err(io_err)?;
            }
            Ok(EXIT_FINDING)
        }
        Command::Grade { table } => {
            let t: StructureTable = read_json(&table)?;
            writeln!(out, "{}", gradation_type(&t)).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Transform { params, witness, out: path, via } => {
            let p: FamilyParams = read_json(&params)?;
            let w: Witness = read_json(&witness)?;
            let q = match via {
                Via::Theorem => transform_params(&p, &w)?,
                Via::Oracle => oracle_transform(&p, &w)?,
            };
            write_json(&path, &q)?;
            Ok(EXIT_OK)
        }
        Command::Iso { left, right, search } => {
            let p: FamilyParams = read_json(&left)?;
            let q: FamilyParams = read_json(&right)?;
            let verdict = decide_iso(&p, &q, &search.config())?;
            if search.json {
                writeln!(out, "{}", verdict.to_json()).map_err(io_err)?;
            } else {
                match &verdict {
                    IsoVerdict::Isomorphic { witness, residual } => {
                        writeln!(out, "isomorphic: {} (residual {residual:e})", describe_witness(witness))
                    }
                    IsoVerdict::NotIsomorphic { certificate } => {
                        writeln!(out, "not isomorphic: {certificate}")
                    }
                    IsoVerdict::Unknown { starts, best_residual } => {
                        writeln!(out, "unknown: no witness after {starts} starts (best residual {best_residual:e})")
                    }
                }
                .map_err(io_err)?;
            }
            Ok(iso_exit(&verdict))
        }
        Command::Dedup { list, out: path, search } => {
            let items: Vec<FamilyParams> = read_json(&list)?;
            let report = dedup(&items, &search.config())?;
            let body = json!({
                "classes": report.classes,
                "representatives": report.classes.iter().map(|c| &items[c[0]]).collect::<Vec<_>>(),
                "unresolved": report.unresolved,
            });
            write_json(&path, &body)?;
            if search.json {
                writeln!(out, "{}", canonical_json(&body)?.trim_end()).map_err(io_err)?;
            } else {
                writeln!(
                    out,
                    "{} classes, {} unresolved pairs",
                    report.classes.len(),
                    report.unresolved.len()
                )
                .map_err(io_err)?;
            }
            Ok(EXIT_OK)
        }
        Command::OracleCheck { family, n, trials, seed } => {
            if family != 1 && family != 2 {
                return Err(Error::Parse(format!("family must be 1 or 2, got {family}")));
            }
            if n < 3 {
                return Err(Error::DimensionTooSmall(n));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut agree = 0;
            for _ in 0..trials {
                let p = random::params(&mut rng, family, n, 3);
                let w = random::witness(&mut rng, family, 3);
                if transform_params(&p, &w)? == oracle_transform(&p, &w)? {
                    agree += 1;
                }
            }
            writeln!(out, "{agree}/{trials} exact agreement").map_err(io_err)?;
            Ok(if agree == trials { EXIT_OK } else { EXIT_FINDING })
        }
    }
}
