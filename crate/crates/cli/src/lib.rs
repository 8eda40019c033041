//! Command-line front end: a pure calculator over bundle description
//! files. One command per invocation, deterministic output, no state.

pub mod report;
pub mod specfile;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use higgsnef::chow::{ChowAmbient, DivisorClass};
use higgsnef::model::SplitHiggsBundle;
use higgsnef::rat::parse_rat;
use higgsnef::{chern, higgs_grass, stability};

use report::Report;
use specfile::SpecFileError;

#[derive(Debug, Parser)]
#[command(
    name = "higgsnef",
    version,
    about = "Exact semistability and nef-class calculator for split nilpotent Higgs bundles on curves"
)]
pub struct Cli {
    /// Emit a machine-readable JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the structural invariants of a bundle file.
    Validate { file: PathBuf },
    /// Slope deg/rank of the bundle, or of a subset of atoms.
    Slope {
        file: PathBuf,
        /// Comma-separated atom labels.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Ordinary (arrow-blind) semistability over all coordinate subsheaves.
    Stability { file: PathBuf },
    /// Higgs semistability over arrow-closed coordinate subsheaves.
    HiggsStability { file: PathBuf },
    /// Decide nefness of a*xi + b*F on P(E).
    Nef {
        /// Coefficient of xi, as an exact rational "p" or "p/q".
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Coefficient of F, as an exact rational "p" or "p/q".
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        file: PathBuf,
    },
    /// The divisor classes lambda and theta_s attached to the bundle.
    Classes { file: PathBuf },
    /// Component decomposition of the rank-one Higgs-quotient scheme.
    Grass1 { file: PathBuf },
    /// Local hyperquadric equations of the rank-one Higgs-quotient scheme.
    Equations { file: PathBuf },
    /// Restriction of theta_s to the quotient section with the given kernel.
    Theta {
        /// Comma-separated atom labels of the (arrow-closed) kernel.
        #[arg(long)]
        subset: String,
        file: PathBuf,
    },
    /// Self-intersection (lambda_s)^s of the quotient with the given kernel.
    Pairing {
        /// Comma-separated atom labels of the (arrow-closed) kernel.
        #[arg(long)]
        subset: String,
        file: PathBuf,
    },
    /// Nef/curve cone report for P(E), with witnesses when unstable.
    Miyaoka { file: PathBuf },
    /// The discriminant class Delta and its tensor identity at the given rank.
    Delta {
        #[arg(long)]
        rank: i64,
    },
    /// Reproduce the genus-2 chain with nef lambda_1 that is Higgs-unstable.
    DemoCounterexample,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error in {path}: {source}")]
    Spec {
        path: PathBuf,
        #[source]
        source: SpecFileError,
    },
    #[error("invalid bundle in {path}:\n{report}")]
    Invalid { path: PathBuf, report: String },
    #[error(transparent)]
    Core(#[from] higgsnef::Error),
    #[error("unknown atom label {0}")]
    UnknownLabel(String),
}

impl RunError {
    /// Exit code contract: 2 for invalid input, 1 for internal
    /// consistency failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Core(e) if e.is_internal() => 1,
            _ => 2,
        }
    }
}

fn load_bundle(path: &Path) -> Result<SplitHiggsBundle, RunError> {
    let text = std::fs::read_to_string(path).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let bundle = specfile::parse_bundle_spec(&text).map_err(|source| RunError::Spec {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(bundle)
}

/// Loads a bundle and requires it to be structurally valid; violations
/// are reported and mapped to exit code 2.
fn load_valid_bundle(path: &Path) -> Result<SplitHiggsBundle, RunError> {
    let bundle = load_bundle(path)?;
    let validation = bundle.validate();
    if !validation.is_valid() {
        let report: Vec<String> = validation
            .violations
            .iter()
            .map(|v| format!("- {v}"))
            .collect();
        return Err(RunError::Invalid {
            path: path.to_path_buf(),
            report: report.join("\n"),
        });
    }
    Ok(bundle)
}

/// Maps comma-separated labels to sorted, deduplicated atom indices.
fn parse_subset(bundle: &SplitHiggsBundle, text: &str) -> Result<Vec<usize>, RunError> {
    let mut subset = Vec::new();
    for label in text.split(',') {
        let label = label.trim();
        let index = bundle
            .atoms
            .iter()
            .position(|a| a.label == label)
            .ok_or_else(|| RunError::UnknownLabel(label.to_string()))?;
        subset.push(index);
    }
    subset.sort_unstable();
    subset.dedup();
    Ok(subset)
}

pub fn run(cli: &Cli) -> Result<Report, RunError> {
    match &cli.command {
        Command::Validate { file } => {
            let bundle = load_bundle(file)?;
            Ok(report::render_validate(&bundle.validate()))
        }
        Command::Slope { file, subset } => {
            let bundle = load_valid_bundle(file)?;
            let subset = subset
                .as_deref()
                .map(|text| parse_subset(&bundle, text))
                .transpose()?;
            let slope = bundle.slope(subset.as_deref())?;
            Ok(report::render_slope(&bundle, subset.as_deref(), &slope))
        }
        Command::Stability { file } => {
            let bundle = load_valid_bundle(file)?;
            let verdict = stability::ordinary_semistability(&bundle)?;
            Ok(report::render_verdict(&bundle, &verdict))
        }
        Command::HiggsStability { file } => {
            let bundle = load_valid_bundle(file)?;
            let verdict = stability::higgs_semistability(&bundle)?;
            Ok(report::render_verdict(&bundle, &verdict))
        }
        Command::Nef { a, b, file } => {
            let bundle = load_valid_bundle(file)?;
            let ambient = ChowAmbient::from_bundle(&bundle)?;
            let divisor = DivisorClass::new(ambient, parse_rat(a)?, parse_rat(b)?);
            let verdict = stability::nef_check(&divisor, &bundle)?;
            Ok(report::render_nef(&divisor, &verdict))
        }
        Command::Classes { file } => {
            let bundle = load_valid_bundle(file)?;
            let ambient = ChowAmbient::from_bundle(&bundle)?;
            let lambda = DivisorClass::lambda(ambient);
            let line_atoms = bundle.all_line_atoms();
            let mut thetas = Vec::new();
            if line_atoms {
                for s in 1..ambient.rank {
                    thetas.push((s, higgsnef::chow::theta_via_plucker(&bundle, s)?));
                }
            }
            Ok(report::render_classes(
                &ambient, &lambda, &thetas, line_atoms,
            ))
        }
        Command::Grass1 { file } => {
            let bundle = load_valid_bundle(file)?;
            let profile = higgs_grass::cokernel_profile(&bundle)?;
            let components = higgs_grass::hg1_components(&bundle)?;
            let total = higgs_grass::hg1_total_class(&bundle)?;
            Ok(report::render_grass1(
                &bundle,
                &profile,
                &components,
                &total,
            ))
        }
        Command::Equations { file } => {
            let bundle = load_valid_bundle(file)?;
            let equations = higgs_grass::local_equations_for(&bundle)?;
            Ok(report::render_equations(&equations))
        }
        Command::Theta { subset, file } => {
            let bundle = load_valid_bundle(file)?;
            let subset = parse_subset(&bundle, subset)?;
            let value = higgs_grass::theta_restriction(&bundle, &subset)?;
            let quotient_rank = bundle.total_rank() - bundle.subset_rank(&subset);
            Ok(report::render_theta(
                &bundle,
                &subset,
                quotient_rank,
                &value,
            ))
        }
        Command::Pairing { subset, file } => {
            let bundle = load_valid_bundle(file)?;
            let subset = parse_subset(&bundle, subset)?;
            let value = stability::lambda_quotient_pairing(&bundle, &subset)?;
            let quotient_rank = bundle.total_rank() - bundle.subset_rank(&subset);
            Ok(report::render_pairing(
                &bundle,
                &subset,
                quotient_rank,
                &value,
            ))
        }
        Command::Miyaoka { file } => {
            let bundle = load_valid_bundle(file)?;
            let cone = stability::miyaoka_report(&bundle)?;
            Ok(report::render_miyaoka(&cone))
        }
        Command::Delta { rank } => {
            let delta = chern::delta_class(*rank)?;
            let tensor = if (2..=chern::MAX_EXPANSION_RANK).contains(rank) {
                Some(chern::c2_tensor_dual(*rank)?)
            } else {
                None
            };
            let verified = match &tensor {
                Some(tensor) => {
                    let doubled = delta.scale(&higgsnef::rat::rat_int(2 * rank));
                    if &doubled != tensor {
                        return Err(higgsnef::Error::InternalCheck(format!(
                            "tensor identity failed at rank {rank}: 2r Delta = {doubled}, c2(E tensor E*) = {tensor}"
                        ))
                        .into());
                    }
                    true
                }
                None => false,
            };
            Ok(report::render_delta(
                *rank,
                &delta,
                tensor.as_ref(),
                verified,
            ))
        }
        Command::DemoCounterexample => {
            let demo = higgs_grass::counterexample_demo()?;
            Ok(report::render_demo(&demo))
        }
    }
}
