//! Command-line front end for `equimilnor`.
//!
//! [`run`] maps a parsed command line to an [`Output`] holding the exit code
//! and the text to print, so the binary is a thin wrapper and tests can
//! drive everything in-process.

mod job;
mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use equimilnor::doubling::{check_reality, double_action, double_germ, doubled_names, fixed_point_free};
use equimilnor::equivariant::graded_milnor_with;
use equimilnor::group::{is_real, orbit_length_oracle, shortest_orbit_length, has_fixed_points_outside_origin};
use equimilnor::standard_basis::{jacobian_standard_basis, Mu, Staircase, StandardBasisConfig};
use equimilnor::verification::{
    enumerate_and_verify, load_corpus, SweepConfig, SweepMode, Verifier, VerifyConfig, DEFAULT_DOUBLING_MU_CAP,
    SWEEP_COEFFICIENT_BITS,
};
use equimilnor::Error;

pub use job::{parse_job, Format, Job, JobError, JobOptions, SweepKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

const DEFAULT_DMAX: u32 = 6;
const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = "equimilnor", version, about = "Milnor numbers and orbit-length bounds for invariant germs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Job file with `key = value` lines.
    #[arg(long, global = true)]
    pub job: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest monomial degree for `sweep`.
    #[arg(long, global = true)]
    pub dmax: Option<u32>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest Milnor number for which the doubled germ is computed.
    #[arg(long, global = true)]
    pub mu_cap: Option<usize>,
    /// Sweep mode: exhaustive, signed or random.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Number of germs for a random sweep.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Milnor number of `f`.
    Mu,
    /// Standard basis and monomial basis of the Jacobian ideal.
    Basis,
    /// Character-graded Milnor algebra.
    Grade,
    /// Shortest orbit length of the action.
    Ltau,
    /// The doubled germ and action.
    Double,
    /// Check the inequalities on the job's germ and action.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
    },
    /// Enumerate invariant germs and check the main bound on each.
    Sweep,
    /// Run every check on the built-in corpus.
    Corpus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Main,
    Chulkov,
    Roberts,
    Doubling,
    Quadratic,
    Reduce,
    All,
}

/// Exit code plus the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Job(JobError),
    Io(String),
    Core(Error),
}

impl From<JobError> for Failure {
    fn from(e: JobError) -> Self {
        Failure::Job(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Job(_) | Failure::Io(_) => EXIT_INPUT,
            Failure::Core(e) => match e {
                Error::NotIsolated
                | Error::BoundExceeded { .. }
                | Error::CoefficientBoundExceeded { .. }
                | Error::OracleInconclusive { .. }
                | Error::CapExceeded(_)
                | Error::DoublingCapExceeded { .. }
                | Error::CorpusMismatch { .. } => EXIT_COMPUTATION,
                _ => EXIT_INPUT,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Job(e) => format!("job file: {e}"),
            Failure::Io(e) => e.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

/// A finished command: the document to print and whether any check failed.
struct Report {
    human: String,
    json: String,
    failed: bool,
}

pub fn run(cli: &Cli) -> Output {
    let mut stderr = String::new();
    let job = match &cli.job {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match parse_job(&text) {
                Ok(job) => Some(job),
                Err(e) => return finish(cli, None, Err(Failure::Job(e)), stderr),
            },
            Err(e) => {
                let f = Failure::Io(format!("cannot read {}: {e}", path.display()));
                return finish(cli, None, Err(f), stderr);
            }
        },
        None => None,
    };
    if let Some(job) = &job {
        for w in &job.warnings {
            stderr.push_str(&format!("warning: {w}\n"));
        }
    }
    let result = dispatch(cli, job.as_ref());
    finish(cli, job.as_ref(), result, stderr)
}

fn format_of(cli: &Cli, job: Option<&Job>) -> Format {
    cli.format
        .or(job.and_then(|j| j.options.format))
        .unwrap_or(Format::Human)
}

fn finish(cli: &Cli, job: Option<&Job>, result: Result<Report, Failure>, mut stderr: String) -> Output {
    let format = format_of(cli, job);
    let (code, body) = match result {
        Ok(r) => {
            let code = if r.failed { EXIT_CHECK_FAILED } else { EXIT_OK };
            (code, if format == Format::Json { r.json } else { r.human })
        }
        Err(f) => {
            stderr.push_str(&format!("error: {}\n", f.message()));
            let body = match format {
                Format::Json => render::error_json(&f.message(), f.code()),
                Format::Human => String::new(),
            };
            (f.code(), body)
        }
    };
    match &cli.out {
        Some(path) if !body.is_empty() => {
            if let Err(e) = std::fs::write(path, &body) {
                stderr.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
                return Output {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr,
                };
            }
            Output {
                code,
                stdout: String::new(),
                stderr,
            }
        }
        _ => Output {
            code,
            stdout: body,
            stderr,
        },
    }
}

fn need_job(job: Option<&Job>) -> Result<&Job, Failure> {
    job.ok_or_else(|| Failure::Io("this command needs --job <path>".into()))
}

fn sb_config(job: Option<&Job>) -> StandardBasisConfig {
    let mut c = StandardBasisConfig::default();
    if let Some(b) = job.and_then(|j| j.options.degree_bound) {
        c.degree_bound = b;
    }
    c
}

fn verify_config(cli: &Cli, job: Option<&Job>) -> VerifyConfig {
    VerifyConfig {
        standard_basis: sb_config(job),
        doubling_mu_cap: cli
            .mu_cap
            .or(job.and_then(|j| j.options.mu_cap))
            .unwrap_or(DEFAULT_DOUBLING_MU_CAP),
        variables: job.map(|j| j.vars.clone()),
    }
}

fn dispatch(cli: &Cli, job: Option<&Job>) -> Result<Report, Failure> {
    match cli.command {
        Command::Mu => {
            let job = need_job(job)?;
            let f = job.germ()?;
            let sb = jacobian_standard_basis(f, &sb_config(Some(job)))?;
            let Mu::Finite(mu) = sb.mu else {
                return Err(Error::NotIsolated.into());
            };
            Ok(render::mu(job, f, mu))
        }
        Command::Basis => {
            let job = need_job(job)?;
            let f = job.germ()?;
            let sb = jacobian_standard_basis(f, &sb_config(Some(job)))?;
            let Staircase::Finite(basis) = &sb.standard_monomials else {
                return Err(Error::NotIsolated.into());
            };
            Ok(render::basis(job, f, &sb, basis))
        }
        Command::Grade => {
            let job = need_job(job)?;
            let f = job.germ()?;
            let a = job.action_or_trivial();
            let g = graded_milnor_with(f, &a, &sb_config(Some(job)))?;
            Ok(render::grade(job, f, &a, &g))
        }
        Command::Ltau => {
            let job = need_job(job)?;
            let a = job.action()?;
            let l = shortest_orbit_length(a)?;
            let oracle = orbit_length_oracle(a)?;
            Ok(render::ltau(job, a, l, oracle, !has_fixed_points_outside_origin(a), is_real(a)))
        }
        Command::Double => {
            let job = need_job(job)?;
            let f = job.germ()?;
            let a = job.action_or_trivial();
            let d = double_germ(f);
            let da = double_action(&a);
            let names = doubled_names(&job.vars);
            Ok(render::double(&names, &d.doubled, &da.doubled, check_reality(&da), fixed_point_free(&da)))
        }
        Command::Verify { target } => {
            let job = need_job(job)?;
            let f = job.germ()?;
            let a = job.action_or_trivial();
            let v = Verifier::new(verify_config(cli, Some(job)));
            let reports = match target {
                VerifyTarget::Main => vec![v.main(f, &a)?],
                VerifyTarget::Chulkov => vec![v.chulkov(f, &a)?],
                VerifyTarget::Roberts => vec![v.roberts_doubled(f, &a)?],
                VerifyTarget::Doubling => vec![v.doubling(f, &a)?],
                VerifyTarget::Quadratic => vec![v.quadratic_step(f, &a)?],
                VerifyTarget::Reduce => vec![v.reduce_fixed(f, &a)?],
                VerifyTarget::All => v.all(f, &a)?,
            };
            Ok(render::verify(target, &reports))
        }
        Command::Sweep => {
            let job = need_job(job)?;
            let a = job.action()?;
            let opts = &job.options;
            let kind = match cli.mode.as_deref() {
                None => opts.mode.unwrap_or(SweepKind::Exhaustive),
                Some("exhaustive") => SweepKind::Exhaustive,
                Some("signed") => SweepKind::Signed,
                Some("random") | Some("randomized") => SweepKind::Random,
                Some(other) => return Err(Failure::Io(format!("unknown sweep mode `{other}`"))),
            };
            let mode = match kind {
                SweepKind::Exhaustive => SweepMode::Exhaustive { signed: false },
                SweepKind::Signed => SweepMode::Exhaustive { signed: true },
                SweepKind::Random => SweepMode::Randomized {
                    seed: cli.seed.or(opts.seed).unwrap_or(0),
                    samples: cli.samples.or(opts.samples).unwrap_or(DEFAULT_SAMPLES),
                },
            };
            let mut config = SweepConfig::new(cli.dmax.or(opts.dmax).unwrap_or(DEFAULT_DMAX), mode);
            config.max_terms = opts.max_terms;
            config.verify = VerifyConfig {
                standard_basis: StandardBasisConfig {
                    coefficient_bits: SWEEP_COEFFICIENT_BITS,
                    ..sb_config(Some(job))
                },
                ..verify_config(cli, Some(job))
            };
            let summary = enumerate_and_verify(a, &config)?;
            Ok(render::sweep(&job.vars, &summary))
        }
        Command::Corpus => {
            let entries = load_corpus()?;
            let v = Verifier::new(VerifyConfig {
                variables: None,
                ..verify_config(cli, None)
            });
            let mut results = Vec::with_capacity(entries.len());
            for e in &entries {
                let mu = equimilnor::standard_basis::milnor_number_with(&e.germ, &sb_config(job))?;
                let mut per_action = Vec::with_capacity(e.actions.len());
                for a in &e.actions {
                    per_action.push((a, v.all(&e.germ, &a.action)?));
                }
                results.push((e, mu, per_action));
            }
            Ok(render::corpus(&results))
        }
    }
}
