//! Command-line front end.
//!
//! Machine-readable results go to stdout (JSON or CSV); diagnostics go to
//! stderr. Exit codes: 0 success, 1 usage, 2 domain violation, 3 infeasible,
//! 4 resource guard.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coherence::{cross_coherence, gram_coherence_with, uniqueness_threshold, CoherenceMode, PairSet, Threshold};
use crate::error::{Error, Result};
use crate::extremal::{extremal_search, ExtremalOptions};
use crate::frame::Frame;
use crate::io::{self, FrameFile};
use crate::probe::conjecture_probe;
use crate::scalar::{self, Field, Scalar};
use crate::sparse::{l0_brute_force, measure_min_brute_force, SparseProblem};
use crate::uncertainty::{uncertainty_check, DEFAULT_SUPPORT_EPS};
use crate::validate::validate_frame;
use crate::zoo;

/// Version tag written in the `schema` column of every CSV row.
pub const CSV_SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Parser)]
#[command(name = "frameup", version, about = "Uncertainty principles and sparse recovery for discretized frames")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a frame and write it as a frame file
    Gen(GenArgs),
    /// Check the isometry and reconstruction axioms on random vectors
    Validate(ValidateArgs),
    /// Cross-coherence of two frames, or Gram coherence of one
    Coherence(CoherenceArgs),
    /// Evaluate both uncertainty inequalities for a vector
    Check(CheckArgs),
    /// Search for vectors closest to equality
    Extremal(ExtremalArgs),
    /// Exact sparse representation (l0 or measure minimization)
    Sparse(SparseArgs),
    /// Probe measure-minimal uniqueness below the coherence threshold
    Probe(ProbeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    CanonicalLp,
    SignedPermutation,
    DftPair,
    RandomParseval,
    Harmonic,
    AlternateDual,
    WeightedSplit,
    MercedesBenz,
    ThreeAtomPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Real,
    Complex,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Real => Field::Real,
            FieldArg::Complex => Field::Complex,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Ambient dimension
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of atoms (random-parseval)
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of sample points (harmonic)
    #[arg(long = "N")]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, value_enum, default_value = "real")]
    pub field: FieldArg,
    #[arg(long, env = "FRAMEUP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Express the harmonic frame over the counting measure
    #[arg(long)]
    pub normalize: bool,
    /// Permutation as comma-separated indices (signed-permutation)
    #[arg(long)]
    pub perm: Option<String>,
    /// Unimodular signs, comma-separated reals or re:im pairs (signed-permutation)
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
    /// Input frame file (alternate-dual, weighted-split)
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Atom to split (weighted-split)
    #[arg(long)]
    pub atom: Option<usize>,
    /// Number of parts (weighted-split)
    #[arg(long, default_value_t = 2)]
    pub parts: usize,
    /// Perturbation scale (alternate-dual)
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// Output path; dft-pair writes `<out>-identity.json` and `<out>-dft.json`
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub frame: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, env = "FRAMEUP_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CoherenceArgs {
    #[arg(long = "frame-f", alias = "frame")]
    pub frame_f: PathBuf,
    #[arg(long = "frame-g")]
    pub frame_g: Option<PathBuf>,
    /// Gram coherence of unit-normalized atoms
    #[arg(long)]
    pub normalized: bool,
    /// Skip pairs of atoms with identical vectors
    #[arg(long)]
    pub distinct_vectors: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long = "frame-f")]
    pub frame_f: PathBuf,
    #[arg(long = "frame-g")]
    pub frame_g: PathBuf,
    /// Inline vector: comma-separated reals or re:im pairs
    #[arg(long, allow_hyphen_values = true, conflicts_with = "x_file")]
    pub x: Option<String>,
    /// JSON array of scalars
    #[arg(long = "x-file")]
    pub x_file: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SUPPORT_EPS)]
    pub eps: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    #[arg(long = "frame-f")]
    pub frame_f: PathBuf,
    #[arg(long = "frame-g")]
    pub frame_g: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    #[arg(long = "max-card", default_value_t = 3)]
    pub max_card: usize,
    #[arg(long, default_value_t = 1)]
    pub draws: usize,
    #[arg(long, default_value_t = DEFAULT_SUPPORT_EPS)]
    pub eps: f64,
    #[arg(long, env = "FRAMEUP_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    L0,
    Measure,
}

#[derive(Debug, Args)]
pub struct SparseArgs {
    #[arg(long)]
    pub frame: PathBuf,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "h_file")]
    pub h: Option<String>,
    #[arg(long = "h-file")]
    pub h_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "l0")]
    pub mode: Mode,
    /// Largest support size for l0 (default: min(n, d))
    #[arg(long = "max-card")]
    pub max_card: Option<usize>,
    /// Residual tolerance (default: 1e-8 * ||h||)
    #[arg(long = "eps-residual")]
    pub eps_residual: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long)]
    pub frame: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, env = "FRAMEUP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Report path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match run(cli, out, err) {
        Ok(()) => 0,
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
        Err(Failure::Code(code)) => code,
    }
}

enum Failure {
    Error(Error),
    /// Output already written; exit with this code.
    Code(i32),
}

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.into())
    }
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> std::result::Result<(), Failure> {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a, out)?,
        Command::Validate(a) => {
            let frame = io::read_frame(&a.frame)?;
            let report = validate_frame(&frame, a.trials, a.tol, a.seed);
            emit(out, a.format, "validate", &report)?;
            if !report.passed {
                let _ = writeln!(
                    err,
                    "validation failed: isometry {:.3e}, reconstruction {:.3e}, tol {:.1e}",
                    report.isometry_residual, report.reconstruction_residual, report.tol
                );
                return Err(Failure::Code(2));
            }
        }
        Command::Coherence(a) => cmd_coherence(&a, out)?,
        Command::Check(a) => {
            let f = io::read_frame(&a.frame_f)?;
            let g = io::read_frame(&a.frame_g)?;
            let x = vector_arg(a.x.as_deref(), a.x_file.as_deref(), "--x or --x-file")?;
            let report = uncertainty_check(&f, &g, &x, a.eps)?;
            emit(out, a.format, "check", &report)?;
        }
        Command::Extremal(a) => {
            let f = io::read_frame(&a.frame_f)?;
            let g = io::read_frame(&a.frame_g)?;
            let mut opts = ExtremalOptions::new(a.budget, a.seed);
            opts.max_card = a.max_card;
            opts.draws_per_support = a.draws;
            opts.eps = a.eps;
            let report = extremal_search(&f, &g, opts)?;
            match a.format {
                Format::Json => write_json(out, &report)?,
                Format::Csv => write_csv(
                    out,
                    "extremal",
                    &ExtremalRow {
                        candidates: report.candidates,
                        exhaustive_through: report.exhaustive_through,
                        min_lhs1: report.min_lhs1.value,
                        bound1: report.min_lhs1.bound,
                        min_lhs2: report.min_lhs2.value,
                        bound2: report.min_lhs2.bound,
                        consistent: report.consistent,
                    },
                )?,
            }
        }
        Command::Sparse(a) => cmd_sparse(&a, out)?,
        Command::Probe(a) => {
            let frame = io::read_frame(&a.frame)?;
            let report = conjecture_probe(&frame, a.trials, a.seed)?;
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            match &a.out {
                Some(path) => {
                    std::fs::write(path, text)?;
                    write_json(out, &serde_json::json!({ "written": [path] }))?;
                }
                None => out.write_all(text.as_bytes()).map_err(Error::from)?,
            }
            for v in &report.variants {
                let _ = writeln!(
                    err,
                    "{:?}: {:?}, {} run, {} confirmed, {} counterexamples",
                    v.pair_set, v.status, v.trials_run, v.confirmations, v.counterexamples
                );
            }
        }
    }
    Ok(())
}

fn vector_arg(inline: Option<&str>, file: Option<&Path>, what: &str) -> Result<Vec<Scalar>> {
    match (inline, file) {
        (Some(text), _) => scalar::parse_inline(text),
        (None, Some(path)) => io::read_vector(path),
        (None, None) => Err(Error::Usage(format!("{what} is required"))),
    }
}

fn require<T: Copy>(value: Option<T>, flag: &str, kind: Kind) -> Result<T> {
    value.ok_or_else(|| Error::Usage(format!("{flag} is required for --kind {kind:?}")))
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<()> {
    let frames: Vec<(Option<&str>, Frame)> = match a.kind {
        Kind::CanonicalLp => vec![(None, zoo::canonical_lp_over(require(a.d, "--d", a.kind)?, a.p, a.field.into())?)],
        Kind::SignedPermutation => {
            let d = require(a.d, "--d", a.kind)?;
            let perm = match &a.perm {
                Some(text) => text
                    .split(',')
                    .map(|t| {
                        t.trim().parse::<usize>().map_err(|_| Error::invalid(format!("bad permutation entry {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?,
                None => (0..d).collect(),
            };
            let signs = match &a.signs {
                Some(text) => scalar::parse_inline(text)?,
                None => vec![Scalar::new(1.0, 0.0); d],
            };
            vec![(None, zoo::signed_permutation(d, a.p, &perm, &signs)?)]
        }
        Kind::DftPair => {
            let (id, dft) = zoo::dft_pair(require(a.d, "--d", a.kind)?)?;
            vec![(Some("identity"), id), (Some("dft"), dft)]
        }
        Kind::RandomParseval => {
            let d = require(a.d, "--d", a.kind)?;
            vec![(None, zoo::random_parseval_over(d, require(a.n, "--n", a.kind)?, a.seed, a.field.into())?)]
        }
        Kind::Harmonic => {
            let d = require(a.d, "--d", a.kind)?;
            vec![(None, zoo::harmonic_discretization(d, require(a.samples, "--N", a.kind)?, a.normalize)?)]
        }
        Kind::AlternateDual => {
            let base = io::read_frame(require(a.input.as_deref(), "--input", a.kind)?)?;
            vec![(None, zoo::alternate_dual_scaled(&base, a.seed, a.scale)?)]
        }
        Kind::WeightedSplit => {
            let base = io::read_frame(require(a.input.as_deref(), "--input", a.kind)?)?;
            vec![(None, zoo::weighted_split(&base, require(a.atom, "--atom", a.kind)?, a.parts)?)]
        }
        Kind::MercedesBenz => vec![(None, zoo::mercedes_benz())],
        Kind::ThreeAtomPlane => vec![(None, zoo::three_atom_plane())],
    };

    match &a.out {
        None if frames.len() == 1 => {
            writeln!(out, "{}", io::frame_to_json(&frames[0].1))?;
        }
        None => {
            let files: Vec<FrameFile> = frames.iter().map(|(_, f)| FrameFile::from(f)).collect();
            write_json(out, &files)?;
        }
        Some(path) => {
            let mut written = Vec::new();
            for (suffix, frame) in &frames {
                let target = match suffix {
                    Some(s) => suffixed(path, s),
                    None => path.clone(),
                };
                io::write_frame(frame, &target)?;
                written.push(target);
            }
            write_json(out, &serde_json::json!({ "written": written }))?;
        }
    }
    Ok(())
}

/// `dir/name.json` + `dft` → `dir/name-dft.json`.
fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = path.extension().map(|e| e.to_string_lossy().into_owned()).unwrap_or_else(|| "json".into());
    path.with_file_name(format!("{stem}-{suffix}.{ext}"))
}

#[derive(Serialize)]
struct GramRow {
    coherence: f64,
    mode: CoherenceMode,
    pair_set: PairSet,
    threshold: Option<f64>,
    unbounded: bool,
}

fn cmd_coherence(a: &CoherenceArgs, out: &mut dyn Write) -> Result<()> {
    let f = io::read_frame(&a.frame_f)?;
    match &a.frame_g {
        Some(g) => {
            let g = io::read_frame(g)?;
            emit(out, a.format, "coherence", &cross_coherence(&f, &g)?)
        }
        None => {
            let mode = if a.normalized { CoherenceMode::Normalized } else { CoherenceMode::Raw };
            let pair_set = if a.distinct_vectors { PairSet::DistinctVectors } else { PairSet::AllPairs };
            let coherence = gram_coherence_with(&f, mode, pair_set)?;
            let threshold = uniqueness_threshold(coherence)?;
            let row = GramRow {
                coherence,
                mode,
                pair_set,
                threshold: threshold.value(),
                unbounded: threshold == Threshold::Unbounded,
            };
            emit(out, a.format, "gram-coherence", &row)
        }
    }
}

#[derive(Serialize)]
struct SparseRow {
    mode: &'static str,
    support: String,
    support_cardinality: usize,
    support_weight: f64,
    residual: f64,
    unique: bool,
}

#[derive(Serialize)]
struct ExtremalRow {
    candidates: usize,
    exhaustive_through: usize,
    min_lhs1: f64,
    bound1: f64,
    min_lhs2: f64,
    bound2: f64,
    consistent: bool,
}

fn cmd_sparse(a: &SparseArgs, out: &mut dyn Write) -> Result<()> {
    let frame = io::read_frame(&a.frame)?;
    let h = vector_arg(a.h.as_deref(), a.h_file.as_deref(), "--h or --h-file")?;
    let problem = match a.eps_residual {
        Some(eps) => SparseProblem::with_tolerance(&frame, h, eps)?,
        None => SparseProblem::new(&frame, h)?,
    };
    let (label, solution) = match a.mode {
        Mode::L0 => {
            let max_card = a.max_card.unwrap_or(frame.len().min(frame.dim()));
            ("l0", l0_brute_force(&problem, max_card)?)
        }
        Mode::Measure => ("measure", measure_min_brute_force(&problem)?),
    };
    match a.format {
        Format::Json => write_json(out, &solution.record(frame.field())),
        Format::Csv => write_csv(
            out,
            "sparse",
            &SparseRow {
                mode: label,
                support: solution.support.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";"),
                support_cardinality: solution.support_cardinality,
                support_weight: solution.support_weight,
                residual: solution.residual,
                unique: solution.unique,
            },
        ),
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, schema: &str, value: &T) -> Result<()> {
    match format {
        Format::Json => write_json(out, value),
        Format::Csv => write_csv(out, schema, value),
    }
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| {
        if e.is_io() {
            Error::Io(e.into())
        } else {
            Error::Json(e)
        }
    })?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct Versioned<'a, T> {
    schema: String,
    #[serde(flatten)]
    row: &'a T,
}

/// One header row and one data row; the first column carries `<schema>.<version>`.
fn write_csv<T: Serialize>(out: &mut dyn Write, schema: &str, row: &T) -> Result<()> {
    // flatten is not supported by the csv serializer, so go through a JSON object
    let value = serde_json::to_value(Versioned { schema: format!("{schema}.{CSV_SCHEMA_VERSION}"), row })?;
    let obj = value.as_object().expect("rows serialize as objects");
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(obj.keys())?;
    w.write_record(obj.values().map(|v| match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }))?;
    w.flush()?;
    Ok(())
}
