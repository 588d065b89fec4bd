//! Command-line front end. The binary only parses arguments and forwards to
//! [`run`], which writes its output to any writer and returns the exit code.

mod input;
mod report;

pub use input::{
    coefficients_for, parse_coeffs, parse_initial, parse_matrix, parse_pair, parse_rationals,
    random_instance, rational_at, read_json, trial_rng, CoeffSource, InstanceSpec, MatrixSource,
    ValueRange,
};
pub use report::{InstanceEcho, RunReport, TrialRecord, VerifySummary, TOOL_VERSION};

use crate::asm6v::{asm_to_sixv, enumerate_asm, statistics, VertexType};
use crate::density::{q_functional_check, rho_table};
use crate::error::{Error, Result};
use crate::exact::{bareiss_det, Rational, Scalar};
use crate::lambdadet::{cross_check, symbolic_lambda_det, Method};
use crate::network::{build_network, enumerate_families, family_to_sixv, to_dot, FaceLabels};
use crate::tsystem::{cluster_mutation_check, evolve, CoeffWindow};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "lambdadet", version, about = "Exact inhomogeneous Lambda-determinants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one instance by one or more methods.
    Compute(ComputeArgs),
    /// Cross-check all methods on seeded random instances.
    Verify(VerifyArgs),
    /// Alternating sign matrix tools.
    Asm {
        #[command(subcommand)]
        command: AsmCommand,
    },
    /// Generic Lambda-determinant as a Laurent polynomial.
    Symbolic(SymbolicArgs),
    /// Build the weighted network of an instance.
    Network(NetworkArgs),
    /// Evaluate the T-system at one point from initial data.
    Tsystem(TsystemArgs),
    /// Compound mutation check of the exchange matrix.
    ClusterCheck(ClusterArgs),
    /// Exact density table.
    Density(DensityArgs),
}

#[derive(Args, Debug, Clone)]
#[group(id = "matrix_source", required = true, multiple = false)]
pub struct MatrixArgs {
    /// Matrix JSON file {"n": N, "entries": [[...]]}.
    #[arg(long, value_name = "FILE", group = "matrix_source")]
    pub matrix: Option<PathBuf>,
    /// Vandermonde matrix (a_i^{j-1}) for a comma-separated list.
    #[arg(long, value_name = "A1,A2,...", group = "matrix_source")]
    pub vandermonde: Option<String>,
    /// All-ones matrix of size N.
    #[arg(long, value_name = "N", group = "matrix_source")]
    pub ones: Option<usize>,
    /// Random matrix of size N drawn from --seed.
    #[arg(long, value_name = "N", group = "matrix_source")]
    pub random: Option<usize>,
}

#[derive(Args, Debug, Clone)]
#[group(id = "coeff_source", multiple = false)]
pub struct CoeffArgs {
    /// Coefficient JSON file {"lambda": {...}, "mu": {...}}.
    #[arg(long, value_name = "FILE", group = "coeff_source")]
    pub coeffs: Option<PathBuf>,
    /// Constant coefficients LAMBDA,MU (default 1,1).
    #[arg(long, value_name = "LAMBDA,MU", group = "coeff_source")]
    pub homogeneous: Option<String>,
    /// lambda_a = mu_a = Q^a.
    #[arg(long, value_name = "Q", group = "coeff_source")]
    pub q: Option<Rational>,
    /// Random coefficients drawn from --seed.
    #[arg(long, group = "coeff_source")]
    pub random_coeffs: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest absolute numerator of random values.
    #[arg(long, default_value_t = 9)]
    pub max_num: i64,
    /// Largest denominator of random values.
    #[arg(long, default_value_t = 4)]
    pub max_den: i64,
}

impl RandomArgs {
    fn range(&self) -> ValueRange {
        ValueRange {
            max_num: self.max_num,
            max_den: self.max_den,
        }
    }
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[command(flatten)]
    pub coeffs: CoeffArgs,
    #[command(flatten)]
    pub random: RandomArgs,
    /// Methods to run, comma-separated, or `all`.
    #[arg(long, default_value = "all")]
    pub method: String,
    /// Omit wall-clock timings so the output is byte-stable.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "all")]
    pub methods: String,
    #[arg(long, default_value_t = 9)]
    pub max_num: i64,
    #[arg(long, default_value_t = 4)]
    pub max_den: i64,
    /// Print only the summary line.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Subcommand, Debug)]
pub enum AsmCommand {
    /// List all ASMs of size N in lexicographic order.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Attach inversion number, vertex counts and diagonal statistics.
        #[arg(long)]
        stats: bool,
        /// Attach the six-vertex grid.
        #[arg(long)]
        sixv: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyFormat {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct SymbolicArgs {
    #[arg(long)]
    pub n: usize,
    /// Permit sizes above the default cap.
    #[arg(long)]
    pub allow_large: bool,
    #[arg(long, value_enum, default_value_t = PolyFormat::Json)]
    pub format: PolyFormat,
}

#[derive(Args, Debug)]
pub struct NetworkArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[command(flatten)]
    pub coeffs: CoeffArgs,
    #[command(flatten)]
    pub random: RandomArgs,
    /// List the non-intersecting path families.
    #[arg(long)]
    pub enumerate: bool,
    /// Write a Graphviz rendering to FILE.
    #[arg(long, value_name = "FILE")]
    pub emit_dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TsystemArgs {
    /// Initial data JSON {"n": N, "t": {"i,j": value}}.
    #[arg(long, value_name = "FILE")]
    pub init: PathBuf,
    /// Target point i,j,k.
    #[arg(long, value_name = "I,J,K")]
    pub target: String,
    #[command(flatten)]
    pub coeffs: CoeffArgs,
    #[command(flatten)]
    pub random: RandomArgs,
}

#[derive(Args, Debug)]
pub struct ClusterArgs {
    #[arg(long, default_value_t = 6)]
    pub radius: i64,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    /// Largest layer K.
    #[arg(long)]
    pub k: usize,
    #[arg(long, requires = "mu", conflicts_with = "q")]
    pub lambda: Option<Rational>,
    #[arg(long, requires = "lambda", conflicts_with = "q")]
    pub mu: Option<Rational>,
    /// lambda_a = mu_a = Q^a; also runs the functional-equation check.
    #[arg(long)]
    pub q: Option<Rational>,
    /// CSV destination; stdout when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// Parses `argv` and runs it.
pub fn main_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Executes a parsed command; the result is the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Compute(a) => compute(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Asm {
            command: AsmCommand::Enumerate { n, stats, sixv, format },
        } => asm_enumerate(*n, *stats, *sixv, *format, out),
        Command::Symbolic(a) => symbolic(a, out),
        Command::Network(a) => network(a, out),
        Command::Tsystem(a) => tsystem(a, out),
        Command::ClusterCheck(a) => {
            let rep = cluster_mutation_check(a.radius)?;
            emit(out, &rep)?;
            Ok(i32::from(!rep.passed()))
        }
        Command::Density(a) => density(a, out),
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn emit_line<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string(v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

/// `all` or a comma-separated list of method names.
pub fn parse_methods(s: &str) -> Result<Vec<Method>> {
    if s.trim() == "all" {
        return Ok(Method::ALL.to_vec());
    }
    s.split(',').map(|m| m.trim().parse()).collect()
}

fn matrix_source(m: &MatrixArgs, r: &RandomArgs) -> Result<MatrixSource> {
    Ok(if let Some(p) = &m.matrix {
        MatrixSource::File {
            path: p.display().to_string(),
        }
    } else if let Some(list) = &m.vandermonde {
        MatrixSource::Vandermonde {
            a: parse_rationals(list)?,
        }
    } else if let Some(n) = m.ones {
        MatrixSource::AllOnes { n }
    } else if let Some(n) = m.random {
        MatrixSource::Random {
            seed: r.seed,
            n,
            range: r.range(),
        }
    } else {
        return Err(Error::InvalidArgument("no matrix source".into()));
    })
}

fn coeff_source(c: &CoeffArgs, r: &RandomArgs) -> Result<CoeffSource> {
    Ok(if let Some(p) = &c.coeffs {
        CoeffSource::File {
            path: p.display().to_string(),
        }
    } else if let Some(pair) = &c.homogeneous {
        match parse_rationals(pair)?.as_slice() {
            [l, m] => CoeffSource::Homogeneous {
                lambda: l.clone(),
                mu: m.clone(),
            },
            _ => return Err(Error::Parse(format!("expected LAMBDA,MU, got `{pair}`"))),
        }
    } else if let Some(q) = &c.q {
        CoeffSource::QPower { q: q.clone() }
    } else if c.random_coeffs {
        CoeffSource::Random {
            seed: r.seed,
            range: r.range(),
        }
    } else {
        CoeffSource::Homogeneous {
            lambda: Rational::one(),
            mu: Rational::one(),
        }
    })
}

fn instance_spec(m: &MatrixArgs, c: &CoeffArgs, r: &RandomArgs) -> Result<InstanceSpec> {
    Ok(InstanceSpec {
        matrix: matrix_source(m, r)?,
        coefficients: coeff_source(c, r)?,
    })
}

fn compute(a: &ComputeArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = instance_spec(&a.matrix, &a.coeffs, &a.random)?;
    let methods = parse_methods(&a.method)?;
    let (m, w) = spec.materialize()?;
    let check = cross_check(&m, &w, &methods);
    let report = RunReport::new(InstanceEcho::new(spec, &m, &w), check, !a.no_timings);
    emit(out, &report)?;
    Ok(report.exit_code())
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let methods = parse_methods(&a.methods)?;
    let range = ValueRange {
        max_num: a.max_num,
        max_den: a.max_den,
    }
    .validate()?;
    let records: Vec<TrialRecord> = (0..a.trials)
        .into_par_iter()
        .map(|t| {
            let (m, w, redraws) = random_instance(a.n, range, &mut trial_rng(a.seed, t as u64));
            TrialRecord {
                trial: t,
                redraws,
                report: cross_check(&m, &w, &methods).without_timings(),
            }
        })
        .collect();
    if !a.quiet {
        for r in &records {
            emit_line(out, r)?;
        }
    }
    let passed = records.iter().filter(|r| r.report.passed()).count();
    let summary = VerifySummary {
        version: TOOL_VERSION,
        n: a.n,
        seed: a.seed,
        trials: a.trials,
        passed,
        failed: a.trials - passed,
        redraws: records.iter().map(|r| r.redraws).sum(),
        methods: methods.iter().map(|m| m.name().to_string()).collect(),
    };
    emit_line(out, &serde_json::json!({ "summary": summary }))?;
    Ok(summary.exit_code())
}

fn asm_enumerate(n: usize, stats: bool, sixv: bool, format: Format, out: &mut dyn Write) -> Result<i32> {
    let asms: Vec<_> = enumerate_asm(n)?.collect();
    match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = asms
                .iter()
                .map(|b| {
                    if !stats && !sixv {
                        return serde_json::json!(b);
                    }
                    let mut v = serde_json::json!({ "asm": b });
                    if stats {
                        v["stats"] = serde_json::json!(statistics(b));
                    }
                    if sixv {
                        v["sixv"] = serde_json::json!(asm_to_sixv(b));
                    }
                    v
                })
                .collect();
            emit(out, &items)?;
        }
        Format::Csv => {
            let kinds = [
                VertexType::A1,
                VertexType::A2,
                VertexType::B1,
                VertexType::B2,
                VertexType::C1,
                VertexType::C2,
            ];
            let mut header = String::from("index,asm");
            if stats {
                header.push_str(",inv,minus_count");
                for k in kinds {
                    header.push(',');
                    header.push_str(k.name());
                }
            }
            writeln!(out, "{header}")?;
            for (idx, b) in asms.iter().enumerate() {
                let rows: Vec<String> = b
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(i8::to_string).collect::<Vec<_>>().join(" "))
                    .collect();
                let mut line = format!("{idx},{}", rows.join("|"));
                if stats {
                    let s = statistics(b);
                    line.push_str(&format!(",{},{}", s.inv, s.minus_count));
                    for k in kinds {
                        line.push_str(&format!(",{}", s.counts.get(&k).copied().unwrap_or(0)));
                    }
                }
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(0)
}

fn symbolic(a: &SymbolicArgs, out: &mut dyn Write) -> Result<i32> {
    let (_, poly) = symbolic_lambda_det(a.n, a.allow_large)?;
    match a.format {
        PolyFormat::Json => emit(
            out,
            &serde_json::json!({ "n": a.n, "num_terms": poly.num_terms(), "polynomial": poly }),
        )?,
        PolyFormat::Text => writeln!(out, "{poly}")?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct FamilyEcho {
    paths: Vec<Vec<(i64, i64)>>,
    permutation: Vec<usize>,
    weight: Rational,
    asm: crate::asm6v::AlternatingSignMatrix,
    minus_count: usize,
}

#[derive(Serialize)]
struct NetworkReport {
    version: &'static str,
    instance: InstanceEcho,
    vertices: usize,
    edges: usize,
    exit_labels: Vec<Rational>,
    /// Path sums with the exit labels folded in.
    partition_matrix: Vec<Vec<Rational>>,
    determinant: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    families: Option<Vec<FamilyEcho>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family_sum: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dot_file: Option<String>,
}

fn network(a: &NetworkArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = instance_spec(&a.matrix, &a.coeffs, &a.random)?;
    let (m, w) = spec.materialize()?;
    let net = build_network(FaceLabels::Matrix(&m), &w)?;
    let z = net.absorbed_partition_matrix();
    let determinant = bareiss_det(&z)?;
    let n = m.rows();
    let (families, family_sum) = if a.enumerate {
        let fams = enumerate_families(&net)?;
        let mut sum = Rational::zero();
        let mut echo = Vec::with_capacity(fams.len());
        for f in fams {
            let (grid, minus_count) = family_to_sixv(&net, &f)?;
            sum = sum.plus(&f.weight);
            echo.push(FamilyEcho {
                paths: f.paths,
                permutation: f.permutation,
                weight: f.weight,
                asm: crate::asm6v::sixv_to_asm(&grid)?,
                minus_count,
            });
        }
        (Some(echo), Some(sum))
    } else {
        (None, None)
    };
    if let Some(path) = &a.emit_dot {
        write_file(path, &to_dot(&net))?;
    }
    let agree = family_sum.as_ref().map_or(true, |s| s == &determinant);
    let report = NetworkReport {
        version: TOOL_VERSION,
        instance: InstanceEcho::new(spec, &m, &w),
        vertices: net.vertex_count(),
        edges: net.edges().len(),
        exit_labels: (1..=n).map(|j| net.exit_label(j).clone()).collect(),
        partition_matrix: z.to_rows(),
        determinant,
        families,
        family_sum,
        dot_file: a.emit_dot.as_ref().map(|p| p.display().to_string()),
    };
    emit(out, &report)?;
    Ok(i32::from(!agree))
}

fn tsystem(a: &TsystemArgs, out: &mut dyn Write) -> Result<i32> {
    let init = parse_initial(&read_json(&a.init)?)?;
    let target = input::parse_ints(&a.target)?;
    let [i, j, k] = target[..] else {
        return Err(Error::Parse(format!("expected I,J,K, got `{}`", a.target)));
    };
    if k < 0 {
        return Err(Error::InvalidArgument("layer must be non-negative".into()));
    }
    let w: CoeffWindow<Rational> = coefficients_for(&coeff_source(&a.coeffs, &a.random)?, init.n())?;
    let (value, _) = evolve(&init, &w, (i, j, k as usize))?;
    emit(
        out,
        &serde_json::json!({ "version": TOOL_VERSION, "target": [i, j, k], "value": value }),
    )?;
    Ok(0)
}

#[derive(Serialize)]
struct DensitySummary {
    version: &'static str,
    k: usize,
    rows: usize,
    nonzero: usize,
    /// Distinct values of `(i+j+k) mod 2` over non-zero entries.
    parities: Vec<i64>,
    /// Largest `|i|+|j|−k` over non-zero entries.
    cone_excess: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_check: Option<crate::density::QCheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
}

fn density(a: &DensityArgs, out: &mut dyn Write) -> Result<i32> {
    let kk = a.k as i64;
    let range = -2 * kk..=2 * kk;
    let w = match (&a.q, &a.lambda, &a.mu) {
        (Some(q), _, _) => CoeffWindow::q_power(range, q)?,
        (None, Some(l), Some(m)) => CoeffWindow::from_fn(range, |_| l.clone(), |_| m.clone())?,
        _ => CoeffWindow::from_fn(range, |_| Rational::one(), |_| Rational::one())?,
    };
    let table = rho_table(a.k, &w)?;
    let q_check = a.q.as_ref().map(|q| q_functional_check(a.k, q)).transpose()?;
    let code = i32::from(q_check.as_ref().is_some_and(|r| !r.passed()));
    let csv = table.to_csv();
    match &a.out {
        None => write!(out, "{csv}")?,
        Some(path) => {
            write_file(path, &csv)?;
            let support: Vec<_> = table.support().collect();
            let mut parities: Vec<i64> = support.iter().map(|&(i, j, k)| (i + j + k).rem_euclid(2)).collect();
            parities.sort_unstable();
            parities.dedup();
            emit(
                out,
                &DensitySummary {
                    version: TOOL_VERSION,
                    k: a.k,
                    rows: table.len(),
                    nonzero: support.len(),
                    parities,
                    cone_excess: support.iter().map(|&(i, j, k)| i.abs() + j.abs() - k).max(),
                    q_check,
                    out: Some(path.display().to_string()),
                },
            )?;
        }
    }
    Ok(code)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
