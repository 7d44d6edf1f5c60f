use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use fqdist_core::constructions::counterexample;
use fqdist_core::distance::{delta, shparlinski_bound, DistanceSet};
use fqdist_core::field::Field;
use fqdist_core::geometry::{rotatable_slopes, PointSet, QuadraticForm};
use fqdist_core::io::{
    load_point_set, nu_report, restriction_report, save_point_set, write_nu_report,
    write_restriction_report,
};
use fqdist_core::spectral::distance_lower_bound_symmetric;
use fqdist_core::Fq;
use fqdist_cli::config::RunConfig;
use fqdist_cli::error::HarnessError;
use fqdist_cli::report::Status;
use fqdist_cli::verify::{run_target, Target};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "fqdist", version, about = "Distance sets over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verifier and write <id>.json, <id>_instances.csv, <id>_scatter.csv.
    Verify(VerifyArgs),
    /// Build a small-distance-set example and write its recipe and point set.
    Construct(ConstructArgs),
    /// Distance set of two point-set CSV files, with lower bounds.
    Delta(DeltaArgs),
    /// Field descriptor and a few characters of F_q.
    FieldInfo(FieldArgs),
    /// R_t(B) against 2 q^{-d-1} |B| for every t.
    RestrictionReport(RestrictionArgs),
    /// nu(t) = #{(x, y) in A x B : ||x - y|| = t}.
    NuReport(NuArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id, or `formulas` for the six closed-form families.
    target: Target,
    /// Characteristics, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<u32>,
    /// Extension degrees, one per p or a single value for all.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    ell: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    dim: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    delta: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "fqdist-out")]
    out: PathBuf,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    ell: u32,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Directory for construct.json and construct_set.csv; JSON goes to
    /// stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormArg {
    Standard,
    Canonical,
}

#[derive(Args)]
struct DeltaArgs {
    #[arg(long = "setA")]
    set_a: PathBuf,
    #[arg(long = "setB")]
    set_b: PathBuf,
    #[arg(long, value_enum, default_value = "standard")]
    form: FormArg,
}

#[derive(Args)]
struct RestrictionArgs {
    #[arg(long = "set")]
    set: PathBuf,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NuArgs {
    #[arg(long = "setA")]
    set_a: PathBuf,
    #[arg(long = "setB")]
    set_b: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => return verify(args),
        Command::Construct(args) => construct(args),
        Command::Delta(args) => delta_cmd(args),
        Command::FieldInfo(args) => field_info(args),
        Command::RestrictionReport(args) => restriction(args),
        Command::NuReport(args) => nu(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let cfg = match verify_config(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let reports = match run_target(args.target, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut failed = false;
    for report in &reports {
        match report.emit(&args.out) {
            Ok(paths) => {
                for p in paths {
                    println!("wrote {}", p.display());
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        println!(
            "{}: {} ({} instances, {} meeting the hypothesis, {} failed checks, {} ms)",
            report.theorem_id,
            report.status,
            report.instances_tested,
            report.hypothesis_met,
            report.failures.len(),
            report.runtime_ms
        );
        for note in report.notes.iter().filter(|n| n.contains("skipped")) {
            println!("  {note}");
        }
        if report.status == Status::Fail {
            failed = true;
            if let Some(first) = report.failures.first() {
                let dump = serde_json::to_string_pretty(first).expect("failure serializes");
                eprintln!("{}: first failing instance:\n{dump}", report.theorem_id);
            }
        }
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn verify_config(args: &VerifyArgs) -> Result<RunConfig, HarnessError> {
    let ell = match args.ell.len() {
        1 => vec![args.ell[0]; args.p.len()],
        n if n == args.p.len() => args.ell.clone(),
        n => {
            return Err(HarnessError::Config(format!(
                "{n} values for --ell but {} for --p",
                args.p.len()
            )))
        }
    };
    let mut cfg = RunConfig::new(args.p.iter().copied().zip(ell).collect(), args.dim.clone())
        .with_deltas(args.delta.clone())
        .with_alpha(args.alpha)
        .with_seed(args.seed)
        .with_env_ceiling()?;
    cfg.samples = args.samples;
    cfg.out = Some(args.out.clone());
    cfg.validate()?;
    Ok(cfg)
}

fn build_field(p: u32, ell: u32) -> anyhow::Result<Field> {
    let cfg = RunConfig::new(vec![(p, ell)], vec![1]).with_env_ceiling()?;
    Ok(cfg.build_fields()?.remove(0))
}

/// Reads the `q` from a point-set header and loads the set over `F_q`.
fn load_set(path: &Path) -> anyhow::Result<(Field, PointSet)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let header = text.lines().next().unwrap_or("");
    let q: u32 = header
        .split(',')
        .find_map(|c| c.trim().strip_prefix("q="))
        .and_then(|v| v.trim().parse().ok())
        .with_context(|| format!("{}: missing `q=` in header `{header}`", path.display()))?;
    let field = Field::from_order(q)
        .with_context(|| format!("{}: q = {q}", path.display()))?;
    let cfg = RunConfig::default().with_env_ceiling()?;
    let field = field.with_max_universe(cfg.max_universe);
    let set = load_point_set(&field, path)?;
    Ok((field, set))
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn indices(set: &DistanceSet) -> Vec<u32> {
    set.values().iter().map(|t| t.0).collect()
}

#[derive(Serialize)]
struct ConstructOutput {
    field: fqdist_core::FieldDescriptor,
    d: usize,
    delta: f64,
    parity: fqdist_core::constructions::Parity,
    omega_size: usize,
    paired_size: usize,
    set_size: usize,
    nominal_size: f64,
    predicted: Vec<u32>,
    predicted_size: usize,
    actual: Vec<u32>,
    actual_size: usize,
    identity_holds: bool,
}

fn construct(args: ConstructArgs) -> anyhow::Result<()> {
    let field = build_field(args.field.p, args.field.ell)?;
    let recipe = counterexample(&field, args.dim, args.delta)?;
    let predicted = recipe.predicted_distances(&field)?;
    let actual = delta(&field, &recipe.set, &recipe.set, &recipe.form)?;
    let output = ConstructOutput {
        field: field.descriptor(),
        d: recipe.d,
        delta: recipe.delta,
        parity: recipe.parity,
        omega_size: recipe.omega.len(),
        paired_size: recipe.paired.len(),
        set_size: recipe.set.len(),
        nominal_size: recipe.nominal_size(),
        predicted: indices(&predicted),
        predicted_size: predicted.len(),
        actual: indices(&actual),
        actual_size: actual.len(),
        identity_holds: predicted == actual,
    };
    match args.out {
        None => print_json(&output),
        Some(dir) => {
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            let json = dir.join("construct.json");
            let mut f = File::create(&json).with_context(|| format!("creating {}", json.display()))?;
            serde_json::to_writer_pretty(&mut f, &output)?;
            writeln!(f)?;
            let csv = dir.join("construct_set.csv");
            save_point_set(&recipe.set, &csv)?;
            println!("wrote {}\nwrote {}", json.display(), csv.display());
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct DeltaOutput {
    q: u32,
    values: Vec<u32>,
    size: usize,
    dist_formula_bound: f64,
    shparlinski_bound: f64,
}

fn delta_cmd(args: DeltaArgs) -> anyhow::Result<()> {
    let (field, a) = load_set(&args.set_a)?;
    let (field_b, b) = load_set(&args.set_b)?;
    if field.q() != field_b.q() {
        bail!("sets are over different fields: q = {} and q = {}", field.q(), field_b.q());
    }
    let form = match args.form {
        FormArg::Standard => QuadraticForm::standard(a.dim()),
        FormArg::Canonical => QuadraticForm::canonical(&field, a.dim())?,
    };
    let set = delta(&field, &a, &b, &form)?;
    print_json(&DeltaOutput {
        q: field.q(),
        values: indices(&set),
        size: set.len(),
        dist_formula_bound: distance_lower_bound_symmetric(&field, &a, &b)?,
        shparlinski_bound: shparlinski_bound(field.q(), a.dim(), a.len(), b.len()),
    })
}

#[derive(Serialize)]
struct FieldInfo {
    #[serde(flatten)]
    descriptor: fqdist_core::FieldDescriptor,
    q: u32,
    eta_minus_one: i8,
    two_is_square: bool,
    gauss_sum_g1: [f64; 2],
    rotatable_slopes: Vec<u32>,
}

fn field_info(args: FieldArgs) -> anyhow::Result<()> {
    let field = build_field(args.p, args.ell)?;
    let g1 = field.gauss_sum(Fq::ONE)?;
    print_json(&FieldInfo {
        descriptor: field.descriptor(),
        q: field.q(),
        eta_minus_one: field.eta(field.neg(Fq::ONE)),
        two_is_square: field.eta(field.from_int(2)) == 1,
        gauss_sum_g1: [g1.re, g1.im],
        rotatable_slopes: rotatable_slopes(&field).iter().map(|l| l.0).collect(),
    })
}

fn write_to<F>(out: Option<PathBuf>, write: F) -> anyhow::Result<()>
where
    F: FnOnce(&mut dyn Write) -> fqdist_core::Result<()>,
{
    match out {
        None => Ok(write(&mut io::stdout().lock())?),
        Some(path) => {
            let mut f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
            write(&mut f)?;
            Ok(())
        }
    }
}

fn restriction(args: RestrictionArgs) -> anyhow::Result<()> {
    let (field, b) = load_set(&args.set)?;
    let rows = restriction_report(&field, &b)?;
    write_to(args.out, |w| write_restriction_report(&rows, w))
}

fn nu(args: NuArgs) -> anyhow::Result<()> {
    let (field, a) = load_set(&args.set_a)?;
    let (_, b) = load_set(&args.set_b)?;
    let rows = nu_report(&field, &a, &b)?;
    write_to(args.out, |w| write_nu_report(&rows, w))
}
