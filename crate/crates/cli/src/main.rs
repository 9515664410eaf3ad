//! pw-lab: experiment runner for the harmonic-analysis checks in `pw-core`.
//!
//! Every run is deterministic in `(command, space, L-max, seed)`: families
//! are seeded streams, sweeps walk fixed grids, and output files are written
//! once at the end from an ordered report list, so two identical invocations
//! produce byte-identical `report.jsonl` files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pw_core::field::CoefficientField;
use pw_core::lab::{
    beurling_battery, counting_battery, embedding_battery, embedding_check, family_degree,
    interpolation_battery, interpolation_check, nikolskii_battery, nikolskii_check,
    nikolskii_check_fields, stability_degree, wiener_battery, ExperimentReport, FamilyKind,
    FunctionFamily, InterpolationCase, Regime,
};
use pw_core::norm::NormSpec;
use pw_core::space::Space;

/// Members per random family when the command does not fix the count itself.
const DEFAULT_COUNT: usize = 8;

const AFTER_HELP: &str = "\
Exit codes:
  0  every in-regime check passed
  1  at least one in-regime check failed (or an internal error)
  2  usage error (unknown space or kind, malformed flags or family file)
  3  a requested degree exceeds the resource cap for the space

Run commands write into --out-dir:
  report.jsonl  one JSON object per experiment cell, deterministic bytes
  summary.csv   theorem_tag,space,params_json,n_cases,max_ratio,tol,pass
  counting.csv  L,N,ratio sweep (counting and all commands only)

Spaces are t1, t2, s2, so3. Numeric flags accept \"inf\". The band caps
default to 64 on the tori and 24 on s2/so3; the PW_LAB_CAP environment
variable (a number >= 1) overrides the cap on every model at once.

Family files are JSON lines: a header object with space/kind/seed/degree/
count, then one coefficient field per line, as written by gen-family.";

#[derive(Parser)]
#[command(
    name = "pw-lab",
    version,
    about = "Numerical Fourier-analysis checks on compact homogeneous spaces",
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the eigenvalue counting function and box the Weyl constant
    Counting(RunArgs),
    /// Nikolskii p->q bounds on random, Dirichlet, and lacunary families
    Nikolskii(RunArgs),
    /// Embedding, identity, characterization, and Hausdorff-Young cells
    Embeddings(RunArgs),
    /// Wiener algebra A and weighted A^beta battery
    Wiener(RunArgs),
    /// Beurling algebra battery with its Besov brackets
    Beurling(RunArgs),
    /// Discrete real-interpolation bracket identities
    Interpolation(RunArgs),
    /// Every battery above in a fixed deterministic order
    All(RunArgs),
    /// Write a deterministic coefficient-field family to a JSON-lines file
    GenFamily(GenArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Space model: t1, t2, s2, or so3
    #[arg(long)]
    space: String,

    /// Band ceiling for the sweeps; at least 4, at most the model cap
    /// (defaults to the cap)
    #[arg(long = "L-max")]
    l_max: Option<f64>,

    /// Seed for the random families
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output directory, created if missing
    #[arg(long, default_value = "pw-lab-out")]
    out_dir: PathBuf,

    /// Left exponent of a single Nikolskii pair; needs --q (nikolskii only)
    #[arg(long)]
    p: Option<f64>,

    /// Right exponent of a single Nikolskii pair; needs --p (nikolskii only)
    #[arg(long)]
    q: Option<f64>,

    /// Adds one interpolation cell between smoothness r and r/2
    /// (interpolation only)
    #[arg(long)]
    r: Option<f64>,

    /// Adds corollary cells at this weight (wiener and beurling only)
    #[arg(long)]
    beta: Option<f64>,

    /// Replaces every in-regime tolerance and re-judges pass as
    /// ratio <= 1 + tol
    #[arg(long)]
    tol: Option<f64>,

    /// Family file from gen-family replacing the built-in Nikolskii family
    /// (nikolskii only)
    #[arg(long)]
    family_file: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Space model: t1, t2, s2, or so3
    #[arg(long)]
    space: String,

    /// Family kind: random_gaussian, dirichlet, heat_type, lacunary, or
    /// single_coefficient
    #[arg(long)]
    kind: String,

    /// Seed for the random kinds
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Band limit of the members; at least 1, at most the model cap
    #[arg(long)]
    degree: f64,

    /// Requested member count (deterministic kinds collapse to one)
    #[arg(long, default_value_t = DEFAULT_COUNT)]
    count: usize,

    /// Output path for the family file
    #[arg(long)]
    out_file: PathBuf,
}

#[derive(Debug)]
enum CliError {
    /// Bad arguments or malformed user-supplied files; exit 2.
    Usage(String),
    /// A degree beyond the configured band cap; exit 3.
    Cap(String),
    /// Internal or I/O failure; exit 1.
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Failure(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Cap(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<pw_core::Error> for CliError {
    fn from(e: pw_core::Error) -> Self {
        match e {
            pw_core::Error::ResourceCap { .. } => CliError::Cap(e.to_string()),
            // Parameters and files the user supplies surface as usage errors.
            pw_core::Error::Deserialize(_)
            | pw_core::Error::InvalidIndex(_)
            | pw_core::Error::RegimeInvalid(_) => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("io: {e}"))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Battery {
    Counting,
    Nikolskii,
    Embeddings,
    Wiener,
    Beurling,
    Interpolation,
    All,
}

impl Battery {
    fn name(self) -> &'static str {
        match self {
            Battery::Counting => "counting",
            Battery::Nikolskii => "nikolskii",
            Battery::Embeddings => "embeddings",
            Battery::Wiener => "wiener",
            Battery::Beurling => "beurling",
            Battery::Interpolation => "interpolation",
            Battery::All => "all",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Counting(a) => execute(Battery::Counting, a),
        Command::Nikolskii(a) => execute(Battery::Nikolskii, a),
        Command::Embeddings(a) => execute(Battery::Embeddings, a),
        Command::Wiener(a) => execute(Battery::Wiener, a),
        Command::Beurling(a) => execute(Battery::Beurling, a),
        Command::Interpolation(a) => execute(Battery::Interpolation, a),
        Command::All(a) => execute(Battery::All, a),
        Command::GenFamily(a) => generate_family(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn parse_space(name: &str) -> Result<Space, CliError> {
    name.parse::<Space>()
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// Flags that configure a single battery are rejected elsewhere instead of
/// being silently ignored.
fn check_flag_scope(kind: Battery, args: &RunArgs) -> Result<(), CliError> {
    let mut bad: Vec<&str> = Vec::new();
    if (args.p.is_some() || args.q.is_some()) && kind != Battery::Nikolskii {
        bad.push("--p/--q (nikolskii only)");
    }
    if args.family_file.is_some() && kind != Battery::Nikolskii {
        bad.push("--family-file (nikolskii only)");
    }
    if args.beta.is_some() && !matches!(kind, Battery::Wiener | Battery::Beurling) {
        bad.push("--beta (wiener and beurling only)");
    }
    if args.r.is_some() && kind != Battery::Interpolation {
        bad.push("--r (interpolation only)");
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "flags out of scope for `{}`: {}",
            kind.name(),
            bad.join(", ")
        )))
    }
}

fn execute(kind: Battery, args: RunArgs) -> Result<ExitCode, CliError> {
    let space = parse_space(&args.space)?;
    let cap = space.band_cap();
    let l_max = args.l_max.unwrap_or(cap);
    if l_max.is_nan() || l_max < 4.0 {
        return Err(CliError::Usage(format!(
            "--L-max must be at least 4, got {l_max}"
        )));
    }
    if l_max > cap {
        return Err(CliError::Cap(format!(
            "--L-max {l_max} exceeds the band cap {cap} for {}; \
             set PW_LAB_CAP to raise it",
            space.name()
        )));
    }
    check_flag_scope(kind, &args)?;

    let mut reports: Vec<ExperimentReport> = Vec::new();
    let mut counting_csv: Option<String> = None;
    let seed = args.seed;
    let run_one = |kind: Battery,
                       reports: &mut Vec<ExperimentReport>,
                       counting_csv: &mut Option<String>|
     -> Result<(), CliError> {
        match kind {
            Battery::Counting => {
                let (profile, r) = counting_battery(space, l_max)?;
                *counting_csv = Some(profile.to_csv());
                reports.extend(r);
            }
            Battery::Nikolskii => reports.extend(run_nikolskii(space, l_max, &args)?),
            Battery::Embeddings => {
                reports.extend(embedding_battery::<f64>(space, l_max, seed, DEFAULT_COUNT)?)
            }
            Battery::Wiener => {
                reports.extend(wiener_battery::<f64>(space, l_max, seed, DEFAULT_COUNT)?);
                if let Some(beta) = args.beta {
                    reports.push(wiener_beta_cell(space, l_max, seed, beta)?);
                }
            }
            Battery::Beurling => {
                reports.extend(beurling_battery::<f64>(space, l_max, seed, DEFAULT_COUNT)?);
                if let Some(beta) = args.beta {
                    reports.extend(beurling_beta_cells(space, l_max, seed, beta)?);
                }
            }
            Battery::Interpolation => {
                reports.extend(interpolation_battery::<f64>(
                    space,
                    l_max,
                    seed,
                    DEFAULT_COUNT,
                )?);
                if let Some(r0) = args.r {
                    reports.push(interpolation_cell(space, l_max, seed, r0)?);
                }
            }
            Battery::All => unreachable!("expanded below"),
        }
        Ok(())
    };
    if kind == Battery::All {
        for sub in [
            Battery::Counting,
            Battery::Nikolskii,
            Battery::Embeddings,
            Battery::Wiener,
            Battery::Beurling,
            Battery::Interpolation,
        ] {
            run_one(sub, &mut reports, &mut counting_csv)?;
        }
    } else {
        run_one(kind, &mut reports, &mut counting_csv)?;
    }

    if let Some(tol) = args.tol {
        if !(tol >= 0.0) {
            return Err(CliError::Usage(format!(
                "--tol must be nonnegative, got {tol}"
            )));
        }
        for r in &mut reports {
            if r.regime_valid {
                r.tol = tol;
                r.pass = r.ratio <= 1.0 + tol;
            }
        }
    }

    fs::create_dir_all(&args.out_dir)?;
    let mut jsonl = String::new();
    for r in &reports {
        jsonl.push_str(&r.to_json_line());
        jsonl.push('\n');
    }
    fs::write(args.out_dir.join("report.jsonl"), jsonl)?;
    fs::write(args.out_dir.join("summary.csv"), summary_csv(&reports))?;
    if let Some(csv) = &counting_csv {
        fs::write(args.out_dir.join("counting.csv"), csv)?;
    }

    println!(
        "pw-lab {} on {} (L-max {}, seed {})",
        kind.name(),
        space.name(),
        l_max,
        seed
    );
    print_table(&reports);
    let valid = reports.iter().filter(|r| r.regime_valid).count();
    let passed = reports
        .iter()
        .filter(|r| r.regime_valid && r.pass)
        .count();
    let marks = reports.len() - valid;
    let ok = passed == valid;
    println!(
        "{}: {passed}/{valid} in-regime cells pass, {marks} off-regime marks",
        if ok { "PASS" } else { "FAIL" }
    );
    println!("wrote {}", args.out_dir.join("report.jsonl").display());
    println!("wrote {}", args.out_dir.join("summary.csv").display());
    if counting_csv.is_some() {
        println!("wrote {}", args.out_dir.join("counting.csv").display());
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_nikolskii(
    space: Space,
    l_max: f64,
    args: &RunArgs,
) -> Result<Vec<ExperimentReport>, CliError> {
    let pair = match (args.p, args.q) {
        (Some(p), Some(q)) => Some((p, q)),
        (None, None) => None,
        _ => {
            return Err(CliError::Usage(
                "--p and --q must be given together".into(),
            ))
        }
    };
    if let Some(path) = &args.family_file {
        let (label, fields) = load_family_file(path, space)?;
        let inf = f64::INFINITY;
        let pairs = match pair {
            Some(pq) => vec![pq],
            None => vec![
                (1.0, 2.0),
                (1.0, inf),
                (2.0, 4.0),
                (2.0, inf),
                (3.0, 6.0),
                (4.0, inf),
            ],
        };
        let mut out = Vec::with_capacity(pairs.len());
        for (p, q) in pairs {
            out.push(nikolskii_check_fields(space, &fields, &label, p, q, None)?);
        }
        Ok(out)
    } else if let Some((p, q)) = pair {
        let family = FunctionFamily::new(
            FamilyKind::RandomGaussian,
            args.seed,
            family_degree(space, l_max),
            DEFAULT_COUNT,
        );
        Ok(vec![nikolskii_check::<f64>(space, &family, p, q, None)?])
    } else {
        Ok(nikolskii_battery::<f64>(
            space,
            l_max,
            args.seed,
            DEFAULT_COUNT,
        )?)
    }
}

/// Reads a gen-family file: a JSON header line, then one field per line.
fn load_family_file(
    path: &Path,
    space: Space,
) -> Result<(String, Vec<CoefficientField<f64>>), CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Usage(format!("cannot read family file {}: {e}", path.display()))
    })?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: serde_json::Value = lines
        .next()
        .ok_or_else(|| CliError::Usage("family file is empty".into()))
        .and_then(|l| {
            serde_json::from_str(l)
                .map_err(|e| CliError::Usage(format!("family file header: {e}")))
        })?;
    let file_space = header
        .get("space")
        .and_then(|v| v.as_str())
        .ok_or_else(|| CliError::Usage("family file header lacks a \"space\" key".into()))
        .and_then(parse_space)?;
    if file_space != space {
        return Err(CliError::Usage(format!(
            "family file is on {}, the run asked for {}",
            file_space.name(),
            space.name()
        )));
    }
    let kind = header
        .get("kind")
        .and_then(|v| v.as_str())
        .unwrap_or("unknown");
    let mut fields = Vec::new();
    for line in lines {
        fields.push(CoefficientField::<f64>::from_json(line)?);
    }
    if fields.is_empty() {
        return Err(CliError::Usage("family file has no members".into()));
    }
    Ok((format!("file:{kind}(count={})", fields.len()), fields))
}

/// One extra corollary cell: the critical p = 2 Besov norm above `A^beta`.
fn wiener_beta_cell(
    space: Space,
    l_max: f64,
    seed: u64,
    beta: f64,
) -> Result<ExperimentReport, CliError> {
    if !(beta > 0.0) {
        return Err(CliError::Usage(format!(
            "--beta must be positive, got {beta}"
        )));
    }
    let n = space.dim() as f64;
    let family = FunctionFamily::new(
        FamilyKind::RandomGaussian,
        seed,
        stability_degree(space, l_max),
        DEFAULT_COUNT,
    );
    Ok(embedding_check::<f64>(
        space,
        &family,
        "wiener_corollary",
        &NormSpec::besov(n * (beta.recip() - 0.5), 2.0, beta),
        &NormSpec::wiener_a_beta(beta),
        false,
        Regime::Valid,
        None,
    )?)
}

/// The two p = 2 Beurling brackets at a user-chosen weight.
fn beurling_beta_cells(
    space: Space,
    l_max: f64,
    seed: u64,
    beta: f64,
) -> Result<Vec<ExperimentReport>, CliError> {
    if !(beta > 0.0) {
        return Err(CliError::Usage(format!(
            "--beta must be positive, got {beta}"
        )));
    }
    let n = space.dim() as f64;
    let family = FunctionFamily::new(
        FamilyKind::RandomGaussian,
        seed,
        stability_degree(space, l_max),
        DEFAULT_COUNT,
    );
    Ok(vec![
        embedding_check::<f64>(
            space,
            &family,
            "beurling_dominates_besov",
            &NormSpec::beurling(beta),
            &NormSpec::besov(n * (beta.recip() - 0.5), 2.0, beta),
            false,
            Regime::Valid,
            None,
        )?,
        embedding_check::<f64>(
            space,
            &family,
            "besov_dominates_beurling",
            &NormSpec::besov(n / beta, 1.0, beta),
            &NormSpec::beurling(beta),
            false,
            Regime::Valid,
            None,
        )?,
    ])
}

/// One extra Beurling interpolation cell between smoothness `r` and `r/2`.
fn interpolation_cell(
    space: Space,
    l_max: f64,
    seed: u64,
    r0: f64,
) -> Result<ExperimentReport, CliError> {
    if !r0.is_finite() || !(r0 > 0.0) {
        return Err(CliError::Usage(format!(
            "--r must be positive and finite, got {r0}"
        )));
    }
    let degree = match space {
        Space::Torus1 | Space::Torus2 => 8.0f64,
        _ => 6.0,
    }
    .min(l_max / 2.0)
    .max(2.0);
    let family = FunctionFamily::new(
        FamilyKind::RandomGaussian,
        seed,
        degree,
        DEFAULT_COUNT.clamp(1, 4),
    );
    Ok(interpolation_check::<f64>(
        space,
        &family,
        InterpolationCase::Beurling,
        r0,
        r0 / 2.0,
        0.5,
        2.0,
        1.0,
        f64::INFINITY,
        None,
    )?)
}

fn csv_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn summary_csv(reports: &[ExperimentReport]) -> String {
    let mut out = String::from("theorem_tag,space,params_json,n_cases,max_ratio,tol,pass\n");
    for r in reports {
        // BTreeMap params serialize with sorted keys; quotes double up under
        // the CSV quoting rules.
        let params = serde_json::to_string(&r.params).expect("params serialize");
        out.push_str(&format!(
            "{},{},\"{}\",{},{},{},{}\n",
            r.theorem_tag,
            r.space.name(),
            params.replace('"', "\"\""),
            r.n_cases,
            csv_num(r.ratio),
            csv_num(r.tol),
            r.pass
        ));
    }
    out
}

/// One line per theorem tag in first-appearance order.
fn print_table(reports: &[ExperimentReport]) {
    let mut order: Vec<&str> = Vec::new();
    for r in reports {
        if !order.contains(&r.theorem_tag.as_str()) {
            order.push(&r.theorem_tag);
        }
    }
    for tag in order {
        let group: Vec<&ExperimentReport> =
            reports.iter().filter(|r| r.theorem_tag == tag).collect();
        let valid: Vec<&&ExperimentReport> =
            group.iter().filter(|r| r.regime_valid).collect();
        let marks = group.len() - valid.len();
        let pass = valid.iter().all(|r| r.pass);
        let worst = valid.iter().map(|r| r.ratio).fold(0.0, f64::max);
        let tol = valid.iter().map(|r| r.tol).fold(0.0, f64::max);
        let note = if marks > 0 {
            format!("  (+{marks} off-regime)")
        } else {
            String::new()
        };
        println!(
            "{} {tag:<28} cells {:>2}  worst-ratio {:<12.6}  tol {:<8.1e}{note}",
            if pass { "PASS" } else { "FAIL" },
            valid.len(),
            worst,
            tol
        );
    }
}

fn generate_family(args: GenArgs) -> Result<ExitCode, CliError> {
    let space = parse_space(&args.space)?;
    let kind = FamilyKind::from_name(&args.kind)?;
    if !(args.degree >= 1.0) {
        return Err(CliError::Usage(format!(
            "--degree must be at least 1, got {}",
            args.degree
        )));
    }
    if args.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let family = FunctionFamily::new(kind, args.seed, args.degree, args.count);
    let fields = family.generate::<f64>(space)?;
    // Header first, then one member per line; keys sort, so bytes are stable.
    let mut text = serde_json::json!({
        "space": space.name(),
        "kind": kind.name(),
        "seed": args.seed,
        "degree": args.degree,
        "count": fields.len(),
    })
    .to_string();
    text.push('\n');
    for f in &fields {
        text.push_str(&f.to_json());
        text.push('\n');
    }
    if let Some(parent) = args.out_file.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(&args.out_file, text)?;
    println!(
        "wrote {} members ({}, degree {}) to {}",
        fields.len(),
        kind.name(),
        args.degree,
        args.out_file.display()
    );
    Ok(ExitCode::SUCCESS)
}
