//! Command-line surface: batch analysis, inequality verification, junta
//! extraction, and family sweeps.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage/parse error, 3 resource
//! budget exceeded. All commands are deterministic given their flags (seeds
//! are explicit), and reports are byte-identical across `--threads`
//! settings.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analyze::{self, LIBRARY_VERSION, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::families::{generate, tribes_moment, FamilyKind, FamilySpec};
use crate::function::BooleanFunction;
use crate::harness::{self, CorpusSpec, FloorSet};
use crate::junta::{self, JuntaParams};

#[derive(Parser)]
#[command(
    name = "hyperioso",
    version,
    about = "Fourier-analytic and isoperimetric analysis of Boolean functions",
    after_help = "Function specs: tt:<n>:<hex> | family=<kind>,<params>,n=<n> | \
                  random,seed=<s>,n=<n>[,bias=<b>]\n\
                  Coordinates are 0-based; bit i of a point mask is coordinate i."
)]
pub struct Cli {
    /// Worker threads (default: hardware parallelism; env HYPERIOSO_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// TOML file with the same keys as the flags; explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute every scalar quantity of one function and emit JSON.
    Analyze(AnalyzeArgs),
    /// Run inequality checks over a corpus; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Run the junta-extraction pipeline on one function.
    Junta(JuntaArgs),
    /// Sweep a family parameter range and emit plot-ready CSV.
    Sweep(SweepArgs),
    /// Re-measure the regression floors for the ratio checks.
    Calibrate(CalibrateArgs),
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Function spec (see --help for the grammar).
    pub spec: String,
    /// Sensitivity-moment exponents to report.
    #[arg(long, value_delimiter = ',')]
    pub moments: Vec<f64>,
    /// Noise rates for the stability curve.
    #[arg(long, value_delimiter = ',')]
    pub noise_eps: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Corpus spec: exhaustive:n | random:n:count:seed | families:n_max.
    #[arg(long)]
    pub corpus: Option<String>,
    /// all | hard | ratio | surface | comma-separated ids.
    #[arg(long)]
    pub checks: Option<String>,
    /// Directory for per-check JSON and CSV reports.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON floor table overriding the built-in calibration floors.
    #[arg(long)]
    pub floors: Option<PathBuf>,
}

#[derive(Args)]
pub struct JuntaArgs {
    pub spec: String,
    /// Target closeness.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Sensitivity-moment exponent in (1/2, 1].
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub c1: Option<f64>,
    #[arg(long)]
    pub c2: Option<f64>,
    /// Also run the exhaustive nearest-junta oracle with this size bound.
    #[arg(long)]
    pub oracle: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Family to sweep: tribes | majority | parity | and_k | or_k.
    #[arg(long)]
    pub family: Option<String>,
    /// Tribe widths (tribes only).
    #[arg(long, value_delimiter = ',')]
    pub w: Vec<u32>,
    /// Explicit dimension list (non-tribes families).
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u32>,
    /// Largest dimension (tribes: generates every m with w*m <= n_max).
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Moment exponent.
    #[arg(long)]
    pub p: Option<f64>,
    /// moment (alias talagrand) | mean | variance | total-influence.
    #[arg(long)]
    pub quantity: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CalibrateArgs {
    /// Corpora to measure; defaults to the shipped calibration set.
    #[arg(long)]
    pub corpus: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses and runs a full command line, returning the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version to stdout with status 0; usage errors
            // land on stderr with status 2.
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Budget(_) => 3,
        _ => 2,
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let config = ConfigFile::load(cli.config.as_deref())?;
    let threads = cli
        .threads
        .or_else(|| config.get_usize("threads"))
        .or_else(|| {
            std::env::var("HYPERIOSO_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        });
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cli.command, &config))
}

fn dispatch(command: Command, config: &ConfigFile) -> Result<i32> {
    match command {
        Command::Analyze(args) => cmd_analyze(args, config),
        Command::Verify(args) => cmd_verify(args, config),
        Command::Junta(args) => cmd_junta(args, config),
        Command::Sweep(args) => cmd_sweep(args, config),
        Command::Calibrate(args) => cmd_calibrate(args),
    }
}

// ---------------------------------------------------------------------------
// function spec grammar

/// Parses one of the three function-spec forms into a table.
pub fn parse_function_spec(spec: &str) -> Result<BooleanFunction> {
    if spec.starts_with("tt:") {
        return BooleanFunction::parse_tt(spec);
    }
    if let Some(rest) = spec.strip_prefix("family=") {
        return parse_family_spec(rest);
    }
    if let Some(rest) = spec.strip_prefix("random") {
        let rest = rest.strip_prefix(',').unwrap_or(rest);
        return parse_family_spec(&format!("random,{rest}"));
    }
    Err(Error::Parse(format!(
        "unrecognized function spec {spec:?}: expected tt:, family=, or random,..."
    )))
}

fn parse_family_spec(body: &str) -> Result<BooleanFunction> {
    let mut parts = body.split(',');
    let kind_token = parts.next().unwrap_or_default();
    let mut params: Vec<(&str, &str)> = Vec::new();
    for token in parts {
        let (key, value) = token.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "bad family parameter token {token:?} (expected key=value)"
            ))
        })?;
        params.push((key, value));
    }
    let get = |key: &str| params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
    let parse_u32 = |key: &str| -> Result<Option<u32>> {
        get(key)
            .map(|v| {
                v.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad value {v:?} for {key:?}")))
            })
            .transpose()
    };
    let parse_u64 = |key: &str| -> Result<Option<u64>> {
        get(key)
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad value {v:?} for {key:?}")))
            })
            .transpose()
    };
    let parse_f64 = |key: &str| -> Result<Option<f64>> {
        get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad value {v:?} for {key:?}")))
            })
            .transpose()
    };

    let kind = match kind_token {
        "constant" => FamilyKind::Constant {
            value: parse_u32("v")?.unwrap_or(0) != 0,
        },
        "dictator" => FamilyKind::Dictator {
            i: parse_u32("i")?.unwrap_or(0),
        },
        "and_k" => FamilyKind::AndK {
            k: parse_u32("k")?.ok_or_else(|| Error::Parse("and_k requires k=<k>".into()))?,
        },
        "or_k" => FamilyKind::OrK {
            k: parse_u32("k")?.ok_or_else(|| Error::Parse("or_k requires k=<k>".into()))?,
        },
        "parity" => {
            let coords = match get("coords") {
                None => parse_u32("k")?.map(crate::function::full_set),
                Some(list) => {
                    let mut set = 0u32;
                    for token in list.split('+') {
                        let i: u32 = token.parse().map_err(|_| {
                            Error::Parse(format!("bad coordinate token {token:?} in coords"))
                        })?;
                        set |= 1 << i;
                    }
                    Some(set)
                }
            };
            FamilyKind::Parity { coords }
        }
        "majority" => FamilyKind::Majority,
        "tribes" => FamilyKind::Tribes {
            w: parse_u32("w")?.ok_or_else(|| Error::Parse("tribes requires w=<w>".into()))?,
            m: parse_u32("m")?.ok_or_else(|| Error::Parse("tribes requires m=<m>".into()))?,
        },
        "random" => FamilyKind::Random {
            seed: parse_u64("seed")?
                .ok_or_else(|| Error::Parse("random requires seed=<s>".into()))?,
            bias: parse_f64("bias")?.unwrap_or(0.5),
        },
        other => {
            return Err(Error::Parse(format!("unknown family kind {other:?}")));
        }
    };

    // Tribes infers its native dimension; an explicit larger n embeds.
    let native_n = match kind {
        FamilyKind::Tribes { w, m } => Some(w * m),
        _ => None,
    };
    let n = match (parse_u32("n")?, native_n) {
        (Some(n), _) => n,
        (None, Some(n)) => n,
        (None, None) => {
            return Err(Error::Parse("family spec requires n=<n>".into()));
        }
    };
    match native_n {
        Some(native) if n > native => generate(&FamilySpec::new(kind), native)?.embed(n),
        _ => generate(&FamilySpec::new(kind), n),
    }
}

// ---------------------------------------------------------------------------
// commands

fn write_or_print(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, content)?;
        }
        None => println!("{content}"),
    }
    Ok(())
}

fn cmd_analyze(args: AnalyzeArgs, config: &ConfigFile) -> Result<i32> {
    let f = parse_function_spec(&args.spec)?;
    let moments = if args.moments.is_empty() {
        config
            .get_f64_list("moments")
            .unwrap_or_else(|| analyze::DEFAULT_MOMENTS.to_vec())
    } else {
        args.moments
    };
    let noise_eps = if args.noise_eps.is_empty() {
        analyze::DEFAULT_NOISE_EPS.to_vec()
    } else {
        args.noise_eps
    };
    let report = analyze::analyze(&f, &args.spec, &moments, &noise_eps)?;
    write_or_print(args.out.as_deref(), &report.to_json())?;
    Ok(0)
}

#[derive(Serialize)]
struct VerifySummary {
    schema_version: &'static str,
    library_version: &'static str,
    corpus: String,
    checks: Vec<VerifyLine>,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyLine {
    check: String,
    kind: String,
    status: String,
    min_ratio: Option<f64>,
    max_ratio: Option<f64>,
    floor: Option<f64>,
    rows: usize,
    degenerate_rows: usize,
    failed_rows: usize,
    witness: Option<String>,
}

fn cmd_verify(args: VerifyArgs, config: &ConfigFile) -> Result<i32> {
    let corpus_str = args
        .corpus
        .or_else(|| config.get_string("corpus"))
        .ok_or_else(|| Error::Parse("verify requires --corpus".into()))?;
    let spec = CorpusSpec::parse(&corpus_str)?;
    let selector = args
        .checks
        .or_else(|| config.get_string("checks"))
        .unwrap_or_else(|| "all".to_string());
    let ids = harness::resolve_check_ids(&selector)?;
    let floors = match &args.floors {
        Some(path) => FloorSet::from_json(&std::fs::read_to_string(path)?)?,
        None => FloorSet::builtin(),
    };

    let mut lines = Vec::new();
    let mut all_pass = true;
    for id in &ids {
        match harness::run_check_with_floors(id, &spec, &floors) {
            Ok(report) => {
                let status = match report.pass {
                    Some(true) => "pass",
                    Some(false) => "fail",
                    None => "recorded",
                };
                if report.pass == Some(false) {
                    all_pass = false;
                    if let Some(row) = report.first_failure() {
                        println!(
                            "FAIL {id} witness {} detail [{}] lhs {} rhs {}",
                            row.tt, row.detail, row.lhs, row.rhs
                        );
                    } else {
                        println!(
                            "FAIL {id} min ratio {} below floor {} witness {}",
                            report
                                .aggregates
                                .min_ratio
                                .map(|r| r.to_string())
                                .unwrap_or_else(|| "-".into()),
                            report
                                .floor
                                .map(|r| r.to_string())
                                .unwrap_or_else(|| "-".into()),
                            report.aggregates.argmin_witness.as_deref().unwrap_or("-"),
                        );
                    }
                } else {
                    println!(
                        "{} {id} rows {} min_ratio {}",
                        status,
                        report.aggregates.rows,
                        report
                            .aggregates
                            .min_ratio
                            .map(|r| r.to_string())
                            .unwrap_or_else(|| "-".into()),
                    );
                }
                lines.push(VerifyLine {
                    check: report.check.clone(),
                    kind: report.kind.clone(),
                    status: status.to_string(),
                    min_ratio: report.aggregates.min_ratio,
                    max_ratio: report.aggregates.max_ratio,
                    floor: report.floor,
                    rows: report.aggregates.rows,
                    degenerate_rows: report.aggregates.degenerate_rows,
                    failed_rows: report.aggregates.failed_rows,
                    witness: report.aggregates.argmin_witness.clone(),
                });
                if let Some(dir) = &args.out {
                    std::fs::create_dir_all(dir)?;
                    std::fs::write(dir.join(format!("{id}.json")), report.to_json())?;
                    std::fs::write(dir.join(format!("{id}.csv")), report.to_csv())?;
                }
            }
            // A fully degenerate corpus makes the statement vacuous there,
            // not violated: record and move on.
            Err(Error::DegenerateCorpus(msg)) => {
                println!("degenerate {id} ({msg})");
                lines.push(VerifyLine {
                    check: id.to_string(),
                    kind: harness::checks::find(id)
                        .map(|d| d.kind.as_str().to_string())
                        .unwrap_or_default(),
                    status: "degenerate".to_string(),
                    min_ratio: None,
                    max_ratio: None,
                    floor: None,
                    rows: 0,
                    degenerate_rows: 0,
                    failed_rows: 0,
                    witness: None,
                });
            }
            Err(other) => return Err(other),
        }
    }

    let summary = VerifySummary {
        schema_version: SCHEMA_VERSION,
        library_version: LIBRARY_VERSION,
        corpus: spec.key(),
        checks: lines,
        pass: all_pass,
    };
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(
            dir.join("summary.json"),
            serde_json::to_string_pretty(&summary).expect("plain struct"),
        )?;
    }
    Ok(if all_pass { 0 } else { 1 })
}

#[derive(Serialize)]
struct JuntaCommandReport {
    schema_version: &'static str,
    library_version: &'static str,
    spec: String,
    eps: f64,
    p: f64,
    c1: f64,
    c2: f64,
    result: junta::JuntaResult,
    oracle: Option<OracleComparison>,
}

#[derive(Serialize)]
struct OracleComparison {
    size_bound: u32,
    coords: Vec<u32>,
    distance: f64,
    /// Pipeline distance minus oracle distance (always >= 0).
    gap: f64,
}

fn cmd_junta(args: JuntaArgs, config: &ConfigFile) -> Result<i32> {
    let f = parse_function_spec(&args.spec)?;
    let eps = args.eps.or_else(|| config.get_f64("eps")).unwrap_or(0.1);
    let p = args.p.or_else(|| config.get_f64("p")).unwrap_or(1.0);
    let c1 = args
        .c1
        .or_else(|| config.get_f64("c1"))
        .unwrap_or(junta::DEFAULT_C1);
    let c2 = args
        .c2
        .or_else(|| config.get_f64("c2"))
        .unwrap_or(junta::DEFAULT_C2);
    let params = JuntaParams::with_constants(eps, p, c1, c2)?;
    let result = junta::extract_junta(&f, &params)?;
    let oracle = match args.oracle {
        None => None,
        Some(bound) => {
            let (set, distance) = junta::nearest_junta(&f, bound)?;
            Some(OracleComparison {
                size_bound: bound,
                coords: crate::function::coords_of(set),
                distance,
                gap: result.distance - distance,
            })
        }
    };
    let report = JuntaCommandReport {
        schema_version: SCHEMA_VERSION,
        library_version: LIBRARY_VERSION,
        spec: args.spec.clone(),
        eps,
        p,
        c1,
        c2,
        result,
        oracle,
    };
    write_or_print(
        args.out.as_deref(),
        &serde_json::to_string_pretty(&report).expect("plain struct"),
    )?;
    Ok(0)
}

fn cmd_sweep(args: SweepArgs, config: &ConfigFile) -> Result<i32> {
    let family = args
        .family
        .or_else(|| config.get_string("family"))
        .ok_or_else(|| Error::Parse("sweep requires --family".into()))?;
    let p = args.p.or_else(|| config.get_f64("p")).unwrap_or(0.5);
    let quantity = args
        .quantity
        .or_else(|| config.get_string("quantity"))
        .unwrap_or_else(|| "moment".to_string());

    let mut csv = String::from("family,w,m,n,p,quantity,value,reference,ratio\n");
    let mut rows = 0usize;
    match family.as_str() {
        "tribes" => {
            let widths = if args.w.is_empty() {
                vec![2, 3]
            } else {
                args.w.clone()
            };
            let n_max = args.n_max.unwrap_or(16);
            for &w in &widths {
                if w == 0 {
                    continue;
                }
                for m in 1..=(n_max / w) {
                    let n = w * m;
                    if n > crate::function::MAX_DIMENSION {
                        continue;
                    }
                    let value = match quantity.as_str() {
                        "moment" | "talagrand" => tribes_moment(w, m, p)?,
                        other => {
                            let f = generate(&FamilySpec::new(FamilyKind::Tribes { w, m }), n)?;
                            quantity_of(&f, other, p)?
                        }
                    };
                    // Reference column: (ln n)^p, natural log.
                    let reference = (n as f64).ln().powf(p);
                    let ratio = if reference > 0.0 {
                        (value / reference).to_string()
                    } else {
                        String::new()
                    };
                    let _ = writeln!(
                        csv,
                        "tribes,{w},{m},{n},{p},{quantity},{value},{reference},{ratio}"
                    );
                    rows += 1;
                }
            }
        }
        name => {
            let dims = if args.n.is_empty() {
                match args.n_max {
                    Some(n_max) => default_dims(name, n_max),
                    None => Vec::new(),
                }
            } else {
                args.n.clone()
            };
            for &n in &dims {
                let kind = match name {
                    "majority" => FamilyKind::Majority,
                    "parity" => FamilyKind::Parity { coords: None },
                    "and_k" => FamilyKind::AndK { k: n.min(3) },
                    "or_k" => FamilyKind::OrK { k: n.min(3) },
                    other => {
                        return Err(Error::Parse(format!("unknown sweep family {other:?}")))
                    }
                };
                let f = generate(&FamilySpec::new(kind), n)?;
                let value = quantity_of(&f, &quantity, p)?;
                let _ = writeln!(csv, "{name},,,{n},{p},{quantity},{value},,");
                rows += 1;
            }
        }
    }
    if rows == 0 {
        return Err(Error::Parse(
            "sweep produced no rows: empty parameter range".into(),
        ));
    }
    write_or_print(args.out.as_deref(), &csv)?;
    Ok(0)
}

fn default_dims(family: &str, n_max: u32) -> Vec<u32> {
    match family {
        // Odd dimensions only.
        "majority" => (3..=n_max).step_by(2).collect(),
        _ => (2..=n_max).collect(),
    }
}

fn quantity_of(f: &BooleanFunction, quantity: &str, p: f64) -> Result<f64> {
    match quantity {
        "moment" | "talagrand" => crate::geometry::talagrand_boundary(f, p),
        "mean" => Ok(f.mean()),
        "variance" => Ok(f.variance()),
        "total-influence" => Ok(crate::geometry::total_influence(f)),
        other => Err(Error::Parse(format!("unknown quantity {other:?}"))),
    }
}

#[derive(Serialize)]
struct CalibrationOutput {
    schema_version: &'static str,
    library_version: &'static str,
    floors: Vec<CalibrationEntry>,
}

#[derive(Serialize)]
struct CalibrationEntry {
    check: String,
    corpus: String,
    min_ratio: f64,
    witness: Option<String>,
}

/// The corpora whose floors ship with the crate.
pub const CALIBRATION_CORPORA: [&str; 4] = [
    "exhaustive:3",
    "exhaustive:4",
    "families:16",
    "random:10:1000:42",
];

fn cmd_calibrate(args: CalibrateArgs) -> Result<i32> {
    let corpora = if args.corpus.is_empty() {
        CALIBRATION_CORPORA.iter().map(|s| s.to_string()).collect()
    } else {
        args.corpus.clone()
    };
    let mut floors = Vec::new();
    for corpus_str in &corpora {
        let spec = CorpusSpec::parse(corpus_str)?;
        for def in harness::registry() {
            if def.kind != harness::CheckKind::Ratio {
                continue;
            }
            match harness::run_check(def.id, &spec) {
                Ok(report) => {
                    if let Some(min_ratio) = report.aggregates.min_ratio {
                        floors.push(CalibrationEntry {
                            check: def.id.to_string(),
                            corpus: spec.key(),
                            min_ratio,
                            witness: report.aggregates.argmin_witness.clone(),
                        });
                    }
                }
                Err(Error::DegenerateCorpus(_)) => {}
                Err(other) => return Err(other),
            }
        }
    }
    let output = CalibrationOutput {
        schema_version: SCHEMA_VERSION,
        library_version: LIBRARY_VERSION,
        floors,
    };
    write_or_print(
        args.out.as_deref(),
        &serde_json::to_string_pretty(&output).expect("plain struct"),
    )?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// config file

#[derive(Default)]
pub struct ConfigFile {
    table: Option<toml::Table>,
}

impl ConfigFile {
    fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)?;
        let table = text
            .parse::<toml::Table>()
            .map_err(|e| Error::Parse(format!("config file: {e}")))?;
        Ok(Self { table: Some(table) })
    }

    fn get_string(&self, key: &str) -> Option<String> {
        self.table.as_ref()?.get(key)?.as_str().map(str::to_string)
    }

    fn get_f64(&self, key: &str) -> Option<f64> {
        let value = self.table.as_ref()?.get(key)?;
        value
            .as_float()
            .or_else(|| value.as_integer().map(|v| v as f64))
    }

    fn get_usize(&self, key: &str) -> Option<usize> {
        self.table.as_ref()?.get(key)?.as_integer().map(|v| v as usize)
    }

    fn get_f64_list(&self, key: &str) -> Option<Vec<f64>> {
        let arr = self.table.as_ref()?.get(key)?.as_array()?;
        arr.iter()
            .map(|v| v.as_float().or_else(|| v.as_integer().map(|x| x as f64)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_spec_forms() {
        let dict = parse_function_spec("tt:1:2").unwrap();
        assert_eq!(dict.to_tt_string(), "tt:1:2");

        let maj = parse_function_spec("family=majority,n=3").unwrap();
        assert_eq!(maj.to_tt_string(), "tt:3:8e");

        let tribes = parse_function_spec("family=tribes,w=2,m=2").unwrap();
        assert_eq!(tribes.n(), 4);
        let embedded = parse_function_spec("family=tribes,w=2,m=2,n=7").unwrap();
        assert_eq!(embedded.n(), 7);

        let r1 = parse_function_spec("random,seed=7,n=10").unwrap();
        let r2 = parse_function_spec("family=random,seed=7,n=10").unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn parse_errors_name_the_token() {
        let err = parse_function_spec("family=tribes,w=2").unwrap_err();
        assert!(err.to_string().contains("m="), "{err}");
        let err = parse_function_spec("family=andx,n=3").unwrap_err();
        assert!(err.to_string().contains("andx"), "{err}");
        let err = parse_function_spec("family=majority,n=zz").unwrap_err();
        assert!(err.to_string().contains("zz"), "{err}");
        let err = parse_function_spec("blah").unwrap_err();
        assert!(err.to_string().contains("blah"), "{err}");
    }

    #[test]
    fn exit_codes_map_error_classes() {
        assert_eq!(exit_code_for(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code_for(&Error::Budget("x".into())), 3);
        assert_eq!(exit_code_for(&Error::Config("x".into())), 2);
    }
}
