//! Command-line front end: configuration parsing, orchestration and
//! deterministic report emission.
//!
//! A run is a single TOML file with `[set]`, `[numeric]` and `[output]`
//! tables, plus flag overrides. Exit status is 0 on success, 1 on input
//! errors and 2 when any checked invariant or inequality is violated.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::ops::Range;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use toml::Spanned;

use crate::blaschke::{extremal_sweep, ExtremalSweepRow};
use crate::constants::{constants_report, ConstantsOptions, ConstantsReport, INEQUALITY_TOL};
use crate::equilibrium::{fekete_sweep, MIN_RESTARTS};
use crate::error::{Error, Result};
use crate::report::fmt12;
use crate::riesz::{sigma_numeric, sigma_total_mass_disk, GridSpec, MASS_TOL};
use crate::sets::{CompactSet, SetSpec};
use crate::suites::{blaschke_suite, sharp_inequality_suite, SuiteSummary};

pub const GRID_H_MIN: f64 = 1.0 / 4096.0;
pub const GRID_H_MAX: f64 = 1.0 / 64.0;
pub const MAX_RESTARTS: usize = 256;
pub const MAX_TRIALS: usize = 1_000_000;
pub const MAX_N: usize = 512;
pub const THREADS_ENV: &str = "GREENPOT_THREADS";

const DEFAULT_FEKETE_LIST: [usize; 6] = [2, 4, 8, 16, 32, 64];
const DEFAULT_SWEEP_LIST: [usize; 7] = [2, 4, 8, 16, 32, 64, 128];
const DEFAULT_TRIALS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Sigma,
    Fekete,
    Constants,
    VerifyInequality,
    VerifyBlaschke,
    ExtremalSweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Sigma => "sigma",
            Command::Fekete => "fekete",
            Command::Constants => "constants",
            Command::VerifyInequality => "verify-inequality",
            Command::VerifyBlaschke => "verify-blaschke",
            Command::ExtremalSweep => "extremal-sweep",
        }
    }

    fn randomized(self) -> bool {
        matches!(self, Command::VerifyInequality | Command::VerifyBlaschke)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    #[serde(alias = "record", alias = "json")]
    StructuredRecord,
}

#[derive(Debug, Parser)]
#[command(
    name = "greenpot",
    version,
    about = "Green potential experiments on the unit disk"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// TOML run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides `numeric.seed`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides `output.path`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Treat solver nonconvergence as a failure.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    set: Spanned<SetSpec>,
    #[serde(default)]
    numeric: Option<Spanned<NumericSection>>,
    #[serde(default)]
    output: OutputSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct NumericSection {
    grid_h: Option<Spanned<f64>>,
    restarts: Option<Spanned<usize>>,
    seed: Option<u64>,
    n_list: Option<Spanned<Vec<usize>>>,
    trials: Option<Spanned<usize>>,
    tol: Option<Spanned<f64>>,
    fekete_n: Option<Spanned<usize>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    path: Option<PathBuf>,
    #[serde(default)]
    format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Numeric {
    pub grid_h: f64,
    pub restarts: usize,
    pub seed: Option<u64>,
    /// Sorted, without duplicates.
    pub n_list: Option<Vec<usize>>,
    pub trials: usize,
    pub tol: f64,
    pub fekete_n: usize,
}

impl Default for Numeric {
    fn default() -> Self {
        let c = ConstantsOptions::default();
        Self {
            grid_h: c.grid_h,
            restarts: c.restarts,
            seed: None,
            n_list: None,
            trials: DEFAULT_TRIALS,
            tol: INEQUALITY_TOL,
            fekete_n: c.fekete_n,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Format,
}

/// A validated run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub set_spec: SetSpec,
    pub set: CompactSet,
    pub numeric: Numeric,
    pub output: OutputSpec,
    pub strict: bool,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn config_error(text: &str, span: Option<Range<usize>>, message: impl Into<String>) -> Error {
    Error::Config {
        line: span.map_or(1, |s| line_of(text, s.start)),
        message: message.into(),
    }
}

fn check_range<T: PartialOrd + fmt::Display + Copy>(
    text: &str,
    value: &Spanned<T>,
    key: &str,
    lo: T,
    hi: T,
) -> Result<T> {
    let v = *value.get_ref();
    if v >= lo && v <= hi {
        Ok(v)
    } else {
        Err(config_error(
            text,
            Some(value.span()),
            format!("{key} = {v} outside [{lo}, {hi}]"),
        ))
    }
}

impl RunConfig {
    /// Parses and validates a configuration text. Errors carry the line of
    /// the offending entry.
    pub fn from_toml_str(command: Command, text: &str) -> Result<Self> {
        Self::parse(command, text, None)
    }

    /// As [`RunConfig::from_toml_str`], with a seed that overrides the file's.
    pub fn parse(command: Command, text: &str, seed: Option<u64>) -> Result<Self> {
        let file: FileConfig =
            toml::from_str(text).map_err(|e| config_error(text, e.span(), e.message().trim()))?;

        let set_span = file.set.span();
        let set_spec = file.set.into_inner();
        let set = set_spec
            .build()
            .map_err(|e| config_error(text, Some(set_span.clone()), e.to_string()))?;

        let mut numeric = Numeric::default();
        let (num_span, section) = match file.numeric {
            Some(s) => (Some(s.span()), s.into_inner()),
            None => (None, NumericSection::default()),
        };
        if let Some(v) = &section.grid_h {
            let h = *v.get_ref();
            if !(GRID_H_MIN..=GRID_H_MAX).contains(&h) {
                return Err(config_error(
                    text,
                    Some(v.span()),
                    format!("grid_h = {h} outside [1/4096, 1/64]"),
                ));
            }
            numeric.grid_h = h;
        }
        if let Some(v) = &section.restarts {
            numeric.restarts = check_range(text, v, "restarts", MIN_RESTARTS, MAX_RESTARTS)?;
        }
        if let Some(v) = &section.trials {
            numeric.trials = check_range(text, v, "trials", 1, MAX_TRIALS)?;
        }
        if let Some(v) = &section.tol {
            numeric.tol = check_range(text, v, "tol", 0.0, 1e-1)?;
        }
        if let Some(v) = &section.fekete_n {
            numeric.fekete_n = check_range(text, v, "fekete_n", 16, MAX_N)?;
        }
        if let Some(v) = &section.n_list {
            let mut list = v.get_ref().clone();
            if list.is_empty() || list.iter().any(|&n| !(2..=MAX_N).contains(&n)) {
                return Err(config_error(
                    text,
                    Some(v.span()),
                    format!(
                        "n_list entries must lie in [2, {MAX_N}] and the list must be nonempty"
                    ),
                ));
            }
            list.sort_unstable();
            list.dedup();
            numeric.n_list = Some(list);
        }
        numeric.seed = seed.or(section.seed);
        if command.randomized() && numeric.seed.is_none() {
            return Err(config_error(
                text,
                num_span,
                format!("{command} is randomized: numeric.seed is required"),
            ));
        }

        Ok(Self {
            command,
            set_spec,
            set,
            numeric,
            output: OutputSpec {
                path: file.output.path,
                format: file.output.format,
            },
            strict: false,
        })
    }

    /// Reads a configuration file and applies the command-line overrides.
    pub fn load(cli: &Cli) -> Result<Self> {
        let text = std::fs::read_to_string(&cli.config).map_err(|source| Error::Io {
            path: cli.config.clone(),
            source,
        })?;
        let mut cfg = Self::parse(cli.command, &text, cli.seed)?;
        if let Some(out) = &cli.out {
            cfg.output.path = Some(out.clone());
        }
        cfg.strict = cli.strict;
        Ok(cfg)
    }

    fn seed(&self) -> u64 {
        self.numeric.seed.expect("seed checked during validation")
    }

    fn constants_options(&self) -> ConstantsOptions {
        ConstantsOptions {
            fekete_n: self.numeric.fekete_n,
            restarts: self.numeric.restarts,
            grid_h: self.numeric.grid_h,
        }
    }
}

/// Rendered output of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub csv: Vec<u8>,
    pub record: Value,
    /// Human-readable key/value table.
    pub summary: Vec<(String, String)>,
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl Artifact {
    fn new(csv: Vec<u8>, record: Value) -> Self {
        Self {
            csv,
            record,
            summary: Vec::new(),
            violations: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn note(&mut self, key: &str, value: impl Into<String>) {
        self.summary.push((key.to_string(), value.into()));
    }

    /// Exit status: 2 on violations (and on warnings when strict), else 0.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if !self.violations.is_empty() || (strict && !self.warnings.is_empty()) {
            2
        } else {
            0
        }
    }

    pub fn rendered(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Csv => self.csv.clone(),
            Format::StructuredRecord => {
                let mut s = serde_json::to_string_pretty(&self.record).expect("record serializes");
                s.push('\n');
                s.into_bytes()
            }
        }
    }
}

fn csv_bytes<I, R>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn table_record(command: Command, header: &[&str], rows: &[Vec<String>]) -> Value {
    json!({ "command": command.name(), "columns": header, "rows": rows })
}

/// Runs the configured experiment.
pub fn execute(cfg: &RunConfig) -> Result<Artifact> {
    match cfg.command {
        Command::Sigma => run_sigma(cfg),
        Command::Fekete => run_fekete(cfg),
        Command::Constants => run_constants(cfg),
        Command::VerifyInequality => {
            let (rep, _) = constants_report(&cfg.set, &cfg.constants_options())?;
            let tol = cfg.numeric.tol + rep.quadrature_budget;
            let suite =
                sharp_inequality_suite(&cfg.set, &rep, cfg.numeric.trials, cfg.seed(), tol)?;
            Ok(suite_artifact(cfg.command, &suite, &rep))
        }
        Command::VerifyBlaschke => {
            let (rep, _) = constants_report(&cfg.set, &cfg.constants_options())?;
            let tol = cfg.numeric.tol + rep.quadrature_budget;
            let suite = blaschke_suite(&cfg.set, &rep, cfg.numeric.trials, cfg.seed(), tol)?;
            Ok(suite_artifact(cfg.command, &suite, &rep))
        }
        Command::ExtremalSweep => run_sweep(cfg),
    }
}

fn run_sigma(cfg: &RunConfig) -> Result<Artifact> {
    let grid = sigma_numeric(&cfg.set, GridSpec::for_set(&cfg.set, cfg.numeric.grid_h))?;
    let mut csv = Vec::new();
    grid.write_csv(&mut csv).expect("in-memory write");
    let rows: Vec<Vec<String>> = grid
        .cells
        .iter()
        .map(|c| {
            vec![
                fmt12(c.point.re),
                fmt12(c.point.im),
                fmt12(c.density),
                fmt12(c.area),
            ]
        })
        .collect();
    let (kind, n_theta) = match grid.spec {
        GridSpec::Polar { n_theta, .. } => ("polar", Some(n_theta)),
        GridSpec::Cartesian { .. } => ("cartesian", None),
    };
    let mut record = table_record(cfg.command, &["re", "im", "density", "cell_area"], &rows);
    record["grid"] = json!({ "kind": kind, "h": fmt12(grid.spec.spacing()), "n_theta": n_theta });
    record["mass"] = json!(fmt12(grid.mass));
    record["clipped"] = json!(fmt12(grid.clipped));

    let mut art = Artifact::new(csv, Value::Null);
    art.note("grid", kind);
    art.note("h", fmt12(grid.spec.spacing()));
    art.note("cells", grid.cells.len().to_string());
    art.note("mass", fmt12(grid.mass));
    art.note("clipped", fmt12(grid.clipped));
    if grid.mass > 1.0 + MASS_TOL {
        art.violations
            .push(format!("Riesz mass {} exceeds 1", grid.mass));
    }
    if let Some(r) = cfg.set.disk_radius() {
        let expected = sigma_total_mass_disk(r)?;
        record["expected_mass"] = json!(fmt12(expected));
        art.note("expected_mass", fmt12(expected));
        if (grid.mass - expected).abs() > MASS_TOL {
            art.violations.push(format!(
                "Riesz mass {} differs from {expected} by more than {MASS_TOL}",
                grid.mass
            ));
        }
    }
    art.record = record;
    Ok(art)
}

fn run_fekete(cfg: &RunConfig) -> Result<Artifact> {
    let list = cfg
        .numeric
        .n_list
        .clone()
        .unwrap_or_else(|| DEFAULT_FEKETE_LIST.to_vec());
    let sweep = fekete_sweep(&cfg.set, &list, cfg.numeric.restarts)?;
    let header = [
        "n",
        "energy",
        "normalized_energy",
        "min_potential",
        "restarts_used",
        "nonconverged",
    ];
    let rows: Vec<Vec<String>> = sweep
        .results
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                fmt12(r.energy),
                fmt12(r.normalized_energy),
                fmt12(r.min_potential),
                r.restarts_used.to_string(),
                r.nonconverged.to_string(),
            ]
        })
        .collect();
    let mut record = table_record(cfg.command, &header, &rows);
    record["points"] = sweep
        .results
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "points": r.points.iter().map(|p| [fmt12(p.re), fmt12(p.im)]).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut art = Artifact::new(csv_bytes(&header, rows), record);
    for r in &sweep.results {
        art.note(
            &format!("normalized_energy[{}]", r.n),
            fmt12(r.normalized_energy),
        );
        if r.nonconverged {
            art.warnings
                .push(format!("n = {}: restarts disagree beyond tolerance", r.n));
        }
    }
    for (a, b) in &sweep.monotonicity_violations {
        art.violations.push(format!(
            "normalized energy decreased from n = {a} to n = {b}"
        ));
    }
    Ok(art)
}

fn constants_fields(rep: &ConstantsReport) -> [(&'static str, String); 6] {
    [
        ("robin", fmt12(rep.robin)),
        ("sigma_mass", fmt12(rep.sigma_mass)),
        ("c_route_a", fmt12(rep.c_route_a)),
        ("c_route_b", fmt12(rep.c_route_b)),
        ("c_closed", rep.c_closed.map(fmt12).unwrap_or_default()),
        ("discrepancy", fmt12(rep.discrepancy)),
    ]
}

fn run_constants(cfg: &RunConfig) -> Result<Artifact> {
    let (rep, _) = constants_report(&cfg.set, &cfg.constants_options())?;
    let fields = constants_fields(&rep);
    let header: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
    let row: Vec<String> = fields.iter().map(|(_, v)| v.clone()).collect();
    let mut record = json!({ "command": cfg.command.name() });
    for (k, v) in &fields {
        record[*k] = if v.is_empty() { Value::Null } else { json!(v) };
    }
    let mut art = Artifact::new(csv_bytes(&header, [row]), record);
    for (k, v) in fields {
        art.note(k, if v.is_empty() { "n/a".to_string() } else { v });
    }
    art.violations = rep.violations();
    Ok(art)
}

fn suite_artifact(command: Command, suite: &SuiteSummary, rep: &ConstantsReport) -> Artifact {
    let header = ["trial", "parts", "lhs", "rhs", "slack"];
    let rows: Vec<Vec<String>> = suite
        .rows
        .iter()
        .map(|r| {
            vec![
                r.trial.to_string(),
                r.parts.to_string(),
                fmt12(r.lhs),
                fmt12(r.rhs),
                fmt12(r.slack),
            ]
        })
        .collect();
    let mut record = table_record(command, &header, &rows);
    record["c"] = json!(fmt12(rep.c()));
    record["sigma_mass"] = json!(fmt12(rep.sigma_mass));
    record["tol"] = json!(fmt12(suite.tol));
    record["violations"] = json!(suite.violations);
    record["min_slack"] = json!(fmt12(suite.min_slack));
    let mut art = Artifact::new(csv_bytes(&header, rows), record);
    art.note("trials", suite.trials.to_string());
    art.note("violations", suite.violations.to_string());
    art.note("min_slack", fmt12(suite.min_slack));
    if suite.violations > 0 {
        art.violations.push(format!(
            "{} of {} trials have slack below -{}",
            suite.violations, suite.trials, suite.tol
        ));
    }
    art
}

fn run_sweep(cfg: &RunConfig) -> Result<Artifact> {
    let (rep, eq) = constants_report(&cfg.set, &cfg.constants_options())?;
    let list = cfg
        .numeric
        .n_list
        .clone()
        .unwrap_or_else(|| DEFAULT_SWEEP_LIST.to_vec());
    let rows = extremal_sweep(&cfg.set, &list, cfg.numeric.restarts, &rep, &eq)?;
    let header = ExtremalSweepRow::CSV_HEADER;
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.csv_record().to_vec()).collect();
    let record = table_record(cfg.command, &header, &cells);
    let mut art = Artifact::new(csv_bytes(&header, cells), record);
    let c = rep.c();
    art.note("target_e_minus_C", fmt12((-c).exp()));
    for r in &rows {
        art.note(&format!("ratio[{}]", r.n), fmt12(r.ratio));
        if r.ratio.ln() + c > cfg.numeric.tol + rep.quadrature_budget {
            art.violations
                .push(format!("n = {}: ratio {} exceeds e^(-C)", r.n, r.ratio));
        }
        if r.nonconverged {
            art.warnings.push(format!(
                "n = {}: Fekete restarts disagree beyond tolerance",
                r.n
            ));
        }
    }
    Ok(art)
}

fn render_summary(cfg: &RunConfig, art: &Artifact) -> String {
    let width = art.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = format!("{} on {:?}\n", cfg.command, cfg.set_spec.kind);
    for (k, v) in &art.summary {
        s.push_str(&format!("  {k:<width$}  {v}\n"));
    }
    s
}

/// Writes the artifact to its configured path, or to stdout.
pub fn emit_report(cfg: &RunConfig, art: &Artifact) -> Result<()> {
    let bytes = art.rendered(cfg.output.format);
    match &cfg.output.path {
        Some(path) => write_file(path, &bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Caps the global rayon pool from `GREENPOT_THREADS`.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Error::InvalidArgument(format!("{THREADS_ENV}={raw:?} is not a positive integer"))
    })?;
    // A pool that already exists keeps its size.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Numerical failures count as violations; everything else is an input error.
fn error_code(e: &Error) -> i32 {
    match e {
        Error::ExcessClipping { .. } | Error::MassNotUnit { .. } => 2,
        _ => 1,
    }
}

/// Full command-line entry point; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return 1;
    }
    let cfg = match RunConfig::load(&cli) {
        Ok(c) => c,
        Err(e @ Error::Config { .. }) => {
            eprintln!("error: {}: {e}", cli.config.display());
            return 1;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let art = match execute(&cfg) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    if let Err(e) = emit_report(&cfg, &art) {
        eprintln!("error: {e}");
        return 1;
    }
    let summary = render_summary(&cfg, &art);
    if cfg.output.path.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    for w in &art.warnings {
        eprintln!("warning: {w}");
    }
    for v in &art.violations {
        eprintln!("violation: {v}");
    }
    art.exit_code(cfg.strict)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DISK: &str = "[set]\nkind = \"concentric_disk\"\nr = 0.5\n";

    #[test]
    fn parses_minimal_config() {
        let cfg = RunConfig::from_toml_str(Command::Constants, DISK).unwrap();
        assert_eq!(cfg.set.disk_radius(), Some(0.5));
        assert_eq!(cfg.numeric, Numeric::default());
        assert_eq!(cfg.output.format, Format::Csv);
    }

    #[test]
    fn errors_are_line_anchored() {
        let text = format!("{DISK}\n[numeric]\nrestarts = 8\ngrid_h = 0.5\n");
        match RunConfig::from_toml_str(Command::Sigma, &text) {
            Err(Error::Config { line, message }) => {
                assert_eq!(line, 7);
                assert!(message.contains("grid_h"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = "[set]\nkind = \"concentric_disk\"\nr = = 0.5\n";
        assert!(matches!(
            RunConfig::from_toml_str(Command::Sigma, text),
            Err(Error::Config { line: 3, .. })
        ));
        let text = format!("{DISK}bogus = 1\n");
        assert!(matches!(
            RunConfig::from_toml_str(Command::Sigma, &text),
            Err(Error::Config { line: 4, .. }) | Err(Error::Config { line: 1, .. })
        ));
        let text = "[set]\nkind = \"concentric_disk\"\nr = 1.5\n";
        assert!(matches!(
            RunConfig::from_toml_str(Command::Sigma, text),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn randomized_commands_need_a_seed() {
        assert!(RunConfig::from_toml_str(Command::VerifyBlaschke, DISK).is_err());
        let text = format!("{DISK}[numeric]\nseed = 7\n");
        let cfg = RunConfig::from_toml_str(Command::VerifyBlaschke, &text).unwrap();
        assert_eq!(cfg.numeric.seed, Some(7));
    }

    #[test]
    fn seed_override_satisfies_requirement() {
        let cfg = RunConfig::parse(Command::VerifyInequality, DISK, Some(9)).unwrap();
        assert_eq!(cfg.numeric.seed, Some(9));
        let text = format!("{DISK}[numeric]\nseed = 1\ntrials = 5\n");
        let cfg = RunConfig::parse(Command::VerifyInequality, &text, Some(3)).unwrap();
        assert_eq!(cfg.numeric.seed, Some(3));
        assert_eq!(cfg.numeric.trials, 5);
    }

    #[test]
    fn n_list_is_sorted() {
        let text = format!("{DISK}[numeric]\nn_list = [16, 4, 8, 4]\n");
        let cfg = RunConfig::from_toml_str(Command::ExtremalSweep, &text).unwrap();
        assert_eq!(cfg.numeric.n_list, Some(vec![4, 8, 16]));
    }
}
