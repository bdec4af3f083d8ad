//! Command-line frontend for `cue-moments`: single moments, limits, grids,
//! the Monte Carlo and quadrature oracles, and the identity suites.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use cue_moments::oracles::{mc_moment, quad_h};
use cue_moments::specfun::ReducedH;
use cue_moments::{moments, verify, ExactScalar, MomentOrder, Rational};
use serde_json::{Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("`{command}` requires --{flag}")]
    Missing {
        command: &'static str,
        flag: &'static str,
    },
    #[error("invalid value for --{flag}: {reason}")]
    InvalidValue { flag: &'static str, reason: String },
    #[error(transparent)]
    Core(#[from] cue_moments::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Exact finite-N moment F_N(h, k).
    Moment,
    /// Limit F(h, k) as N grows.
    Limit,
    /// Exact moments over the grid 1..=N, 0..=2h, 1..=k.
    Table,
    /// Monte Carlo estimate over Haar-random unitaries.
    Mc,
    /// Direct quadrature of H(k, zeta) for N in {1, 2}.
    Quad,
    /// Run every exact identity suite.
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Moment => "moment",
            Command::Limit => "limit",
            Command::Table => "table",
            Command::Mc => "mc",
            Command::Quad => "quad",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "cue-moments",
    version,
    about = "Joint moments of CUE characteristic polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Matrix size N.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Twice the exponent h, so that half-integer h stays an integer.
    #[arg(long = "two-h", global = true)]
    pub two_h: Option<u32>,
    #[arg(long, global = true)]
    pub k: Option<u32>,
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Argument of H(k, zeta) for `quad`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub zeta: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[arg(long = "out", global = true)]
    pub out: Option<PathBuf>,
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<u32>,
    pub two_h: Option<u32>,
    pub k: Option<u32>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub zeta: Option<f64>,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self> {
        let config = RunConfig {
            command: cli.command,
            n: cli.n,
            two_h: cli.two_h,
            k: cli.k,
            trials: cli.trials,
            seed: cli.seed,
            tol: cli.tol,
            zeta: cli.zeta,
            output_format: cli.format,
            output_path: cli.out,
        };
        config.validate()?;
        Ok(config)
    }
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            n: None,
            two_h: None,
            k: None,
            trials: None,
            seed: None,
            tol: None,
            zeta: None,
            output_format: Format::Text,
            output_path: None,
        }
    }

    fn required(&self) -> &'static [&'static str] {
        match self.command {
            Command::Moment | Command::Table => &["n", "two-h", "k"],
            Command::Limit => &["two-h", "k", "tol"],
            Command::Mc => &["n", "two-h", "k", "trials"],
            Command::Quad => &["n", "k"],
            Command::Verify => &[],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let command = self.command.name();
        for &flag in self.required() {
            let present = match flag {
                "n" => self.n.is_some(),
                "two-h" => self.two_h.is_some(),
                "k" => self.k.is_some(),
                "tol" => self.tol.is_some(),
                _ => self.trials.is_some(),
            };
            if !present {
                return Err(CliError::Missing { command, flag });
            }
        }
        let invalid = |flag, reason: &str| {
            Err(CliError::InvalidValue {
                flag,
                reason: reason.to_string(),
            })
        };
        if self.n == Some(0) {
            return invalid("n", "must be positive");
        }
        if self.k == Some(0) {
            return invalid("k", "must be positive");
        }
        if self.trials.is_some_and(|t| t < 2) {
            return invalid(
                "trials",
                "at least 2 trials are needed for a standard error",
            );
        }
        if self.tol.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
            return invalid("tol", "must be a positive finite number");
        }
        if self.zeta.is_some_and(|z| !z.is_finite()) {
            return invalid("zeta", "must be finite");
        }
        Ok(())
    }

    fn inputs(&self) -> Value {
        let mut m = Map::new();
        let mut put = |key: &str, v: Option<Value>| {
            if let Some(v) = v {
                m.insert(key.to_string(), v);
            }
        };
        put("n", self.n.map(Value::from));
        put("two_h", self.two_h.map(Value::from));
        put("k", self.k.map(Value::from));
        put("trials", self.trials.map(Value::from));
        put("seed", self.seed.map(Value::from));
        put("tol", self.tol.map(Value::from));
        put("zeta", self.zeta.map(Value::from));
        Value::Object(m)
    }
}

/// The outcome of a command, renderable in any output format.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: Command,
    pub inputs: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub exact: Option<String>,
    /// False when a verification suite failed.
    pub ok: bool,
    text: String,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    fn record(&self, row: &[Value]) -> Value {
        let fields = self
            .columns
            .iter()
            .map(|c| c.to_string())
            .zip(row.iter().cloned());
        Value::Object(fields.collect())
    }

    fn to_json(&self) -> Result<String> {
        let result = match self.command {
            Command::Table | Command::Verify => {
                Value::Array(self.rows.iter().map(|r| self.record(r)).collect())
            }
            _ => self.record(&self.rows[0]),
        };
        let mut top = Map::new();
        top.insert("command".into(), self.command.name().into());
        top.insert("inputs".into(), self.inputs.clone());
        top.insert("result".into(), result);
        if let Some(exact) = &self.exact {
            top.insert("exact".into(), exact.clone().into());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top))?;
        s.push('\n');
        Ok(s)
    }

    fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(csv_field))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `x` to 15 significant digits.
pub fn format_sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = 14 - exponent;
    if (0..=20).contains(&decimals) {
        format!("{x:.*}", decimals as usize)
    } else {
        format!("{x:.14e}")
    }
}

/// `num/den` with the denominator always shown.
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let inputs = config.inputs();
    let mut report = match config.command {
        Command::Moment => run_moment(config)?,
        Command::Limit => run_limit(config)?,
        Command::Table => run_table(config)?,
        Command::Mc => run_mc(config)?,
        Command::Quad => run_quad(config)?,
        Command::Verify => run_verify(),
    };
    report.inputs = inputs;
    Ok(report)
}

fn report(command: Command, columns: Vec<&'static str>, rows: Vec<Vec<Value>>) -> Report {
    Report {
        command,
        inputs: Value::Null,
        columns,
        rows,
        exact: None,
        ok: true,
        text: String::new(),
    }
}

fn order(config: &RunConfig) -> Result<MomentOrder> {
    Ok(MomentOrder::new(
        config.two_h.expect("validated"),
        config.k.expect("validated"),
    )?)
}

fn run_moment(config: &RunConfig) -> Result<Report> {
    let n = config.n.expect("validated");
    let order = order(config)?;
    let m = moments::moment(n, order)?;
    let value = m.to_f64();
    let mut r = report(
        Command::Moment,
        vec!["n", "two_h", "k", "exact", "rational", "pi_power", "value"],
        vec![vec![
            n.into(),
            order.two_h().into(),
            order.k().into(),
            m.to_string().into(),
            rational_string(&m.q).into(),
            (-i64::from(m.pi_exp)).into(),
            float(value),
        ]],
    );
    r.text = format!("{m} ≈ {}\n", format_sig15(value));
    r.exact = Some(m.to_string());
    Ok(r)
}

fn run_limit(config: &RunConfig) -> Result<Report> {
    let order = order(config)?;
    let tol = config.tol.expect("validated");
    let l = moments::limit(order, tol)?;
    let exact = (l.tail_bound == 0.0).then(|| l.truncated.to_string());
    let mut r = report(
        Command::Limit,
        vec![
            "two_h",
            "k",
            "tol",
            "value",
            "tail_bound",
            "terms_used",
            "partial_sum",
        ],
        vec![vec![
            order.two_h().into(),
            order.k().into(),
            float(tol),
            float(l.value),
            float(l.tail_bound),
            l.terms_used.into(),
            l.truncated.to_string().into(),
        ]],
    );
    r.text = match &exact {
        Some(e) => format!("{e} ≈ {} (exact)\n", format_sig15(l.value)),
        None => format!(
            "{} (tail bound {:.3e}, {} terms)\n",
            format_sig15(l.value),
            l.tail_bound,
            l.terms_used
        ),
    };
    r.exact = exact;
    Ok(r)
}

fn run_table(config: &RunConfig) -> Result<Report> {
    let (max_n, max_two_h, max_k) = (
        config.n.expect("validated"),
        config.two_h.expect("validated"),
        config.k.expect("validated"),
    );
    let mut rows = Vec::new();
    let mut text = String::new();
    for n in 1..=max_n {
        for two_h in 0..=max_two_h {
            for k in 1..=max_k {
                let row = match MomentOrder::new(two_h, k) {
                    Ok(order) => {
                        let m = moments::moment(n, order)?;
                        let value = m.to_f64();
                        writeln!(
                            text,
                            "N={n} 2h={two_h} k={k}: {m} ≈ {}",
                            format_sig15(value)
                        )
                        .expect("string write");
                        vec![
                            n.into(),
                            two_h.into(),
                            k.into(),
                            "ok".into(),
                            m.to_string().into(),
                            rational_string(&m.q).into(),
                            (-i64::from(m.pi_exp)).into(),
                            float(value),
                        ]
                    }
                    Err(_) => {
                        writeln!(text, "N={n} 2h={two_h} k={k}: inadmissible")
                            .expect("string write");
                        let mut row = vec![n.into(), two_h.into(), k.into()];
                        row.extend([
                            "inadmissible".into(),
                            Value::Null,
                            Value::Null,
                            Value::Null,
                            Value::Null,
                        ]);
                        row
                    }
                };
                rows.push(row);
            }
        }
    }
    let mut r = report(
        Command::Table,
        vec![
            "n", "two_h", "k", "status", "exact", "rational", "pi_power", "value",
        ],
        rows,
    );
    r.text = text;
    Ok(r)
}

fn run_mc(config: &RunConfig) -> Result<Report> {
    let n = config.n.expect("validated");
    let order = order(config)?;
    let trials = config.trials.expect("validated");
    let seed = config.seed.unwrap_or(0);
    let exact = moments::moment(n, order)?;
    let est = mc_moment(n, order.two_h(), order.k(), trials, seed)?;
    let z = est.z_score(exact.to_f64());
    let mut r = report(
        Command::Mc,
        vec![
            "n",
            "two_h",
            "k",
            "trials",
            "seed",
            "mean",
            "stderr",
            "redraws",
            "exact",
            "exact_value",
            "z_score",
        ],
        vec![vec![
            n.into(),
            order.two_h().into(),
            order.k().into(),
            trials.into(),
            seed.into(),
            float(est.mean),
            float(est.stderr),
            est.redraws.into(),
            exact.to_string().into(),
            float(exact.to_f64()),
            float(z),
        ]],
    );
    r.text = format!(
        "mean {} ± {:.3e} ({trials} trials, seed {seed}); exact {exact} ≈ {}; z = {z:.3}\n",
        format_sig15(est.mean),
        est.stderr,
        format_sig15(exact.to_f64())
    );
    r.exact = Some(exact.to_string());
    Ok(r)
}

fn run_quad(config: &RunConfig) -> Result<Report> {
    let n = config.n.expect("validated");
    let k = config.k.expect("validated");
    let zeta = config.zeta.unwrap_or(0.0);
    let tol = config.tol.unwrap_or(1e-8);
    let value = quad_h(k, zeta, n, tol)?;
    let exact_zeta = Rational::from_float(zeta).expect("finite zeta");
    let closed = ReducedH::new(k, n)?.full(&exact_zeta);
    let diff = (value - closed).abs();
    let mut r = report(
        Command::Quad,
        vec!["k", "n", "zeta", "tol", "value", "closed_form", "abs_diff"],
        vec![vec![
            k.into(),
            n.into(),
            float(zeta),
            float(tol),
            float(value),
            float(closed),
            float(diff),
        ]],
    );
    r.text = format!(
        "H = {} (closed form {}, difference {diff:.3e})\n",
        format_sig15(value),
        format_sig15(closed)
    );
    Ok(r)
}

fn run_verify() -> Report {
    let suites = verify::run_all();
    let mut text = String::new();
    let mut rows = Vec::new();
    for s in &suites {
        let status = if s.passed() { "PASS" } else { "FAIL" };
        writeln!(text, "{status} {} ({}/{})", s.name, s.passes(), s.checks).expect("string write");
        for f in s.failures.iter().take(5) {
            writeln!(text, "    {f}").expect("string write");
        }
        rows.push(vec![
            s.name.into(),
            s.checks.into(),
            s.passes().into(),
            s.failures.len().into(),
            s.failures
                .first()
                .cloned()
                .map_or(Value::Null, Value::String),
        ]);
    }
    let failed = suites.iter().filter(|s| !s.passed()).count();
    writeln!(text, "{} suites, {failed} failed", suites.len()).expect("string write");
    let mut r = report(
        Command::Verify,
        vec!["suite", "checks", "passed", "failed", "first_failure"],
        rows,
    );
    r.ok = failed == 0;
    r.text = text;
    r
}

/// Writes `contents` to `path` through a sibling temporary file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Parses back the `exact` field of a JSON report.
pub fn parse_exact(json: &str) -> Result<Option<ExactScalar>> {
    let v: Value = serde_json::from_str(json)?;
    match v.get("exact").and_then(Value::as_str) {
        Some(s) => Ok(Some(s.parse()?)),
        None => Ok(None),
    }
}
