//! The `jackpart` command line: batch subcommands writing CSV or JSON tables
//! with a header that echoes version, configuration, seed and generator.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::alpha::{Alpha, Weight};
use crate::asymptotics::{
    jack_regev_ratio, ln_restricted_constant, regev_ratio, regev_sum, sum_limit_ratio_with, z_constant_with,
    z_prime_constant_with, Phi, ZMethod, ZOptions,
};
use crate::error::{Error, Result};
use crate::logspace::ln_factorial;
use crate::partition::{count_partitions, enumerate_partitions};
use crate::samplers::{sample_restricted_jack, sample_traceless_gbe, RngSeed, GENERATOR, TABLE_SIZE_LIMIT};
use crate::stats::{convergence_experiment, exact_scaled_marginal, ExperimentOptions, MC_SAMPLES};
use crate::tableaux::rsk_suite;
use crate::weights::{c_pair_direct, RestrictedLaw, SumMode, SumOptions};

/// Environment variable that redirects every output file into a directory.
pub const OUT_DIR_ENV: &str = "JACKPART_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "jackpart", version, about = "Jack measures on partitions with bounded length")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List 𝒫_n(d) in decreasing lexicographic order
    Enumerate(Opts),
    /// c_λ, c'_λ and restricted probabilities over 𝒫_n(d)
    Weights(Opts),
    /// Exact law of one scaled row
    Law(Opts),
    /// Draw restricted Jack partitions (with --n) or traceless ensemble spectra
    Sample(Opts),
    /// KS distance to the limit along an n-ladder
    Converge(Opts),
    /// Regev sum ratios (with --beta) or the Jack analogue (with --alpha)
    Regev(Opts),
    /// Finite-n ratio for the limit of C_{n,d}(α)
    Sumlimit(Opts),
    /// Exhaustive RSK property checks up to --n
    RskCheck(Opts),
    /// The step density φ_{n;θ} next to the standard Gaussian
    Phi(Opts),
    /// Normalizers Z_d(β) and Z'_d(β)
    Zconst(Opts),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Opts {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// "p/q" or an integer for exact arithmetic, a decimal for floating point
    #[arg(long, conflicts_with = "beta")]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Sequential sums and zero runtimes, for byte-identical reruns
    #[arg(long)]
    deterministic: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Comma-separated list of n values
    #[arg(long, value_delimiter = ',')]
    ladder: Option<Vec<usize>>,
    #[arg(long)]
    marginal: Option<usize>,
    #[arg(long)]
    theta: Option<f64>,
    /// Number of draws for `sample`
    #[arg(long)]
    count: Option<usize>,
    /// Compare against a Monte Carlo target CDF in `converge`
    #[arg(long)]
    mc: bool,
}

impl Opts {
    fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
        v.ok_or_else(|| Error::InvalidArgument(format!("--{name} is required")))
    }

    fn n(&self) -> Result<usize> {
        Self::need(self.n, "n")
    }

    fn d(&self) -> Result<usize> {
        let d = Self::need(self.d, "d")?;
        if d == 0 {
            return Err(Error::InvalidArgument("--d must be positive".into()));
        }
        Ok(d)
    }

    fn alpha(&self) -> Result<Alpha> {
        match (&self.alpha, self.beta) {
            (Some(a), _) => a.parse(),
            (None, Some(b)) => Alpha::float(2.0 / positive_beta(b)?),
            (None, None) => Err(Error::InvalidArgument("--alpha or --beta is required".into())),
        }
    }

    fn beta(&self) -> Result<f64> {
        match (&self.alpha, self.beta) {
            (_, Some(b)) => positive_beta(b),
            (Some(_), None) => Ok(self.alpha()?.beta()),
            (None, None) => Err(Error::InvalidArgument("--beta or --alpha is required".into())),
        }
    }

    fn ladder(&self) -> Result<Vec<usize>> {
        match (&self.ladder, self.n) {
            (Some(l), _) if !l.is_empty() => Ok(l.clone()),
            (_, Some(n)) => Ok(vec![n]),
            _ => Err(Error::InvalidArgument("--ladder or --n is required".into())),
        }
    }

    fn sum_options(&self) -> SumOptions {
        SumOptions {
            mode: if self.deterministic {
                SumMode::Sequential
            } else {
                SumMode::Parallel
            },
            compensated: true,
        }
    }
}

fn positive_beta(b: f64) -> Result<f64> {
    if b > 0.0 && b.is_finite() {
        Ok(b)
    } else {
        Err(Error::NonPositive {
            what: "beta",
            value: b,
        })
    }
}

fn guard(n: usize, d: usize) -> Result<()> {
    let size = count_partitions(n, d);
    if size > num_bigint::BigUint::from(TABLE_SIZE_LIMIT) {
        return Err(Error::SizeGuard {
            n,
            d,
            size: size.to_string(),
            limit: TABLE_SIZE_LIMIT,
        });
    }
    Ok(())
}

enum Value {
    Int(u64),
    Float(f64),
    Text(String),
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) => float(*v),
            Value::Text(s) if s.contains(',') || s.contains('"') => format!("\"{}\"", s.replace('"', "\"\"")),
            Value::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) if v.is_finite() => float(*v),
            Value::Float(_) => "null".into(),
            Value::Text(s) => serde_json::to_string(s).expect("string"),
        }
    }
}

fn weight(w: &Weight) -> Value {
    Value::Text(w.render())
}

/// Floats with 17 significant digits.
fn float(x: f64) -> String {
    format!("{x:.16e}")
}

struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Enumerate(_) => "enumerate",
        Command::Weights(_) => "weights",
        Command::Law(_) => "law",
        Command::Sample(_) => "sample",
        Command::Converge(_) => "converge",
        Command::Regev(_) => "regev",
        Command::Sumlimit(_) => "sumlimit",
        Command::RskCheck(_) => "rsk-check",
        Command::Phi(_) => "phi",
        Command::Zconst(_) => "zconst",
    }
}

fn render(command: &str, opts: &Opts, table: &Table) -> String {
    let version = env!("CARGO_PKG_VERSION");
    let config = serde_json::to_string(opts).expect("config serializes");
    let mut s = String::new();
    match opts.format {
        Format::Csv => {
            let _ = writeln!(s, "# jackpart {version}");
            let _ = writeln!(s, "# command: {command}");
            let _ = writeln!(s, "# config: {config}");
            let _ = writeln!(s, "# seed: {}", opts.seed);
            let _ = writeln!(s, "# generator: {GENERATOR}");
            let _ = writeln!(s, "{}", table.columns.join(","));
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Value::csv).collect();
                let _ = writeln!(s, "{}", cells.join(","));
            }
        }
        Format::Json => {
            let _ = write!(
                s,
                "{{\"header\":{{\"version\":\"{version}\",\"command\":\"{command}\",\"config\":{config},\"seed\":{},\"generator\":\"{GENERATOR}\"}},\"rows\":[",
                opts.seed
            );
            for (k, row) in table.rows.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                s.push('{');
                for (j, (c, v)) in table.columns.iter().zip(row).enumerate() {
                    if j > 0 {
                        s.push(',');
                    }
                    let _ = write!(s, "{}:{}", serde_json::to_string(c).expect("string"), v.json());
                }
                s.push('}');
            }
            s.push_str("]}\n");
        }
    }
    s
}

fn enumerate(o: &Opts) -> Result<Table> {
    let (n, d) = (o.n()?, o.d()?);
    guard(n, d)?;
    let mut t = Table::new(["index", "partition", "length"]);
    for (k, lambda) in enumerate_partitions(n, d).enumerate() {
        t.rows.push(vec![
            Value::Int(k as u64),
            Value::Text(lambda.to_string()),
            Value::Int(lambda.len() as u64),
        ]);
    }
    Ok(t)
}

fn weights(o: &Opts) -> Result<Table> {
    let (n, d, alpha) = (o.n()?, o.d()?, o.alpha()?);
    guard(n, d)?;
    let law = RestrictedLaw::build(n, d, &alpha, o.sum_options());
    let mut t = Table::new(["partition", "c", "c_prime", "probability", "ln_probability"]);
    for (lambda, p) in law.iter() {
        let pair = c_pair_direct(lambda, &alpha);
        t.rows.push(vec![
            Value::Text(lambda.to_string()),
            weight(&pair.c),
            weight(&pair.c_prime),
            weight(p),
            Value::Float(p.ln()),
        ]);
    }
    Ok(t)
}

fn law(o: &Opts) -> Result<Table> {
    let (n, d, alpha) = (o.n()?, o.d()?, o.alpha()?);
    let i = o.marginal.unwrap_or(1);
    let law = exact_scaled_marginal(n, d, &alpha, i)?;
    let mut t = Table::new(["offset", "point", "mass"]);
    for (k, atom) in law.atoms().iter().enumerate() {
        t.rows.push(vec![
            Value::Text(atom.offset.to_string()),
            Value::Float(law.point(k)),
            weight(&atom.mass),
        ]);
    }
    Ok(t)
}

fn sample(o: &Opts) -> Result<Table> {
    let d = o.d()?;
    let count = o.count.unwrap_or(10);
    let mut rng = RngSeed::new(o.seed).rng();
    if let Some(n) = o.n {
        let alpha = o.alpha()?;
        let mut t = Table::new(["draw", "partition"]);
        for k in 0..count {
            let lambda = sample_restricted_jack(n, d, &alpha, &mut rng)?;
            t.rows.push(vec![Value::Int(k as u64), Value::Text(lambda.to_string())]);
        }
        Ok(t)
    } else {
        let beta = o.beta()?;
        let mut t = Table::new(std::iter::once("draw".to_string()).chain((1..=d).map(|i| format!("x{i}"))));
        for k in 0..count {
            let s = sample_traceless_gbe(d, beta, &mut rng)?;
            let mut row = vec![Value::Int(k as u64)];
            row.extend(s.values().iter().map(|&x| Value::Float(x)));
            t.rows.push(row);
        }
        Ok(t)
    }
}

fn converge(o: &Opts) -> Result<Table> {
    let (d, alpha, ladder) = (o.d()?, o.alpha()?, o.ladder()?);
    for &n in &ladder {
        guard(n, d)?;
    }
    let opts = ExperimentOptions {
        deterministic: o.deterministic,
        seed: RngSeed::new(o.seed),
        mc_samples: MC_SAMPLES,
        monte_carlo_target: o.mc,
    };
    let rows = convergence_experiment(d, &alpha, o.marginal.unwrap_or(1), &ladder, &opts)?;
    let mut t = Table::new(["n", "d", "alpha", "marginal", "ks", "runtime_ms"]);
    for r in rows {
        t.rows.push(vec![
            Value::Int(r.n as u64),
            Value::Int(r.d as u64),
            Value::Text(r.alpha),
            Value::Int(r.marginal as u64),
            Value::Float(r.ks),
            Value::Int(r.runtime_ms),
        ]);
    }
    Ok(t)
}

fn regev(o: &Opts) -> Result<Table> {
    let (d, ladder) = (o.d()?, o.ladder()?);
    for &n in &ladder {
        guard(n, d)?;
    }
    if let Some(a) = &o.alpha {
        let alpha: Alpha = a.parse()?;
        let af = alpha.to_f64();
        let mut t = Table::new(["n", "d", "alpha", "ln_sum", "ratio"]);
        for &n in &ladder {
            let ln_sum = 2.0 * ln_factorial(n) + ln_restricted_constant(n, d, af, o.sum_options())?;
            t.rows.push(vec![
                Value::Int(n as u64),
                Value::Int(d as u64),
                Value::Text(alpha.to_string()),
                Value::Float(ln_sum),
                Value::Float(jack_regev_ratio(n, d, af)?),
            ]);
        }
        Ok(t)
    } else {
        let beta = o.beta()?;
        let mut t = Table::new(["n", "d", "beta", "ln_sum", "ratio"]);
        for &n in &ladder {
            t.rows.push(vec![
                Value::Int(n as u64),
                Value::Int(d as u64),
                Value::Float(beta),
                Value::Float(regev_sum(n, d, beta).ln()),
                Value::Float(regev_ratio(n, d, beta)?),
            ]);
        }
        Ok(t)
    }
}

fn sumlimit(o: &Opts) -> Result<Table> {
    let (d, alpha, ladder) = (o.d()?, o.alpha()?, o.ladder()?);
    let mut t = Table::new(["n", "d", "alpha", "ratio"]);
    for &n in &ladder {
        guard(n, d)?;
        t.rows.push(vec![
            Value::Int(n as u64),
            Value::Int(d as u64),
            Value::Text(alpha.to_string()),
            Value::Float(sum_limit_ratio_with(n, d, alpha.to_f64(), o.sum_options())?),
        ]);
    }
    Ok(t)
}

fn rsk_check(o: &Opts) -> Result<Table> {
    let n = o.n.unwrap_or(7);
    if n > 10 {
        return Err(Error::InvalidArgument("rsk-check walks all of 𝔖_N; use --n <= 10".into()));
    }
    let mut t = Table::new(["check", "size", "cases", "failures"]);
    for line in rsk_suite(n, n + 1) {
        t.rows.push(vec![
            Value::Text(line.check.into()),
            Value::Int(line.size as u64),
            Value::Int(line.cases),
            Value::Int(line.failures),
        ]);
    }
    Ok(t)
}

fn phi(o: &Opts) -> Result<Table> {
    let n = o.n()?;
    let d = o.d.unwrap_or(1);
    let theta = o.theta.unwrap_or(1.0);
    let p = Phi::new(n, d, theta)?;
    let mut t = Table::new(["y", "phi", "gaussian"]);
    for k in -16..=16 {
        let y = k as f64 * 0.25;
        t.rows.push(vec![
            Value::Float(y),
            Value::Float(p.eval(y)),
            Value::Float((-0.5 * y * y).exp() / (2.0 * std::f64::consts::PI).sqrt()),
        ]);
    }
    Ok(t)
}

fn zconst(o: &Opts) -> Result<Table> {
    let (d, beta) = (o.d()?, o.beta()?);
    let opts = ZOptions {
        samples: MC_SAMPLES,
        seed: RngSeed::new(o.seed),
    };
    let z = z_constant_with(d, beta, opts)?;
    let zp = z_prime_constant_with(d, beta, opts)?;
    let method = match z.method {
        ZMethod::Exact => "exact".to_string(),
        ZMethod::ClosedForm => "closed-form".to_string(),
        ZMethod::Quadrature => "quadrature".to_string(),
        ZMethod::MonteCarlo { samples } => format!("monte-carlo({samples})"),
    };
    let mut t = Table::new(["d", "beta", "z", "z_prime", "std_error", "method"]);
    t.rows.push(vec![
        Value::Int(d as u64),
        Value::Float(beta),
        Value::Float(z.value),
        Value::Float(zp.value),
        Value::Float(z.std_error),
        Value::Text(method),
    ]);
    Ok(t)
}

fn execute(command: &Command) -> Result<(bool, Table)> {
    let table = match command {
        Command::Enumerate(o) => enumerate(o)?,
        Command::Weights(o) => weights(o)?,
        Command::Law(o) => law(o)?,
        Command::Sample(o) => sample(o)?,
        Command::Converge(o) => converge(o)?,
        Command::Regev(o) => regev(o)?,
        Command::Sumlimit(o) => sumlimit(o)?,
        Command::RskCheck(o) => {
            let t = rsk_check(o)?;
            let ok = t.rows.iter().all(|r| matches!(r[3], Value::Int(0)));
            return Ok((ok, t));
        }
        Command::Phi(o) => phi(o)?,
        Command::Zconst(o) => zconst(o)?,
    };
    Ok((true, table))
}

fn opts_of(c: &Command) -> &Opts {
    match c {
        Command::Enumerate(o)
        | Command::Weights(o)
        | Command::Law(o)
        | Command::Sample(o)
        | Command::Converge(o)
        | Command::Regev(o)
        | Command::Sumlimit(o)
        | Command::RskCheck(o)
        | Command::Phi(o)
        | Command::Zconst(o) => o,
    }
}

fn destination(command: &str, o: &Opts) -> Option<PathBuf> {
    let ext = match o.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) => {
            let name = o
                .out
                .as_ref()
                .and_then(|p| p.file_name().map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from(format!("{command}.{ext}")));
            Some(PathBuf::from(dir).join(name))
        }
        None => o.out.clone(),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 1,
        _ => 2,
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 2 on a validation error, 1 on an internal error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let name = command_name(&cli.command);
    let opts = opts_of(&cli.command);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(opts.threads.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let (ok, table) = match pool.install(|| execute(&cli.command)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = render(name, opts, &table);
    let written = match destination(name, opts) {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    let _ = std::fs::create_dir_all(parent);
                }
            }
            std::fs::write(&path, text)
        }
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    if ok {
        0
    } else {
        eprintln!("error: an RSK property check failed");
        1
    }
}
