//! Command-line front end. [`run`] parses arguments, dispatches to the core
//! library, and returns the process exit code: 0 on success, 2 for input
//! errors, 3 when a numerical precondition fails.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use threeleaf::cover::{self, interval_classify, kappa, kappa_prime, varkappa};
use threeleaf::fmt::{round_sig, sig};
use threeleaf::moduli::{self, ChartPoint, Configuration, TripleIndex};
use threeleaf::plots;
use threeleaf::projline::{cross_ratio, parse_point, MobiusMap, ProjPoint};
use threeleaf::tangent::{self, Rational};
use threeleaf::Error;

const DIGITS: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "threeleaf",
    version,
    about = "Cross-ratios, the three-fold cover of P¹(ℝ), and metrics on moduli of marked points"
)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Options {
    /// Finite-difference step
    #[arg(long, global = true)]
    h: Option<f64>,
    /// Relative singular-value tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of leaves
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Number of samples for plots
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// File of `key=value` lines supplying defaults for the options above
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cross-ratio [p0 : p1 : p2 : p3]
    #[command(allow_negative_numbers = true)]
    Crossratio { points: Vec<String> },
    /// The three-fold cover κ at a point
    #[command(allow_negative_numbers = true)]
    Kappa { x: String },
    /// Signed internal-edge length of the three-leaf tree
    #[command(allow_negative_numbers = true)]
    Gamma { points: Vec<String> },
    /// Tangent-addition group law
    #[command(subcommand)]
    Group(GroupCommand),
    /// Cayley transform to the unit circle
    #[command(allow_negative_numbers = true)]
    Cayley { x: String },
    /// SU(1,1) conjugate of a real 2×2 matrix
    #[command(allow_negative_numbers = true)]
    Su11 {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        /// Rescale to determinant 1 first
        #[arg(long)]
        normalize: bool,
    },
    /// All κ_S of a configuration
    Albanese(ConfigInput),
    /// Averaged metric matrix at a configuration
    Metric(ConfigInput),
    /// Seeded random probe of the Albanese Jacobian rank
    RankScan,
    /// Length of a sampled curve of chart coordinates (CSV rows)
    CurveLength {
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
    },
    /// Figure data
    #[command(subcommand)]
    Plot(PlotCommand),
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    #[command(allow_negative_numbers = true)]
    Add { p: String, q: String },
    #[command(allow_negative_numbers = true)]
    Mul { m: i64, p: String },
    #[command(allow_negative_numbers = true)]
    Neg { p: String },
    /// The torsion point tan(πr) for a rational r
    #[command(allow_negative_numbers = true)]
    Torsion { r: String },
}

#[derive(Subcommand, Debug)]
enum PlotCommand {
    #[command(allow_negative_numbers = true)]
    Tree3 {
        points: Vec<String>,
    },
    Helix,
    KappaGraph,
}

#[derive(Args, Debug)]
struct ConfigInput {
    /// Configuration JSON, inline
    #[arg(long, conflicts_with_all = ["input", "chart"])]
    json: Option<String>,
    /// Configuration JSON file
    #[arg(long, value_name = "PATH", conflicts_with = "chart")]
    input: Option<PathBuf>,
    /// Chart coordinates, comma separated
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    chart: Option<Vec<f64>>,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(s) => f.write_str(s),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Resolved numeric options: flags, then the config file, then defaults.
#[derive(Debug)]
struct Settings {
    h: f64,
    tol: f64,
    trials: usize,
    seed: u64,
    n: usize,
    k: usize,
    format: Option<Format>,
}

fn read_config(path: &Path) -> CliResult<HashMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("{}:{}: expected key=value", path.display(), no + 1)))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn setting<T: std::str::FromStr>(
    flag: Option<T>,
    file: &HashMap<String, String>,
    key: &str,
    default: T,
) -> CliResult<T> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match file.get(key) {
        Some(s) => s.parse().map_err(|_| CliError::Input(format!("config: bad value for {key}: {s}"))),
        None => Ok(default),
    }
}

impl Settings {
    fn resolve(o: &Options) -> CliResult<Settings> {
        let file = match &o.config {
            Some(p) => read_config(p)?,
            None => HashMap::new(),
        };
        let format = match (o.format, file.get("format")) {
            (Some(f), _) => Some(f),
            (None, Some(s)) => {
                Some(Format::from_str(s, true).map_err(|_| CliError::Input(format!("config: bad format {s}")))?)
            }
            (None, None) => None,
        };
        Ok(Settings {
            h: setting(o.h, &file, "h", moduli::DEFAULT_STEP)?,
            tol: setting(o.tol, &file, "tol", moduli::DEFAULT_RANK_TOL)?,
            trials: setting(o.trials, &file, "trials", 100)?,
            seed: setting(o.seed, &file, "seed", 0)?,
            n: setting(o.n, &file, "n", 4)?,
            k: setting(o.k, &file, "k", 200)?,
            format,
        })
    }
}

fn num(x: f64) -> Value {
    if x.is_infinite() {
        Value::String(if x > 0.0 { "inf".into() } else { "-inf".into() })
    } else {
        json!(round_sig(x, DIGITS))
    }
}

fn point_json(p: ProjPoint) -> Value {
    num(p.value())
}

fn fmt_point(p: ProjPoint) -> String {
    sig(p.value(), DIGITS)
}

fn points<const N: usize>(tokens: &[String]) -> CliResult<[ProjPoint; N]> {
    if tokens.len() != N {
        return Err(CliError::Input(format!("expected {N} points, got {}", tokens.len())));
    }
    let mut out = [ProjPoint::ZERO; N];
    for (slot, t) in out.iter_mut().zip(tokens) {
        *slot = parse_point(t)?;
    }
    Ok(out)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values are serializable")
}

/// A scalar in the requested format: bare number by default, `{"value": …}` as JSON.
fn scalar(fmt: Option<Format>, p: ProjPoint) -> CliResult<String> {
    match fmt {
        None | Some(Format::Csv) => Ok(fmt_point(p)),
        Some(Format::Json) => Ok(pretty(&json!({ "value": point_json(p) }))),
        Some(Format::Svg) => Err(CliError::Input("svg output is only available for plots".into())),
    }
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Input(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8").trim_end().to_string())
}

fn load_configuration(input: &ConfigInput) -> CliResult<Configuration> {
    if let Some(coords) = &input.chart {
        return Ok(moduli::chart_embed(&ChartPoint::new(coords.clone())?));
    }
    let text = match (&input.json, &input.input) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        (None, None) => return Err(CliError::Input("need --json, --input or --chart".into())),
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
    configuration_from_value(v)
}

/// Accepts a configuration object, an array of chart coordinates, or any
/// object this tool emits (which carries the configuration under a key).
fn configuration_from_value(v: Value) -> CliResult<Configuration> {
    let bad = |e: serde_json::Error| CliError::Input(format!("invalid configuration: {e}"));
    match v {
        Value::Array(_) => {
            let u: ChartPoint = serde_json::from_value(v).map_err(bad)?;
            Ok(moduli::chart_embed(&u))
        }
        Value::Object(ref m) if m.contains_key("points") => serde_json::from_value(v).map_err(bad),
        Value::Object(mut m) => match m.remove("configuration") {
            Some(inner) => configuration_from_value(inner),
            None => Err(CliError::Input("JSON object has no configuration".into())),
        },
        _ => Err(CliError::Input("expected a configuration object or chart array".into())),
    }
}

fn configuration_json(c: &Configuration) -> Value {
    json!({ "n": c.n(), "points": c.points().iter().map(|&p| point_json(p)).collect::<Vec<_>>() })
}

fn cmd_kappa(fmt: Option<Format>, x: &str) -> CliResult<String> {
    let p = parse_point(x)?;
    let k = kappa(p).value();
    match fmt {
        None => Ok(sig(k, DIGITS)),
        Some(Format::Json) => Ok(pretty(&json!({
            "x": point_json(p),
            "interval": interval_classify(p).name(),
            "kappa": num(k),
            "kappa_prime": num(kappa_prime(p)),
            "varkappa": point_json(varkappa(p)),
        }))),
        Some(Format::Csv) => csv_string(
            &["x", "interval", "kappa", "kappa_prime", "varkappa"],
            [vec![
                fmt_point(p),
                interval_classify(p).name().into(),
                sig(k, DIGITS),
                sig(kappa_prime(p), DIGITS),
                fmt_point(varkappa(p)),
            ]],
        ),
        Some(Format::Svg) => Err(CliError::Input("svg output is only available for plots".into())),
    }
}

fn cmd_group(fmt: Option<Format>, g: &GroupCommand) -> CliResult<String> {
    let p = match g {
        GroupCommand::Add { p, q } => tangent::group_add(parse_point(p)?, parse_point(q)?),
        GroupCommand::Mul { m, p } => tangent::group_mul_int(*m, parse_point(p)?),
        GroupCommand::Neg { p } => tangent::group_neg(parse_point(p)?),
        GroupCommand::Torsion { r } => tangent::torsion_point(r.parse::<Rational>()?),
    };
    scalar(fmt, p)
}

fn cmd_cayley(fmt: Option<Format>, x: &str) -> CliResult<String> {
    let p = parse_point(x)?;
    let z = tangent::cayley(p);
    match fmt {
        None => Ok(format!("{} {}", sig(z.re(), DIGITS), sig(z.im(), DIGITS))),
        Some(Format::Json) => Ok(pretty(&json!({
            "x": point_json(p),
            "z": [num(z.re()), num(z.im())],
            "turns": num(z.turns().value()),
        }))),
        Some(Format::Csv) => csv_string(
            &["x", "re", "im", "turns"],
            [vec![fmt_point(p), sig(z.re(), DIGITS), sig(z.im(), DIGITS), sig(z.turns().value(), DIGITS)]],
        ),
        Some(Format::Svg) => Err(CliError::Input("svg output is only available for plots".into())),
    }
}

fn cmd_su11(a: f64, b: f64, c: f64, d: f64, normalize: bool) -> CliResult<String> {
    let mut m = MobiusMap::new(a, b, c, d)?;
    if normalize {
        if m.det() <= 0.0 {
            return Err(Error::DetNotOne(m.det()).into());
        }
        m = m.unimodular();
    }
    let s = tangent::su11_conjugate(&m)?;
    Ok(pretty(&json!({
        "u": [num(s.u.re), num(s.u.im)],
        "v": [num(s.v.re), num(s.v.im)],
        "det": num(s.det()),
    })))
}

fn cmd_albanese(fmt: Option<Format>, input: &ConfigInput) -> CliResult<String> {
    let c = load_configuration(input)?;
    let values = moduli::albanese(&c)?;
    let triples = TripleIndex::all(c.n());
    match fmt {
        None | Some(Format::Json) => Ok(pretty(&json!({
            "configuration": configuration_json(&c),
            "triples": triples.iter().map(|t| t.as_array()).collect::<Vec<_>>(),
            "kappa": values.iter().map(|v| num(v.value())).collect::<Vec<_>>(),
        }))),
        Some(Format::Csv) => csv_string(
            &["i", "j", "k", "kappa"],
            triples
                .iter()
                .zip(&values)
                .map(|(t, v)| vec![t.i.to_string(), t.j.to_string(), t.k.to_string(), sig(v.value(), DIGITS)]),
        ),
        Some(Format::Svg) => Err(CliError::Input("svg output is only available for plots".into())),
    }
}

fn cmd_metric(fmt: Option<Format>, s: &Settings, input: &ConfigInput) -> CliResult<String> {
    let c = load_configuration(input)?;
    let u = moduli::chart_coords(&c)?;
    let g = moduli::metric_matrix(&u, s.h)?;
    let j = moduli::albanese_jacobian(&u, s.h)?;
    let rows: Vec<Vec<f64>> = g.rows();
    match fmt {
        None | Some(Format::Json) => Ok(pretty(&json!({
            "configuration": configuration_json(&c),
            "chart": u.coords().iter().map(|&x| num(x)).collect::<Vec<_>>(),
            "h": num(s.h),
            "tol": num(s.tol),
            "G": rows.iter().map(|r| r.iter().map(|&x| num(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "eigenvalues": g.eigenvalues().into_iter().map(num).collect::<Vec<_>>(),
            "rank": moduli::jacobian_rank(&j, s.tol)?,
        }))),
        Some(Format::Csv) => {
            let header: Vec<String> = (1..=g.dim()).map(|m| format!("u{m}")).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_string(&header, rows.iter().map(|r| r.iter().map(|&x| sig(x, DIGITS)).collect()))
        }
        Some(Format::Svg) => Err(CliError::Input("svg output is only available for plots".into())),
    }
}

fn cmd_rank_scan(s: &Settings) -> CliResult<String> {
    let report = moduli::rank_scan(s.n, s.trials, s.seed, s.h, s.tol)?;
    Ok(serde_json::to_string_pretty(&report).expect("report is serializable"))
}

fn read_curve(path: &Path) -> CliResult<Vec<ChartPoint>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Input(e.to_string()))?;
        let parsed: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(coords) => out.push(ChartPoint::new(coords)?),
            Err(_) if line == 0 => continue,
            Err(_) => return Err(CliError::Input(format!("row {}: not numeric", line + 1))),
        }
    }
    Ok(out)
}

fn cmd_curve_length(fmt: Option<Format>, s: &Settings, path: &Path) -> CliResult<String> {
    let samples = read_curve(path)?;
    let len = moduli::curve_length(&samples, s.h)?;
    match fmt {
        None | Some(Format::Csv) => Ok(sig(len, DIGITS)),
        Some(Format::Json) => Ok(pretty(&json!({ "h": num(s.h), "samples": samples.len(), "length": num(len) }))),
        Some(Format::Svg) => Err(CliError::Input("svg output is only available for plots".into())),
    }
}

fn cmd_plot(fmt: Option<Format>, s: &Settings, p: &PlotCommand) -> CliResult<String> {
    match p {
        PlotCommand::Tree3 { points: tokens } => {
            let [p0, p1, p2, p3] = points::<4>(tokens)?;
            let fig = plots::tree3_figure(p0, p1, p2, p3)?;
            match fmt.unwrap_or(Format::Svg) {
                Format::Svg => Ok(fig.to_svg().trim_end().to_string()),
                Format::Csv => Ok(fig.to_csv().trim_end().to_string()),
                Format::Json => Ok(serde_json::to_string_pretty(&fig).expect("figure is serializable")),
            }
        }
        PlotCommand::Helix => {
            let samples = plots::helix_samples(s.k)?;
            let pairs: Vec<(f64, f64)> = samples.iter().map(|(a, b)| (a.value(), b.value())).collect();
            match fmt.unwrap_or(Format::Csv) {
                Format::Csv => {
                    csv_string(&["theta", "kappa"], pairs.iter().map(|&(a, b)| vec![sig(a, DIGITS), sig(b, DIGITS)]))
                }
                Format::Json => Ok(pretty(&json!({
                    "k": s.k,
                    "samples": pairs.iter().map(|&(a, b)| [num(a), num(b)]).collect::<Vec<_>>(),
                }))),
                Format::Svg => Ok(plots::torus_svg(&pairs, "(C(x), κ(x)) on the torus").trim_end().to_string()),
            }
        }
        PlotCommand::KappaGraph => {
            let graph: Vec<(f64, f64)> = plots::kappa_graph(s.k)?.into_iter().map(|(t, k)| (t, k.value())).collect();
            match fmt.unwrap_or(Format::Csv) {
                Format::Csv => {
                    csv_string(&["t", "kappa"], graph.iter().map(|&(t, k)| vec![sig(t, DIGITS), sig(k, DIGITS)]))
                }
                Format::Json => Ok(pretty(&json!({
                    "k": s.k,
                    "samples": graph.iter().map(|&(t, k)| [num(t), num(k)]).collect::<Vec<_>>(),
                }))),
                Format::Svg => Ok(plots::torus_svg(&graph, "κ along one loop of P¹(ℝ)").trim_end().to_string()),
            }
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult<String> {
    let s = Settings::resolve(&cli.opts)?;
    let fmt = s.format;
    match &cli.command {
        Command::Crossratio { points: t } => {
            let [p0, p1, p2, p3] = points::<4>(t)?;
            scalar(fmt, cross_ratio(p0, p1, p2, p3)?)
        }
        Command::Kappa { x } => cmd_kappa(fmt, x),
        Command::Gamma { points: t } => {
            let [p0, p1, p2, p3] = points::<4>(t)?;
            scalar(fmt, cover::devadoss_gamma(p0, p1, p2, p3)?)
        }
        Command::Group(g) => cmd_group(fmt, g),
        Command::Cayley { x } => cmd_cayley(fmt, x),
        Command::Su11 { a, b, c, d, normalize } => cmd_su11(*a, *b, *c, *d, *normalize),
        Command::Albanese(input) => cmd_albanese(fmt, input),
        Command::Metric(input) => cmd_metric(fmt, &s, input),
        Command::RankScan => cmd_rank_scan(&s),
        Command::CurveLength { input } => cmd_curve_length(fmt, &s, input),
        Command::Plot(p) => cmd_plot(fmt, &s, p),
    }
}

/// Runs the command line `args` (program name first), writing results to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
