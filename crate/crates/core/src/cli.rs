//! Command-line frontend.
//!
//! Every command prints one document. JSON output has sorted keys and
//! floats rounded to 12 significant digits, so runs are byte-identical for
//! fixed inputs regardless of `--jobs`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::laws;
use crate::pareto::{self, SpectrumOptions};
use crate::verify::suites::{self, Suite, SuiteParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_DISCONNECTED: i32 = 4;

/// Agreement required between a closed form and brute force.
const FORMULA_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "distpareto",
    version,
    about = "Distance Pareto spectra of graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Largest order accepted by subset enumeration.
    #[arg(long, default_value_t = pareto::DEFAULT_MAX_ORDER, global = true)]
    pub max_order: usize,

    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Relative tolerance for merging equal Pareto eigenvalues.
    #[arg(long, default_value_t = pareto::DEDUP_TOLERANCE, global = true)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance Pareto spectrum with witness subsets.
    Spectrum(GraphSource),
    /// Second largest distance Pareto eigenvalue.
    Rho2 {
        #[command(flatten)]
        source: GraphSource,
        /// Append every bound evaluated on the graph.
        #[arg(long)]
        bounds: bool,
    },
    /// Run a verification suite.
    Verify {
        /// convexity, monotonicity, quasiconvex, tree-extremes, bounds-sweep or extremal.
        suite: String,
        #[arg(long)]
        order: Option<usize>,
        /// Random connected graphs of order 7..=10 added to bounds-sweep.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate a closed form and compare it with brute force.
    Formulas {
        formula: String,
        params: Vec<String>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Named family followed by its integer parameters.
    #[arg(long, num_args = 1.., value_names = ["NAME", "P"])]
    pub family: Option<Vec<String>>,
    /// Edge-list file: vertex count, then one `u v` per line.
    #[arg(long)]
    pub edges: Option<PathBuf>,
    /// graph6 file; the first graph is used.
    #[arg(long)]
    pub graph6: Option<PathBuf>,
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph> {
        if let Some(spec) = &self.family {
            let (name, params) = spec.split_first().expect("clap requires a name");
            return graph::make_family(name, &parse_params(params)?);
        }
        if let Some(path) = &self.edges {
            return graph::parse_edge_list(&std::fs::read_to_string(path)?);
        }
        let path = self.graph6.as_ref().expect("clap requires a source");
        graph::read_graph6(&std::fs::read_to_string(path)?)?
            .into_iter()
            .next()
            .ok_or(Error::Parse {
                line: 0,
                msg: "graph6 file holds no graph".into(),
            })
    }
}

fn parse_params(raw: &[String]) -> Result<Vec<usize>> {
    raw.iter()
        .map(|p| {
            p.parse()
                .map_err(|_| Error::InvalidParams(format!("`{p}` is not a nonnegative integer")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub order: usize,
    pub size: usize,
    pub diameter: u32,
    /// The graph in edge-list format.
    pub edge_list: String,
}

impl GraphSummary {
    fn of(g: &Graph) -> Result<Self> {
        Ok(GraphSummary {
            order: g.order(),
            size: g.size(),
            diameter: g.distance_matrix()?.diameter(),
            edge_list: graph::to_edge_list(g),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputDocument {
    pub command: String,
    pub graph_summary: Option<GraphSummary>,
    pub payload: Value,
    pub tool_version: String,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Disconnected { .. } => EXIT_DISCONNECTED,
        Error::NoConvergence { .. } | Error::Numerical(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

/// Parses arguments (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs a parsed command, returning the exit code and rendered output.
pub fn execute(cli: &Cli) -> Result<(i32, String)> {
    let opts = SpectrumOptions {
        max_order: cli.max_order,
        tolerance: cli.tolerance,
        jobs: cli.jobs,
        partitions: None,
    };
    match &cli.command {
        Command::Spectrum(source) => cmd_spectrum(&source.load()?, &opts, cli.format),
        Command::Rho2 { source, bounds } => cmd_rho2(&source.load()?, *bounds, cli.format),
        Command::Verify {
            suite,
            order,
            random,
            seed,
        } => {
            let params = SuiteParams {
                order: *order,
                random: *random,
                seed: *seed,
            };
            let run = || cmd_verify(suite.parse()?, &params, cli.format);
            match cli.jobs {
                Some(j) => rayon::ThreadPoolBuilder::new()
                    .num_threads(j.max(1))
                    .build()
                    .map_err(|e| Error::InvalidParams(e.to_string()))?
                    .install(run),
                None => run(),
            }
        }
        Command::Formulas { formula, params } => {
            cmd_formulas(formula, &parse_params(params)?, cli.max_order, cli.format)
        }
    }
}

fn document(command: &str, g: Option<&Graph>, payload: Value) -> Result<OutputDocument> {
    Ok(OutputDocument {
        command: command.to_string(),
        graph_summary: g.map(GraphSummary::of).transpose()?,
        payload,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("output types serialize")
}

pub fn cmd_spectrum(g: &Graph, opts: &SpectrumOptions, format: Format) -> Result<(i32, String)> {
    let spec = pareto::pareto_spectrum_with(g, opts)?;
    let d = g.distance_matrix()?.diameter();
    let ladder_ok = (0..=d).all(|k| spec.contains(k as f64));
    let payload = json!({
        "values": spec.values,
        "witnesses": spec.witnesses,
        "count": spec.len(),
        "dedup_tolerance": spec.dedup_tolerance,
        "integer_ladder": {"diameter": d, "all_present": ladder_ok},
    });
    let out = match format {
        Format::Json => render_json(&document("spectrum", Some(g), payload)?),
        Format::Csv => {
            let mut s = String::from("value,witness\n");
            for (v, w) in spec.values.iter().zip(&spec.witnesses) {
                let _ = writeln!(s, "{},{}", fmt_float(*v), join(w));
            }
            s
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = spec
                .values
                .iter()
                .zip(&spec.witnesses)
                .enumerate()
                .map(|(k, (v, w))| vec![(k + 1).to_string(), fmt_float(*v), join(w)])
                .collect();
            let mut s = table(&["k", "value", "witness"], &rows);
            let _ = writeln!(
                s,
                "count {}, integers 0..={d} present: {ladder_ok}",
                spec.len()
            );
            s
        }
    };
    Ok((EXIT_OK, out))
}

pub fn cmd_rho2(g: &Graph, bounds: bool, format: Format) -> Result<(i32, String)> {
    let r = pareto::rho2_fast(g)?;
    let report = if bounds {
        Some(laws::bound_report(g)?)
    } else {
        None
    };
    let out = match format {
        Format::Json => {
            let mut payload = to_value(&r);
            if let Some(rep) = &report {
                payload["bounds"] = to_value(rep);
            }
            render_json(&document("rho2", Some(g), payload)?)
        }
        Format::Csv => {
            let mut s = format!("value,witness\n{},{}\n", fmt_float(r.value), r.witness);
            if let Some(rep) = &report {
                s.push_str(
                    "\nbound_id,index,direction,applicable,bound_value,actual_value,slack,tight\n",
                );
                for b in rep {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{},{}",
                        b.bound_id,
                        b.index.map(|k| k.to_string()).unwrap_or_default(),
                        to_value(&b.direction).as_str().unwrap(),
                        b.applicable,
                        opt_float(b.bound_value),
                        opt_float(b.actual_value),
                        opt_float(b.slack),
                        b.tight
                    );
                }
            }
            s
        }
        Format::Table => {
            let mut s = format!(
                "rho2 {} (delete vertex {}; all witnesses {})\n",
                fmt_float(r.value),
                r.witness,
                join(&r.witnesses)
            );
            if let Some(rep) = &report {
                let rows: Vec<Vec<String>> = rep
                    .iter()
                    .map(|b| {
                        let id = match b.index {
                            Some(k) => format!("{}[{k}]", b.bound_id),
                            None => b.bound_id.to_string(),
                        };
                        let status = if !b.applicable {
                            format!("n/a: {}", b.reason.as_deref().unwrap_or(""))
                        } else if b.violated() {
                            "VIOLATED".into()
                        } else if b.tight {
                            "tight".into()
                        } else {
                            "holds".into()
                        };
                        vec![
                            id,
                            opt_float(b.bound_value),
                            opt_float(b.actual_value),
                            opt_float(b.slack),
                            status,
                        ]
                    })
                    .collect();
                s.push_str(&table(
                    &["bound", "bound_value", "actual", "slack", "status"],
                    &rows,
                ));
            }
            s
        }
    };
    Ok((EXIT_OK, out))
}

pub fn cmd_verify(suite: Suite, params: &SuiteParams, format: Format) -> Result<(i32, String)> {
    let report = suites::run_suite(suite, params)?;
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    let out = match format {
        Format::Json => render_json(&document("verify", None, to_value(&report))?),
        Format::Csv => {
            let mut s = String::from("property_id,status,instance,detail\n");
            for f in &report.failures {
                let detail = f
                    .counterexample
                    .as_ref()
                    .map(|c| c.detail.as_str())
                    .unwrap_or("");
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    f.property_id,
                    to_value(&f.status).as_str().unwrap(),
                    csv_field(&f.instance),
                    csv_field(detail)
                );
            }
            s
        }
        Format::Table => {
            let mut s = format!(
                "suite {} order {}: checked {}, violations {}, inconclusive {}\n",
                report.suite, report.order, report.checked, report.violations, report.inconclusive
            );
            for (k, v) in &report.data {
                let _ = writeln!(s, "  {k}: {}", render_compact(v));
            }
            for f in &report.failures {
                let detail = f
                    .counterexample
                    .as_ref()
                    .map(|c| c.detail.as_str())
                    .unwrap_or("");
                let _ = writeln!(s, "  [{}] {}: {detail}", f.property_id, f.instance);
            }
            s
        }
    };
    Ok((code, out))
}

pub fn cmd_formulas(
    name: &str,
    params: &[usize],
    max_order: usize,
    format: Format,
) -> Result<(i32, String)> {
    let cf = laws::closed_form(name, params)?;
    let formula: laws::Formula = name.parse()?;
    let instance = formula.instance(params)?;
    let brute = if instance.order() <= max_order {
        Some(laws::brute_force(name, params)?)
    } else {
        None
    };
    let diff = brute.as_ref().map(|b| {
        if b.len() != cf.values.len() {
            return f64::INFINITY;
        }
        b.iter()
            .zip(&cf.values)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    });
    let agree = diff.is_none_or(|d| d <= FORMULA_TOL);
    let code = if agree { EXIT_OK } else { EXIT_VIOLATION };
    let out = match format {
        Format::Json => {
            let payload = json!({
                "formula": cf.formula,
                "params": cf.params,
                "formula_values": cf.values,
                "exact": cf.exact,
                "brute_force": brute,
                "abs_diff": diff.filter(|d| d.is_finite()),
                "agree": agree,
            });
            render_json(&document("formulas", Some(&instance), payload)?)
        }
        Format::Csv => {
            let mut s = String::from("index,formula,exact,brute_force,abs_diff\n");
            for (k, (v, e)) in cf.values.iter().zip(&cf.exact).enumerate() {
                let b = brute.as_ref().and_then(|b| b.get(k).copied());
                let d = b.map(|b| (b - v).abs());
                let _ = writeln!(
                    s,
                    "{k},{},{e},{},{}",
                    fmt_float(*v),
                    opt_float(b),
                    opt_float(d)
                );
            }
            s
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = cf
                .values
                .iter()
                .zip(&cf.exact)
                .enumerate()
                .map(|(k, (v, e))| {
                    let b = brute.as_ref().and_then(|b| b.get(k).copied());
                    vec![
                        fmt_float(*v),
                        e.clone(),
                        opt_float(b),
                        opt_float(b.map(|b| (b - v).abs())),
                    ]
                })
                .collect();
            table(&["formula", "exact", "brute_force", "abs_diff"], &rows)
        }
    };
    Ok((code, out))
}

/// Rounds to 12 significant digits; integral results become integers.
pub fn round_float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == r.trunc() && r.abs() < 1e15 {
        json!(r as i64)
    } else {
        json!(r)
    }
}

/// Replaces every float in `v` by its rounded form.
pub fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => round_float(n.as_f64().unwrap()),
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(
            o.into_iter()
                .map(|(k, v)| (k, normalize(v)))
                .collect::<Map<_, _>>(),
        ),
        other => other,
    }
}

pub fn render_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(&normalize(to_value(doc))).expect("json renders");
    s.push('\n');
    s
}

fn render_compact(v: &Value) -> String {
    normalize(v.clone()).to_string()
}

pub fn fmt_float(x: f64) -> String {
    round_float(x).to_string()
}

fn opt_float(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
