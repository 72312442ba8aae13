//! Command-line front end. Every command writes CSV with a header row;
//! label lists inside a field are joined with `;`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::centrality::CentralityContext;
use crate::enumeration::{centrality_distribution, simple_cycles, DistributionConfig};
use crate::error::{Error, Result};
use crate::graph::{load_edge_list, Graph, VertexSubset};
use crate::group::GroupEvaluator;
use crate::linalg::{Spectrum, DEFAULT_MULTIPLICITY_TOL};
use crate::verify::{run_suite, NamedGraph, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "subcent", version, about = "Determinant subgraph centrality and hike-sieve verification")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Edge list: `a,b[,w]` per line (comma, tab or whitespace separated)
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Treat edges as arcs
    #[arg(long, global = true)]
    pub directed: bool,
    /// Write CSV here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
    /// Cap on enumerated objects
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Overrides the eigenvalue-multiplicity or verification tolerance
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Perron root, multiplicities, eta and det(I - zA)
    Spectrum,
    /// c(H) and group baselines for listed subsets
    Centrality {
        /// One subset per line, labels separated by commas
        #[arg(long)]
        subsets: PathBuf,
    },
    /// c over every connected k-subset
    Distribution {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// c(gamma) for every simple cycle
    Cycles {
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Run a verification suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// zeta, sieve, theorem1 (alias asymptotics), mobius, projector or inclusion-exclusion
    pub suite: Suite,
    /// Hike length bound
    #[arg(long, default_value_t = 10)]
    pub max_len: usize,
    /// Largest walk length for the asymptotics suite
    #[arg(long, default_value_t = 40)]
    pub k: usize,
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => match emit(&cli.common, &out.text) {
            Ok(()) => out.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_DATA
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_DATA
        }
    }
}

pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<Output> {
    let c = &cli.common;
    match &cli.command {
        Command::Spectrum => cmd_spectrum(&load(c)?, c.tolerance).map(Output::ok),
        Command::Centrality { subsets } => {
            let g = load(c)?;
            let text = fs::read_to_string(subsets)?;
            cmd_centrality(&g, &parse_subsets(&text)).map(Output::ok)
        }
        Command::Distribution { k } => {
            let mut cfg = DistributionConfig::new(*k);
            cfg.workers = c.workers as usize;
            if let Some(b) = c.budget {
                cfg.budget = b;
            }
            cmd_distribution(&load(c)?, &cfg).map(Output::ok)
        }
        Command::Cycles { max_len } => {
            let g = load(c)?;
            cmd_cycles(&g, max_len.unwrap_or(g.n())).map(Output::ok)
        }
        Command::Verify(v) => {
            let extra = match &c.input {
                Some(_) => Some(NamedGraph::new("input", load(c)?)),
                None => None,
            };
            let cfg = VerifyConfig {
                seed: c.seed,
                max_len: v.max_len,
                k_max: v.k,
                tolerance: c.tolerance,
                extra,
            };
            cmd_verify(v.suite, &cfg)
        }
    }
}

fn load(c: &Common) -> Result<Graph> {
    let path = c
        .input
        .as_deref()
        .ok_or_else(|| Error::Invalid("--input is required".into()))?;
    load_path(path, c.directed)
}

pub fn load_path(path: &Path, directed: bool) -> Result<Graph> {
    load_edge_list(&fs::read_to_string(path)?, directed)
}

/// Label lists, one per non-empty line; `#` starts a comment line.
pub fn parse_subsets(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        })
        .collect()
}

/// Quotes a field when it holds a comma, quote or line break.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(fields: &[String]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// `100 x` rounded half away from zero to two decimals.
pub fn percent(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let hundredths = (x * 10_000.0).round();
    let sign = if hundredths < 0.0 { "-" } else { "" };
    let h = hundredths.abs() as u128;
    format!("{sign}{}.{:02}", h / 100, h % 100)
}

fn real(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x}")
    }
}

fn labels(g: &Graph, h: &VertexSubset) -> String {
    g.subset_labels(h).join(";")
}

pub fn cmd_spectrum(g: &Graph, tolerance: Option<f64>) -> Result<String> {
    let s = Spectrum::compute_with_tolerance(g, tolerance.unwrap_or(DEFAULT_MULTIPLICITY_TOL))?;
    let coeffs = match s.char_poly.exact() {
        Some(c) => c.iter().map(ToString::to_string).collect::<Vec<_>>(),
        None => s.char_poly.to_f64().iter().map(|x| real(*x)).collect(),
    };
    let mut out = String::from("quantity,value\n");
    out += &csv_row(&["lambda".into(), real(s.lambda)]);
    out += &csv_row(&["multiplicity".into(), s.multiplicity.to_string()]);
    out += &csv_row(&["lambda_multiplicity".into(), s.lambda_multiplicity.to_string()]);
    out += &csv_row(&["eta".into(), s.eta.map(real).unwrap_or_default()]);
    out += &csv_row(&["char_poly".into(), coeffs.join(";")]);
    Ok(out)
}

pub fn cmd_centrality(g: &Graph, subsets: &[Vec<String>]) -> Result<String> {
    let ctx = CentralityContext::new(g)?;
    let group = GroupEvaluator::new(g);
    let mut out = String::from(
        "subset,c,c_percent,degree,closeness_sum,closeness_avg,betweenness\n",
    );
    for labels_in in subsets {
        let h = g.subset_from_labels(labels_in)?;
        if h.is_empty() {
            return Err(Error::EmptySubset);
        }
        let c = ctx.subgraph_centrality(&h)?.value;
        let row = group.row(&h);
        out += &csv_row(&[
            labels(g, &h),
            real(c),
            percent(c),
            row.degree.to_string(),
            real(row.closeness_sum),
            real(row.closeness_avg),
            real(row.betweenness),
        ]);
    }
    Ok(out)
}

pub fn cmd_distribution(g: &Graph, cfg: &DistributionConfig) -> Result<String> {
    let rows = centrality_distribution(g, cfg)?;
    let mut keyed: Vec<(Vec<&str>, _)> = rows.iter().map(|r| (g.subset_labels(&r.subset), r)).collect();
    keyed.sort_by(|(la, a), (lb, b)| b.centrality.total_cmp(&a.centrality).then_with(|| la.cmp(lb)));
    let mut out = String::from("subset,c,c_normalized,degree,degree_normalized\n");
    for (l, r) in keyed {
        out += &csv_row(&[
            l.join(";"),
            real(r.centrality),
            real(r.normalized),
            r.degree.to_string(),
            real(r.degree_normalized),
        ]);
    }
    Ok(out)
}

pub fn cmd_cycles(g: &Graph, max_len: usize) -> Result<String> {
    let ctx = CentralityContext::new(g)?;
    let mut rows: Vec<(f64, Vec<&str>, usize, String)> = simple_cycles(g, max_len)
        .iter()
        .map(|gamma| {
            (
                ctx.value(gamma.vertex_set().members()),
                g.subset_labels(gamma.vertex_set()),
                gamma.len(),
                gamma.display(g),
            )
        })
        .collect();
    rows.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then_with(|| a.1.cmp(&b.1))
            .then_with(|| a.2.cmp(&b.2))
            .then_with(|| a.3.cmp(&b.3))
    });
    let mut out = String::from("cycle,vertex_set,length,c\n");
    for (c, set, len, cycle) in rows {
        out += &csv_row(&[cycle, set.join(";"), len.to_string(), real(c)]);
    }
    Ok(out)
}

pub fn cmd_verify(suite: Suite, cfg: &VerifyConfig) -> Result<Output> {
    let report = run_suite(suite, cfg)?;
    let mut out = format!("# seed={}\n# suite={}\n", cfg.seed, suite);
    for note in &report.notes {
        out += &format!("# {note}\n");
    }
    out += &report.header.join(",");
    out.push('\n');
    for row in &report.rows {
        out += &csv_row(row);
    }
    out += &format!(
        "# result={} failures={} rows={}\n",
        if report.passed() { "PASS" } else { "FAIL" },
        report.failures,
        report.rows.len()
    );
    Ok(Output {
        text: out,
        code: if report.passed() { EXIT_OK } else { EXIT_VERIFY },
    })
}
