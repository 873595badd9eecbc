//! The `wlp` command line.
//!
//! Exit codes: 0 on success (for `wlp`, the algebra has the WLP), 1 when a
//! verdict is negative or a check disagrees, 2 on usage or input errors.

mod verify;

use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{LinearForm, MonomialAlgebra};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::indpoly::{independence_polynomial, mode_analysis, IntPolynomial};
use crate::lefschetz::{
    classify_lollipop, expected_lollipop_wlp, wlp_report_with_form, WlpReport,
};
use crate::tensor::{tensor_with_squarefree_block, verdict_via_theorem, BlockMatrixReport};

pub use verify::{random_witnesses, run_checks, CheckOutcome, VerifyConfig, LOLLIPOP_HILBERT};

/// Fixed default seed for randomized suites.
pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Debug, Parser)]
#[command(name = "wlp", version, about = "Weak Lefschetz property checks for monomial algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Independence polynomial, unimodality and mode of a graph.
    Indpoly(SourceArgs),
    /// Hilbert series and socle degree of an algebra.
    Hilbert(SourceArgs),
    /// Per-degree maximal-rank table and WLP verdict.
    Wlp {
        #[command(flatten)]
        source: SourceArgs,
        /// Comma-separated integer coefficients of the linear form
        /// (default: all ones).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        form: Option<Vec<i64>>,
    },
    /// Compare the rank identity for k[u_1..u_n]/(u)^2 ⊗ A with direct ranks.
    Blockcheck {
        #[command(flatten)]
        source: SourceArgs,
        /// Number of square-zero variables.
        #[arg(long = "block", default_value_t = 1)]
        block: usize,
        /// Check a single degree instead of 0..=D.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Lollipop WLP grid against the expected classification.
    Classify {
        /// Clique sizes, `a..b` (inclusive) or a single value.
        #[arg(long, value_parser = parse_range)]
        m: RangeInclusive<usize>,
        /// Path lengths, `a..b` (inclusive) or a single value.
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Worker threads across grid cells
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
    /// Run every published check and print one line per check.
    VerifyPaper {
        /// Seed for the randomized checks
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads across grid cells
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        /// Lollipop grid clique sizes.
        #[arg(long, value_parser = parse_range, default_value = "1..8")]
        m: RangeInclusive<usize>,
        /// Lollipop grid path lengths.
        #[arg(long, value_parser = parse_range, default_value = "1..20")]
        n: RangeInclusive<usize>,
        /// Replace the reference path-mode table (comma-separated λ_1, λ_2, …).
        #[arg(long, value_delimiter = ',')]
        lambda_table: Option<Vec<usize>>,
    },
}

/// Exactly one graph or algebra source.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Path graph P_N.
    #[arg(long, value_name = "N")]
    path: Option<usize>,
    /// Complete graph K_M.
    #[arg(long, value_name = "M")]
    complete: Option<usize>,
    /// Lollipop graph L_{M,N}.
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    lollipop: Option<Vec<usize>>,
    /// Edge-list file: `n <count>` then `<u> <v>` lines.
    #[arg(long, value_name = "FILE")]
    graph_file: Option<PathBuf>,
    /// Monomial generators, one per line, e.g. `y1^2` or `y1 y3`.
    #[arg(long, value_name = "FILE")]
    generators: Option<PathBuf>,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a non-negative integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

enum Source {
    Graph(Graph),
    Algebra(MonomialAlgebra),
}

impl SourceArgs {
    fn load(&self) -> Result<Source> {
        if let Some(n) = self.path {
            return Ok(Source::Graph(Graph::path(n)?));
        }
        if let Some(m) = self.complete {
            return Ok(Source::Graph(Graph::complete(m)?));
        }
        if let Some(mn) = &self.lollipop {
            return Ok(Source::Graph(Graph::lollipop(mn[0], mn[1])?));
        }
        if let Some(p) = &self.graph_file {
            return Ok(Source::Graph(Graph::parse_edge_list(&read(p)?)?));
        }
        if let Some(p) = &self.generators {
            return Ok(Source::Algebra(MonomialAlgebra::parse_generators(&read(p)?)?));
        }
        Err(Error::Domain("no graph or algebra source given".into()))
    }

    fn algebra(&self) -> Result<MonomialAlgebra> {
        Ok(match self.load()? {
            Source::Graph(g) => MonomialAlgebra::from_graph(&g),
            Source::Algebra(a) => a,
        })
    }
}

fn read(p: &PathBuf) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Domain(format!("{}: {e}", p.display())))
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
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
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit(out: &mut dyn Write, format: OutputFormat, text: &str, json: &impl Serialize) -> Result<()> {
    let body = match format {
        OutputFormat::Text => text.to_string(),
        OutputFormat::Json => {
            serde_json::to_string_pretty(json).expect("serializable report") + "\n"
        }
    };
    out.write_all(body.as_bytes())
        .map_err(|e| Error::Domain(format!("writing output: {e}")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct IndpolyJson<'a> {
    polynomial: &'a IntPolynomial,
    is_unimodal: bool,
    mode: Option<usize>,
}

#[derive(Serialize)]
struct HilbertJson<'a> {
    hilbert: &'a IntPolynomial,
    socle_degree: usize,
}

#[derive(Serialize)]
struct BlockcheckJson<'a> {
    block: usize,
    reports: &'a [BlockMatrixReport],
    agree: bool,
}

#[derive(Serialize)]
struct ClassifyCell {
    m: usize,
    n: usize,
    computed: bool,
    expected: bool,
    agree: bool,
}

#[derive(Serialize)]
struct ClassifyJson<'a> {
    cells: &'a [ClassifyCell],
    agreements: usize,
    total: usize,
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let format = cli.output;
    match &cli.command {
        Command::Indpoly(source) => {
            let g = match source.load()? {
                Source::Graph(g) => g,
                Source::Algebra(_) => {
                    return Err(Error::Domain("indpoly needs a graph source".into()))
                }
            };
            let p = independence_polynomial(&g);
            let ma = mode_analysis(&p)?;
            let mut text = format!("I(G; t) = {p}\nunimodal: {}\n", yes_no(ma.is_unimodal));
            if let Some(mode) = ma.mode {
                let _ = writeln!(text, "mode: {mode}");
            }
            let json = IndpolyJson {
                polynomial: &p,
                is_unimodal: ma.is_unimodal,
                mode: ma.mode,
            };
            emit(out, format, &text, &json)?;
            Ok(0)
        }
        Command::Hilbert(source) => {
            let a = source.algebra()?;
            let hs = a.hilbert_series();
            let text = format!("HS(A, t) = {hs}\nsocle degree: {}\n", a.socle_degree());
            emit(
                out,
                format,
                &text,
                &HilbertJson {
                    hilbert: &hs,
                    socle_degree: a.socle_degree(),
                },
            )?;
            Ok(0)
        }
        Command::Wlp { source, form } => {
            let a = source.algebra()?;
            let ell = match form {
                Some(c) => LinearForm::from_i64s(c)?,
                None => LinearForm::all_ones(a.num_vars()),
            };
            let report = wlp_report_with_form(&a, &ell)?;
            emit(out, format, &render_wlp(&report), &report)?;
            Ok(if report.wlp { 0 } else { 1 })
        }
        Command::Blockcheck {
            source,
            block,
            degree,
        } => {
            let a = source.algebra()?;
            let tb = tensor_with_squarefree_block(*block, &a)?;
            let degrees: Vec<usize> = match degree {
                Some(d) => vec![*d],
                None => (0..=a.socle_degree()).collect(),
            };
            let reports = degrees
                .iter()
                .map(|&i| verdict_via_theorem(&tb, i))
                .collect::<Result<Vec<_>>>()?;
            let agree = reports.iter().all(|r| r.agree);
            let mut text = format!(
                "B = k[u_1..u_{block}]/(u)^2 ⊗ A, HS(A, t) = {}\n",
                a.hilbert_series()
            );
            let _ = writeln!(
                text,
                "{:>6}  {:>9}  {:>9}  {:>14}  {:>14}  {:>5}",
                "degree", "pred.rank", "rank", "pred. inj/surj", "direct inj/surj", "agree"
            );
            for r in &reports {
                let _ = writeln!(
                    text,
                    "{:>6}  {:>9}  {:>9}  {:>14}  {:>15}  {:>5}",
                    r.degree,
                    r.predicted_rank,
                    r.direct_rank,
                    format!("{}/{}", yes_no(r.predicted.injective), yes_no(r.predicted.surjective)),
                    format!("{}/{}", yes_no(r.direct.injective), yes_no(r.direct.surjective)),
                    yes_no(r.agree)
                );
            }
            let literal_off: Vec<usize> = reports
                .iter()
                .filter(|r| !r.literal_agrees)
                .map(|r| r.degree)
                .collect();
            if !literal_off.is_empty() {
                let _ = writeln!(
                    text,
                    "note: the two-map criterion misjudges degrees {literal_off:?} (single square-zero variable)"
                );
            }
            let _ = writeln!(text, "agreement: {}", yes_no(agree));
            emit(
                out,
                format,
                &text,
                &BlockcheckJson {
                    block: *block,
                    reports: &reports,
                    agree,
                },
            )?;
            Ok(if agree { 0 } else { 1 })
        }
        Command::Classify { m, n, jobs } => {
            let cells = classify_grid(m.clone(), n.clone(), *jobs)?;
            let agreements = cells.iter().filter(|c| c.agree).count();
            let mut text = String::new();
            let _ = write!(text, "{:>4} ", "m\\n");
            for nn in n.clone() {
                let _ = write!(text, "{nn:>3}");
            }
            text.push('\n');
            for mm in m.clone() {
                let _ = write!(text, "{mm:>4} ");
                for c in cells.iter().filter(|c| c.m == mm) {
                    let mark = match (c.computed, c.agree) {
                        (true, true) => "+",
                        (false, true) => ".",
                        (true, false) => "+!",
                        (false, false) => ".!",
                    };
                    let _ = write!(text, "{mark:>3}");
                }
                text.push('\n');
            }
            let _ = writeln!(text, "legend: + WLP, . no WLP, ! disagrees with the expected table");
            for c in cells.iter().filter(|c| !c.agree) {
                let _ = writeln!(
                    text,
                    "disagreement: L({},{}) computed {} expected {}",
                    c.m,
                    c.n,
                    yes_no(c.computed),
                    yes_no(c.expected)
                );
            }
            let _ = writeln!(text, "agreements {agreements}/{}", cells.len());
            emit(
                out,
                format,
                &text,
                &ClassifyJson {
                    cells: &cells,
                    agreements,
                    total: cells.len(),
                },
            )?;
            Ok(if agreements == cells.len() { 0 } else { 1 })
        }
        Command::VerifyPaper {
            seed,
            jobs,
            m,
            n,
            lambda_table,
        } => {
            let config = VerifyConfig {
                seed: *seed,
                jobs: *jobs,
                m: m.clone(),
                n: n.clone(),
                lambda_table: lambda_table.clone(),
            };
            let outcomes = run_checks(&config)?;
            let mut text = String::new();
            for o in &outcomes {
                let _ = writeln!(
                    text,
                    "{} {}: {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                );
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let _ = writeln!(text, "{passed}/{} checks passed", outcomes.len());
            emit(out, format, &text, &outcomes)?;
            Ok(if passed == outcomes.len() { 0 } else { 1 })
        }
    }
}

fn render_wlp(r: &WlpReport) -> String {
    let mut text = format!("HS(A, t) = {}\nsocle degree: {}\n", r.hilbert, r.socle_degree);
    let _ = writeln!(
        text,
        "{:>6}  {:>8}  {:>8}  {:>8}  {:>9}  {:>10}",
        "degree", "h_i", "h_i+1", "rank", "injective", "surjective"
    );
    for v in &r.verdicts {
        let _ = writeln!(
            text,
            "{:>6}  {:>8}  {:>8}  {:>8}  {:>9}  {:>10}",
            v.degree,
            v.h_i,
            v.h_next,
            v.rank,
            yes_no(v.injective),
            yes_no(v.surjective)
        );
    }
    if !r.hilbert_unimodal {
        text.push_str("Hilbert series is not unimodal\n");
    }
    let _ = writeln!(text, "WLP: {}", yes_no(r.wlp));
    for f in &r.failing {
        let _ = writeln!(text, "fails {} at degree {}", f.kind, f.degree);
    }
    text
}

/// Lollipop verdicts for every `(m, n)` cell, computed on a pool of `jobs`
/// threads; results are in row-major order regardless of scheduling.
fn classify_grid(
    m: RangeInclusive<usize>,
    n: RangeInclusive<usize>,
    jobs: usize,
) -> Result<Vec<ClassifyCell>> {
    let cells: Vec<(usize, usize)> = m
        .flat_map(|mm| n.clone().map(move |nn| (mm, nn)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    pool.install(|| {
        cells
            .par_iter()
            .map(|&(mm, nn)| {
                let expected = expected_lollipop_wlp(mm, nn);
                let computed = match classify_lollipop(mm, nn) {
                    Ok(c) => c.report.wlp,
                    Err(Error::ClassificationMismatch { computed, .. }) => computed,
                    Err(e) => return Err(e),
                };
                Ok(ClassifyCell {
                    m: mm,
                    n: nn,
                    computed,
                    expected,
                    agree: computed == expected,
                })
            })
            .collect()
    })
}
