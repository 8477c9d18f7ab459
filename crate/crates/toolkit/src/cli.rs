//! Command-line front end. [`run`] takes the argument list and the three
//! standard streams so it can be driven from tests.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use functigraph_core::enumerate::{connected_graphs, labeled_trees};
use functigraph_core::fixing::fixing_number_with;
use functigraph_core::functigraph::Construction;
use functigraph_core::perm::{automorphism_group_with, group_generators, group_order};
use functigraph_core::predict::{
    equality_complete_graphs, kn_bounds, predicted_fix_kn, predicted_fix_kn_minus_matching, ImageKind,
};
use functigraph_core::resolving::metric_dimension_with;
use functigraph_core::{build_functigraph, Caps, Error, FamilySpec, Graph, PreimageProfile, VertexFunction};
use serde_json::json;

use crate::format::{self, FixingJson, FunctionJson, GraphJson, GroupJson, ResolvingJson};
use crate::suite::{self, Summary, SuiteParams, Verdict};

/// Directory holding a default `caps.conf`, used when `--caps` is absent.
pub const CAPS_DIR_ENV: &str = "FUNCTIGRAPH_CAPS_DIR";

#[derive(Debug, Parser)]
#[command(name = "functigraph", version, about = "Fixing numbers, automorphisms and metric dimension of graphs and functigraphs")]
struct Cli {
    /// Emit JSON instead of `key=value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    /// `key=value` file overriding the search caps.
    #[arg(long, global = true, value_name = "FILE")]
    caps: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Source {
    /// Graph file in the `n m` / `u v` edge-list format.
    #[arg(long, value_name = "FILE", group = "source")]
    graph: Option<PathBuf>,
    /// Generated graph, e.g. `complete:4`, `join(path:2,star:3)`.
    #[arg(long, value_name = "SPEC", group = "source")]
    family: Option<String>,
    /// A catalog construction `TAG:PARAMS`; supplies both graph and function.
    #[arg(long, value_name = "TAG:PARAMS", group = "source", conflicts_with = "function")]
    catalog: Option<String>,
    /// Function file, or the images inline (`"0 0 2"`); the command then
    /// acts on the functigraph.
    #[arg(long, value_name = "FILE|INLINE")]
    function: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fixing number and the least minimum fixing set.
    Fix(Source),
    /// Automorphism group order and generators.
    Aut {
        #[command(flatten)]
        source: Source,
        /// Also list every element.
        #[arg(long)]
        elements: bool,
    },
    /// Metric dimension and the least minimum resolving set.
    Mdim(Source),
    /// Print the functigraph in the edge-list format.
    Build(Source),
    /// Closed-form predictions.
    Predict {
        #[command(subcommand)]
        which: Predict,
    },
    /// Run claim checks and print one JSON report per instance.
    Verify {
        /// `all`, a suite name or a single claim id.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances per order in sampled checks.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Include per-instance runtimes (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        /// List suites and claims instead of running them.
        #[arg(long)]
        list: bool,
    },
    /// Exhaustive streams.
    Enumerate {
        #[command(subcommand)]
        which: Enumerate,
    },
}

#[derive(Debug, Subcommand)]
enum Predict {
    /// fix(F_{K_n}) from a preimage profile such as `3,2`.
    Kn { n: usize, profile: String },
    /// fix(F) for K_n minus i disjoint edges and a constant function.
    Matching {
        n: usize,
        i: usize,
        #[arg(value_enum, default_value_t = Kind::Na)]
        kind: Kind,
    },
    /// Orders m with fix(K_m) = fix(F) reachable with s images.
    Equality { s: usize },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Twin,
    Saturated,
    #[value(name = "n.a.", alias = "na")]
    Na,
}

#[derive(Debug, Subcommand)]
enum Enumerate {
    /// Every function on the graph with the resulting fix and beta.
    Functions(Source),
    /// Labeled connected graphs (or trees) on n vertices.
    Graphs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trees: bool,
        /// Print only how many there are.
        #[arg(long)]
        count: bool,
    },
}

enum Failure {
    /// Bad input: exit status 2.
    Usage(String),
    /// A computation could not finish: exit status 1.
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidParameter(_) | Error::UnknownTag(_) | Error::SizeMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            Error::VertexOutOfRange { .. } | Error::LoopEdge(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Compute(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `argv` (including the program name) and runs the command.
/// Returns the exit status: 0 on success, 1 on a failed claim or an
/// aborted computation, 2 on a usage or input error.
pub fn run<I, T>(argv: I, stdin: &mut (dyn Read + Send), out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, stdin, out)),
            Err(e) => Err(Failure::Compute(e.to_string())),
        },
        None => dispatch(&cli, stdin, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn read_caps(path: &Path) -> CliResult<Caps> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_caps(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// `key=value` lines; keys are the [`Caps`] field names.
pub fn parse_caps(text: &str) -> std::result::Result<Caps, format::ParseError> {
    let mut caps = Caps::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| format::ParseError { line: i + 1, message };
        let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key=value".into()))?;
        let value: u128 = value
            .trim()
            .parse()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| bad(format!("`{}` is not a positive integer", value.trim())))?;
        let small = || usize::try_from(value).map_err(|_| bad("value too large".into()));
        match key.trim() {
            "max_vertices" => caps.max_vertices = small()?,
            "max_elements" => caps.max_elements = value,
            "max_resolving_vertices" => caps.max_resolving_vertices = small()?,
            other => return Err(bad(format!("unknown cap `{other}`"))),
        }
    }
    Ok(caps)
}

fn caps(cli: &Cli) -> CliResult<Caps> {
    if let Some(path) = &cli.caps {
        return read_caps(path);
    }
    if let Some(dir) = std::env::var_os(CAPS_DIR_ENV) {
        let path = Path::new(&dir).join("caps.conf");
        if path.is_file() {
            return read_caps(&path);
        }
    }
    Ok(Caps::default())
}

fn read_graph(source: &Source, stdin: &mut dyn Read) -> CliResult<(Graph, Option<VertexFunction>)> {
    if let Some(tag) = &source.catalog {
        let c: Construction = tag.parse()?;
        return Ok((c.graph()?, Some(c.function()?)));
    }
    let g = if let Some(spec) = &source.family {
        spec.parse::<FamilySpec>()?.generate()?
    } else {
        let (name, text) = match &source.graph {
            Some(path) => (
                path.display().to_string(),
                std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
            ),
            None => {
                let mut text = String::new();
                stdin.read_to_string(&mut text)?;
                ("<stdin>".to_string(), text)
            }
        };
        format::parse_graph(&text).map_err(|e| Failure::Usage(format!("{name}: {e}")))?
    };
    let f = match &source.function {
        None => None,
        Some(arg) => {
            let path = Path::new(arg);
            let (name, text) = if path.is_file() {
                (arg.clone(), std::fs::read_to_string(path)?)
            } else {
                ("inline function".to_string(), arg.clone())
            };
            Some(format::parse_function(&text, Some(g.order())).map_err(|e| Failure::Usage(format!("{name}: {e}")))?)
        }
    };
    Ok((g, f))
}

/// The graph the command acts on: the functigraph when a function is given.
fn target(source: &Source, stdin: &mut dyn Read) -> CliResult<Graph> {
    match read_graph(source, stdin)? {
        (g, Some(f)) => Ok(build_functigraph(&g, &f)?),
        (g, None) => Ok(g),
    }
}

fn join(values: &[usize]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn emit_json(out: &mut dyn Write, value: &impl serde::Serialize) -> CliResult<()> {
    let line = serde_json::to_string(value).map_err(|e| Failure::Compute(e.to_string()))?;
    writeln!(out, "{line}")?;
    Ok(())
}

fn dispatch(cli: &Cli, stdin: &mut (dyn Read + Send), out: &mut (dyn Write + Send)) -> CliResult<i32> {
    let caps = caps(cli)?;
    match &cli.command {
        Command::Fix(source) => {
            let g = target(source, stdin)?;
            let r = fixing_number_with(&g, &caps)?;
            let j = FixingJson::new(&g, &r)?;
            if cli.json {
                emit_json(out, &j)?;
            } else {
                writeln!(out, "fix={}", j.fix)?;
                writeln!(out, "witness={}", join(&j.witness))?;
                writeln!(out, "aut_order={}", j.aut_order)?;
                writeln!(out, "lower_bound={}", j.lower_bound)?;
            }
        }
        Command::Aut { source, elements } => {
            let g = target(source, stdin)?;
            let j = if *elements {
                GroupJson::new(&automorphism_group_with(&g, &caps)?, true)
            } else {
                let generators = group_generators(&g)?.iter().map(|p| p.images().to_vec()).collect();
                GroupJson { order: group_order(&g)?, generators, elements: None }
            };
            if cli.json {
                emit_json(out, &j)?;
            } else {
                writeln!(out, "order={}", j.order)?;
                for p in &j.generators {
                    writeln!(out, "generator={}", join(p))?;
                }
                for p in j.elements.iter().flatten() {
                    writeln!(out, "element={}", join(p))?;
                }
            }
        }
        Command::Mdim(source) => {
            let g = target(source, stdin)?;
            let j = ResolvingJson::from(&metric_dimension_with(&g, &caps)?);
            if cli.json {
                emit_json(out, &j)?;
            } else {
                writeln!(out, "beta={}", j.beta)?;
                writeln!(out, "witness={}", join(&j.witness))?;
            }
        }
        Command::Build(source) => {
            let (g, f) = read_graph(source, stdin)?;
            let f = f.ok_or_else(|| Failure::Usage("build needs --function or --catalog".into()))?;
            let fg = build_functigraph(&g, &f)?;
            if cli.json {
                emit_json(out, &json!({"graph": GraphJson::from(&fg), "function": FunctionJson::from(&f)}))?;
            } else {
                write!(out, "{}", format::serialize_graph(&fg))?;
            }
        }
        Command::Predict { which } => predict(which, cli.json, out)?,
        Command::Verify { suite: name, max_n, seed, samples, timings, list } => {
            if *list {
                for c in suite::CLAIMS {
                    writeln!(out, "{}\t{}\t{}", c.suite, c.id, c.statement)?;
                }
                return Ok(0);
            }
            let params = SuiteParams { max_n: *max_n, seed: *seed, samples: *samples, timings: *timings, caps };
            let reports = suite::run_suite(name, &params)?;
            for r in &reports {
                emit_json(out, r)?;
            }
            let summary = Summary::of(&reports);
            emit_json(out, &json!({ "summary": summary }))?;
            return Ok(if reports.iter().any(|r| r.verdict == Verdict::Fail) { 1 } else { 0 });
        }
        Command::Enumerate { which: Enumerate::Functions(source) } => {
            let g = target(source, stdin)?;
            let s = suite::enumerate_all_functions(&g, &caps)?;
            if cli.json {
                emit_json(out, &s)?;
            } else {
                let hist = |h: &std::collections::BTreeMap<usize, usize>| {
                    h.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ")
                };
                writeln!(out, "functions={}", s.functions)?;
                writeln!(out, "fix_graph={}", s.fix_graph)?;
                writeln!(out, "fix_distribution={}", hist(&s.fix_distribution))?;
                writeln!(out, "fix_min={} g={}", s.fix_min.value, join(&s.fix_min.function))?;
                writeln!(out, "fix_max={} g={}", s.fix_max.value, join(&s.fix_max.function))?;
                if let (Some(h), Some(lo), Some(hi)) = (&s.beta_distribution, &s.beta_min, &s.beta_max) {
                    writeln!(out, "beta_distribution={}", hist(h))?;
                    writeln!(out, "beta_min={} g={}", lo.value, join(&lo.function))?;
                    writeln!(out, "beta_max={} g={}", hi.value, join(&hi.function))?;
                }
                if let Some(g) = &s.fix_exceeds_beta {
                    writeln!(out, "fix_exceeds_beta g={}", join(g))?;
                }
            }
        }
        Command::Enumerate { which: Enumerate::Graphs { n, trees, count } } => {
            let graphs = if *trees { labeled_trees(*n)? } else { connected_graphs(*n)? };
            if *count {
                if cli.json {
                    emit_json(out, &json!({ "count": graphs.len() }))?;
                } else {
                    writeln!(out, "count={}", graphs.len())?;
                }
            } else {
                for (k, g) in graphs.iter().enumerate() {
                    if cli.json {
                        emit_json(out, &GraphJson::from(g))?;
                    } else {
                        if k > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{}", format::serialize_graph(g))?;
                    }
                }
            }
        }
    }
    Ok(0)
}

fn predict(which: &Predict, as_json: bool, out: &mut dyn Write) -> CliResult<()> {
    match which {
        Predict::Kn { n, profile } => {
            let p: PreimageProfile = profile.parse()?;
            let fix = predicted_fix_kn(*n, &p)?;
            let (lo, hi) = kn_bounds(*n, p.image_size());
            if as_json {
                emit_json(out, &json!({"fix": fix, "bounds": [lo, hi]}))?;
            } else {
                writeln!(out, "fix={fix}")?;
                writeln!(out, "bounds={lo} {hi}")?;
            }
        }
        Predict::Matching { n, i, kind } => {
            let kind = match kind {
                Kind::Twin => ImageKind::Twin,
                Kind::Saturated => ImageKind::Saturated,
                Kind::Na => ImageKind::NotApplicable,
            };
            let fix = predicted_fix_kn_minus_matching(*n, *i, kind)?;
            if as_json {
                emit_json(out, &json!({ "fix": fix }))?;
            } else {
                writeln!(out, "fix={fix}")?;
            }
        }
        Predict::Equality { s } => {
            let orders = equality_complete_graphs(*s)?;
            if as_json {
                emit_json(out, &json!({ "orders": orders }))?;
            } else {
                writeln!(out, "orders={}", join(&orders))?;
            }
        }
    }
    Ok(())
}
