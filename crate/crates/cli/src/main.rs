//! `cayley`: growth, sweeps, max-diameter search, support patterns and beam-search path-finding.
//!
//! Every run writes its numeric output into `--out` together with a
//! `manifest.json` that lists the arguments and a SHA-256 digest per file.

mod output;

use cayley_core::analysis::{describe, fit_classes, quasipoly_fit, FitReport, QuasiPolynomial, StatsSummary};
use cayley_core::bfs::{bitmask_bytes, growth, growth_bitmask, growth_csv, growth_hash, BfsOptions, Engine, GrowthResult};
use cayley_core::graph::GraphDefJson;
use cayley_core::pathfind::{beam_search, verify_path, BeamOptions, BfsTable, Hamming, Scorer};
use cayley_core::perm::FamilyParams;
use cayley_core::search::{dot_export, max_diameter_search, support_graph, SearchConfig, SearchMode};
use cayley_core::{Error, GraphDef};
use clap::{Args, Parser, Subcommand, ValueEnum};
use output::Run;
use serde::Serialize;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::UnknownFamily(_) | Error::DefinitionPending(_)) => 4,
            CliError::Core(Error::BudgetExceeded { .. } | Error::SearchBudget | Error::CapExceeded { .. }) => 3,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Json(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Serialize)]
#[command(name = "cayley", version, about = "Growth, diameters and paths on Cayley and Schreier coset graphs")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Memory budget for the growth engines, in bytes or with a K/M/G suffix.
    #[arg(long, global = true, value_parser = parse_bytes, default_value = "8G")]
    memory_budget: u64,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "command")]
enum Command {
    /// Layer sizes, diameter, antipodes and growth statistics of one graph.
    Growth(GrowthArgs),
    /// Diameters over a range of n, then a quasi-polynomial fit.
    Sweep(SweepArgs),
    /// Largest-diameter generator sets of S_n.
    Search(SearchArgs),
    /// Support graph of a generator set: DOT output and the square-with-whiskers test.
    Pattern(PatternArgs),
    /// Beam search for a move sequence from the start state to a target.
    Pathfind(PathfindArgs),
}

#[derive(Args, Serialize, Clone)]
struct GraphArgs {
    /// Catalog family name.
    #[arg(long, conflicts_with = "def_json", required_unless_present = "def_json")]
    family: Option<String>,
    /// Graph definition JSON file.
    #[arg(long)]
    def_json: Option<PathBuf>,
    /// Degree.
    #[arg(long)]
    n: Option<usize>,
    /// Cycle length, or the `k` of the pattern constructors.
    #[arg(long)]
    k: Option<usize>,
    /// Transposition span for koltsov3 type 1.
    #[arg(long)]
    d: Option<usize>,
    /// koltsov3 type (1 or 2).
    #[arg(long = "type")]
    variant: Option<usize>,
    /// Close the generator set under inverses.
    #[arg(long)]
    inverses: bool,
    /// Act on a coset instead of the whole group.
    #[arg(long, value_enum)]
    coset: Option<Coset>,
}

#[derive(ValueEnum, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Coset {
    /// Floor(n/2) zeros followed by ones.
    Binary,
}

impl GraphArgs {
    fn params(&self) -> FamilyParams {
        FamilyParams { k: self.k, d: self.d, variant: self.variant, with_inverses: self.inverses }
    }

    fn build(&self, n: Option<usize>) -> Result<GraphDef> {
        if let Some(path) = &self.def_json {
            let text = std::fs::read_to_string(path)?;
            let def: GraphDefJson = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            return Ok(def.build()?);
        }
        let family = self.family.as_deref().expect("clap requires a family without a def-json");
        let n = n.or(self.n).ok_or_else(|| CliError::Usage("--n is required with --family".into()))?;
        Ok(GraphDef::from_family(family, n, &self.params(), self.coset == Some(Coset::Binary))?)
    }
}

#[derive(ValueEnum, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum EngineChoice {
    Auto,
    Hash,
    Bitmask,
}

#[derive(Args, Serialize)]
struct GrowthArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum, default_value = "auto")]
    engine: EngineChoice,
    #[arg(long)]
    max_depth: Option<usize>,
    /// Final-layer states kept in the summary.
    #[arg(long, default_value_t = 16)]
    antipodes: usize,
}

#[derive(Args, Serialize)]
struct SweepArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Inclusive range such as `4..12`.
    #[arg(long, value_parser = parse_range)]
    n_range: (usize, usize),
    /// Maximum degree and maximum period of the fit.
    #[arg(long, num_args = 2, value_names = ["DEG_MAX", "S_MAX"], default_values_t = [3, 6])]
    fit: Vec<usize>,
    /// Also fit each residue class mod this period on its own, without held-out points.
    #[arg(long)]
    period: Option<usize>,
}

#[derive(Args, Serialize)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    directed: bool,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    /// Maximum number of generator tuples evaluated.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Generators per tuple (2 or 3).
    #[arg(long, default_value_t = 2)]
    pairs: usize,
    /// Records kept besides the maximal ones.
    #[arg(long, default_value_t = 100)]
    keep: usize,
}

#[derive(ValueEnum, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Args, Serialize)]
struct PatternArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// DOT file; defaults to `support.dot` in the output directory.
    #[arg(long)]
    dot_out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct PathfindArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Target state, comma separated; defaults to the start state.
    #[arg(long, value_parser = parse_state)]
    target: Option<StateArg>,
    /// Start state; defaults to the graph's start.
    #[arg(long, value_parser = parse_state)]
    start: Option<StateArg>,
    #[arg(long, default_value_t = 1024)]
    beam_width: usize,
    #[arg(long, default_value_t = 1000)]
    max_steps: usize,
    #[arg(long, value_enum, default_value = "hamming")]
    scorer: ScorerArg,
    /// Expected path length; a different length is reported as a relaxed gate.
    #[arg(long)]
    expect_length: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
enum ScorerArg {
    Hamming,
    /// Exact distances from a full BFS table (small spaces only).
    Bfs,
}

fn parse_bytes(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let (digits, shift) = match s.chars().last().map(|c| c.to_ascii_uppercase()) {
        Some('K') => (&s[..s.len() - 1], 10),
        Some('M') => (&s[..s.len() - 1], 20),
        Some('G') => (&s[..s.len() - 1], 30),
        _ => (s, 0),
    };
    let v: u64 = digits.parse().map_err(|e| format!("bad byte count `{s}`: {e}"))?;
    v.checked_shl(shift).filter(|r| r >> shift == v).ok_or_else(|| format!("byte count `{s}` overflows"))
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").or_else(|| s.split_once('-')).ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|e| format!("{b}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

/// A state given on the command line.
#[derive(Clone, Serialize)]
#[serde(transparent)]
struct StateArg(Vec<u8>);

fn parse_state(s: &str) -> std::result::Result<StateArg, String> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<u8>().map_err(|e| format!("`{x}`: {e}")))
        .collect::<std::result::Result<_, _>>()
        .map(StateArg)
}

/// Rough peak bytes of a growth run.
fn memory_estimate(def: &GraphDef, engine: Engine, g: &GrowthResult) -> u64 {
    match (engine, def.codec()) {
        (Engine::Bitmask, Ok(c)) => bitmask_bytes(c.capacity()),
        // a hashed state plus table overhead, twice for the frontier copies
        _ => g.reachable * 2 * (def.state_len() as u64 + 16),
    }
}

fn run_growth(def: &GraphDef, choice: EngineChoice, opts: &BfsOptions) -> Result<(GrowthResult, Engine)> {
    Ok(match choice {
        EngineChoice::Auto => growth(def, opts)?,
        EngineChoice::Hash => (growth_hash(def, opts)?, Engine::Hash),
        EngineChoice::Bitmask => (growth_bitmask(def, &def.codec()?, opts)?, Engine::Bitmask),
    })
}

#[derive(Serialize)]
struct GrowthSummary<'a> {
    name: &'a str,
    engine: Engine,
    directed: bool,
    diameter: usize,
    reachable: u64,
    layer_sizes: &'a [u64],
    antipode_count: u64,
    antipodes: &'a [Vec<u8>],
    truncated: bool,
    stats: Option<StatsSummary>,
}

fn cmd_growth(cli: &Cli, a: &GrowthArgs, run: &mut Run) -> Result<()> {
    let def = a.graph.build(None)?;
    let opts = BfsOptions { max_depth: a.max_depth, memory_budget: cli.memory_budget, antipode_cap: a.antipodes, ..Default::default() };
    let (g, engine) = run_growth(&def, a.engine, &opts)?;
    run.engine = Some(engine);
    run.peak_memory_estimate = memory_estimate(&def, engine, &g);
    run.write("growth.csv", growth_csv(&g).as_bytes())?;
    let summary = GrowthSummary {
        name: &def.name,
        engine,
        directed: def.directed,
        diameter: g.diameter,
        reachable: g.reachable,
        layer_sizes: &g.layer_sizes,
        antipode_count: g.antipode_count,
        antipodes: &g.antipodes,
        truncated: g.truncated,
        stats: describe(&g).ok(),
    };
    run.write_json("summary.json", &summary)?;
    println!("{}: diameter {} over {} states ({engine:?} engine)", def.name, g.diameter, g.reachable);
    Ok(())
}

#[derive(Serialize)]
struct SweepPoint {
    n: usize,
    diameter: Option<usize>,
    reachable: Option<u64>,
    engine: Option<Engine>,
    error: Option<String>,
}

fn fit_json(qp: Option<&QuasiPolynomial>) -> Result<serde_json::Value> {
    let Some(qp) = qp else { return Ok(serde_json::Value::Null) };
    let report: FitReport = qp.to_report()?;
    let text: Vec<String> = (0..qp.s).map(|r| qp.constituent_string(r)).collect();
    Ok(json!({ "report": report, "constituents": text }))
}

fn cmd_sweep(cli: &Cli, a: &SweepArgs, run: &mut Run) -> Result<()> {
    let [deg_max, s_max] = a.fit[..] else { return Err(CliError::Usage("--fit takes DEG_MAX S_MAX".into())) };
    let opts = BfsOptions { memory_budget: cli.memory_budget, antipode_cap: 0, ..Default::default() };
    let mut csv = String::from("n,layer,count\n");
    let mut points = Vec::new();
    for n in a.n_range.0..=a.n_range.1 {
        let result = a.graph.build(Some(n)).and_then(|def| {
            let (g, engine) = run_growth(&def, EngineChoice::Auto, &opts)?;
            run.peak_memory_estimate = run.peak_memory_estimate.max(memory_estimate(&def, engine, &g));
            Ok((g, engine))
        });
        match result {
            Ok((g, engine)) => {
                for (layer, count) in g.layer_sizes.iter().enumerate() {
                    csv.push_str(&format!("{n},{layer},{count}\n"));
                }
                println!("n={n}: diameter {}", g.diameter);
                points.push(SweepPoint { n, diameter: Some(g.diameter), reachable: Some(g.reachable), engine: Some(engine), error: None });
            }
            Err(e) => {
                eprintln!("n={n}: {e}");
                points.push(SweepPoint { n, diameter: None, reachable: None, engine: None, error: Some(e.to_string()) });
            }
        }
    }
    let data: Vec<(i64, i64)> = points.iter().filter_map(|p| Some((p.n as i64, p.diameter? as i64))).collect();
    let fit = quasipoly_fit(&data, s_max, deg_max);
    let classes = a.period.and_then(|s| fit_classes(&data, s, deg_max));
    run.write("growth.csv", csv.as_bytes())?;
    run.write_json("summary.json", &json!({ "points": points }))?;
    let fit_doc = json!({
        "points": data,
        "deg_max": deg_max,
        "s_max": s_max,
        "fit": fit_json(fit.as_ref())?,
        "period": a.period,
        "classes": fit_json(classes.as_ref())?,
    });
    run.write_json("fit.json", &fit_doc)?;
    match &fit {
        Some(qp) => println!("fit: period {}, {} held-out points", qp.s, qp.verified_points),
        None => println!("fit: none within degree {deg_max}, period {s_max}"),
    }
    Ok(())
}

fn cmd_search(a: &SearchArgs, run: &mut Run) -> Result<()> {
    let mode = match a.mode {
        ModeArg::Exhaustive => SearchMode::Exhaustive,
        ModeArg::Random => SearchMode::Random,
    };
    let mut cfg = SearchConfig::new(a.n, a.directed, mode);
    cfg.seed = a.seed;
    cfg.pair_count = a.pairs;
    cfg.keep = a.keep;
    if let Some(b) = a.budget {
        cfg.budget = b;
    }
    let outcome = max_diameter_search(&cfg)?;
    let mut lines = String::new();
    for r in &outcome.records {
        lines.push_str(&serde_json::to_string(r)?);
        lines.push('\n');
    }
    run.write("records.jsonl", lines.as_bytes())?;
    if let Some(top) = outcome.records.first() {
        run.write("support.dot", dot_export(&support_graph(&top.generators)).as_bytes())?;
    }
    let summary = json!({
        "n": a.n,
        "directed": a.directed,
        "max_diameter": outcome.max_diameter(),
        "maximal_records": outcome.maximal().count(),
        "records": outcome.records.len(),
        "evaluated": outcome.evaluated,
        "budget_exhausted": outcome.budget_exhausted,
    });
    run.write_json("summary.json", &summary)?;
    if outcome.budget_exhausted {
        run.notes.push("evaluation budget exhausted before the search space was covered".into());
    }
    println!("n={} directed={}: max diameter {:?} over {} tuples", a.n, a.directed, outcome.max_diameter(), outcome.evaluated);
    Ok(())
}

fn cmd_pattern(a: &PatternArgs, run: &mut Run) -> Result<()> {
    let def = a.graph.build(None)?;
    let gs = def.generator_set.as_ref().ok_or_else(|| CliError::Usage("pattern needs permutation generators".into()))?;
    let sg = support_graph(gs);
    let report = sg.classify();
    let dot = dot_export(&sg);
    match &a.dot_out {
        Some(path) => run.write_at(path, dot.as_bytes())?,
        None => run.write("support.dot", dot.as_bytes())?,
    }
    let summary = json!({
        "name": def.name,
        "edges": sg.edges.len(),
        "pattern": report.tag(),
        "report": report,
        "is_square_with_whiskers": report.is_square_with_whiskers,
    });
    run.write_json("summary.json", &summary)?;
    println!("{}: {} (is_square_with_whiskers: {})", def.name, report.tag(), report.is_square_with_whiskers);
    Ok(())
}

fn cmd_pathfind(a: &PathfindArgs, run: &mut Run) -> Result<()> {
    let mut def = a.graph.build(None)?;
    if let Some(StateArg(start)) = &a.start {
        def.space.validate(start)?;
        def.start = start.clone();
    }
    let target = a.target.as_ref().map_or_else(|| def.start.clone(), |t| t.0.clone());
    def.space.validate(&target)?;
    let scorer: Box<dyn Scorer> = match a.scorer {
        ScorerArg::Hamming => Box::new(Hamming::new(&target)),
        ScorerArg::Bfs => Box::new(BfsTable::new(&def, &target)?),
    };
    let start = def.start.clone();
    let path = beam_search(&def, &start, &target, &BeamOptions::new(a.beam_width, a.max_steps), scorer.as_ref())?;
    let verified = verify_path(&def, &path)?;
    run.write_json("path.json", &path.to_json(&def))?;
    let relaxed = a.expect_length.is_some_and(|l| l != path.len());
    if relaxed {
        run.notes.push(format!("relaxed gate: expected length {}, found {}", a.expect_length.unwrap(), path.len()));
    }
    let summary = json!({
        "name": def.name,
        "length": path.len(),
        "verified": verified,
        "beam_width": a.beam_width,
        "expected_length": a.expect_length,
        "relaxed": relaxed,
    });
    run.write_json("summary.json", &summary)?;
    println!("{}: path of length {} (verified: {verified})", def.name, path.len());
    Ok(())
}

fn dispatch(cli: &Cli, run: &mut Run) -> Result<()> {
    match &cli.command {
        Command::Growth(a) => cmd_growth(cli, a, run),
        Command::Sweep(a) => cmd_sweep(cli, a, run),
        Command::Search(a) => cmd_search(a, run),
        Command::Pattern(a) => cmd_pattern(a, run),
        Command::Pathfind(a) => cmd_pathfind(a, run),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let t = Instant::now();
    let result = Run::new(&cli.out).map_err(CliError::from).and_then(|mut run| {
        dispatch(&cli, &mut run)?;
        let name = match &cli.command {
            Command::Growth(_) => "growth",
            Command::Sweep(_) => "sweep",
            Command::Search(_) => "search",
            Command::Pattern(_) => "pattern",
            Command::Pathfind(_) => "pathfind",
        };
        run.finish(name, serde_json::to_value(&cli)?, rayon::current_num_threads(), t.elapsed().as_secs_f64())?;
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
