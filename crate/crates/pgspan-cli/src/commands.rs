//! build / verify / stats / route-check / cut subcommands.

use std::path::{Path, PathBuf};

use num_rational::Rational64;
use pgspan::analysis::{self, ArboricityBudget, SpannerCheck};
use pgspan::cuts::{self, CutMode, CutSparsity, SparsityWrtDemand};
use pgspan::error::{Error, Result};
use pgspan::generate::{self, Family, GeneratorSpec};
use pgspan::graph::VertexId;
use pgspan::greedy::{self, EdgeOrder, GreedyConfig, MatchingStrategy, SpannerResult};
use pgspan::io;
use pgspan::pg::verify_pg_sequence;
use pgspan::routing::{self, RouteOutcome, RouteParams};
use pgspan::RatGraph;

use crate::{EXIT_OK, EXIT_VERIFY};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Seq,
    Par,
}

impl std::str::FromStr for Algo {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seq" => Ok(Algo::Seq),
            "par" => Ok(Algo::Par),
            other => Err(Error::param(format!("unknown algorithm '{other}' (seq|par)"))),
        }
    }
}

/// Named strategies accepted on the command line. The scripted ones are
/// bound to a generator family (alternating rounds on even cycles, dimension
/// matchings on hypercubes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyArg {
    Greedy,
    Lex,
    Single,
    ScriptedFig2,
    Dimensions,
}

impl std::str::FromStr for StrategyArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(StrategyArg::Greedy),
            "lex" => Ok(StrategyArg::Lex),
            "single" => Ok(StrategyArg::Single),
            "scripted-fig2" => Ok(StrategyArg::ScriptedFig2),
            "dimensions" => Ok(StrategyArg::Dimensions),
            other => Err(Error::param(format!(
                "unknown strategy '{other}' (greedy|lex|single|scripted-fig2|dimensions)"
            ))),
        }
    }
}

impl StrategyArg {
    pub fn name(&self) -> &'static str {
        match self {
            StrategyArg::Greedy => "greedy",
            StrategyArg::Lex => "lex",
            StrategyArg::Single => "single",
            StrategyArg::ScriptedFig2 => "scripted-fig2",
            StrategyArg::Dimensions => "dimensions",
        }
    }

    fn script_for(&self, family: Option<&Family>) -> Result<Option<Vec<Vec<(VertexId, VertexId)>>>> {
        match self {
            StrategyArg::ScriptedFig2 => match family {
                Some(Family::Cycle { n }) => Ok(Some(generate::cycle_alternating_rounds(*n)?)),
                _ => Err(Error::param(
                    "scripted-fig2 needs --gen cycle:<even n>".to_string(),
                )),
            },
            StrategyArg::Dimensions => match family {
                Some(Family::Hypercube { d }) => {
                    Ok(Some(generate::hypercube_dimension_matchings(*d)?))
                }
                _ => Err(Error::param("dimensions needs --gen hypercube:<d>".to_string())),
            },
            _ => Ok(None),
        }
    }

    fn plain(&self) -> MatchingStrategy {
        match self {
            StrategyArg::Greedy => MatchingStrategy::GreedyMaximal,
            StrategyArg::Lex => MatchingStrategy::LexicographicMaximal,
            StrategyArg::Single => MatchingStrategy::SingleEdge,
            StrategyArg::ScriptedFig2 | StrategyArg::Dimensions => unreachable!("scripted"),
        }
    }
}

/// Input resolution: a file path or a generator spec.
pub fn load_graph(
    input: Option<&Path>,
    gen: Option<&str>,
    seed: u64,
) -> Result<(RatGraph, Option<Family>, String)> {
    match (input, gen) {
        (Some(path), None) => Ok((
            io::read_graph_path(path)?,
            None,
            path.display().to_string(),
        )),
        (None, Some(spec)) => {
            let family: Family = spec.parse()?;
            let g = GeneratorSpec::new(family.clone(), seed).build()?;
            Ok((g, Some(family.clone()), family.to_string()))
        }
        _ => Err(Error::param("provide exactly one of --input or --gen".to_string())),
    }
}

pub struct BuildArgs {
    pub input: Option<PathBuf>,
    pub gen: Option<String>,
    pub t: u32,
    pub algo: Algo,
    pub strategy: StrategyArg,
    pub edge_order: EdgeOrder,
    pub seed: u64,
    pub threads: usize,
    pub arboricity_budget: usize,
    pub out: PathBuf,
}

pub struct BuildOutcome {
    pub report: pgspan::io::ReportRow,
    pub verified: bool,
}

/// Runs one construction, writes spanner + certificate + per-round CSV +
/// report row under `out`, and self-verifies (stretch and certificate).
pub fn cmd_build(args: &BuildArgs) -> Result<(BuildOutcome, i32)> {
    let (graph, family, _) = load_graph(args.input.as_deref(), args.gen.as_deref(), args.seed)?;
    let started = std::time::Instant::now();
    let result = run_construction(
        &graph,
        family.as_ref(),
        args.t,
        args.algo,
        &args.strategy,
        args.edge_order.clone(),
        args.seed,
        args.threads,
    )?;
    let millis = started.elapsed().as_millis();

    std::fs::create_dir_all(&args.out)?;
    io::write_graph_path(&result.spanner, args.out.join("spanner.el"))?;
    io::write_certificate_path(&result.certificate, args.out.join("certificate.txt"))?;
    write_round_csv(&result, &args.out.join("rounds.csv"))?;

    let verified = self_verify(&graph, &result, args.t)?;
    let report = report_row(
        &graph,
        &result,
        args.t,
        algo_name(args.algo),
        args.strategy.name(),
        args.seed,
        millis,
        ArboricityBudget { max_n: args.arboricity_budget },
    )?;
    io::write_report_csv_path(std::slice::from_ref(&report), args.out.join("report.csv"))?;

    println!(
        "build: n={} m={} -> spanner {} edges, {} rounds, girth {}, verified={}",
        report.n,
        report.m_input,
        report.m_spanner,
        report.rounds,
        report.girth.map_or("inf".to_string(), |g| g.to_string()),
        verified
    );
    let code = if verified { EXIT_OK } else { EXIT_VERIFY };
    Ok((BuildOutcome { report, verified }, code))
}

pub fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Seq => "seq",
        Algo::Par => "par",
    }
}

#[allow(clippy::too_many_arguments)]
pub fn run_construction(
    graph: &RatGraph,
    family: Option<&Family>,
    t: u32,
    algo: Algo,
    strategy: &StrategyArg,
    edge_order: EdgeOrder,
    seed: u64,
    threads: usize,
) -> Result<SpannerResult<Rational64>> {
    if let Some(script) = strategy.script_for(family)? {
        if algo == Algo::Seq {
            return Err(Error::param("scripted strategies require --algo par".to_string()));
        }
        return greedy::scripted_parallel_greedy(graph, t, &script);
    }
    let cfg = GreedyConfig::new(t, seed)?
        .with_strategy(strategy.plain())
        .with_edge_order(edge_order)
        .with_threads(threads);
    match algo {
        Algo::Seq => greedy::sequential_greedy(graph, &cfg),
        Algo::Par => greedy::parallel_greedy(graph, &cfg),
    }
}

fn write_round_csv(result: &SpannerResult<Rational64>, path: &Path) -> Result<()> {
    let mut out = String::from("round,matching_size,cumulative_edges,millis\n");
    for s in &result.round_stats {
        out.push_str(&format!(
            "{},{},{},{}\n",
            s.round, s.matching_size, s.cumulative_edges, s.millis
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}

fn self_verify(graph: &RatGraph, result: &SpannerResult<Rational64>, t: u32) -> Result<bool> {
    let stretch_ok = analysis::verify_spanner(graph, &result.spanner, t)?.is_valid();
    let cert_ok =
        verify_pg_sequence(graph.vertex_count(), &result.certificate, t.max(2))?.is_none();
    Ok(stretch_ok && cert_ok)
}

#[allow(clippy::too_many_arguments)]
pub fn report_row(
    graph: &RatGraph,
    result: &SpannerResult<Rational64>,
    t: u32,
    algorithm: &str,
    strategy: &str,
    seed: u64,
    millis: u128,
    budget: ArboricityBudget,
) -> Result<pgspan::io::ReportRow> {
    let report = analysis::build_report(graph, &result.spanner, result.rounds(), t, budget)?;
    Ok(pgspan::io::ReportRow {
        n: report.n,
        m_input: report.m_input,
        t,
        algorithm: algorithm.to_string(),
        strategy: strategy.to_string(),
        seed,
        m_spanner: report.m_spanner,
        rounds: report.rounds,
        girth: report.girth,
        degeneracy: report.degeneracy,
        arboricity: report.arboricity_exact.unwrap_or(report.arboricity_lower),
        arboricity_exact: report.arboricity_exact.is_some(),
        max_stretch: report.max_edge_stretch,
        millis,
    })
}

pub struct VerifyArgs {
    pub graph: PathBuf,
    pub spanner: PathBuf,
    pub certificate: Option<PathBuf>,
    pub t: u32,
}

/// Re-checks stretch (and the certificate, when given) from files; exit 1
/// names the first violation.
pub fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let graph = io::read_graph_path(&args.graph)?;
    let spanner = io::read_graph_path(&args.spanner)?;
    let mut ok = true;
    match analysis::verify_spanner(&graph, &spanner, args.t)? {
        SpannerCheck::Valid { max_stretch } => {
            println!("stretch: ok (max {max_stretch})");
        }
        SpannerCheck::Invalid { edge } => {
            ok = false;
            println!("stretch: VIOLATION at edge {}-{} (beyond t = {})", edge.0, edge.1, args.t);
        }
    }
    if let Some(cert_path) = &args.certificate {
        let mut cert = io::read_certificate_path(cert_path)?;
        cert.vertex_count = cert.vertex_count.max(graph.vertex_count());
        // The certificate must cover exactly the spanner's edges.
        let cert_edges: std::collections::BTreeSet<_> = cert.union_edges().into_iter().collect();
        if cert_edges != spanner.edge_pairs() {
            ok = false;
            println!("certificate: edge set differs from the spanner");
        }
        match verify_pg_sequence(graph.vertex_count(), &cert, args.t.max(2))? {
            None => println!("certificate: ok ({} rounds)", cert.rounds.len()),
            Some(v) => {
                ok = false;
                println!("certificate: VIOLATION {v}");
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

pub struct StatsArgs {
    pub input: Option<PathBuf>,
    pub gen: Option<String>,
    pub seed: u64,
    pub arboricity_budget: usize,
}

pub fn cmd_stats(args: &StatsArgs) -> Result<i32> {
    let (graph, _, name) = load_graph(args.input.as_deref(), args.gen.as_deref(), args.seed)?;
    let girth = analysis::girth(&graph)?;
    let (degen, _) = analysis::degeneracy(&graph);
    let arb = analysis::arboricity(&graph, ArboricityBudget { max_n: args.arboricity_budget });
    println!("graph = {name}");
    println!("n = {}", graph.vertex_count());
    println!("m = {}", graph.edge_count());
    println!("girth = {}", girth.map_or("inf".to_string(), |g| g.to_string()));
    println!("degeneracy = {degen}");
    match arb.exact {
        Some(a) => println!("arboricity = {a}"),
        None => println!("arboricity >= {} (exact skipped, n over budget)", arb.lower),
    }
    Ok(EXIT_OK)
}

pub struct RouteCheckArgs {
    pub graph: Option<PathBuf>,
    pub gen: Option<String>,
    pub seed: u64,
    pub matching: String,
    pub delta: String,
    pub t: u32,
    pub cap: String,
    pub eps: f64,
}

/// Parses `u-v,u-v,...` into vertex pairs.
pub fn parse_matching(s: &str) -> Result<Vec<(VertexId, VertexId)>> {
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let (u, v) = tok
                .split_once('-')
                .ok_or_else(|| Error::param(format!("invalid matching edge '{tok}'")))?;
            let u = u.trim().parse().map_err(|_| Error::param(format!("invalid vertex '{u}'")))?;
            let v = v.trim().parse().map_err(|_| Error::param(format!("invalid vertex '{v}'")))?;
            Ok((u, v))
        })
        .collect()
}

pub fn cmd_route_check(args: &RouteCheckArgs) -> Result<i32> {
    let (graph, _, _) = load_graph(args.graph.as_deref(), args.gen.as_deref(), args.seed)?;
    let matching = parse_matching(&args.matching)?;
    let delta = io::parse_rational_str(&args.delta)?;
    let cap = io::parse_rational_str(&args.cap)?;
    let params = RouteParams::new(delta, args.t, cap).with_eps(args.eps);
    match routing::route_matching(&graph, &matching, &params)? {
        RouteOutcome::Feasible(flow) => {
            println!(
                "feasible: {} flow paths, congestion {}, dilation {}",
                flow.paths().len(),
                flow.max_congestion(),
                flow.dilation_hops()
            );
            print!("{}", pgspan::io::write_flow(&to_rat_flow(&flow)?));
            Ok(EXIT_OK)
        }
        RouteOutcome::Infeasible => {
            println!("infeasible");
            Ok(EXIT_VERIFY)
        }
    }
}

/// Narrows a BigRational flow for serialization; routing values always fit
/// after the exact recheck at toy scale.
fn to_rat_flow(flow: &pgspan::BigFlow) -> Result<pgspan::cuts::Flow<Rational64>> {
    use num_traits::ToPrimitive;
    let mut out = pgspan::cuts::Flow::new();
    for (path, value) in flow.paths() {
        let numer = value.numer().to_i64();
        let denom = value.denom().to_i64();
        match (numer, denom) {
            (Some(n), Some(d)) => out.add_path(path.clone(), Rational64::new(n, d))?,
            _ => {
                // Reduce precision but stay deterministic: round to 1e-9.
                let approx = value.to_f64().unwrap_or(0.0);
                let scaled = (approx * 1e9).round() as i64;
                if scaled > 0 {
                    out.add_path(path.clone(), Rational64::new(scaled, 1_000_000_000))?;
                }
            }
        }
    }
    Ok(out)
}

pub enum CutCommand {
    Apply { mode: CutMode, out: Option<PathBuf> },
    Sep { demand: PathBuf, h: u64 },
    Sparsity { demand: Option<PathBuf>, h: u64, s: u64 },
    ExpDemand { h: u64, s: u64, out: Option<PathBuf> },
}

pub struct CutArgs {
    pub graph: Option<PathBuf>,
    pub gen: Option<String>,
    pub seed: u64,
    pub cut: Option<PathBuf>,
    pub command: CutCommand,
}

pub fn cmd_cut(args: &CutArgs) -> Result<i32> {
    let (graph, _, _) = load_graph(args.graph.as_deref(), args.gen.as_deref(), args.seed)?;
    let read_cut = |path: &Option<PathBuf>| -> Result<cuts::MovingCut> {
        let path = path
            .as_ref()
            .ok_or_else(|| Error::param("this subcommand needs --cut".to_string()))?;
        io::read_cut(&std::fs::read_to_string(path)?, &graph)
    };
    match &args.command {
        CutCommand::Apply { mode, out } => {
            let cut = read_cut(&args.cut)?;
            let applied = cuts::apply_cut(&graph, &cut, *mode)?;
            let text = io::write_graph(&applied);
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            println!("# |C| = {}", cut.size());
            Ok(EXIT_OK)
        }
        CutCommand::Sep { demand, h } => {
            let cut = read_cut(&args.cut)?;
            let demand = io::read_demand(&std::fs::read_to_string(demand)?, graph.vertex_count())?;
            let sep = cuts::separated(&graph, &cut, &demand, *h)?;
            println!("separated = {sep}");
            Ok(EXIT_OK)
        }
        CutCommand::Sparsity { demand, h, s } => {
            let cut = read_cut(&args.cut)?;
            match demand {
                Some(demand) => {
                    let demand =
                        io::read_demand(&std::fs::read_to_string(demand)?, graph.vertex_count())?;
                    match cuts::sparsity_wrt_demand(&graph, &cut, &demand, *h)? {
                        SparsityWrtDemand::Finite(v) => println!("sparsity = {v}"),
                        SparsityWrtDemand::Undefined => {
                            println!("sparsity = undefined (nothing separated)")
                        }
                    }
                }
                None => match cuts::cut_sparsity(&graph, &cut, *h, *s)? {
                    CutSparsity::Finite { sparsity, max_separated } => {
                        println!("sparsity = {sparsity} (max separated unit demand {max_separated})")
                    }
                    CutSparsity::Expanding => println!("sparsity = inf (expanding at this cut)"),
                },
            }
            Ok(EXIT_OK)
        }
        CutCommand::ExpDemand { h, s, out } => {
            let ed = pgspan::expdemand::exponential_demand(&graph, *h, *s)?;
            let rows_ok = ed.rows_sum_to_one();
            let unit_ok = ed.lift_is_unit(&graph);
            println!("edge pairs with positive demand = {}", count_positive(&ed));
            println!("rows sum to one = {rows_ok}");
            println!("lifted demand unit = {unit_ok}");
            if let Some(path) = out {
                let mut text = String::from(
                    "# decimal approximations of exact radical values (18 digits)\n",
                );
                for (&(u, v), val) in ed.vertex_demand.iter() {
                    use pgspan::Scalar;
                    text.push_str(&format!("d {u} {v} {:.18}\n", val.to_f64_lossy()));
                }
                std::fs::write(path, text)?;
            }
            Ok(if rows_ok && unit_ok { EXIT_OK } else { EXIT_INTERNAL_AS_FAILURE })
        }
    }
}

// Failed internal postcondition checks surface as internal failures.
const EXIT_INTERNAL_AS_FAILURE: i32 = crate::EXIT_INTERNAL;

fn count_positive(ed: &pgspan::expdemand::ExponentialDemand) -> usize {
    use num_traits::Zero;
    ed.edge_demand
        .iter()
        .flat_map(|row| row.iter())
        .filter(|v| !v.is_zero())
        .count()
}
