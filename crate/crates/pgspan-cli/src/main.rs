use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pgspan::cuts::CutMode;
use pgspan::greedy::EdgeOrder;

use pgspan_cli::commands::{
    cmd_build, cmd_cut, cmd_route_check, cmd_stats, cmd_verify, Algo, BuildArgs, CutArgs,
    CutCommand, RouteCheckArgs, StatsArgs, StrategyArg, VerifyArgs,
};
use pgspan_cli::{exit_code_for, EXIT_INPUT};

/// Spanner construction and verification toolkit.
#[derive(Parser)]
#[command(name = "pgspan", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file (`p <n> <m>` header, `e <u> <v> [w]` lines).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generator spec, e.g. `cycle:4`, `er:512:0.1`, `hypercube:10`.
    #[arg(long)]
    gen: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a spanner, write spanner/certificate/round CSV/report, verify.
    Build {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        t: u32,
        /// seq | par
        #[arg(long, default_value = "par")]
        algo: String,
        /// greedy | lex | single | scripted-fig2 | dimensions
        #[arg(long, default_value = "greedy")]
        strategy: String,
        /// input | shuffle
        #[arg(long, default_value = "input")]
        edge_order: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Intra-round query parallelism.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 256)]
        arboricity_budget: usize,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-verify a spanner (and optionally its certificate) from files.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        spanner: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        t: u32,
    },
    /// Girth, degeneracy and arboricity of a graph.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 256)]
        arboricity_budget: usize,
    },
    /// Run a sweep plan and emit the report CSV.
    Sweep {
        #[arg(long)]
        plan: PathBuf,
        /// Output CSV (overrides the plan's `out`).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Also write a log-log scatter of spanner size against n.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Decide matching routability at given demand, dilation and congestion.
    RouteCheck {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Matching as `u-v,u-v,...`.
        #[arg(long)]
        matching: String,
        /// Demand per matched pair (rational, e.g. `1` or `1/2`).
        #[arg(long)]
        delta: String,
        #[arg(long)]
        t: u32,
        /// Congestion cap (rational).
        #[arg(long)]
        cap: String,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
    },
    /// Moving-cut operations.
    Cut {
        #[command(subcommand)]
        command: CutSub,
    },
}

#[derive(Subcommand)]
enum CutSub {
    /// Apply a cut: lengthen edges (augment) or delete the support (delete).
    Apply {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cut: PathBuf,
        /// augment | delete
        #[arg(long, default_value = "augment")]
        mode: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Demand mass separated by the cut at scale h.
    Sep {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cut: PathBuf,
        #[arg(long)]
        demand: PathBuf,
        #[arg(long)]
        h: u64,
    },
    /// Sparsity against one demand (with --demand) or the (h, s)-length
    /// sparsity over all unit h-length demands (without).
    Sparsity {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cut: PathBuf,
        #[arg(long)]
        demand: Option<PathBuf>,
        #[arg(long)]
        h: u64,
        #[arg(long, default_value_t = 1)]
        s: u64,
    },
    /// Exponential edge-pair demand: checks row normalization and the unit
    /// lift, optionally writing decimal approximations.
    Expdemand {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_edge_order(s: &str) -> Result<EdgeOrder, pgspan::Error> {
    match s {
        "input" => Ok(EdgeOrder::Input),
        "shuffle" => Ok(EdgeOrder::RandomShuffle),
        other => Err(pgspan::Error::InvalidParameter(format!(
            "unknown edge order '{other}' (input|shuffle)"
        ))),
    }
}

fn parse_cut_mode(s: &str) -> Result<CutMode, pgspan::Error> {
    match s {
        "augment" => Ok(CutMode::Augment),
        "delete" => Ok(CutMode::DeleteSupport),
        other => Err(pgspan::Error::InvalidParameter(format!(
            "unknown cut mode '{other}' (augment|delete)"
        ))),
    }
}

fn run() -> Result<i32, pgspan::Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Build {
            input,
            t,
            algo,
            strategy,
            edge_order,
            seed,
            threads,
            arboricity_budget,
            out,
        } => {
            let args = BuildArgs {
                input: input.input,
                gen: input.gen,
                t,
                algo: algo.parse::<Algo>()?,
                strategy: strategy.parse::<StrategyArg>()?,
                edge_order: parse_edge_order(&edge_order)?,
                seed,
                threads,
                arboricity_budget,
                out,
            };
            cmd_build(&args).map(|(_, code)| code)
        }
        Command::Verify { graph, spanner, certificate, t } => {
            cmd_verify(&VerifyArgs { graph, spanner, certificate, t })
        }
        Command::Stats { input, seed, arboricity_budget } => cmd_stats(&StatsArgs {
            input: input.input,
            gen: input.gen,
            seed,
            arboricity_budget,
        }),
        Command::Sweep { plan, out, threads, svg } => {
            let text = std::fs::read_to_string(&plan)?;
            let plan = pgspan_cli::plan::parse_plan(&text)?;
            let out_path = out
                .or_else(|| plan.out.clone().map(PathBuf::from))
                .ok_or_else(|| {
                    pgspan::Error::InvalidParameter(
                        "no output path (set `out =` in the plan or pass --out)".to_string(),
                    )
                })?;
            let file = File::create(&out_path)?;
            let mut writer = BufWriter::new(file);
            let rows = pgspan_cli::sweep::run_sweep(&plan, threads, &mut writer)?;
            drop(writer);
            println!("sweep: {} rows -> {}", rows.len(), out_path.display());
            if let Some(svg_path) = svg {
                std::fs::write(&svg_path, pgspan_cli::svg::scatter_svg(&rows))?;
                println!("plot -> {}", svg_path.display());
            }
            Ok(pgspan_cli::EXIT_OK)
        }
        Command::RouteCheck { input, seed, matching, delta, t, cap, eps } => {
            cmd_route_check(&RouteCheckArgs {
                graph: input.input,
                gen: input.gen,
                seed,
                matching,
                delta,
                t,
                cap,
                eps,
            })
        }
        Command::Cut { command } => {
            let (input, seed, cut, sub) = match command {
                CutSub::Apply { input, seed, cut, mode, out } => (
                    input,
                    seed,
                    Some(cut),
                    CutCommand::Apply { mode: parse_cut_mode(&mode)?, out },
                ),
                CutSub::Sep { input, seed, cut, demand, h } => {
                    (input, seed, Some(cut), CutCommand::Sep { demand, h })
                }
                CutSub::Sparsity { input, seed, cut, demand, h, s } => {
                    (input, seed, Some(cut), CutCommand::Sparsity { demand, h, s })
                }
                CutSub::Expdemand { input, seed, h, s, out } => {
                    (input, seed, None, CutCommand::ExpDemand { h, s, out })
                }
            };
            cmd_cut(&CutArgs {
                graph: input.input,
                gen: input.gen,
                seed,
                cut,
                command: sub,
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            let code = exit_code_for(&err);
            debug_assert!(code == EXIT_INPUT || code == pgspan_cli::EXIT_INTERNAL || code == pgspan_cli::EXIT_VERIFY);
            ExitCode::from(code as u8)
        }
    }
}
