use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use choosekit::acceptance;
use choosekit::amplify::{amplify_params, blowup, expand, AmplifyKind};
use choosekit::bounds::{alpha, classify, composite_chain_holds, xim_bounds, xim_prime_lower, xim_prime_upper};
use choosekit::checker::{
    decide_choosable, has_proper_coloring, independent_transversal, simulate_reserve_coloring, Budget, Engine, ReserveConfig, Verdict,
};
use choosekit::constructions::{construct_blocks, construct_simple, BlockSpec};
use choosekit::indepset::{
    counterexample_graph, fancy_bound, fancy_bound_exact, p_blocked_exact, p_blocked_monte_carlo, product_bound,
    STGraph,
};
use choosekit::model::{ColorSystem, ListInstance, RegimePoint};
use choosekit::sweep::{frontier_cell, frontier_points, FrontierRow};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;

const EXIT_EXHAUSTED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "choosekit", version, about = "List-coloring experiments on complete bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Look for a proper coloring of a list-assignment file, or for an
    /// independent transversal of a color-system file.
    Check {
        #[arg(long = "in", conflicts_with = "system", required_unless_present = "system")]
        input: Option<PathBuf>,
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
    },
    /// Decide choosability of a point by exhaustive search.
    Decide {
        /// Δ_A,Δ_B,k_A,k_B
        #[arg(long)]
        point: RegimePoint,
        /// Where to write the witness when the point is unchoosable.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Build a block list assignment.
    Construct(ConstructArgs),
    /// Amplify a witness file or a parameter point.
    Amplify {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        r: u64,
        #[arg(long = "in", conflicts_with = "point", required_unless_present = "point")]
        input: Option<PathBuf>,
        #[arg(long)]
        point: Option<RegimePoint>,
        /// Confirm the amplified instance has no proper coloring.
        #[arg(long, requires = "input")]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numeric bounds for k_A = k_B = k.
    Bounds {
        #[arg(long)]
        k: u32,
    },
    /// Apply the sufficient conditions to a point.
    Classify {
        #[arg(long)]
        point: RegimePoint,
    },
    /// Probability that a random greedy independent set misses S.
    Pblocked {
        #[arg(long = "in", conflicts_with = "counterexample", required_unless_present = "counterexample")]
        input: Option<PathBuf>,
        #[arg(long)]
        counterexample: bool,
        #[arg(long, conflicts_with = "mc", required_unless_present = "mc")]
        exact: bool,
        /// Monte Carlo trials.
        #[arg(long, requires = "seed")]
        mc: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decide every point of a grid and write CSV.
    Frontier {
        #[arg(long)]
        ka: u64,
        #[arg(long)]
        kb: u64,
        #[arg(long = "maxA", alias = "max-a")]
        max_a: u64,
        #[arg(long = "maxB", alias = "max-b")]
        max_b: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the reserve-and-repair coloring procedure on a file.
    Simulate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Abort threshold; defaults to the one derived from k_A and |B|.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Run the acceptance checks.
    Selftest,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    shape: Shape,
    /// Confirm the result has no proper coloring.
    #[arg(long, global = true)]
    verify: bool,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Shape {
    /// Blocks of sizes a_1..a_r.
    Blocks {
        #[arg(long)]
        ka: usize,
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
    },
    /// r blocks of equal size a.
    Simple {
        #[arg(long)]
        ka: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Backtrack,
    Transversal,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Blowup,
    Expansion,
}

impl From<KindArg> for AmplifyKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Blowup => AmplifyKind::Blowup,
            KindArg::Expansion => AmplifyKind::Expansion,
        }
    }
}

/// Budget from `CHOOSEKIT_BUDGET`, else the library default.
fn budget() -> Result<Budget> {
    match std::env::var("CHOOSEKIT_BUDGET") {
        Ok(v) => Ok(Budget(v.trim().parse().with_context(|| format!("CHOOSEKIT_BUDGET={v:?}"))?)),
        Err(_) => Ok(Budget::DEFAULT),
    }
}

fn read_instance(path: &Path) -> Result<ListInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ListInstance::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn uncolorable(instance: &ListInstance) -> Result<Option<bool>> {
    match has_proper_coloring(instance, Engine::Auto, budget()?) {
        Ok(c) => Ok(Some(!c.colorable())),
        Err(choosekit::checker::CheckError::Exhausted(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { input, system, engine } => {
            if let Some(path) = system {
                let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                let sys = ColorSystem::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
                let found = independent_transversal(&sys)?;
                println!("{}", json!({ "exists": found.is_some(), "transversal": found }));
                return Ok(0);
            }
            let inst = read_instance(&input.expect("clap enforces --in or --system"))?;
            let engine = match engine {
                EngineArg::Backtrack => Engine::Backtrack,
                EngineArg::Transversal => Engine::Transversal,
                EngineArg::Auto => Engine::Auto,
            };
            match has_proper_coloring(&inst, engine, budget()?) {
                Ok(c) => {
                    let v = json!({ "colorable": c.colorable(), "coloring": c.coloring, "nodesExplored": c.nodes });
                    println!("{v}");
                    Ok(0)
                }
                Err(choosekit::checker::CheckError::Exhausted(n)) => {
                    println!("{}", json!({ "tag": "Exhausted", "nodesExplored": n }));
                    Ok(EXIT_EXHAUSTED)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Decide { point, witness } => {
            let d = decide_choosable(point, budget()?)?;
            println!("{}", d.verdict.tag());
            if let (Some(path), Some(w)) = (witness.as_deref(), d.verdict.witness()) {
                emit(Some(path), &w.to_json_pretty())?;
            }
            println!("{}", serde_json::to_string(&d)?);
            Ok(if d.verdict == Verdict::Exhausted { EXIT_EXHAUSTED } else { 0 })
        }
        Command::Construct(args) => {
            let inst = match args.shape {
                Shape::Blocks { ka, a } => construct_blocks(&BlockSpec::new(ka, a)?),
                Shape::Simple { ka, a, r } => construct_simple(ka, a, r)?,
            };
            if args.verify {
                match uncolorable(&inst)? {
                    Some(true) => eprintln!("verified: no proper coloring"),
                    Some(false) => bail!("constructed instance has a proper coloring"),
                    None => {
                        eprintln!("verification exhausted the budget");
                        emit(args.out.as_deref(), &inst.to_json_pretty())?;
                        return Ok(EXIT_EXHAUSTED);
                    }
                }
            }
            emit(args.out.as_deref(), &inst.to_json_pretty())?;
            Ok(0)
        }
        Command::Amplify { kind, r, input, point, verify, out } => {
            if let Some(p) = point {
                let q = amplify_params(p, kind.into(), r)?;
                emit(out.as_deref(), &serde_json::to_string(&q)?)?;
                return Ok(0);
            }
            let inst = read_instance(input.as_deref().expect("clap enforces --in or --point"))?;
            let r = usize::try_from(r)?;
            let amplified = match kind {
                KindArg::Blowup => blowup(&inst, r)?,
                KindArg::Expansion => expand(&inst, r)?,
            };
            let mut code = 0;
            if verify {
                match uncolorable(&amplified)? {
                    Some(true) => eprintln!("verified: no proper coloring"),
                    Some(false) => bail!("amplified instance has a proper coloring"),
                    None => {
                        eprintln!("verification exhausted the budget");
                        code = EXIT_EXHAUSTED;
                    }
                }
            }
            emit(out.as_deref(), &amplified.to_json_pretty())?;
            Ok(code)
        }
        Command::Bounds { k } => {
            let a = alpha(k);
            let x = xim_bounds(k);
            println!("k\t{k}");
            println!("alpha\t{:.12}\tu*={:.12}", a.alpha, a.u_star);
            println!("xi_m lower\t{:.12}\t{}", x.lo, x.lo_source);
            println!("xi_m upper\t{:.12}\t{}", x.hi, x.hi_source);
            println!("xi'_m lower\t{:.12}", xim_prime_lower(k));
            println!("xi'_m upper\t{:.6e}", xim_prime_upper(k));
            println!("composite chain\t{}", composite_chain_holds(k));
            Ok(0)
        }
        Command::Classify { point } => {
            let r = classify(point);
            println!("{:?}\t{}\txi={:.12}", r.verdict, r.rule.name(), r.xi);
            Ok(0)
        }
        Command::Pblocked { input, counterexample, exact, mc, seed } => {
            let graph = if counterexample {
                counterexample_graph()
            } else {
                let path = input.expect("clap enforces --in or --counterexample");
                let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                STGraph::from_json(&text)?
            };
            if exact {
                let p = p_blocked_exact(&graph)?;
                let value = p.to_f64().unwrap_or(f64::NAN);
                println!("exact\t{p}\t{value:.12}");
                if !graph.edges.is_empty() {
                    let bound = fancy_bound(&graph)?;
                    let bound_text = match fancy_bound_exact(&graph)? {
                        Some(b) => format!("{b}"),
                        None => format!("{bound:.12}"),
                    };
                    let product = product_bound(&graph);
                    let rel = |x: f64| if value < x { "<" } else if value > x { ">" } else { "=" };
                    println!("bound\t{bound_text}\t{bound:.12}\texact {} bound", rel(bound));
                    println!("product\t{product:.12}\texact {} product", rel(product));
                }
            } else {
                let trials = mc.expect("clap enforces --exact or --mc");
                let est = p_blocked_monte_carlo(&graph, trials, seed.expect("clap enforces --seed"))?;
                println!("{}", serde_json::to_string(&est)?);
            }
            Ok(0)
        }
        Command::Frontier { ka, kb, max_a, max_b, out } => {
            let budget = budget()?;
            let mut rows: Vec<FrontierRow> = frontier_points(ka, kb, max_a, max_b)
                .into_par_iter()
                .map(|p| frontier_cell(p, budget))
                .collect::<Result<_, _>>()?;
            rows.sort_by_key(|r| (r.delta_a, r.delta_b));
            let sink: Box<dyn Write> = match &out {
                Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
                None => Box::new(std::io::stdout().lock()),
            };
            let mut w = csv::Writer::from_writer(sink);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
            Ok(if rows.iter().any(|r| r.verdict == "Exhausted") { EXIT_EXHAUSTED } else { 0 })
        }
        Command::Simulate { input, p, trials, seed, epsilon, threshold } => {
            let inst = read_instance(&input)?;
            let cfg = ReserveConfig { p, epsilon, abort_threshold: threshold };
            let tally = simulate_reserve_coloring(&inst, cfg, trials, seed)?;
            let mut v = serde_json::to_value(tally)?;
            v["successRate"] = json!(tally.success_rate());
            println!("{v}");
            Ok(0)
        }
        Command::Selftest => {
            let mut failed = 0;
            for c in acceptance::CRITERIA {
                let report = c();
                println!("{report}");
                failed += usize::from(!report.passed);
            }
            println!("{} of {} criteria passed", acceptance::CRITERIA.len() - failed, acceptance::CRITERIA.len());
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
