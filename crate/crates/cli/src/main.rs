use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use eqlc_core::cache::{DiskCache, CACHE_DIR_ENV};
use eqlc_core::conf::oracle::DEFAULT_BUDGET;
use eqlc_core::conf::Family;
use eqlc_core::engine::{Engine, EngineConfig, TierPolicy};
use eqlc_core::fi_sharp::{GeneratorModule, DEFAULT_WINDOW};
use eqlc_core::verifier::{
    check_graded_selc, reproduce, verify_degree, ExampleId, Orientation, QuadrupleReport, Verdict,
};

/// Largest degree sum reachable without `--long-run`.
const DESK_MAX_SUM: usize = 10;
/// Largest degree sum accepted at all.
const LONG_RUN_MAX_SUM: usize = 19;

#[derive(Parser, Debug)]
#[command(name = "eqlc", version, about = "Exact FI♯ containment checks for configuration-space cohomology")]
struct Cli {
    /// Cache directory for character tables and intermediate modules.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Character source for configuration-space cohomology.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_tier)]
    tier: TierPolicy,

    /// Largest basis the straightening oracle accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Degrees checked past each vanishing bound.
    #[arg(long, global = true, default_value_t = DEFAULT_WINDOW)]
    window: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

fn parse_tier(s: &str) -> Result<TierPolicy, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: eqlc_core::conf::ConfError| e.to_string())
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected i,j")?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table of S_n.
    Chartab {
        #[arg(long)]
        n: usize,
    },
    /// Decomposition of A^i_n or C^i_n.
    Conf {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        points: usize,
    },
    /// Generators H₀ of A^i or C^i.
    Generators {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        degree: usize,
    },
    /// Generators H₀ of a tensor product F^i ⊗ F^j.
    H0 {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
    },
    /// FI♯ containment for every quadruple of the given degree sums.
    Verify(VerifyArgs),
    /// Containment of tensor products at a single number of points.
    Selc {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        degree_sum: usize,
        #[arg(long)]
        points: usize,
    },
    /// Recompute a worked example and compare it with reference data.
    Reproduce {
        #[arg(long)]
        example: ExampleId,
    },
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("sum").required(true).args(["degree_sum", "max_sum"])))]
struct VerifyArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// A single degree sum m.
    #[arg(long)]
    degree_sum: Option<usize>,
    /// Every degree sum from 4 through M.
    #[arg(long)]
    max_sum: Option<usize>,
    /// Allow degree sums above 10; requires a cache directory for checkpoints.
    #[arg(long)]
    long_run: bool,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Check the reverse inclusion instead (diagnostic).
    #[arg(long)]
    swapped: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn engine(cli: &Cli) -> Engine {
    let config = EngineConfig {
        tier: cli.tier,
        budget: cli.budget,
        window: cli.window,
        ..EngineConfig::default()
    };
    Engine::new(config, cli.cache_dir.as_ref().map(DiskCache::new))
}

fn emit(format: Format, text: impl FnOnce() -> String, structured: impl FnOnce() -> serde_json::Value) {
    match format {
        Format::Text => print!("{}", text()),
        Format::Structured => println!("{}", structured()),
    }
}

fn support_json(gens: &GeneratorModule) -> serde_json::Value {
    gens.support()
        .map(|(n, d)| (n.to_string(), json!(d.to_string())))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

/// Returns whether every check passed.
fn run(cli: Cli) -> Result<bool> {
    let format = cli.format;
    match &cli.command {
        Command::Chartab { n } => {
            let engine = engine(&cli);
            let table = engine.store().table(*n)?;
            emit(
                format,
                || table.to_cache_text(),
                || {
                    let rows: Vec<_> = table
                        .labels()
                        .iter()
                        .zip(table.rows())
                        .map(|(l, r)| json!({"partition": l, "values": r.iter().map(ToString::to_string).collect::<Vec<_>>()}))
                        .collect();
                    json!({"n": n, "classes": table.labels(), "rows": rows})
                },
            );
            Ok(true)
        }
        Command::Conf { family, degree, points } => {
            let engine = engine(&cli);
            let (rep, tier) = engine.conf_rep(*family, *degree, *points)?;
            emit(
                format,
                || format!("{family}^{degree}_{points} = {rep}  (dim {}, tier {tier})\n", rep.dimension()),
                || {
                    json!({"family": family, "degree": degree, "points": points,
                           "decomposition": rep.to_string(), "dimension": rep.dimension().to_string(), "tier": tier})
                },
            );
            Ok(true)
        }
        Command::Generators { family, degree } => {
            let engine = engine(&cli);
            let (gens, tier) = engine.conf_generators(*family, *degree)?;
            emit(
                format,
                || format!("{}tier={tier}\n", gens.to_text()),
                || json!({"family": family, "degree": degree, "support": support_json(&gens), "tier": tier}),
            );
            Ok(true)
        }
        Command::H0 { family, pair } => {
            let engine = engine(&cli);
            let (gens, tier) = engine.pair_h0(*family, pair.0, pair.1)?;
            let bound = Engine::pair_bound(pair.0, pair.1);
            emit(
                format,
                || format!("{}bound={bound}\ntier={tier}\n", gens.to_text()),
                || {
                    json!({"family": family, "pair": [pair.0, pair.1], "support": support_json(&gens),
                           "bound": bound, "tier": tier})
                },
            );
            Ok(true)
        }
        Command::Verify(args) => run_verify(&cli, args),
        Command::Selc {
            family,
            degree_sum,
            points,
        } => {
            let engine = engine(&cli);
            let report = check_graded_selc(&engine, *family, *degree_sum, *points)?;
            match format {
                Format::Text => {
                    for c in &report.checks {
                        print!("{family} m={degree_sum} n={points} {} {}", c.quadruple, c.verdict);
                        if let Some(w) = &c.witness {
                            print!(" witness {} {} > {}", w.partition, w.small, w.big);
                        }
                        println!();
                    }
                    if report.checks.is_empty() {
                        println!("{family} m={degree_sum} n={points} no quadruples (vacuously contained)");
                    }
                }
                Format::Structured => println!("{}", serde_json::to_string(&report)?),
            }
            Ok(report.all_contained())
        }
        Command::Reproduce { example } => {
            let engine = engine(&cli);
            let report = reproduce(&engine, *example)?;
            match format {
                Format::Text => print!("{}", report.render()),
                Format::Structured => {
                    let mut v = serde_json::to_value(&report)?;
                    v["passed"] = json!(report.passed());
                    println!("{v}");
                }
            }
            Ok(report.passed())
        }
    }
}

fn degree_sums(cli: &Cli, args: &VerifyArgs) -> Result<Vec<usize>> {
    let sums: Vec<usize> = match (args.degree_sum, args.max_sum) {
        (Some(m), None) => vec![m],
        (None, Some(top)) => (4..=top).collect(),
        _ => bail!("give exactly one of --degree-sum and --max-sum"),
    };
    let top = sums.iter().copied().max().unwrap_or(0);
    if top > LONG_RUN_MAX_SUM {
        bail!("degree sums above {LONG_RUN_MAX_SUM} are not supported");
    }
    if top > DESK_MAX_SUM {
        if !args.long_run {
            bail!("degree sum {top} exceeds {DESK_MAX_SUM}; pass --long-run to proceed");
        }
        if cli.cache_dir.is_none() {
            bail!("--long-run needs --cache-dir (or {CACHE_DIR_ENV}) for checkpoints");
        }
    }
    Ok(sums)
}

fn print_report(q: &QuadrupleReport) {
    let tier = q.tier.map_or("-".to_string(), |t| t.to_string());
    let direction = if q.swapped { " (swapped)" } else { "" };
    print!(
        "{} m={} {}{direction} {} bound={} tier={tier} {}ms",
        q.family, q.m, q.quadruple, q.verdict, q.bound, q.millis
    );
    if let Some(w) = &q.witness {
        print!(" witness n={} {} ({} > {})", w.degree, w.partition, w.small, w.big);
    }
    if let Some(e) = &q.error {
        print!(" error: {e}");
    }
    println!();
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<bool> {
    let sums = degree_sums(cli, args)?;
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let engine = engine(cli);
    let orientation = if args.swapped {
        Orientation::Swapped
    } else {
        Orientation::Normal
    };
    let mut all = true;
    for m in sums {
        let report = verify_degree(&engine, args.family, m, orientation);
        if report.quadruples.is_empty() && cli.format == Format::Text {
            println!("{} m={m} no quadruples (vacuously contained)", args.family);
        }
        for q in &report.quadruples {
            match cli.format {
                Format::Text => print_report(q),
                Format::Structured => println!("{}", serde_json::to_string(q)?),
            }
        }
        all &= report.quadruples.iter().all(|q| q.verdict == Verdict::Contained);
    }
    Ok(all)
}
