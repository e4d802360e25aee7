use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use vulnkit::{generate, Weight};
use vulnkit_cli::bench::{run_bench, BenchConfig, BenchSummary};
use vulnkit_cli::construct::{generate as build, Construction, SourceArgs};
use vulnkit_cli::solve::{self, oracle_from_env, parse_id_list, resolve_budget};
use vulnkit_cli::{emit, parse, Algorithm, CliError, Instance, ParseError, Problem};

/// Exact solvers for weighted vertex integrity and weighted component
/// order connectivity.
#[derive(Parser)]
#[command(name = "vulnkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance with the chosen algorithm.
    Solve(SolveArgs),
    /// Apply the kernelization rules and write the kernel as VGRAPH.
    Kernelize(KernelizeArgs),
    /// Generate an instance from one of the hardness constructions.
    Gen(GenArgs),
    /// Check a deletion set against an instance.
    Verify(VerifyArgs),
    /// Cross-check all algorithms on a seeded random corpus.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    /// Integrity bound (vi, wvi).
    #[arg(short = 'p')]
    p: Option<Weight>,
    /// Deletion budget (coc, wcoc).
    #[arg(short = 'k')]
    k: Option<Weight>,
    /// Component weight bound (coc, wcoc).
    #[arg(short = 'l')]
    l: Option<Weight>,
    /// VGRAPH file; standard input when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
    algo: Algorithm,
    /// Report the deletion set (1-based ids).
    #[arg(long)]
    witness: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct KernelizeArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Output file; standard output when omitted.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Deletion set as 1-based ids separated by commas or spaces.
    #[arg(long, allow_hyphen_values = true)]
    witness: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    construction: Construction,
    /// Source graph as VGRAPH.
    #[arg(long, conflicts_with = "random")]
    input: Option<PathBuf>,
    /// Use a random source graph on this many vertices instead.
    #[arg(long)]
    random: Option<usize>,
    /// Edge probability of the random source graph.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Clique size, or biclique side size for bcbs-cobipartite.
    #[arg(short = 'k')]
    k: Option<usize>,
    /// Comma-separated positive integers for partition-complete.
    #[arg(long)]
    values: Option<String>,
    /// One side of the bipartition for bcbs-cobipartite (1-based ids);
    /// computed by two-colouring when omitted.
    #[arg(long)]
    part_a: Option<String>,
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long, default_value_t = 4)]
    max_weight: Weight,
    /// Restrict the corpus to one problem; alternates wvi and wcoc otherwise.
    #[arg(long, value_enum)]
    problem: Option<Problem>,
    /// One JSON object per line.
    #[arg(long)]
    json: bool,
}

fn read_text(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
        }
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("cannot read standard input")?;
            Ok(text)
        }
    }
}

fn load(args: &InstanceArgs) -> Result<Instance> {
    let text = read_text(args.input.as_ref())?;
    let instance = parse(&text).map_err(CliError::from)?;
    Ok(instance)
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn budget(args: &InstanceArgs, instance: &Instance) -> Result<solve::Budget> {
    Ok(resolve_budget(args.problem, args.p, args.k, args.l, instance.params)?)
}

fn run_solve(args: SolveArgs) -> Result<ExitCode> {
    let oracle = oracle_from_env()?;
    let instance = load(&args.instance)?;
    let budget = budget(&args.instance, &instance)?;
    let result = solve::solve(&instance, args.instance.problem, args.algo, budget, &oracle, args.witness)?;
    if args.json {
        println!("{}", serde_json::to_string(&result)?);
    } else {
        println!("{}", result.to_text());
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    let instance = load(&args.instance)?;
    let budget = budget(&args.instance, &instance)?;
    let witness = parse_id_list(&args.witness)?;
    let (result, reason) = solve::verify(&instance, args.instance.problem, budget, &witness)?;
    if args.json {
        println!("{}", serde_json::to_string(&result)?);
    } else {
        match &reason {
            None => {
                let objective = result.objective.expect("accepted certificates are evaluated");
                println!("accepted");
                if args.instance.problem.is_integrity() {
                    println!("objective {}", objective.w_x + objective.wcc);
                }
                println!("wX {}", objective.w_x);
                println!("wcc {}", objective.wcc);
            }
            Some(why) => println!("rejected: {why}"),
        }
    }
    Ok(if reason.is_none() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_kernelize(args: KernelizeArgs) -> Result<ExitCode> {
    let instance = load(&args.instance)?;
    let budget = budget(&args.instance, &instance)?;
    let report = solve::kernelize(&instance, args.instance.problem, budget)?;
    let text = match &report.kernel {
        Some(kernel) => emit(kernel, &report.summary),
        None => report.summary.iter().map(|l| format!("# {l}\n")).collect(),
    };
    write_out(args.output.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_gen(args: GenArgs) -> Result<ExitCode> {
    let graph = match (&args.input, args.random) {
        (Some(path), _) => Some(parse(&read_text(Some(path))?).map_err(CliError::from)?.graph),
        (None, Some(n)) => {
            if !(0.0..=1.0).contains(&args.density) {
                return Err(CliError::Usage("--density must lie in [0, 1]".into()).into());
            }
            let mut rng = generate::rng(args.seed);
            Some(generate::random_graph(&mut rng, n, args.density, 1..=1))
        }
        (None, None) => None,
    };
    let values = args
        .values
        .as_deref()
        .map(|text| {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<Weight>()
                        .map_err(|_| CliError::Usage(format!("invalid value '{t}' in --values")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let part_a = args
        .part_a
        .as_deref()
        .map(parse_id_list)
        .transpose()?
        .map(|ids| ids.into_iter().map(|v| v - 1).collect());
    let source = SourceArgs {
        graph,
        k: args.k,
        values,
        part_a,
    };
    let (instance, comments) = build(args.construction, source)?;
    write_out(args.output.as_ref(), &emit(&instance, &comments))?;
    Ok(ExitCode::SUCCESS)
}

fn run_bench_cmd(args: BenchArgs) -> Result<ExitCode> {
    let oracle = oracle_from_env()?;
    if matches!(args.problem, Some(Problem::Vi | Problem::Coc)) {
        return Err(CliError::Usage("bench runs the weighted problems (wvi, wcoc)".into()).into());
    }
    let cfg = BenchConfig {
        count: args.count,
        seed: args.seed,
        max_n: args.max_n,
        max_weight: args.max_weight,
        problem: args.problem,
    };
    let items = run_bench(&cfg, &oracle);
    let summary = BenchSummary::of(&items);
    let mut out = io::stdout().lock();
    for item in &items {
        if args.json {
            writeln!(out, "{}", serde_json::to_string(item)?)?;
        } else {
            writeln!(out, "{}", item.to_text())?;
        }
    }
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&summary)?)?;
    } else {
        writeln!(
            out,
            "summary: {} items, {} agreeing, {} bound or witness violations, {} oracle-checked",
            summary.items, summary.agreeing, summary.violations, summary.oracle_checked
        )?;
    }
    Ok(if summary.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CliError>() {
            return e.exit_code();
        }
        if cause.downcast_ref::<ParseError>().is_some() {
            return 2;
        }
        if cause.downcast_ref::<vulnkit::Error>().is_some() {
            return 3;
        }
        if cause.downcast_ref::<io::Error>().is_some() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Kernelize(a) => run_kernelize(a),
        Command::Gen(a) => run_gen(a),
        Command::Verify(a) => run_verify(a),
        Command::Bench(a) => run_bench_cmd(a),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
