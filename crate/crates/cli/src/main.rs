use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use exactlmi::generate::{gen_expbits_pencil, gen_random_pencil};
use exactlmi::pencil::{parse_pencil, parse_pencil_json, parse_pencil_path};
use exactlmi::report::Report;
use exactlmi::{solve_lmi, LinearPencil, SolveOptions};

#[derive(Parser, Debug)]
#[command(name = "exactlmi", version, about = "Exact feasibility and minimal-rank points for rational LMIs")]
struct Cli {
    /// More log output (repeat for debug)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide feasibility of A(x) >= 0 and print a point of minimal rank
    Solve(SolveArgs),
    /// Write a dense random symmetric pencil
    GenRandom(GenRandomArgs),
    /// Write the block pencil whose solutions grow like 2^(2^k)
    GenExpbits(GenExpbitsArgs),
    /// Time the solver on generated pencils
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Pencil file (text or .json); `-` reads text from stdin
    input: PathBuf,
    /// Return every certified point of the requested ranks
    #[arg(long)]
    all: bool,
    /// Report the rank at each point
    #[arg(long)]
    rnk: bool,
    /// Report the rational parametrization of each point
    #[arg(long)]
    par: bool,
    /// Report the degree of each parametrization
    #[arg(long)]
    deg: bool,
    /// Comma-separated ranks to try (default: 0..m-1)
    #[arg(long, value_delimiter = ',')]
    ranks: Option<Vec<usize>>,
    /// Significant digits of the coordinate intervals
    #[arg(long, default_value_t = 10)]
    digits: u32,
    /// Master seed for all random choices
    #[arg(long, env = "EXACTLMI_SEED")]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug)]
struct GenRandomArgs {
    #[arg(short, long)]
    m: usize,
    #[arg(short, long)]
    n: usize,
    #[arg(long, env = "EXACTLMI_SEED", default_value_t = 0)]
    seed: u64,
    /// Coefficients are drawn from [-bound, bound]
    #[arg(long, default_value_t = 100)]
    bound: i64,
    /// Output file (default: stdout)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenExpbitsArgs {
    /// Number of 2x2 blocks
    #[arg(short, long)]
    n: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Largest block count of the exponential family
    #[arg(long, default_value_t = 3)]
    expbits: usize,
    /// Random pencils as m,n pairs, e.g. 3,2
    #[arg(long = "random", value_parser = parse_pair)]
    random: Vec<(usize, usize)>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, env = "EXACTLMI_SEED", default_value_t = 31415926)]
    seed: u64,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected m,n")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn read_pencil(path: &Path) -> Result<LinearPencil> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        let p = if text.trim_start().starts_with('{') { parse_pencil_json(&text) } else { parse_pencil(&text) };
        return p.context("parsing pencil from stdin");
    }
    parse_pencil_path(path).with_context(|| format!("reading {}", path.display()))
}

fn write_out(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve(args: SolveArgs) -> Result<()> {
    if args.digits == 0 {
        bail!("--digits must be at least 1");
    }
    if args.threads == 0 {
        bail!("--threads must be at least 1");
    }
    let pencil = read_pencil(&args.input)?;
    let opts = SolveOptions {
        all: args.all,
        rnk: args.rnk,
        par: args.par,
        deg: args.deg,
        ranks: args.ranks,
        digits: args.digits,
        seed: args.seed,
        threads: Some(args.threads),
    };
    let outcome = solve_lmi(&pencil, &opts)?;
    let report = Report::from_outcome(&outcome, pencil.vars());
    match args.format {
        Format::Text => println!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let opts = |ranks: Option<Vec<usize>>| SolveOptions { rnk: true, deg: true, ranks, seed: Some(args.seed), ..Default::default() };
    println!("{:<16} {:>10} {:>6} {:>6}", "pencil", "seconds", "rank", "deg");
    for n in 1..=args.expbits {
        let p = gen_expbits_pencil(n);
        let t = Instant::now();
        let out = solve_lmi(&p, &opts(Some(vec![n])))?;
        let rec = out.records.first();
        println!(
            "{:<16} {:>10.3} {:>6} {:>6}",
            format!("expbits n={n}"),
            t.elapsed().as_secs_f64(),
            rec.and_then(|r| r.rank).map_or("-".into(), |r| r.to_string()),
            rec.and_then(|r| r.deg).map_or("-".into(), |d| d.to_string())
        );
    }
    for &(m, n) in &args.random {
        for k in 0..args.repeats {
            let p = gen_random_pencil(m, n, args.seed.wrapping_add(k as u64), 100);
            let t = Instant::now();
            let out = solve_lmi(&p, &opts(None))?;
            let rec = out.records.first();
            println!(
                "{:<16} {:>10.3} {:>6} {:>6}",
                format!("random {m}x{m} n={n}"),
                t.elapsed().as_secs_f64(),
                rec.and_then(|r| r.rank).map_or("-".into(), |r| r.to_string()),
                rec.and_then(|r| r.deg).map_or("-".into(), |d| d.to_string())
            );
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::GenRandom(a) => {
            if a.m == 0 || a.n == 0 {
                bail!("-m and -n must be at least 1");
            }
            write_out(a.output.as_deref(), &gen_random_pencil(a.m, a.n, a.seed, a.bound).to_text())
        }
        Command::GenExpbits(a) => {
            if a.n == 0 {
                bail!("-n must be at least 1");
            }
            write_out(a.output.as_deref(), &gen_expbits_pencil(a.n).to_text())
        }
        Command::Bench(a) => bench(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
