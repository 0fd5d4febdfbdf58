//! `netrel`: exact two-terminal reliability of heterogeneous-arc networks.
//!
//! Exit status: 0 success, 2 usage error, 3 input or validation error,
//! 4 budget exceeded, 5 engine disagreement. Every failure writes one line
//! `netrel: error[<code>]: <message>` to stderr.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use netrel::engines::{
    self, compare_engines_with, render_trace, rie_run, Comparison, Method, OracleOptions, RieOptions,
};
use netrel::generator::{generate, GeneratorConfig};
use netrel::paths::{direct_mp, directed_mps, directed_mps_in_order, enumerate_undirected_mps};
use netrel::{DirectedMp, Error, Network, ReliabilityReport};

#[derive(Parser)]
#[command(name = "netrel", version, about = "Exact two-terminal reliability for heterogeneous-arc networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the reliability of a network with one engine.
    Compute {
        file: PathBuf,
        #[arg(long, default_value = "rie")]
        method: Method,
        #[arg(long)]
        json: bool,
        /// Minimal paths in the order the IET engines should use.
        #[arg(long, value_name = "FILE")]
        mp_order: Option<PathBuf>,
    },
    /// List undirected and directed minimal paths in enumeration order.
    Mps { file: PathBuf },
    /// Run all four engines and check that they agree.
    Compare {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write a seeded random network.
    Random(RandomArgs),
    /// Print the per-term log of the recursive engine.
    Trace {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        mp_order: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    arcs: usize,
    #[arg(long)]
    seed: u64,
    /// Forward probability range `lo,hi`.
    #[arg(long, value_parser = parse_range, default_value = "0,1")]
    pfwd: (f64, f64),
    /// Backward probability range `lo,hi`.
    #[arg(long, value_parser = parse_range, default_value = "0,1")]
    pbwd: (f64, f64),
    #[arg(short = 'o', value_name = "FILE")]
    output: PathBuf,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| format!("`{s}` is not `lo,hi`"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|_| format!("`{v}` is not a number"));
    Ok((parse(lo)?, parse(hi)?))
}

/// A failure with its exit status and greppable code.
struct Failure {
    status: u8,
    code: &'static str,
    message: String,
}

impl Failure {
    fn input(message: String) -> Self {
        Failure { status: 3, code: "input", message }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let (status, code) = match &err {
            Error::TooLarge { .. } | Error::RetryBudgetExhausted(_) => (4, "budget"),
            Error::Disagreement(_) => (5, "disagreement"),
            _ => (3, "input"),
        };
        Failure { status, code, message: err.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Network, Failure> {
    Network::parse(&read(path)?).map_err(|e| Failure { message: format!("{}: {e}", path.display()), ..e.into() })
}

fn paths_for(net: &Network, order: Option<&Path>) -> Result<Vec<DirectedMp>, Failure> {
    match order {
        Some(path) => directed_mps_in_order(&read(path)?, net)
            .map_err(|e| Failure { message: format!("{}: {e}", path.display()), ..e.into() }),
        None => Ok(directed_mps(net)?),
    }
}

fn print_report(out: &mut impl Write, report: &ReliabilityReport, json: bool) -> io::Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(report).expect("report serializes"))
    } else {
        let rows = [
            ("method", report.method.to_string()),
            ("reliability", format!("{:.10}", report.reliability)),
            ("num_mps", report.num_mps.to_string()),
            ("num_terms", report.num_terms.to_string()),
            ("complete_terms_discarded", report.complete_terms_discarded.to_string()),
            ("complete_net_sign", report.complete_net_sign.to_string()),
            ("elapsed_ms", format!("{:.3}", report.elapsed_ms)),
        ];
        for (key, value) in rows {
            writeln!(out, "{key:<26} {value}")?;
        }
        Ok(())
    }
}

fn print_comparison(out: &mut impl Write, cmp: &Comparison, json: bool) -> io::Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(cmp).expect("comparison serializes"))
    } else {
        writeln!(out, "{cmp}")
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let io_err = |e: io::Error| {
        let code = if e.kind() == io::ErrorKind::BrokenPipe { "pipe" } else { "io" };
        Failure { status: 1, code, message: e.to_string() }
    };
    match cli.command {
        Command::Compute { file, method, json, mp_order } => {
            let net = load(&file)?;
            let mps = if method == Method::Oracle { Vec::new() } else { paths_for(&net, mp_order.as_deref())? };
            let report = engines::compute(&net, &mps, method)?;
            print_report(out, &report, json).map_err(io_err)
        }
        Command::Mps { file } => {
            let net = load(&file)?;
            let mps = enumerate_undirected_mps(&net);
            writeln!(out, "# {} minimal paths from node {} to node {}", mps.len(), net.source(), net.sink())
                .map_err(io_err)?;
            for (idx, q) in mps.iter().enumerate() {
                let p = direct_mp(q, &net)?;
                writeln!(out, "Q{n} = {q}\tP{n} = {p}", n = idx + 1).map_err(io_err)?;
            }
            Ok(())
        }
        Command::Compare { file, json } => {
            let net = load(&file)?;
            let mps = directed_mps(&net)?;
            match compare_engines_with(&net, &mps, OracleOptions::default()) {
                Ok(cmp) => print_comparison(out, &cmp, json).map_err(io_err),
                Err(Error::Disagreement(cmp)) => {
                    print_comparison(out, &cmp, json).map_err(io_err)?;
                    Err(Error::Disagreement(cmp).into())
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Random(args) => {
            let cfg = GeneratorConfig {
                prob_range_fwd: args.pfwd,
                prob_range_bwd: args.pbwd,
                ..GeneratorConfig::new(args.nodes, args.arcs, args.seed)
            };
            let net = generate(&cfg)?;
            let text = format!(
                "# generated: --nodes {} --arcs {} --seed {} --pfwd {},{} --pbwd {},{}\n{}",
                args.nodes,
                args.arcs,
                args.seed,
                args.pfwd.0,
                args.pfwd.1,
                args.pbwd.0,
                args.pbwd.1,
                net.to_text()
            );
            fs::write(&args.output, text).map_err(|e| Failure {
                status: 1,
                code: "io",
                message: format!("{}: {e}", args.output.display()),
            })
        }
        Command::Trace { file, mp_order } => {
            let net = load(&file)?;
            let mps = paths_for(&net, mp_order.as_deref())?;
            let run = rie_run(&net, &mps, RieOptions { trace: true, ..Default::default() })?;
            write!(out, "{}", render_trace(&run.trace, mps.len())).map_err(io_err)?;
            writeln!(out, "R = {:.10}", run.report.reliability).map_err(io_err)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let rendered = e.to_string();
            let mut lines = rendered.lines();
            let first = lines.next().unwrap_or_default().trim_start_matches("error: ");
            eprintln!("netrel: error[usage]: {first}");
            for line in lines {
                eprintln!("{line}");
            }
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        // downstream closed early, as with `| head`
        Err(f) if f.code == "pipe" => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("netrel: error[{}]: {}", f.code, f.message);
            ExitCode::from(f.status)
        }
    }
}
