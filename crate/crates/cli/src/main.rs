use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use commands::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "ncsym",
    version,
    about = "Chromatic symmetric functions in noncommuting variables",
    after_help = "Files may be given as '-' to read standard input. \
                  NCSYM_MAX_N overrides the largest degree handled exhaustively (default 12)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand Y_G of a graph in one basis
    Expand(ExpandArgs),
    /// Re-express a serialized element in another basis
    Convert(ConvertArgs),
    /// Report e-positivity and the x-sign of Y_G
    Classify(GraphArgs),
    /// Run a property suite
    Verify(VerifyArgs),
    /// Build a chromatic basis and its transition matrix to p
    Basis(BasisArgs),
    /// Print basic facts about a graph
    Info(GraphArgs),
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Graph file in the `n N` / `e U V` text format
    #[arg(long)]
    graph: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, value_enum)]
    basis: BasisArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    /// Element file in the JSON interchange format
    #[arg(long)]
    expr: String,
    #[arg(long, value_enum)]
    from: BasisArg,
    #[arg(long, value_enum)]
    to: BasisArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// agreement, kdeletion, trees, multiplicativity, relabeling, roundtrip, epos-scan, xsign-scan or bases
    #[arg(long)]
    suite: String,
    #[arg(long)]
    n: usize,
    /// Required whenever the suite draws random instances
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BasisArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BasisArg {
    M,
    P,
    E,
    H,
    X,
}

impl From<BasisArg> for ncsym::Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::M => ncsym::Basis::M,
            BasisArg::P => ncsym::Basis::P,
            BasisArg::E => ncsym::Basis::E,
            BasisArg::H => ncsym::Basis::H,
            BasisArg::X => ncsym::Basis::X,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Subset,
    Mobius,
    Delcon,
    Definition,
    Auto,
}

impl From<MethodArg> for ncsym::chromatic::Method {
    fn from(m: MethodArg) -> Self {
        use ncsym::chromatic::Method;
        match m {
            MethodArg::Subset => Method::Subset,
            MethodArg::Mobius => Method::Mobius,
            MethodArg::Delcon => Method::DeletionContraction,
            MethodArg::Definition => Method::Definition,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Path,
    Clique,
}

impl From<StrategyArg> for ncsym::chromatic_bases::AtomicGeneratorStrategy {
    fn from(s: StrategyArg) -> Self {
        use ncsym::chromatic_bases::AtomicGeneratorStrategy;
        match s {
            StrategyArg::Path => AtomicGeneratorStrategy::PathPerBlock,
            StrategyArg::Clique => AtomicGeneratorStrategy::CliquePerBlock,
        }
    }
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    commands::apply_env_limits()?;
    // internal parallelism is opt-in through `verify --workers`
    let threads = match &cli.command {
        Command::Verify(v) => v.workers.unwrap_or(1),
        _ => 1,
    };
    commands::init_threads(threads)?;
    match cli.command {
        Command::Expand(a) => commands::expand(&a.graph, a.basis.into(), a.method.into(), a.json),
        Command::Convert(a) => commands::convert(&a.expr, a.from.into(), a.to.into(), a.json),
        Command::Classify(a) => commands::classify(&a.graph, a.json),
        Command::Verify(a) => commands::verify(&a.suite, a.n, a.seed, a.json),
        Command::Basis(a) => commands::basis(a.n, a.strategy.into(), a.json),
        Command::Info(a) => commands::info(&a.graph, a.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, success)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
