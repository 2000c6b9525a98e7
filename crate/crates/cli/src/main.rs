use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::Failure;

/// Pattern-avoiding stack sorting: simulate, count preimages, find orbits,
/// and check the known structure exhaustively on small lengths.
#[derive(Parser, Debug)]
#[command(name = "permstack", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for exhaustive sweeps (0 = all cores). Output does not
    /// depend on this value.
    #[arg(long, default_value_t = 0, global = true)]
    parallel: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct PatternsArg {
    /// Forbidden patterns, e.g. "123,132" or "[10,2,1,3,4,5,6,7,8,9]".
    #[arg(long)]
    patterns: String,
}

#[derive(Args, Debug)]
struct PermArg {
    /// Input, e.g. "5,2,4,1,3" or "52413".
    #[arg(long)]
    perm: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the machine on one input.
    Sort {
        #[command(flatten)]
        patterns: PatternsArg,
        #[command(flatten)]
        perm: PermArg,
        /// Print every step as a JSON line.
        #[arg(long)]
        trace: bool,
    },
    /// Count the permutations each (σ,τ)-machine sends to the identity.
    Table {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// List every preimage of a permutation.
    Preimages {
        #[command(flatten)]
        patterns: PatternsArg,
        #[command(flatten)]
        perm: PermArg,
    },
    /// Largest number of preimages over all permutations of length n.
    Fertility {
        #[command(flatten)]
        patterns: PatternsArg,
        #[arg(long)]
        n: usize,
    },
    /// Iterate the map from one permutation until it cycles.
    Orbit {
        #[command(flatten)]
        patterns: PatternsArg,
        #[command(flatten)]
        perm: PermArg,
    },
    /// All cycles of the map on permutations of length n.
    Periodic {
        #[command(flatten)]
        patterns: PatternsArg,
        #[arg(long)]
        n: usize,
    },
    /// Size of the image of the map on permutations of length n.
    Image {
        #[command(flatten)]
        patterns: PatternsArg,
        #[arg(long)]
        n: usize,
    },
    /// Run the verification suites.
    Verify {
        /// "all" or a comma-separated list of suite names.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Split an input at the colex-least occurrence of a reversed pattern.
    Clump {
        #[command(flatten)]
        patterns: PatternsArg,
        #[command(flatten)]
        perm: PermArg,
    },
    /// Invert the map; only defined for bijective pattern sets.
    Inverse {
        #[command(flatten)]
        patterns: PatternsArg,
        #[command(flatten)]
        perm: PermArg,
    },
}

fn run(cli: Cli) -> Result<String, Failure> {
    let cap = commands::size_cap()?;
    let fmt = cli.format;
    match cli.command {
        Command::Sort { patterns, perm, trace } => commands::sort(&patterns.patterns, &perm.perm, trace, fmt),
        Command::Table { max_n } => commands::table(max_n, fmt, cap),
        Command::Preimages { patterns, perm } => commands::preimages(&patterns.patterns, &perm.perm, fmt, cap),
        Command::Fertility { patterns, n } => commands::fertility(&patterns.patterns, n, fmt, cap),
        Command::Orbit { patterns, perm } => commands::orbit(&patterns.patterns, &perm.perm, fmt, cap),
        Command::Periodic { patterns, n } => commands::periodic(&patterns.patterns, n, fmt, cap),
        Command::Image { patterns, n } => commands::image(&patterns.patterns, n, fmt, cap),
        Command::Verify { suite, max_n } => commands::verify(&suite, max_n, fmt, cap),
        Command::Clump { patterns, perm } => commands::clump(&patterns.patterns, &perm.perm, fmt),
        Command::Inverse { patterns, perm } => commands::inverse(&patterns.patterns, &perm.perm, fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.parallel).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::FAILURE;
        }
    };
    match pool.install(|| run(cli)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            print!("{}", f.stdout);
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
