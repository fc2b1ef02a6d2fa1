use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hypersq::cli::{run, Command, JobSpec};

#[derive(Parser)]
#[command(name = "hypersq", about = "Sums of squares on hyperelliptic curves over K_n")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Number n of Laurent variables t1..tn.
    #[arg(long, short = 'n', default_value_t = 1)]
    rank: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CurveArgs {
    /// Curve, e.g. "Y^2 = -(X^2+1)*(X^2+t1^2)".
    curve: String,
    #[command(flatten)]
    common: Common,
    /// Print every visited candidate with its classification.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    max_depth: Option<usize>,
    /// Forbid square roots outside the scalars of the input.
    #[arg(long)]
    no_tower_extend: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count the level-two valuations and report |S(F)/S2(F)|.
    Analyze(CurveArgs),
    /// Decide whether an element p + q*s is a sum of two squares.
    Membership {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, short = 'e', allow_hyphen_values = true)]
        element: String,
        /// Take an element with a sqrt part to be a sum of squares.
        #[arg(long)]
        assume_sum_of_squares: bool,
    },
    /// Construct one generator per counted valuation.
    Generators(CurveArgs),
    /// Isotropy of "<a, b, ...>", or with --squares k whether an element is a sum of k squares.
    Oracle {
        input: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        squares: Option<usize>,
    },
}

fn job(c: CurveArgs, command: Command) -> JobSpec {
    JobSpec {
        rank: c.common.rank,
        input: c.curve,
        command,
        json: c.common.json,
        trace: c.trace,
        max_depth: c.max_depth,
        no_tower_extend: c.no_tower_extend,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = match cli.cmd {
        Cmd::Analyze(c) => job(c, Command::Analyze),
        Cmd::Generators(c) => job(c, Command::Generators),
        Cmd::Membership { curve, element, assume_sum_of_squares } => {
            job(curve, Command::Membership { element, assume_sum_of_squares })
        }
        Cmd::Oracle { input, common, squares } => {
            let mut j = JobSpec::new(common.rank, &input, Command::Oracle { squares });
            j.json = common.json;
            j
        }
    };
    match run(&spec) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
