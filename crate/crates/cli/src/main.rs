use clap::{Args, Parser, Subcommand};
use glz_cli::*;
use glz_core::IntMatrix;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact computations in GL(n, Z): involutions, transvections and
/// congruence subgroups. Matrices are read as {"n": N, "rows": [...]}.
#[derive(Parser)]
#[command(name = "glz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Read the matrix from this file instead of stdin.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl Input {
    fn matrix(&self) -> Result<IntMatrix, CliError> {
        let text = match &self.file {
            Some(path) => std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?,
            None => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
                s
            }
        };
        parse_matrix(&text)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Involution profile, transvection data and congruence levels.
    Classify(Input),
    /// Canonical basis of an involution.
    Canon(Input),
    /// Product of elementary matrices equal to a determinant-one matrix.
    Factor(Input),
    /// Lift a mod-2 matrix, or a row (a, c) into SL(3, Z).
    Lift {
        #[arg(long, conflicts_with = "row", required_unless_present = "row")]
        mod2: bool,
        #[arg(long, num_args = 2, value_names = ["A", "C"], allow_negative_numbers = true)]
        row: Option<Vec<String>>,
        #[command(flatten)]
        input: Input,
    },
    /// Conjugate of an involution whose product with it has a given type.
    Witness {
        #[arg(long, conflicts_with = "four", required_unless_present = "four")]
        order3: bool,
        #[arg(long)]
        four: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Membership in the level-M congruence subgroup.
    Gamma {
        #[arg(long, allow_negative_numbers = true)]
        m: String,
        #[command(flatten)]
        input: Input,
    },
    /// Fixed matrix identities in low rank.
    Identities,
    /// Run a randomized verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Classify(input) => command_classify(&input.matrix()?),
        Command::Canon(input) => command_canon(&input.matrix()?),
        Command::Factor(input) => command_factor(&input.matrix()?),
        Command::Lift { row: Some(ac), .. } => {
            command_lift_row(&parse_integer(&ac[0])?, &parse_integer(&ac[1])?)
        }
        Command::Lift { input, .. } => command_lift_mod2(&input.matrix()?),
        Command::Witness {
            order3: true,
            input,
            ..
        } => command_witness_order3(&input.matrix()?),
        Command::Witness { input, .. } => command_witness_four(&input.matrix()?),
        Command::Gamma { m, input } => command_gamma(&input.matrix()?, &parse_integer(&m)?),
        Command::Identities => command_identities(),
        Command::Verify {
            suite,
            n,
            trials,
            seed,
        } => command_verify(&suite, n, trials, seed),
    }
}

fn print(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(v) => {
            print(&v);
            ExitCode::from(EXIT_OK as u8)
        }
        Err(CliError::SuiteFailed(report)) => {
            print(&report);
            eprintln!("glz: suite found a counterexample");
            ExitCode::from(EXIT_SUITE_FAILURE as u8)
        }
        Err(e) => {
            eprintln!("glz: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
