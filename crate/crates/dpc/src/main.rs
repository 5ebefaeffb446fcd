use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dpc_core::cli::{error_exit_code, run, Flags};

/// Exact checks for double Poisson brackets, double Lie algebroids and
/// their differential calculus.
#[derive(Parser, Debug)]
#[command(name = "dpc", version)]
struct Args {
    /// check-poisson, check-quasi, check-algebroid, schouten, d, cohomology, rep, cartan or loday
    command: String,
    /// Spec file
    specfile: PathBuf,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    max_weight: Option<usize>,
    /// Weight window for `cohomology`
    #[arg(long)]
    weight: Option<usize>,
    #[arg(long)]
    degree: Option<usize>,
    /// Matrix size for `rep`
    #[arg(long = "N")]
    n: Option<u16>,
    /// Comma-separated subset of jacobi,trace,dcompat for `rep`
    #[arg(long, value_delimiter = ',')]
    check: Option<Vec<String>>,
    /// Also write the report as JSON
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    experimental_tilde_omega: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let text = match std::fs::read_to_string(&args.specfile) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.specfile.display());
            return ExitCode::from(2);
        }
    };
    let flags = Flags {
        seed: args.seed,
        max_weight: args.max_weight,
        weight: args.weight,
        degree: args.degree,
        n: args.n,
        checks: args.check,
        experimental_tilde_omega: args.experimental_tilde_omega,
    };
    match run(&args.command, &text, &flags) {
        Ok(rep) => {
            for l in rep.lines() {
                println!("{l}");
            }
            if let Some(path) = args.json {
                if let Err(e) = std::fs::write(&path, rep.to_json()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {}: {e}", args.specfile.display());
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
