use std::process::ExitCode;

use clap::Parser;
use hopfcyc_cli::app::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("HOPFCYC_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool set once");
            }
            _ => {
                eprintln!("HOPFCYC_THREADS must be a positive integer, got {n:?}");
                return ExitCode::from(2);
            }
        }
    }
    let (code, text) = run(&cli);
    if cli_out(&cli).is_none() {
        print!("{text}");
    } else if code == 2 {
        eprint!("{text}");
    }
    ExitCode::from(code as u8)
}

fn cli_out(cli: &Cli) -> Option<&std::path::Path> {
    use hopfcyc_cli::app::Command::*;
    let c = match &cli.command {
        Verify(c) | Relations(c) | Powers(c) | Traces(c) | Homology(c) | Eval(c) | Report(c) => c,
    };
    c.out.as_deref()
}
