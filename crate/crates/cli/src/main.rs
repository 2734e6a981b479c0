use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use suq2_cli::app::{run, Cli};

fn init_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SUQ2_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| format!("SUQ2_THREADS must be a positive integer, got '{raw}'"))?;
    if n == 0 {
        return Err("SUQ2_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{}", out.output(cli.opts.format));
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
