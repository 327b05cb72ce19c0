use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use qnetbound_cli::commands::thread_limit;
use qnetbound_cli::{run, Cli, CliError};

fn fail(err: &CliError) -> ExitCode {
    // keep the message on one line so `error:` is greppable
    let msg = err.to_string().replace('\n', " ");
    eprintln!("error: {msg}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let threads = std::env::var("QNETBOUND_THREADS").ok();
    match thread_limit(threads.as_deref()) {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
            {
                eprintln!("error: cannot start thread pool: {e}");
                return ExitCode::from(1);
            }
        }
        Ok(None) => {}
        Err(e) => return fail(&e),
    }

    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
