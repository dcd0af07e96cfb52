use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use zf_cli::args::Cli;
use zf_cli::render::render;
use zf_cli::run::{run, Budgets, InputError, Outcome};

fn fail(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg.lines().next().unwrap_or(msg).trim_start_matches("error: "));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&e.render().to_string()),
    };
    let budgets = Budgets {
        work: cli.budget,
        orbit: cli.orbit_budget,
    };
    let exec = || run(&cli.command, &budgets);
    let result: Result<Outcome, InputError> = match cli.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n as usize).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => return fail(&format!("cannot start {n} workers: {e}")),
        },
        None => exec(),
    };
    match result {
        Ok(out) => {
            let text = render(&out.document, cli.format);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if out.budget_exhausted {
                eprintln!("warning: budget exhausted; results are partial (completeness: budget-limited)");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(InputError(msg)) => fail(&msg),
    }
}
