use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use steinerlike_cli::{render, run, write_file, Cli, Exit};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Exit::Usage.code() as u8),
            };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.into()).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(Exit::Usage.code() as u8);
        }
    }
    let result = cli.settings().and_then(|settings| {
        let outcome = run(&cli)?;
        let exit = outcome.exit;
        let text = render(&cli.command_name(), &settings, outcome);
        match &cli.out {
            Some(path) => write_file(path, &text)?,
            None => print!("{text}"),
        }
        Ok(exit)
    });
    match result {
        Ok(exit) => ExitCode::from(exit.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit().code() as u8)
        }
    }
}
