use clap::Parser;
use qfsim::cli::{self, Cli};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match cli::execute(&cli).and_then(|out| out.render(format).map(|text| (out.failed, text))) {
        Ok((failed, text)) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
