use std::process::exit;

use clap::error::ErrorKind;
use clap::Parser as _;

use heun_tla_cli::{run, RunConfig};

fn main() {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(e) => {
            // --help and --version are not usage errors; everything else is.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            exit(code);
        }
    };
    if let Err(err) = run(config) {
        eprintln!("{err}");
        exit(err.exit_code());
    }
}
