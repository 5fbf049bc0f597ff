use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use quadrant_phf::phfcli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = run(&cli);
    let to_file = match &cli.cmd {
        quadrant_phf::phfcli::commands::Cmd::Models(o) => o.out.is_some(),
        quadrant_phf::phfcli::commands::Cmd::Compute { out, .. }
        | quadrant_phf::phfcli::commands::Cmd::Verify { out, .. }
        | quadrant_phf::phfcli::commands::Cmd::Continuous { out, .. }
        | quadrant_phf::phfcli::commands::Cmd::Count { out, .. }
        | quadrant_phf::phfcli::commands::Cmd::Decompose { out, .. } => out.out.is_some(),
    };
    if !to_file || out.code != 0 {
        let mut so = std::io::stdout().lock();
        let _ = so.write_all(out.text.as_bytes());
    }
    ExitCode::from(out.code as u8)
}
