use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = hyperarr_cli::dispatch(std::env::args());
    if code == hyperarr_cli::EXIT_USAGE {
        eprint!("{text}");
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    ExitCode::from(code as u8)
}
