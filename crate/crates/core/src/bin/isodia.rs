use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = isodia::cli::seed_from_env();
    let code = isodia::cli::run(std::env::args_os(), seed, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
