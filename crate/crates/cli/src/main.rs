use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, stdout, stderr) = spinj_chsh_cli::run_args(std::env::args_os());
    std::io::stdout()
        .write_all(stdout.as_bytes())
        .expect("write stdout");
    std::io::stderr()
        .write_all(stderr.as_bytes())
        .expect("write stderr");
    ExitCode::from(code as u8)
}
