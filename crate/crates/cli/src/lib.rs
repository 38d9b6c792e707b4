//! Command-line front end for `spinj_chsh`.

pub mod commands;
pub mod document;
pub mod error;

use clap::Parser;

pub use commands::{run, Cli, Outcome};
pub use document::SettingDocument;
pub use error::CliError;

/// Parses `args` (including the program name) and runs the command.
/// Returns `(exit code, stdout, stderr)`.
pub fn run_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.exit_code() {
                0 => (0, text, String::new()),
                code => (code, String::new(), text),
            };
        }
    };
    let outcome = run(cli);
    let stderr = outcome
        .error
        .as_ref()
        .map(|e| format!("error: {e}\n"))
        .unwrap_or_default();
    (outcome.exit_code(), outcome.stdout, stderr)
}
