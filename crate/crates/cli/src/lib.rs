//! File formats and command implementations behind the `quadric` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod sample;

pub use commands::{run, Cli, Command, Outcome};
pub use error::CliError;
pub use format::QuadricDocument;

use clap::Parser;

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit code, stdout and stderr text.
pub fn execute<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { error::EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (code, String::new(), text) };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut err = String::new();
            for w in out.warnings {
                err.push_str(&w);
                err.push('\n');
            }
            (0, out.stdout, err)
        }
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
