//! Output formats shared by all subcommands.

use std::io::{self, Write};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Diagram,
}

/// Write to stdout; a closed pipe (as in `logent … | head`) ends the program
/// quietly instead of panicking.
pub fn emit(text: impl AsRef<str>) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(text.as_ref().as_bytes()) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("stdout write failed: {e}");
    }
}

pub fn print_json(value: &serde_json::Value) {
    let mut text = serde_json::to_string_pretty(value).expect("output value serializes");
    text.push('\n');
    emit(text);
}

/// Two-column table with left-aligned keys.
pub fn print_table(rows: &[(String, String)]) {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut text = String::new();
    for (k, v) in rows {
        text.push_str(&format!("{k:<width$}  {v}\n"));
    }
    emit(text);
}

pub fn row(key: impl ToString, value: impl ToString) -> (String, String) {
    (key.to_string(), value.to_string())
}
