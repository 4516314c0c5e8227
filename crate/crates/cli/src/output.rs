use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::error::{CliError, CliResult};

/// `qtherm-cli <version> (qtherm <version>)`
pub fn version_line() -> String {
    format!(
        "qtherm-cli {} (qtherm {})",
        env!("CARGO_PKG_VERSION"),
        qtherm::VERSION
    )
}

/// Buffered writer for `path`, or stdout.
pub fn open_output(path: Option<&Path>) -> CliResult<(Box<dyn Write>, String)> {
    match path {
        Some(p) => {
            let name = p.display().to_string();
            let f = File::create(p).map_err(|source| CliError::Io {
                path: name.clone(),
                source,
            })?;
            Ok((Box::new(BufWriter::new(f)), name))
        }
        None => Ok((Box::new(io::stdout().lock()), "<stdout>".into())),
    }
}

/// Pretty JSON followed by a newline.
pub fn write_json<T: serde::Serialize>(value: &T, path: Option<&Path>) -> CliResult<()> {
    let (mut w, name) = open_output(path)?;
    let io_err = |source| CliError::Io {
        path: name.clone(),
        source,
    };
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| io_err(e.into()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(io_err)
}
