//! Output plumbing: destination selection and deterministic number
//! formatting.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

/// Full round-trip precision (17 significant digits), fixed layout so reruns
/// are byte-identical.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Stdout or a file, buffered either way.
pub fn open_sink(out: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        None => Box::new(BufWriter::new(io::stdout())),
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
    })
}

/// Serialize a JSON report with a trailing newline.
pub fn write_json<T: serde::Serialize>(sink: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *sink, value)?;
    writeln!(sink)
}
