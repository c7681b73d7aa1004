use std::io::Write;
use std::path::Path;

use rabi_core::format::write_atomic;

use crate::failure::Failure;

/// Writes to `path` atomically, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write_atomic(p, contents).map_err(|e| Failure::compute(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
