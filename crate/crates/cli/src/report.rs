use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// What a run read: the model path and its SHA-256, plus the effective settings.
#[derive(Clone, Debug, Serialize)]
pub struct Inputs<C> {
    pub model: Option<String>,
    pub model_sha256: Option<String>,
    pub config: C,
}

impl<C> Inputs<C> {
    pub fn for_file(path: &Path, bytes: &[u8], config: C) -> Self {
        Inputs {
            model: Some(path.display().to_string()),
            model_sha256: Some(sha256_hex(bytes)),
            config,
        }
    }
}

/// JSON report written by every command except `compare` and `gen`.
/// `wall_time` is `null` unless timing was requested, so that reruns are
/// byte-identical.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport<C, R> {
    pub command: &'static str,
    pub inputs: Inputs<C>,
    pub result: R,
    pub wall_time: Option<f64>,
    pub warnings: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes `text` to `out`, or to stdout when `out` is `None`.
pub fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

pub fn emit_json<T: Serialize>(value: &T, out: Option<&PathBuf>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(&text, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
