//! Input loading with digests, and the `manifest.json` written next to
//! every set of outputs.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::formats::render;

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Outcome {
    pub exit_code: i32,
    pub summary: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub version: &'static str,
    pub inputs: Vec<InputDigest>,
    pub outcome: Outcome,
    pub outputs: Vec<String>,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Collects inputs and outputs of one run.
#[derive(Debug)]
pub struct Run {
    command: &'static str,
    inputs: Vec<InputDigest>,
    out: Option<PathBuf>,
    outputs: Vec<String>,
}

impl Run {
    pub fn new(command: &'static str, out: Option<PathBuf>) -> Self {
        Run { command, inputs: Vec::new(), out, outputs: Vec::new() }
    }

    /// Reads and parses a JSON input, recording its digest under the file's
    /// base name so manifests do not depend on the working directory.
    pub fn load<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T, CliError> {
        let bytes = fs::read(path).map_err(|source| CliError::Read { path: path.to_owned(), source })?;
        let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        self.inputs.push(InputDigest { path: name, sha256: hex(&Sha256::digest(&bytes)) });
        serde_json::from_slice(&bytes).map_err(|source| CliError::Json { path: path.to_owned(), source })
    }

    /// Writes `name` under the output directory, or prints the document to
    /// stdout when no directory was given.
    pub fn emit<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let text = render(value);
        match &self.out {
            Some(dir) => {
                let path = dir.join(name);
                fs::write(&path, text).map_err(|source| CliError::Write { path, source })?;
                self.outputs.push(name.to_owned());
            }
            None => print!("{text}"),
        }
        Ok(())
    }

    pub fn has_out(&self) -> bool {
        self.out.is_some()
    }

    pub fn prepare(&self) -> Result<(), CliError> {
        if let Some(dir) = &self.out {
            fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.clone(), source })?;
        }
        Ok(())
    }

    /// Writes `manifest.json` when an output directory is in use.
    pub fn finish(self, exit_code: i32, summary: String) -> Result<(), CliError> {
        let Some(dir) = self.out else {
            eprintln!("{summary}");
            return Ok(());
        };
        let manifest = RunManifest {
            command: self.command,
            version: env!("CARGO_PKG_VERSION"),
            inputs: self.inputs,
            outcome: Outcome { exit_code, summary: summary.clone() },
            outputs: self.outputs,
        };
        let path = dir.join("manifest.json");
        fs::write(&path, render(&manifest)).map_err(|source| CliError::Write { path, source })?;
        println!("{summary}");
        Ok(())
    }
}
