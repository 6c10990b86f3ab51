//! Output directory bookkeeping and the run manifest.

use cayley_core::bfs::Engine;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::io;
use std::path::{Path, PathBuf};

#[derive(Serialize)]
pub struct OutputEntry {
    pub file: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    args: serde_json::Value,
    engine: Option<Engine>,
    threads: usize,
    wall_seconds: f64,
    peak_memory_estimate: u64,
    outputs: &'a [OutputEntry],
    notes: &'a [String],
}

/// Files written so far, plus what goes into `manifest.json`.
pub struct Run {
    dir: PathBuf,
    outputs: Vec<OutputEntry>,
    pub engine: Option<Engine>,
    pub peak_memory_estimate: u64,
    pub notes: Vec<String>,
}

impl Run {
    pub fn new(dir: &Path) -> io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Run { dir: dir.to_path_buf(), outputs: Vec::new(), engine: None, peak_memory_estimate: 0, notes: Vec::new() })
    }

    pub fn write(&mut self, name: &str, data: &[u8]) -> io::Result<()> {
        let path = self.dir.join(name);
        self.write_at(&path, data)
    }

    pub fn write_at(&mut self, path: &Path, data: &[u8]) -> io::Result<()> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(path, data)?;
        let file = path.strip_prefix(&self.dir).unwrap_or(path).to_string_lossy().into_owned();
        self.outputs.push(OutputEntry { file, bytes: data.len(), sha256: hex::encode(Sha256::digest(data)) });
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), super::CliError> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        Ok(self.write(name, text.as_bytes())?)
    }

    pub fn finish(self, command: &str, args: serde_json::Value, threads: usize, wall_seconds: f64) -> Result<(), super::CliError> {
        let manifest = Manifest {
            command,
            args,
            engine: self.engine,
            threads,
            wall_seconds,
            peak_memory_estimate: self.peak_memory_estimate,
            outputs: &self.outputs,
            notes: &self.notes,
        };
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        std::fs::write(self.dir.join("manifest.json"), text)?;
        Ok(())
    }
}
