//! Run reports: what was read, what was decided, what was written.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<Input>,
    pub verdicts: Map<String, Value>,
    pub artifacts: Vec<String>,
    #[serde(rename = "wallClockMs")]
    pub wall_clock_ms: f64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn start(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: Vec::new(),
            verdicts: Map::new(),
            artifacts: Vec::new(),
            wall_clock_ms: 0.0,
            started: Some(Instant::now()),
        }
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push(Input {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        });
    }

    pub fn verdict(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("verdict serializes");
        self.verdicts.insert(key.to_string(), v);
    }

    pub fn artifact(&mut self, path: PathBuf) {
        self.artifacts.push(path.display().to_string());
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.wall_clock_ms = t.elapsed().as_secs_f64() * 1000.0;
        }
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
