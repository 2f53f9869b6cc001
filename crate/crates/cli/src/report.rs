//! Deterministic report envelope. `serde_json::Map` keeps keys sorted, so equal inputs give
//! byte-identical output.

use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use vaisman_core::cert::Certificate;

pub struct Report {
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub seed: u64,
    pub verdict: Option<bool>,
    pub results: Map<String, Value>,
    pub provenance: Option<&'static str>,
}

impl Report {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        Report { command, input_digest: None, seed, verdict: None, results: Map::new(), provenance: None }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("input_digest".into(), json!(self.input_digest));
        m.insert("seed".into(), json!(self.seed));
        m.insert("verdict".into(), json!(self.verdict));
        m.insert("results".into(), Value::Object(self.results.clone()));
        if let Some(p) = self.provenance {
            m.insert("provenance".into(), json!(p));
        }
        Value::Object(m)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// `{ check name → {pass, witness?} }`
pub fn certificate_json(c: &Certificate) -> Value {
    let mut m = Map::new();
    for (name, (pass, witness)) in c.to_map() {
        let mut e = Map::new();
        e.insert("pass".into(), json!(pass));
        if let Some(w) = witness {
            e.insert("witness".into(), json!(w));
        }
        m.insert(name, Value::Object(e));
    }
    Value::Object(m)
}

/// Writes via a sibling temp file and a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}
