//! Report files: a deterministic JSON envelope whose failures embed enough
//! data to be re-checked by `wmlat replay`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub command: String,
    pub seed: u64,
    pub caps: usize,
    pub verdict: String,
    pub sections: Vec<Section>,
    #[serde(default)]
    pub replay: Vec<ReplayCase>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub verdict: String,
    pub detail: Value,
}

/// One re-checkable counterexample: enough to rebuild the ball and re-run the
/// single adjudication that failed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReplayCase {
    pub instance: String,
    pub quotient: bool,
    pub radius: u32,
    pub cap: usize,
    pub condition: String,
    pub basepoint: String,
    pub n: u32,
    pub pair: (String, String),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apex: Option<String>,
}

impl RunReport {
    pub fn new(command: String, seed: u64, caps: usize) -> RunReport {
        RunReport {
            tool: "wmlat".to_string(),
            command,
            seed,
            caps,
            verdict: "pass".to_string(),
            sections: Vec::new(),
            replay: Vec::new(),
        }
    }

    pub fn push<S: Serialize>(&mut self, name: &str, verdict: &str, detail: &S) {
        self.sections.push(Section {
            name: name.to_string(),
            verdict: verdict.to_string(),
            detail: serde_json::to_value(detail).expect("serializable detail"),
        });
        if verdict == "fail" {
            self.verdict = "fail".to_string();
        } else if verdict == "inconclusive" && self.verdict == "pass" {
            self.verdict = "inconclusive".to_string();
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == "fail"
    }

    pub fn write(&self, out: &Option<std::path::PathBuf>) -> std::io::Result<()> {
        if let Some(base) = out {
            let path = if base.extension().is_some() {
                base.clone()
            } else {
                base.with_extension("json")
            };
            std::fs::write(&path, serde_json::to_string_pretty(self).expect("report json"))?;
            println!("report written to {}", path.display());
        }
        Ok(())
    }

    pub fn summary(&self) -> String {
        let mut lines = vec![format!("== {} — {}", self.command, self.verdict)];
        for s in &self.sections {
            lines.push(format!("  {:<40} {}", s.name, s.verdict));
        }
        lines.join("\n")
    }
}
