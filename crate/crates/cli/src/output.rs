//! Machine-readable run documents.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::Format;

pub const TOOL: &str = "irv-zones";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything needed to reproduce a run. Worker count is left out on
/// purpose: output does not depend on it.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Tree file path or generator spec.
    pub input: String,
    pub policy: String,
    pub format: Format,
    pub check: bool,
    pub seed: Option<u64>,
    pub params: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, input: &str, policy: &str, format: Format, check: bool, seed: Option<u64>) -> Self {
        RunManifest {
            subcommand: subcommand.to_string(),
            input: input.to_string(),
            policy: policy.to_string(),
            format,
            check,
            seed,
            params: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    manifest: &'a RunManifest,
    result: &'a T,
}

pub fn document<T: Serialize>(manifest: &RunManifest, result: &T) -> String {
    let doc = Document {
        tool: TOOL,
        version: VERSION,
        manifest,
        result,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("documents serialize");
    out.push('\n');
    out
}
