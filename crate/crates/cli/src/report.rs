use serde::Serialize;
use serde_json::Value;

use crate::format::InputRecord;

/// The JSON report every analysis command prints.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: CommandEcho,
    pub inputs: Vec<InputRecord>,
    pub result: Value,
    pub version: &'static str,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: Vec<String>,
}

impl Report {
    pub fn new(name: &str, args: &[String], inputs: &[InputRecord], result: Value) -> Report {
        Report {
            command: CommandEcho { name: name.to_string(), args: args.to_vec() },
            inputs: inputs.to_vec(),
            result,
            version: env!("CARGO_PKG_VERSION"),
            warnings: Vec::new(),
        }
    }

    pub fn warn(mut self, warning: impl Into<String>) -> Report {
        self.warnings.push(warning.into());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
