//! Machine-readable report documents.
//!
//! Keys come out in a fixed order, with `elapsed_ms` last so that
//! [`strip_timing`] can drop it and leave everything else byte-comparable.

use serde::{Deserialize, Serialize};

pub const TOOL: &str = "auk";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub build_cap: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colon_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub union_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    inputs: &'a [Input],
    parameters: &'a Parameters,
    verdict: &'a str,
    exit_code: i32,
    result: &'a T,
    elapsed_ms: u128,
}

/// The header fields of a document, for reading reports back.
#[derive(Clone, Debug, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub inputs: Vec<Input>,
    pub parameters: Parameters,
    pub verdict: String,
    pub exit_code: i32,
    pub result: serde_json::Value,
}

#[allow(clippy::too_many_arguments)]
pub fn render<T: Serialize>(
    command: &str,
    inputs: &[Input],
    parameters: &Parameters,
    verdict: &str,
    exit_code: i32,
    result: &T,
    elapsed_ms: u128,
) -> String {
    let doc = Document {
        tool: TOOL,
        version: VERSION,
        command,
        inputs,
        parameters,
        verdict,
        exit_code,
        result,
        elapsed_ms,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report types serialize");
    out.push('\n');
    out
}

/// Removes the `elapsed_ms` field from a rendered document.
pub fn strip_timing(doc: &str) -> String {
    let mut lines: Vec<&str> = doc.lines().collect();
    if let Some(k) = lines.iter().position(|l| l.trim_start().starts_with("\"elapsed_ms\":")) {
        lines.remove(k);
        if k > 0 {
            if let Some(prev) = lines[k - 1].strip_suffix(',') {
                lines[k - 1] = prev;
            }
        }
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timing_is_last_and_strippable() {
        let p = Parameters {
            build_cap: 4,
            colon_cap: Some(3),
            union_cap: None,
            strategy: Some("exhaustive".into()),
            seed: None,
            samples: None,
        };
        let a = render("check-uk", &[], &p, "UK_Complete", 0, &vec![1, 2], 5);
        let b = render("check-uk", &[], &p, "UK_Complete", 0, &vec![1, 2], 912);
        assert_ne!(a, b);
        assert_eq!(strip_timing(&a), strip_timing(&b));
        let stripped: serde_json::Value = serde_json::from_str(&strip_timing(&a)).unwrap();
        assert!(stripped.get("elapsed_ms").is_none());
        assert_eq!(stripped["verdict"], "UK_Complete");
        let keys: Vec<&str> = a
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        assert_eq!(
            keys,
            [
                "tool",
                "version",
                "command",
                "inputs",
                "parameters",
                "verdict",
                "exit_code",
                "result",
                "elapsed_ms"
            ]
        );
    }

    #[test]
    fn header_reads_back() {
        let p = Parameters {
            build_cap: 4,
            colon_cap: None,
            union_cap: None,
            strategy: None,
            seed: None,
            samples: None,
        };
        let inputs = [Input {
            path: "a.txt".into(),
            sha256: "00".into(),
        }];
        let h: Header = serde_json::from_str(&render("dims", &inputs, &p, "ok", 0, &(), 1)).unwrap();
        assert_eq!(h.command, "dims");
        assert_eq!(h.inputs, inputs);
        assert_eq!(h.parameters, p);
    }
}
