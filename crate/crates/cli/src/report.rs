//! Report structures and rendering. Every field is deterministic for a
//! fixed input set and seed: maps are ordered, matrices serialize
//! row-major, and nothing records wall-clock data.

use serde::Serialize;

use globengine_core::exactla::{LinearMap, Matrix};
use globengine_core::io::{matrix_to_dto, MatrixDto};
use globengine_core::Rational;

/// How did one target fare: mathematically fine, a law/criterion failed,
/// or the input was unusable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    MathFail,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::MathFail => 1,
            Status::InputError => 2,
        }
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub results: Vec<TargetReport>,
}

#[derive(Serialize)]
pub struct TargetReport {
    pub target: String,
    pub status: Status,
    /// FNV-1a digest of the resolved input object's serialized form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<NamedMatrix>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub laws: Vec<LawLine>,
}

#[derive(Serialize)]
pub struct NamedMatrix {
    pub name: String,
    pub rows: MatrixDto,
}

#[derive(Serialize)]
pub struct LawLine {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl TargetReport {
    pub fn new(target: impl Into<String>, status: Status) -> Self {
        TargetReport {
            target: target.into(),
            status,
            input_digest: None,
            lines: Vec::new(),
            matrices: Vec::new(),
            laws: Vec::new(),
        }
    }

    pub fn line(mut self, text: impl Into<String>) -> Self {
        self.lines.push(text.into());
        self
    }

    pub fn matrix(mut self, name: &str, m: &Matrix<Rational>) -> Self {
        self.matrices.push(NamedMatrix {
            name: name.to_string(),
            rows: matrix_to_dto(m),
        });
        self
    }

    pub fn map(self, name: &str, m: &LinearMap<Rational>) -> Self {
        self.matrix(name, m.matrix())
    }

    pub fn digest(mut self, digest: String) -> Self {
        self.input_digest = Some(digest);
        self
    }
}

impl Report {
    pub fn status(&self) -> Status {
        self.results
            .iter()
            .map(|r| r.status)
            .max()
            .unwrap_or(Status::Pass)
    }

    pub fn render_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for result in &self.results {
            let verdict = match result.status {
                Status::Pass => "ok",
                Status::MathFail => "FAIL",
                Status::InputError => "ERROR",
            };
            out.push_str(&format!("{}: {}\n", result.target, verdict));
            if let Some(digest) = &result.input_digest {
                out.push_str(&format!("  digest: {digest}\n"));
            }
            for line in &result.lines {
                out.push_str(&format!("  {line}\n"));
            }
            for law in &result.laws {
                out.push_str(&format!(
                    "  [{}] {}{}\n",
                    if law.pass { "pass" } else { "FAIL" },
                    law.name,
                    if law.detail.is_empty() {
                        String::new()
                    } else {
                        format!(": {}", law.detail)
                    }
                ));
            }
            for m in &result.matrices {
                out.push_str(&format!("  {} =\n", m.name));
                for row in &m.rows {
                    out.push_str(&format!("    [{}]\n", row.join(", ")));
                }
            }
        }
        out.push_str(&format!("seed: {}\n", self.seed));
        out
    }
}

/// FNV-1a over the canonical serialization; enough to identify inputs in
/// reports, not a cryptographic commitment.
pub fn digest(text: &str) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in text.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}
