//! Condition reports: labelled residuals whose exact vanishing is the verdict.

use std::fmt;

use crate::algebra::Scalar;
use crate::exterior::{DiffForm, Multivector};
use crate::symmetries::SymmetryTarget;

/// The object whose exact vanishing certifies a condition.
#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    Scalar(Scalar),
    Form(DiffForm),
    Multivector(Multivector),
    /// Rows of scalar components, e.g. the matrix of a composite linear map minus its target.
    Matrix(Vec<Vec<Scalar>>),
    /// Difference of two generator pairs under `(α, h) ≡ (α♯, h)`.
    Pair { sharp: Multivector, h: Scalar },
    /// A boolean comparison, zero iff `ok`.
    Verdict { ok: bool, detail: String },
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Scalar(s) => s.is_zero(),
            Residual::Form(f) => f.is_zero(),
            Residual::Multivector(m) => m.is_zero(),
            Residual::Matrix(rows) => rows.iter().flatten().all(Scalar::is_zero),
            Residual::Pair { sharp, h } => sharp.is_zero() && h.is_zero(),
            Residual::Verdict { ok, .. } => *ok,
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Residual::Scalar(s) => s.display_with(names).to_string(),
            Residual::Form(f) => f.display_with(names).to_string(),
            Residual::Multivector(m) => m.display_with(names).to_string(),
            Residual::Matrix(rows) => {
                let body: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|s| s.display_with(names).to_string()).collect();
                        format!("[{}]", cells.join(", "))
                    })
                    .collect();
                format!("[{}]", body.join(", "))
            }
            Residual::Pair { sharp, h } => {
                format!("(sharp: {}; h: {})", sharp.display_with(names), h.display_with(names))
            }
            Residual::Verdict { ok, detail } => {
                if detail.is_empty() {
                    (if *ok { "ok" } else { "mismatch" }).to_string()
                } else {
                    detail.clone()
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionEntry {
    pub label: String,
    pub residual: Residual,
    pub pass: bool,
}

impl ConditionEntry {
    pub fn new(label: impl Into<String>, residual: Residual) -> Self {
        let pass = residual.is_zero();
        ConditionEntry { label: label.into(), residual, pass }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub title: String,
    pub target: Option<SymmetryTarget>,
    pub entries: Vec<ConditionEntry>,
}

impl ConditionReport {
    pub fn new(title: impl Into<String>) -> Self {
        ConditionReport { title: title.into(), target: None, entries: Vec::new() }
    }

    pub fn for_target(title: impl Into<String>, target: SymmetryTarget) -> Self {
        ConditionReport { title: title.into(), target: Some(target), entries: Vec::new() }
    }

    pub fn push(&mut self, label: impl Into<String>, residual: Residual) -> &mut Self {
        self.entries.push(ConditionEntry::new(label, residual));
        self
    }

    pub fn push_verdict(&mut self, label: impl Into<String>, ok: bool, detail: impl Into<String>) -> &mut Self {
        self.push(label, Residual::Verdict { ok, detail: detail.into() })
    }

    /// Appends every entry of `other`, prefixing labels with `prefix` when non-empty.
    pub fn absorb(&mut self, prefix: &str, other: ConditionReport) -> &mut Self {
        for mut e in other.entries {
            if !prefix.is_empty() {
                e.label = format!("{prefix}: {}", e.label);
            }
            self.entries.push(e);
        }
        self
    }

    /// True iff every residual vanishes exactly.
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failing_labels(&self) -> Vec<String> {
        self.entries.iter().filter(|e| !e.pass).map(|e| e.label.clone()).collect()
    }

    pub fn entry(&self, label: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    /// Every entry's verdict; failing entries carry their printed residual.
    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = serde_json::json!({ "label": e.label, "pass": e.pass });
                if !e.pass {
                    v["residual"] = serde_json::Value::String(e.residual.render(names));
                }
                v
            })
            .collect();
        serde_json::json!({
            "title": self.title,
            "target": self.target.map(|t| t.as_str()),
            "pass": self.pass(),
            "entries": entries,
        })
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> ReportDisplay<'a> {
        ReportDisplay { report: self, names }
    }
}

pub struct ReportDisplay<'a> {
    report: &'a ConditionReport,
    names: &'a [String],
}

impl fmt::Display for ReportDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.report;
        write!(f, "{}", r.title)?;
        if let Some(t) = r.target {
            write!(f, " [{t}]")?;
        }
        writeln!(f, ": {}", if r.pass() { "PASS" } else { "FAIL" })?;
        for e in &r.entries {
            write!(f, "  {} {}", if e.pass { "ok  " } else { "FAIL" }, e.label)?;
            if !e.pass {
                write!(f, "\n       residual = {}", e.residual.render(self.names))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
