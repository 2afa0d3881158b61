use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{NodePath, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "error" => Some(Severity::Error),
            "warning" | "warn" => Some(Severity::Warning),
            "info" => Some(Severity::Info),
            _ => None,
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Location {
    pub file: String,
    pub entry: Option<usize>,
    pub entry_id: Option<String>,
    pub path: Option<NodePath>,
    pub line: Option<u32>,
    pub col: Option<u32>,
}

impl Location {
    pub fn file(file: &str) -> Self {
        Self {
            file: file.to_string(),
            ..Self::default()
        }
    }

    pub fn with_span(mut self, span: Span) -> Self {
        if span.is_known() {
            self.line = Some(span.line);
            self.col = Some(span.col);
        }
        self
    }
}

/// One finding. `rule` is a catalogue id such as `E-CHAIN-DANGLING`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule: &'static str,
    pub severity: Severity,
    pub location: Location,
    pub message: String,
    pub related_ids: Vec<String>,
}

/// Field order of the JSON line form.
#[derive(Serialize)]
struct Record<'a> {
    rule: &'a str,
    severity: Severity,
    file: &'a str,
    entry: Option<serde_json::Value>,
    path: Option<String>,
    line: Option<u32>,
    col: Option<u32>,
    message: &'a str,
    related: &'a [String],
}

impl Diagnostic {
    pub fn new(rule: &'static str, severity: Severity, location: Location, message: impl Into<String>) -> Self {
        Self {
            rule,
            severity,
            location,
            message: message.into(),
            related_ids: Vec::new(),
        }
    }

    pub fn related(mut self, ids: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.related_ids.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// Entry id when present, else its index.
    fn entry_value(&self) -> Option<serde_json::Value> {
        match (&self.location.entry_id, self.location.entry) {
            (Some(id), _) => Some(id.clone().into()),
            (None, Some(i)) => Some(i.into()),
            (None, None) => None,
        }
    }

    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        let rec = Record {
            rule: self.rule,
            severity: self.severity,
            file: &self.location.file,
            entry: self.entry_value(),
            path: self.location.path.as_ref().map(ToString::to_string),
            line: self.location.line,
            col: self.location.col,
            message: &self.message,
            related: &self.related_ids,
        };
        serde_json::to_string(&rec).expect("diagnostic serializes")
    }

    fn sort_key(&self) -> (&str, Option<usize>, Option<&NodePath>, &str, &str) {
        (
            &self.location.file,
            self.location.entry,
            self.location.path.as_ref(),
            self.rule,
            &self.message,
        )
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.location.file)?;
        if let (Some(l), Some(c)) = (self.location.line, self.location.col) {
            write!(f, ":{l}:{c}")?;
        }
        write!(f, ": {} [{}]", self.severity, self.rule)?;
        if let Some(id) = &self.location.entry_id {
            write!(f, " entry {id}")?;
        } else if let Some(i) = self.location.entry {
            write!(f, " entry #{i}")?;
        }
        if let Some(p) = &self.location.path {
            write!(f, " {p}")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl PartialOrd for Diagnostic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Diagnostic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.related_ids.cmp(&other.related_ids))
            .then_with(|| self.severity.cmp(&other.severity))
    }
}

/// Sort into the canonical order and drop exact duplicates.
pub fn sort_diagnostics(diags: &mut Vec<Diagnostic>) {
    diags.sort();
    diags.dedup();
}
