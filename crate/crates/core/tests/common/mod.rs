#![allow(dead_code)]

use std::path::{Path, PathBuf};

use etymograph::lint::{self, RuleConfig};
use etymograph::model::Document;
use etymograph::{tei, Diagnostic};

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> PathBuf {
    fixture_dir().join(name)
}

/// Every `.xml` fixture, sorted by file name.
pub fn all_fixtures() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .expect("fixture dir")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "xml"))
        .collect();
    v.sort();
    v
}

pub fn name_of(p: &Path) -> String {
    p.file_name().unwrap().to_string_lossy().into_owned()
}

pub fn load(name: &str) -> Document {
    let bytes = std::fs::read(fixture(name)).expect("fixture readable");
    tei::parse_document(&bytes, name).expect("fixture parses").0
}

/// Parser notes plus lint findings, as `etymograph lint` reports them.
pub fn findings(name: &str) -> Vec<Diagnostic> {
    let bytes = std::fs::read(fixture(name)).expect("fixture readable");
    let (doc, mut diags) = tei::parse_document(&bytes, name).expect("fixture parses");
    diags.extend(lint::lint_document(&doc, &RuleConfig::default()));
    etymograph::diagnostic::sort_diagnostics(&mut diags);
    diags
}

pub fn count(diags: &[Diagnostic], rule: &str) -> usize {
    diags.iter().filter(|d| d.rule == rule).count()
}
