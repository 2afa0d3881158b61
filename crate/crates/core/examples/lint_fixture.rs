//! Lint a document with a custom rule configuration.

use etymograph::diagnostic::Severity;
use etymograph::lint::{lint_document, RuleConfig};
use etymograph::tei;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ex04_chef_as_printed.xml");
    let (doc, _) = tei::parse_file(path.as_ref()).expect("fixture parses");

    let mut cfg = RuleConfig::default();
    cfg.override_severity("W-CHAIN-BRANCH", Severity::Info).unwrap();
    cfg.disable("E-CHAIN-ASYM").unwrap();

    let findings = lint_document(&doc, &cfg);
    for d in &findings {
        println!("{d}");
    }
    let errors = findings.iter().filter(|d| d.is_error()).count();
    println!("{} findings, {errors} errors", findings.len());
}
