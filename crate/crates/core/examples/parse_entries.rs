//! Parse TEI files and list each entry's etymologies.
//!
//! cargo run --example parse_entries -- fixtures/ex17_handschuh.xml

use etymograph::model::{EtymologyBlock, LexicalEntry};
use etymograph::tei;

fn show_block(b: &EtymologyBlock, depth: usize) {
    let pad = "  ".repeat(depth);
    println!("{pad}etym {}", b.etym_type.as_str());
    for c in &b.citations {
        let form = c.form_text().unwrap_or_else(|| "-".into());
        let lang = c.lang.as_ref().map(|l| l.raw.as_str()).unwrap_or("");
        println!("{pad}  cit {} {form} {lang}", c.kind.as_str());
    }
    for n in &b.nested {
        show_block(n, depth + 1);
    }
}

fn show_entry(e: &LexicalEntry) {
    println!(
        "entry {} [{}] {}",
        e.id.as_deref().unwrap_or("(no id)"),
        e.lang.as_ref().map(|l| l.raw.as_str()).unwrap_or("?"),
        e.headword().unwrap_or_default()
    );
    for s in &e.senses {
        for b in &s.etymologies {
            show_block(b, 1);
        }
    }
    for b in &e.etymologies {
        show_block(b, 1);
    }
}

fn main() {
    let files: Vec<String> = std::env::args().skip(1).collect();
    let files = if files.is_empty() {
        vec![concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ex17_handschuh.xml").to_string()]
    } else {
        files
    };
    for f in files {
        let (doc, notes) = match tei::parse_file(f.as_ref()) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("{f}: {e}");
                std::process::exit(1);
            }
        };
        for n in &notes {
            eprintln!("{n}");
        }
        doc.entries.iter().for_each(show_entry);
    }
}
