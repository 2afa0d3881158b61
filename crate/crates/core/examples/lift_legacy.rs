//! Lift a flat `<mentioned>` etymology and normalize the result.

use etymograph::langtag::AbbrevTable;
use etymograph::lift::{lift_flat_etym, normalize_entry, NormalizeOptions};
use etymograph::tei;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/abend_legacy.xml");
    let (doc, _) = tei::parse_file(path.as_ref()).expect("fixture parses");
    let mut entry = doc.entries[0].clone();

    let mut table = AbbrevTable::starter();
    table.insert("Schwäb.", "de").unwrap();
    let (lifted, diags) = lift_flat_etym(&entry.etymologies[0], &table).expect("legacy block");
    for d in &diags {
        eprintln!("{d}");
    }
    entry.etymologies[0] = lifted;

    let (entry, changes) = normalize_entry(&entry, NormalizeOptions::default());
    for d in &changes {
        eprintln!("{d}");
    }
    print!("{}", tei::emit_entry(&entry));
}
