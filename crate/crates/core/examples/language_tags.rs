//! Check language tags against the grammar and the registry snapshot.
//!
//! cargo run --example language_tags -- gmh emodeng en-Latn-GB x-vulgar

use etymograph::langtag::{expand_abbreviation, parse_tag, registry_lookup, AbbrevTable, RegistrySnapshot};

fn main() {
    let snap = RegistrySnapshot::bundled();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let tags = if args.is_empty() {
        ["fro", "gmh", "la", "emodeng", "lat", "en--us", "sr-Latn-RS"].map(String::from).to_vec()
    } else {
        args
    };
    println!("registry snapshot {}", snap.snapshot_date());
    for t in &tags {
        let tag = parse_tag(t);
        match registry_lookup(&tag, snap) {
            Ok(status) => println!("{t:12} well-formed, {status:?}"),
            Err(e) => println!("{t:12} {e}"),
        }
    }
    let table = AbbrevTable::starter();
    for label in ["Ahd.", "mhd.", "afr."] {
        let tag = expand_abbreviation(label, &table).map(|t| t.raw);
        println!("{label:6} -> {}", tag.as_deref().unwrap_or("(unknown)"));
    }
}
