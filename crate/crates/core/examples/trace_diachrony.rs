//! Trace the stages leading into an entry.

use etymograph::graph::{build_network, trace};
use etymograph::tei;

fn main() {
    let anchor = std::env::args().nth(1).unwrap_or_else(|| "chef".into());
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let docs: Vec<_> = ["ex04_chef_cleaned.xml", "ex12_kiti.xml", "besides_as_printed.xml"]
        .iter()
        .map(|n| tei::parse_file(format!("{dir}/{n}").as_ref()).expect("fixture parses").0)
        .collect();
    let g = build_network(&docs);
    let paths = match trace(&g, &anchor) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    for p in paths {
        let stages: Vec<String> = p
            .stages
            .iter()
            .map(|s| format!("{} -{}->", g.node(&s.node).unwrap().label(), s.relation))
            .collect();
        println!("{} {}", stages.join(" "), g.node(&p.target).unwrap().label());
    }
}
