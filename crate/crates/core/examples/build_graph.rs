//! Build the lexical network over several documents and export it.
//!
//! cargo run --example build_graph -- dot

use etymograph::graph::{build_network_with_stats, export, ExportFormat, NodeKind};
use etymograph::tei;

fn main() {
    let format: ExportFormat = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "json".into())
        .parse()
        .unwrap_or_else(|e| {
            eprintln!("{e}");
            std::process::exit(2);
        });
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let docs: Vec<_> = ["ex16_utsi_uni_etym.xml", "ex17_handschuh.xml", "ex11_kidney.xml"]
        .iter()
        .map(|n| tei::parse_file(format!("{dir}/{n}").as_ref()).expect("fixture parses").0)
        .collect();
    let (g, stats) = build_network_with_stats(&docs);
    eprintln!(
        "{} nodes ({} etymon units), {} edges, {} unresolved pointers",
        g.nodes().len(),
        g.count_kind(NodeKind::EtymonUnit),
        g.edges().len(),
        stats.unresolved_refs
    );
    assert!(g.invariant_violations().is_empty());
    print!("{}", String::from_utf8(export(&g, format)).unwrap());
}
