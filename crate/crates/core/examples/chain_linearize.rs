//! Check a prev/next chain and put its stages in order.

use etymograph::graph::linearize;
use etymograph::lint::check_chain;
use etymograph::tei;

fn main() {
    for name in ["ex04_chef_cleaned.xml", "ex04_chef_as_printed.xml"] {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        let (doc, _) = tei::parse_file(path.as_ref()).expect("fixture parses");
        let block = &doc.entries[0].etymologies[0];
        let report = check_chain(block, &doc);
        let lin = linearize(&report, block);
        println!("{name}: ordered={}", lin.ordered);
        for (i, seg) in lin.segments.iter().enumerate() {
            let ids: Vec<&str> = seg.iter().filter_map(|c| c.id.as_deref()).collect();
            println!("  segment {}: {}", i + 1, ids.join(" > "));
        }
        for d in &report.defects {
            println!("  {} {}", d.rule, d.message);
        }
    }
}
