use serde::Serialize;

use super::{EtymGraph, GraphError, NodeKind, Relation};

/// One stage of a diachrony and the relation leading to the next stage
/// (or, for the last stage, into the anchor).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub node: String,
    pub relation: Relation,
}

/// A chain of stages, oldest first, ending in `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiachronyPath {
    pub stages: Vec<Stage>,
    /// Entry or sense head the path flows into.
    pub target: String,
    pub anchored_entry: String,
}

/// Every diachrony that ends in the entry or sense with `xml:id` `anchor`.
/// An entry anchor also collects the paths into its senses.
pub fn trace(graph: &EtymGraph, anchor: &str) -> Result<Vec<DiachronyPath>, GraphError> {
    let heads: Vec<&super::GraphNode> = graph
        .nodes()
        .iter()
        .filter(|n| matches!(n.kind, NodeKind::EntryHead | NodeKind::SenseHead))
        .filter(|n| n.xml_id.as_deref() == Some(anchor))
        .collect();
    if heads.is_empty() {
        return Err(GraphError::UnknownAnchor(anchor.to_string()));
    }
    let mut targets: Vec<(String, String)> = Vec::new();
    for h in heads {
        match h.kind {
            NodeKind::EntryHead => {
                let entry = h.xml_id.clone().unwrap_or_default();
                targets.push((h.id.clone(), entry.clone()));
                for e in graph.edges_into(&h.id).filter(|e| e.relation == Relation::SenseOf) {
                    targets.push((e.from.clone(), entry.clone()));
                }
            }
            _ => {
                let entry = graph
                    .edges_from(&h.id)
                    .find(|e| e.relation == Relation::SenseOf)
                    .and_then(|e| graph.node(&e.to))
                    .and_then(|n| n.xml_id.clone())
                    .unwrap_or_default();
                targets.push((h.id.clone(), entry));
            }
        }
    }

    let mut out = Vec::new();
    for (target, entry) in targets {
        let mut found = Vec::new();
        let mut trail = Vec::new();
        walk(graph, &target, &mut trail, &mut found);
        for mut stages in found {
            stages.reverse();
            out.push(DiachronyPath {
                stages,
                target: target.clone(),
                anchored_entry: entry.clone(),
            });
        }
    }
    Ok(out)
}

/// Depth-first backward walk. `trail` holds stages newest first.
fn walk(graph: &EtymGraph, node: &str, trail: &mut Vec<Stage>, found: &mut Vec<Vec<Stage>>) {
    let preds: Vec<_> = graph
        .edges_into(node)
        .filter(|e| e.is_historical())
        .filter(|e| graph.node(&e.from).is_some_and(|n| n.kind == NodeKind::EtymonUnit))
        .filter(|e| !trail.iter().any(|s| s.node == e.from))
        .collect();
    if preds.is_empty() {
        if !trail.is_empty() {
            found.push(trail.clone());
        }
        return;
    }
    for e in preds {
        trail.push(Stage {
            node: e.from.clone(),
            relation: e.relation.clone(),
        });
        walk(graph, &e.from, trail, found);
        trail.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_network;
    use crate::tei::parse_document;

    #[test]
    fn unknown_and_empty() {
        let xml = br#"<TEI xmlns="http://www.tei-c.org/ns/1.0"><text><body>
            <entry xml:id="a" xml:lang="fr"><form><orth>a</orth></form></entry></body></text></TEI>"#;
        let (doc, _) = parse_document(xml, "t.xml").unwrap();
        let g = build_network(&[doc]);
        assert!(trace(&g, "a").unwrap().is_empty());
        assert!(matches!(trace(&g, "b"), Err(GraphError::UnknownAnchor(_))));
    }
}
