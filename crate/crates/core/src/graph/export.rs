use std::fmt::Write;
use std::str::FromStr;

use serde_json::Value;

use super::{EtymGraph, GraphEdge, GraphError, GraphNode};
use crate::tei::xml::{escape_attr, escape_text};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    GraphMl,
    Json,
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "graphml" => Ok(ExportFormat::GraphMl),
            "json" => Ok(ExportFormat::Json),
            other => Err(format!("unknown graph format {other:?}; expected dot, graphml or json")),
        }
    }
}

pub fn export(graph: &EtymGraph, format: ExportFormat) -> Vec<u8> {
    match format {
        ExportFormat::Dot => dot(graph),
        ExportFormat::GraphMl => graphml(graph),
        ExportFormat::Json => json(graph),
    }
    .into_bytes()
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn dot(g: &EtymGraph) -> String {
    let mut s = String::from("digraph etymograph {\n  rankdir=LR;\n");
    for n in g.nodes() {
        let shape = match n.kind {
            super::NodeKind::EntryHead => "box",
            super::NodeKind::SenseHead => "note",
            super::NodeKind::EtymonUnit => "ellipse",
            super::NodeKind::ExternalConcept => "component",
        };
        let _ = writeln!(s, "  {} [label={}, shape={shape}];", quote(&n.id), quote(&n.label()));
    }
    for e in g.edges() {
        let _ = writeln!(
            s,
            "  {} -> {} [label={}];",
            quote(&e.from),
            quote(&e.to),
            quote(e.relation.as_str())
        );
    }
    s.push_str("}\n");
    s
}

const NODE_KEYS: &[&str] = &["kind", "xml_id", "form", "lang", "date", "gloss", "uri"];
const EDGE_KEYS: &[&str] = &["relation", "process_path", "form_ref"];

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => None,
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => Some(
            items
                .iter()
                .filter_map(scalar)
                .collect::<Vec<_>>()
                .join(" "),
        ),
        Value::Object(_) => None,
        other => Some(other.to_string()),
    }
}

fn data(out: &mut String, indent: &str, obj: &Value, keys: &[&str]) {
    for k in keys {
        let v = if *k == "date" {
            obj.get("date")
                .filter(|d| !d.is_null())
                .map(|d| serde_json::from_value::<crate::model::DateSpan>(d.clone()).expect("date").display())
        } else {
            obj.get(*k).and_then(scalar)
        };
        if let Some(v) = v {
            let _ = writeln!(out, "{indent}<data key=\"{k}\">{}</data>", escape_text(&v));
        }
    }
}

fn graphml(g: &EtymGraph) -> String {
    let mut s = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n",
    );
    for k in NODE_KEYS {
        let _ = writeln!(s, "  <key id=\"{k}\" for=\"node\" attr.name=\"{k}\" attr.type=\"string\"/>");
    }
    for k in EDGE_KEYS {
        let _ = writeln!(s, "  <key id=\"{k}\" for=\"edge\" attr.name=\"{k}\" attr.type=\"string\"/>");
    }
    s.push_str("  <graph id=\"etymograph\" edgedefault=\"directed\">\n");
    for n in g.nodes() {
        let v = serde_json::to_value(n).expect("node serializes");
        let _ = writeln!(s, "    <node id=\"{}\">", escape_attr(&n.id));
        data(&mut s, "      ", &v, NODE_KEYS);
        s.push_str("    </node>\n");
    }
    for (i, e) in g.edges().iter().enumerate() {
        let v = serde_json::to_value(e).expect("edge serializes");
        let _ = writeln!(
            s,
            "    <edge id=\"e{i}\" source=\"{}\" target=\"{}\">",
            escape_attr(&e.from),
            escape_attr(&e.to)
        );
        data(&mut s, "      ", &v, EDGE_KEYS);
        s.push_str("    </edge>\n");
    }
    s.push_str("  </graph>\n</graphml>\n");
    s
}

/// `{"nodes":[...],"edges":[...]}` with object keys sorted, in graph order.
fn json(g: &EtymGraph) -> String {
    let nodes: Vec<String> = g
        .nodes()
        .iter()
        .map(|n| serde_json::to_value(n).expect("node serializes").to_string())
        .collect();
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|e| serde_json::to_value(e).expect("edge serializes").to_string())
        .collect();
    format!("{{\"nodes\":[{}],\"edges\":[{}]}}", nodes.join(","), edges.join(","))
}

#[derive(serde::Deserialize)]
struct Wire {
    nodes: Vec<GraphNode>,
    edges: Vec<GraphEdge>,
}

/// Rebuild a graph from its JSON export.
pub fn from_json(text: &str) -> Result<EtymGraph, GraphError> {
    let wire: Wire = serde_json::from_str(text)?;
    let mut g = EtymGraph::new();
    for n in wire.nodes {
        let id = n.id.clone();
        if g.contains(&id) {
            return Err(GraphError::Invalid(format!("duplicate node id {id}")));
        }
        g.add_node(n);
    }
    for e in wire.edges {
        let (from, to) = (e.from.clone(), e.to.clone());
        if !g.add_edge(e) {
            return Err(GraphError::Invalid(format!("edge {from} -> {to} has a missing endpoint")));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_json() {
        assert_eq!(export(&EtymGraph::new(), ExportFormat::Json), br#"{"nodes":[],"edges":[]}"#);
    }

    #[test]
    fn formats_parse() {
        assert_eq!("GraphML".parse::<ExportFormat>().unwrap(), ExportFormat::GraphMl);
        assert!("svg".parse::<ExportFormat>().is_err());
    }
}
