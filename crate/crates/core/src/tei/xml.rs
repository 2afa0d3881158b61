use roxmltree::Node;

pub(crate) const XML_NS: &str = "http://www.w3.org/XML/1998/namespace";
pub(crate) const TEI_NS: &str = "http://www.tei-c.org/ns/1.0";

pub(crate) fn local<'a>(node: &Node<'a, '_>) -> &'a str {
    node.tag_name().name()
}

/// Unprefixed attribute.
pub(crate) fn attr<'a>(node: &Node<'a, '_>, name: &str) -> Option<&'a str> {
    node.attribute(name)
}

pub(crate) fn xml_attr<'a>(node: &Node<'a, '_>, name: &str) -> Option<&'a str> {
    node.attribute((XML_NS, name))
}

/// Collapse whitespace runs to one space and trim.
pub(crate) fn collapse(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Collapse whitespace runs to one space without trimming.
pub(crate) fn squeeze(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_ws = false;
    for ch in s.chars() {
        if ch.is_whitespace() {
            if !in_ws {
                out.push(' ');
            }
            in_ws = true;
        } else {
            out.push(ch);
            in_ws = false;
        }
    }
    out
}

/// All descendant text, collapsed.
pub(crate) fn text_of(node: &Node) -> String {
    let raw: String = node
        .descendants()
        .filter(|n| n.is_text())
        .filter_map(|n| n.text())
        .collect();
    collapse(&raw)
}

pub(crate) fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            c => out.push(c),
        }
    }
    out
}

pub(crate) fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '"' => out.push_str("&quot;"),
            '\n' => out.push_str("&#10;"),
            '\t' => out.push_str("&#9;"),
            c => out.push(c),
        }
    }
    out
}

/// Qualified attribute name: `xml:` prefix for the XML namespace, local
/// name otherwise.
fn qname(a: &roxmltree::Attribute) -> String {
    match a.namespace() {
        Some(XML_NS) => format!("xml:{}", a.name()),
        _ => a.name().to_string(),
    }
}

/// Render attributes sorted by qualified name.
pub(crate) fn attrs_string(pairs: &[(String, String)]) -> String {
    let mut sorted: Vec<&(String, String)> = pairs.iter().collect();
    sorted.sort();
    sorted
        .iter()
        .map(|(k, v)| format!(" {k}=\"{}\"", escape_attr(v)))
        .collect()
}

/// Compact canonical XML for an element the model keeps verbatim. Comments
/// and processing instructions are dropped, attributes sorted, namespaces
/// reduced to the `xml:` prefix. Serializing the re-parsed output yields
/// the same string.
pub(crate) fn canonical(node: &Node) -> String {
    let mut out = String::new();
    write_canonical(node, &mut out);
    out
}

fn write_canonical(node: &Node, out: &mut String) {
    if node.is_text() {
        out.push_str(&escape_text(node.text().unwrap_or_default()));
        return;
    }
    if !node.is_element() {
        return;
    }
    let name = local(node);
    let pairs: Vec<(String, String)> = node
        .attributes()
        .map(|a| (qname(&a), a.value().to_string()))
        .collect();
    out.push('<');
    out.push_str(name);
    out.push_str(&attrs_string(&pairs));
    if !node.children().any(|c| c.is_element() || c.is_text()) {
        out.push_str("/>");
        return;
    }
    out.push('>');
    for c in node.children() {
        write_canonical(&c, out);
    }
    out.push_str("</");
    out.push_str(name);
    out.push('>');
}
