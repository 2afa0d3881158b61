use thiserror::Error;

use super::{CrossRef, Document, IdTarget, LangTag, NodePath, RefKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("no node at {0}")]
    UnknownNode(String),
}

/// Outcome of [`resolve_ref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution<'a> {
    Resolved(&'a IdTarget),
    External(&'a str),
    Unresolved,
}

/// The language in force at `path`: the node's own `xml:lang`, else the
/// nearest ancestor's, up to and including the entry.
pub fn effective_language(path: &NodePath, doc: &Document) -> Result<Option<LangTag>, ModelError> {
    if doc.node(path).is_none() {
        return Err(ModelError::UnknownNode(path.to_string()));
    }
    let mut cur = Some(path.clone());
    while let Some(p) = cur {
        let node = doc.node(&p).expect("ancestor of a resolvable path resolves");
        if let Some(tag) = node.explicit_lang() {
            return Ok(Some(tag.clone()));
        }
        cur = p.parent();
    }
    Ok(None)
}

pub fn resolve_ref<'a>(r: &'a CrossRef, doc: &'a Document) -> Resolution<'a> {
    match &r.kind {
        RefKind::ExternalUri(uri) => Resolution::External(uri),
        RefKind::InternalFragment(id) => match doc.id_index.get(id) {
            Some(t) => Resolution::Resolved(t),
            None => Resolution::Unresolved,
        },
    }
}
