//! TEI P5 reading and writing.
//!
//! Parsing is tolerant: well-formed XML always yields a
//! [`Document`](crate::model::Document), and
//! anything the model does not understand is kept verbatim and reported.
//! Emission writes the modeled vocabulary back with normalized layout so that
//! parse, emit, parse is the identity on documents.

pub mod date;
mod emit;
mod parse;
pub(crate) mod xml;

pub use emit::{emit_entry, emit_tei, emit_tei_string};
pub use parse::{parse_citation, parse_document, parse_entry, parse_etym, parse_file, TeiError, MAX_ETYM_DEPTH};
pub(crate) use parse::untyped_message;
