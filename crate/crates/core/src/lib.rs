//! Structured etymologies in TEI P5 dictionaries.
//!
//! The crate reads TEI dictionary entries whose etymologies are encoded as
//! typed, nested `<etym>` blocks of `<cit type="etymon">` citations, checks
//! them against a rule catalogue, turns them into a typed lexical network,
//! and lifts old flat `<lang>`/`<mentioned>` etymologies into the structured
//! form.
//!
//! ```
//! use etymograph::{lint, tei};
//!
//! let xml = br#"<TEI xmlns="http://www.tei-c.org/ns/1.0"><text><body>
//!   <entry xml:id="mare" xml:lang="scn">
//!     <form type="lemma"><orth>mari</orth></form>
//!     <etym type="inheritance">
//!       <cit type="etymon"><oRef xml:lang="la">mare</oRef></cit>
//!     </etym>
//!   </entry>
//! </body></text></TEI>"#;
//! let (doc, _) = tei::parse_document(xml, "mare.xml").unwrap();
//! assert_eq!(doc.entries[0].etymologies[0].citations[0].form_text().unwrap(), "mare");
//! assert!(lint::lint_document(&doc, &lint::RuleConfig::default()).is_empty());
//! ```

pub mod cli;
pub mod diagnostic;
pub mod graph;
pub mod langtag;
pub mod lift;
pub mod lint;
pub mod model;
pub mod tei;

pub use diagnostic::{Diagnostic, Severity};
pub use model::Document;
