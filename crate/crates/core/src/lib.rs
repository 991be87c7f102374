//! Link Grammar parsing with lexical acquisition of unknown words.
//!
//! Words are described by disjuncts: ordered lists of connectors that must
//! link to words on their left and right. A sentence is valid when one
//! disjunct can be chosen per word so that all connectors link up without
//! crossing, the words are connected, and no pair of words is linked twice.
//!
//! Because the constraints run in both directions, a valid sentence that
//! contains an unknown word pins down the disjuncts that word could carry
//! ([`syntax_acq`]). Connectors of known nouns and verbs can also record the
//! words they linked to, generalize those records through a concept
//! hierarchy, and use them to place an unknown word in the hierarchy
//! ([`semantic_acq`]).
//!
//! ```
//! use linkacq::{linker, samples};
//!
//! let lex = samples::sample_lexicon();
//! let linkages = linker::parse(&["the", "condor", "eats", "the", "meat"], &lex).unwrap();
//! assert_eq!(linkages.len(), 1);
//! print!("{}", linker::render_diagram(&linkages[0]).unwrap());
//! ```

pub mod disjunct;
pub mod format;
pub mod hierarchy;
pub mod lexicon;
pub mod linker;
pub mod samples;
pub mod semantic_acq;
pub mod syntax_acq;

pub use disjunct::{Connector, Disjunct, Side, Slot};
pub use format::tokenize;
pub use hierarchy::{ConceptHierarchy, Hierarchies, HierarchyKind};
pub use lexicon::Lexicon;
pub use linker::{Link, Linkage};
