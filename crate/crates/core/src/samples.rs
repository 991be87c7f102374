//! The bundled sample grammar, concept hierarchies and training corpus.

use crate::hierarchy::{ConceptHierarchy, Hierarchies, HierarchyKind};
use crate::lexicon::Lexicon;

/// The grammar of nouns, adjectives, `eats` and `the`.
pub const SAMPLE_LEXICON: &str = include_str!("../data/sample.lex");
/// [`SAMPLE_LEXICON`] plus the noun `cow` and `((A,Os) ( ))` for nouns, so
/// that an object may take an adjective without a determiner.
pub const SEMANTIC_LEXICON: &str = include_str!("../data/semantic.lex");
pub const NOUN_HIERARCHY: &str = include_str!("../data/nouns.hier");
pub const VERB_HIERARCHY: &str = include_str!("../data/verbs.hier");
/// One sentence per line, `#` comments.
pub const TRAINING_CORPUS: &str = include_str!("../data/corpus.txt");

pub fn sample_lexicon() -> Lexicon {
    Lexicon::parse(SAMPLE_LEXICON).expect("bundled lexicon parses")
}

pub fn semantic_lexicon() -> Lexicon {
    Lexicon::parse(SEMANTIC_LEXICON).expect("bundled lexicon parses")
}

pub fn hierarchies() -> Hierarchies {
    let nouns = ConceptHierarchy::parse(HierarchyKind::Noun, NOUN_HIERARCHY)
        .expect("bundled noun hierarchy parses");
    let verbs = ConceptHierarchy::parse(HierarchyKind::Verb, VERB_HIERARCHY)
        .expect("bundled verb hierarchy parses");
    Hierarchies::new(nouns, verbs).expect("bundled hierarchies are disjoint")
}

/// Tokenized sentences of [`TRAINING_CORPUS`].
pub fn training_sentences() -> Vec<Vec<String>> {
    crate::format::corpus_lines(TRAINING_CORPUS)
        .map(|(_, words)| words)
        .collect()
}
