//! Words and their disjuncts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::disjunct::{Connector, Disjunct};
use crate::format::{self, FormatError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("cannot add an empty disjunct set for `{0}`")]
    EmptyEntry(String),
}

/// A word-to-disjuncts map. Values are never empty and never contain
/// duplicates; disjunct order is the order of first definition.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<Disjunct>>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reads a lexicon file. A multi-word head assigns the same disjuncts to
    /// every listed word.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut entries: BTreeMap<String, Vec<Disjunct>> = BTreeMap::new();
        for entry in format::parse_entries(text, false)? {
            let mut ds: Vec<Disjunct> = Vec::with_capacity(entry.disjuncts.len());
            for raw in entry.disjuncts {
                if ds.contains(&raw.disjunct) {
                    return Err(FormatError::DuplicateDisjunct {
                        line: raw.line,
                        word: entry.words[0].clone(),
                        disjunct: raw.disjunct.to_string(),
                    }
                    .into());
                }
                ds.push(raw.disjunct);
            }
            for word in entry.words {
                if entries.contains_key(&word) {
                    return Err(FormatError::DuplicateWord {
                        line: entry.line,
                        word,
                    }
                    .into());
                }
                entries.insert(word, ds.clone());
            }
        }
        Ok(Lexicon { entries })
    }

    /// One line per word, words in lexicographic order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (word, ds) in &self.entries {
            let _ = write!(out, "{word}: ");
            for (i, d) in ds.iter().enumerate() {
                if i > 0 {
                    out.push_str(" | ");
                }
                let _ = write!(out, "{d}");
            }
            out.push('\n');
        }
        out
    }

    pub fn lookup(&self, word: &str) -> Option<&[Disjunct]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[Disjunct])> {
        self.entries
            .iter()
            .map(|(w, ds)| (w.as_str(), ds.as_slice()))
    }

    /// Every distinct disjunct in the lexicon, ordered by display form.
    pub fn inventory(&self) -> Vec<Disjunct> {
        let mut seen: BTreeMap<String, &Disjunct> = BTreeMap::new();
        for d in self.entries.values().flatten() {
            seen.entry(d.to_string()).or_insert(d);
        }
        seen.into_values().cloned().collect()
    }

    /// Number of words whose entry contains a disjunct compatible with `d`
    /// (see [`Disjunct::compatible_with`]).
    pub fn compatible_frequency(&self, d: &Disjunct) -> usize {
        self.entries
            .values()
            .filter(|ds| ds.iter().any(|e| d.compatible_with(e)))
            .count()
    }

    /// Every connector used anywhere in the lexicon.
    pub fn connector_vocabulary(&self) -> BTreeSet<Connector> {
        self.entries
            .values()
            .flatten()
            .flat_map(|d| d.left.iter().chain(&d.right))
            .cloned()
            .collect()
    }

    /// Returns a copy with `ds` merged into `word`'s entry (existing
    /// disjuncts first, new ones appended).
    pub fn with_entry(&self, word: &str, ds: &[Disjunct]) -> Result<Lexicon, LexiconError> {
        let mut out = self.clone();
        out.add_entry(word, ds)?;
        Ok(out)
    }

    pub fn add_entry(&mut self, word: &str, ds: &[Disjunct]) -> Result<(), LexiconError> {
        if ds.is_empty() {
            return Err(LexiconError::EmptyEntry(word.to_owned()));
        }
        let entry = self.entries.entry(word.to_lowercase()).or_default();
        for d in ds {
            if !entry.contains(d) {
                entry.push(d.clone());
            }
        }
        Ok(())
    }
}
