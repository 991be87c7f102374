//! Semantic acquisition.
//!
//! Parsing fully known sentences tags each noun and verb connector with the
//! word it linked to. Observations of the same disjunct are generalized
//! through the concept hierarchies, and an unknown word is classified by
//! the tags of the known words it links to.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use indexmap::IndexMap;
use thiserror::Error;

use crate::disjunct::{Connector, Disjunct, Side, Slot};
use crate::format::{self, FormatError};
use crate::hierarchy::{ConceptHierarchy, Hierarchies, HierarchyError, HierarchyKind};
use crate::lexicon::Lexicon;
use crate::linker::{self, validate, LinkError, Linkage};
use crate::syntax_acq::{acquire_syntax, AcquireError, AcquireOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticError {
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("line {line}: tag `{tag}` is in neither hierarchy")]
    UnknownTag { line: usize, tag: String },
    #[error("`{word}` at position {position} is not in the lexicon")]
    UnknownWord { position: usize, word: String },
    #[error("`{word}` at position {position} is already in the lexicon")]
    NotUnknown { position: usize, word: String },
    #[error("position {position} is outside the sentence")]
    BadPosition { position: usize },
    #[error("invalid linkage: {0}")]
    InvalidLinkage(String),
    #[error("no known word linked to `{word}` has tagged usages")]
    NoSemanticEvidence { word: String },
    #[error(transparent)]
    Acquire(#[from] AcquireError),
    #[error(transparent)]
    Link(#[from] LinkError),
}

/// A word or concept attached to a connector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemanticTag {
    pub value: String,
    pub kind: HierarchyKind,
}

/// A disjunct whose connectors record what they linked to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedDisjunct {
    pub shape: Disjunct,
    pub tags: BTreeMap<Slot, SemanticTag>,
    /// Number of observations merged into this entry.
    pub support: usize,
}

impl TaggedDisjunct {
    pub fn tag(&self, slot: Slot) -> Option<&str> {
        self.tags.get(&slot).map(|t| t.value.as_str())
    }
}

impl fmt::Display for TaggedDisjunct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, side: Side, conns: &[Connector]| {
            if conns.is_empty() {
                return f.write_str("( )");
            }
            f.write_str("(")?;
            for (index, c) in conns.iter().enumerate() {
                if index > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
                if let Some(t) = self.tags.get(&Slot { side, index }) {
                    write!(f, "_{}", t.value)?;
                }
            }
            f.write_str(")")
        };
        f.write_str("(")?;
        list(f, Side::Left, &self.shape.left)?;
        f.write_str(" ")?;
        list(f, Side::Right, &self.shape.right)?;
        f.write_str(")")
    }
}

/// Tagged usages per word, in order of first observation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SemanticLexicon {
    entries: IndexMap<String, Vec<TaggedDisjunct>>,
}

impl SemanticLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, word: &str) -> Option<&[TaggedDisjunct]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[TaggedDisjunct])> {
        self.entries
            .iter()
            .map(|(w, ds)| (w.as_str(), ds.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, word: &str, td: TaggedDisjunct) {
        self.entries.entry(word.to_owned()).or_default().push(td);
    }

    /// Reads the lexicon format with `_tag` suffixes on connectors and an
    /// optional `;support=N` after each disjunct. Tags are resolved against
    /// `hiers`.
    pub fn parse(text: &str, hiers: &Hierarchies) -> Result<Self, SemanticError> {
        let mut entries: IndexMap<String, Vec<TaggedDisjunct>> = IndexMap::new();
        for entry in format::parse_entries(text, true)? {
            let mut tds = Vec::with_capacity(entry.disjuncts.len());
            for raw in entry.disjuncts {
                let mut tags = BTreeMap::new();
                for (slot, value) in raw.tags {
                    let kind = hiers
                        .kind_of(&value)
                        .ok_or_else(|| SemanticError::UnknownTag {
                            line: raw.line,
                            tag: value.clone(),
                        })?;
                    tags.insert(slot, SemanticTag { value, kind });
                }
                tds.push(TaggedDisjunct {
                    shape: raw.disjunct,
                    tags,
                    support: raw.support.unwrap_or(1),
                });
            }
            for word in entry.words {
                if entries.contains_key(&word) {
                    return Err(FormatError::DuplicateWord {
                        line: entry.line,
                        word,
                    }
                    .into());
                }
                entries.insert(word, tds.clone());
            }
        }
        Ok(SemanticLexicon { entries })
    }

    /// One `word: d1;support=N | d2;support=M` line per word.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (word, tds) in &self.entries {
            let _ = write!(out, "{word}:");
            for (i, td) in tds.iter().enumerate() {
                let sep = if i == 0 { " " } else { " | " };
                let _ = write!(out, "{sep}{td};support={}", td.support);
            }
            out.push('\n');
        }
        out
    }
}

/// True iff `a` is `b` or an ancestor of `b`.
pub fn subsumes(h: &ConceptHierarchy, a: &str, b: &str) -> Result<bool, HierarchyError> {
    h.subsumes(a, b)
}

/// The deepest concept subsuming both `a` and `b`.
pub fn lcs<'h>(h: &'h ConceptHierarchy, a: &str, b: &str) -> Result<&'h str, HierarchyError> {
    h.lcs(a, b)
}

/// Records, for every link between two nouns or verbs, the word at the
/// other end on each endpoint's connector. Each tagged word gains one
/// observation of its chosen disjunct.
pub fn tag_sentence(
    linkage: &Linkage,
    lex: &Lexicon,
    hiers: &Hierarchies,
    semlex: &SemanticLexicon,
) -> Result<SemanticLexicon, SemanticError> {
    for (position, word) in linkage.words.iter().enumerate() {
        if !lex.contains(word) {
            return Err(SemanticError::UnknownWord {
                position,
                word: word.clone(),
            });
        }
    }
    if let Some(v) = validate(linkage).first() {
        return Err(SemanticError::InvalidLinkage(v.to_string()));
    }

    let mut tags: BTreeMap<usize, BTreeMap<Slot, SemanticTag>> = BTreeMap::new();
    for (link, (ls, rs)) in linkage.links.iter().zip(linkage.link_slots()) {
        let (lw, rw) = (&linkage.words[link.left], &linkage.words[link.right]);
        let (Some(lk), Some(rk)) = (hiers.kind_of(lw), hiers.kind_of(rw)) else {
            continue;
        };
        tags.entry(link.left).or_default().insert(
            ls,
            SemanticTag {
                value: rw.clone(),
                kind: rk,
            },
        );
        tags.entry(link.right).or_default().insert(
            rs,
            SemanticTag {
                value: lw.clone(),
                kind: lk,
            },
        );
    }

    let mut out = semlex.clone();
    for (p, tags) in tags {
        out.push(
            &linkage.words[p],
            TaggedDisjunct {
                shape: linkage.choices[p].clone(),
                tags,
                support: 1,
            },
        );
    }
    Ok(out)
}

/// Parses a fully known sentence and tags its first linkage.
pub fn train_sentence<S: AsRef<str>>(
    words: &[S],
    lex: &Lexicon,
    hiers: &Hierarchies,
    semlex: &SemanticLexicon,
) -> Result<SemanticLexicon, SemanticError> {
    let linkages = linker::parse(words, lex)?;
    let Some(first) = linkages.first() else {
        return Err(SemanticError::InvalidLinkage(
            "the sentence has no linkage".to_owned(),
        ));
    };
    tag_sentence(first, lex, hiers, semlex)
}

/// Merges observations of the same disjunct whose tags share a concept
/// below the root in every tagged slot. Merged tags become the per-slot
/// least common subsumer and supports add up. Pairs are tried in insertion
/// order until nothing merges.
pub fn generalize(
    semlex: &SemanticLexicon,
    hiers: &Hierarchies,
) -> Result<SemanticLexicon, SemanticError> {
    let mut entries = IndexMap::new();
    for (word, tds) in &semlex.entries {
        for td in tds {
            for tag in td.tags.values() {
                let h = hiers.get(tag.kind);
                if !h.contains(&tag.value) {
                    return Err(HierarchyError::UnknownNode(tag.value.clone(), tag.kind).into());
                }
            }
        }
        let mut tds = tds.clone();
        'fixpoint: loop {
            for i in 0..tds.len() {
                for j in i + 1..tds.len() {
                    if let Some(merged) = merge(&tds[i], &tds[j], hiers)? {
                        tds[i] = merged;
                        tds.remove(j);
                        continue 'fixpoint;
                    }
                }
            }
            break;
        }
        entries.insert(word.clone(), tds);
    }
    Ok(SemanticLexicon { entries })
}

fn merge(
    a: &TaggedDisjunct,
    b: &TaggedDisjunct,
    hiers: &Hierarchies,
) -> Result<Option<TaggedDisjunct>, HierarchyError> {
    if a.shape != b.shape || !a.tags.keys().eq(b.tags.keys()) {
        return Ok(None);
    }
    let mut tags = BTreeMap::new();
    for ((slot, x), y) in a.tags.iter().zip(b.tags.values()) {
        if x.kind != y.kind {
            return Ok(None);
        }
        let h = hiers.get(x.kind);
        let common = h.lcs(&x.value, &y.value)?;
        if common == h.root() {
            return Ok(None);
        }
        tags.insert(
            *slot,
            SemanticTag {
                value: common.to_owned(),
                kind: x.kind,
            },
        );
    }
    Ok(Some(TaggedDisjunct {
        shape: a.shape.clone(),
        tags,
        support: a.support + b.support,
    }))
}

/// Why a concept was proposed for an unknown word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Evidence {
    /// The known word linked to the unknown word.
    pub word: String,
    /// The usage of `word` that applied, in tagged display form.
    pub usage: String,
    /// `(filler, tag)` pairs: each other tagged slot's actual word and the
    /// tag that subsumes it.
    pub facts: Vec<(String, String)>,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.word, self.usage)?;
        for (i, (filler, tag)) in self.facts.iter().enumerate() {
            let sep = if i == 0 { " because " } else { ", " };
            write!(f, "{sep}{filler} <= {tag}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub concept: String,
    pub kind: HierarchyKind,
    pub evidence: Vec<Evidence>,
}

/// Concepts for the unknown word at `position`, read off the tagged usages
/// of the known words it links to in the acquisition's linkages.
///
/// A usage applies when its shape is the linked word's chosen disjunct and
/// every other tagged slot holds a word the tag subsumes. Results are sorted
/// by concept name.
pub fn classify_unknown<S: AsRef<str>>(
    words: &[S],
    position: usize,
    lex: &Lexicon,
    semlex: &SemanticLexicon,
    hiers: &Hierarchies,
    opts: AcquireOptions,
) -> Result<Vec<Classification>, SemanticError> {
    let Some(unknown) = words.get(position).map(AsRef::as_ref) else {
        return Err(SemanticError::BadPosition { position });
    };
    if lex.contains(unknown) {
        return Err(SemanticError::NotUnknown {
            position,
            word: unknown.to_owned(),
        });
    }
    let acquired = acquire_syntax(words, lex, opts)?;

    let mut examined = false;
    let mut found: BTreeMap<(String, HierarchyKind), BTreeSet<Evidence>> = BTreeMap::new();
    for linkage in &acquired.linkages {
        // For each position, slot -> word at the other end of the link.
        let mut fillers: Vec<BTreeMap<Slot, usize>> = vec![BTreeMap::new(); linkage.len()];
        for (link, (ls, rs)) in linkage.links.iter().zip(linkage.link_slots()) {
            fillers[link.left].insert(ls, link.right);
            fillers[link.right].insert(rs, link.left);
        }
        for &q in fillers[position].values() {
            let known = &linkage.words[q];
            let Some(usages) = semlex.get(known) else {
                continue;
            };
            let Some((&own_slot, _)) = fillers[q].iter().find(|(_, &p)| p == position) else {
                continue;
            };
            for usage in usages {
                if usage.shape != linkage.choices[q] {
                    continue;
                }
                let Some(tag) = usage.tags.get(&own_slot) else {
                    continue;
                };
                examined = true;
                let mut facts = Vec::new();
                let mut compatible = true;
                for (s, t) in &usage.tags {
                    if *s == own_slot {
                        continue;
                    }
                    let filler = &linkage.words[fillers[q][s]];
                    let h = hiers.get(t.kind);
                    if h.contains(filler) && h.subsumes(&t.value, filler)? {
                        facts.push((filler.clone(), t.value.clone()));
                    } else {
                        compatible = false;
                        break;
                    }
                }
                if compatible {
                    found
                        .entry((tag.value.clone(), tag.kind))
                        .or_default()
                        .insert(Evidence {
                            word: known.clone(),
                            usage: usage.to_string(),
                            facts,
                        });
                }
            }
        }
    }
    if !examined {
        return Err(SemanticError::NoSemanticEvidence {
            word: unknown.to_owned(),
        });
    }
    Ok(found
        .into_iter()
        .map(|((concept, kind), evidence)| Classification {
            concept,
            kind,
            evidence: evidence.into_iter().collect(),
        })
        .collect())
}

/// Combines an earlier classification with a new one.
///
/// Keeps the concepts of either set that are related by subsumption to some
/// member of both sets, reduced to the most specific. When nothing agrees,
/// falls back to the least common subsumers of cross pairs, again reduced
/// to the most specific.
pub fn refine(
    existing: &BTreeSet<String>,
    new_obs: &BTreeSet<String>,
    h: &ConceptHierarchy,
) -> Result<BTreeSet<String>, HierarchyError> {
    for c in existing.iter().chain(new_obs) {
        h.depth(c)?;
    }
    if existing.is_empty() {
        return most_specific(new_obs.clone(), h);
    }
    if new_obs.is_empty() {
        return most_specific(existing.clone(), h);
    }
    let related = |c: &str, set: &BTreeSet<String>| -> Result<bool, HierarchyError> {
        for m in set {
            if h.subsumes(c, m)? || h.subsumes(m, c)? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let mut agreed = BTreeSet::new();
    for c in existing.union(new_obs) {
        if related(c, existing)? && related(c, new_obs)? {
            agreed.insert(c.clone());
        }
    }
    if agreed.is_empty() {
        for a in existing {
            for b in new_obs {
                agreed.insert(h.lcs(a, b)?.to_owned());
            }
        }
    }
    most_specific(agreed, h)
}

/// Drops every concept that strictly subsumes another member.
fn most_specific(
    set: BTreeSet<String>,
    h: &ConceptHierarchy,
) -> Result<BTreeSet<String>, HierarchyError> {
    let mut out = BTreeSet::new();
    for c in &set {
        let mut general = false;
        for d in &set {
            if c != d && h.subsumes(c, d)? {
                general = true;
                break;
            }
        }
        if !general {
            out.insert(c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn trained() -> (Lexicon, Hierarchies, SemanticLexicon) {
        let lex = samples::semantic_lexicon();
        let hiers = samples::hierarchies();
        let mut semlex = SemanticLexicon::new();
        for words in samples::training_sentences() {
            semlex = train_sentence(&words, &lex, &hiers, &semlex).unwrap();
        }
        (lex, hiers, semlex)
    }

    fn shown(tds: &[TaggedDisjunct]) -> Vec<String> {
        tds.iter()
            .map(|td| format!("{td} {}", td.support))
            .collect()
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn tagging_condor_sentence() {
        let lex = samples::semantic_lexicon();
        let hiers = samples::hierarchies();
        let s = train_sentence(
            &["the", "condor", "eats", "meat"],
            &lex,
            &hiers,
            &SemanticLexicon::new(),
        )
        .unwrap();
        assert_eq!(shown(s.get("eats").unwrap()), ["((Ss_condor) (O_meat)) 1"]);
        assert_eq!(shown(s.get("condor").unwrap()), ["((Ds) (Ss_eats)) 1"]);
        assert_eq!(shown(s.get("meat").unwrap()), ["((Os_eats) ( )) 1"]);
        assert!(s.get("the").is_none());
    }

    #[test]
    fn tagging_s1() {
        let (_, _, s) = trained();
        assert_eq!(s.get("eats").unwrap()[0].to_string(), "((Ss_cow) (O_corn))");
        assert_eq!(s.get("corn").unwrap()[0].to_string(), "((A,Os_eats) ( ))");
    }

    #[test]
    fn tag_sentence_rejects_unknown_words() {
        let lex = samples::semantic_lexicon();
        let hiers = samples::hierarchies();
        let l = Linkage::new(vec!["snipe".into()], vec![Disjunct::default()], vec![]);
        assert!(matches!(
            tag_sentence(&l, &lex, &hiers, &SemanticLexicon::new()),
            Err(SemanticError::UnknownWord { position: 0, .. })
        ));
    }

    #[test]
    fn generalize_reproduces_r1() {
        let (_, hiers, s) = trained();
        let g = generalize(&s, &hiers).unwrap();
        assert_eq!(
            shown(g.get("eats").unwrap()),
            ["((Ss_animal) (O_food)) 2", "((Ss_car) (O_gasoline)) 1"]
        );
    }

    #[test]
    fn generalize_identical_and_single() {
        let hiers = samples::hierarchies();
        let text = "eats: ((Ss_cow) (O_corn)) | ((Ss_cow) (O_corn))\nmeat: ((Os_eats) ( ))";
        let s = SemanticLexicon::parse(text, &hiers).unwrap();
        let g = generalize(&s, &hiers).unwrap();
        assert_eq!(shown(g.get("eats").unwrap()), ["((Ss_cow) (O_corn)) 2"]);
        assert_eq!(g.get("meat"), s.get("meat"));
    }

    #[test]
    fn semlex_round_trip() {
        let (_, hiers, s) = trained();
        let g = generalize(&s, &hiers).unwrap();
        let text = g.serialize();
        assert!(text.contains(
            "eats: ((Ss_animal) (O_food));support=2 | ((Ss_car) (O_gasoline));support=1\n"
        ));
        assert_eq!(SemanticLexicon::parse(&text, &hiers).unwrap(), g);
    }

    #[test]
    fn semlex_unknown_tag_reports_line() {
        let hiers = samples::hierarchies();
        let err = SemanticLexicon::parse("\neats: ((Ss_unicorn) ( ))", &hiers).unwrap_err();
        assert_eq!(
            err,
            SemanticError::UnknownTag {
                line: 2,
                tag: "unicorn".into()
            }
        );
    }

    #[test]
    fn classify_snipe() {
        let (lex, hiers, s) = trained();
        let g = generalize(&s, &hiers).unwrap();
        let words = ["the", "snipe", "eats", "meat"];
        let c = classify_unknown(&words, 1, &lex, &g, &hiers, AcquireOptions::default()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].concept, "animal");
        assert_eq!(
            c[0].evidence[0].facts,
            [("meat".to_owned(), "food".to_owned())]
        );
        assert_eq!(
            c[0].evidence[0].to_string(),
            "eats ((Ss_animal) (O_food)) because meat <= food"
        );

        let words = ["the", "snipe", "eats", "gasoline"];
        let c = classify_unknown(&words, 1, &lex, &g, &hiers, AcquireOptions::default()).unwrap();
        let concepts: Vec<&str> = c.iter().map(|c| c.concept.as_str()).collect();
        assert_eq!(concepts, ["car"]);
    }

    #[test]
    fn classify_without_evidence() {
        let (lex, hiers, _) = trained();
        let words = ["the", "snipe", "eats", "meat"];
        let err = classify_unknown(
            &words,
            1,
            &lex,
            &SemanticLexicon::new(),
            &hiers,
            AcquireOptions::default(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            SemanticError::NoSemanticEvidence {
                word: "snipe".into()
            }
        );
        assert!(matches!(
            classify_unknown(
                &words,
                2,
                &lex,
                &SemanticLexicon::new(),
                &hiers,
                AcquireOptions::default()
            ),
            Err(SemanticError::NotUnknown { .. })
        ));
    }

    #[test]
    fn subsumption_and_lcs() {
        let hiers = samples::hierarchies();
        let n = hiers.nouns();
        assert!(subsumes(n, "animal", "cow").unwrap());
        assert!(subsumes(n, "cow", "cow").unwrap());
        assert!(!subsumes(n, "food", "gasoline").unwrap());
        assert_eq!(lcs(n, "cow", "condor").unwrap(), "animal");
        assert_eq!(lcs(n, "cow", "gasoline").unwrap(), n.root());
    }

    #[test]
    fn refine_examples() {
        let hiers = samples::hierarchies();
        let n = hiers.nouns();
        assert_eq!(
            refine(&set(&["animal"]), &set(&["animal"]), n).unwrap(),
            set(&["animal"])
        );
        assert_eq!(
            refine(&set(&["animal"]), &set(&["bird"]), n).unwrap(),
            set(&["bird"])
        );
        assert_eq!(
            refine(&set(&["animal"]), &set(&["car"]), n).unwrap(),
            set(&["entity"])
        );
        assert!(refine(&set(&["unicorn"]), &set(&[]), n).is_err());
    }
}
