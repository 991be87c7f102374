//! The constraint solver.
//!
//! A sentence is valid when one disjunct can be chosen per word and links
//! drawn so that every connector is used exactly once and the meta-rules
//! hold: links do not cross, the words are connected, a word's connectors
//! link nearer-to-farther in index order, and no word pair is linked twice.

mod diagram;
mod oracle;
pub(crate) mod search;
mod validate;

use std::fmt;

use thiserror::Error;

use crate::disjunct::{Connector, Disjunct, Side, Slot};
use crate::lexicon::Lexicon;

pub use diagram::render_diagram;
pub use oracle::{enumerate_bruteforce, enumerate_bruteforce_with, DEFAULT_ORACLE_CAP};
pub use validate::{validate, MetaRule, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("word {position} (`{word}`) is not in the lexicon")]
    UnknownWord { position: usize, word: String },
    #[error("empty sentence")]
    EmptySentence,
    #[error("sentence has {len} words; the brute-force oracle is capped at {cap}")]
    CapExceeded { len: usize, cap: usize },
    #[error("cannot render an invalid linkage: {0}")]
    InvalidLinkage(String),
}

/// Whether right connector `left_side` of the left word can link to left
/// connector `right_side` of the right word.
pub fn matches(left_side: &Connector, right_side: &Connector) -> bool {
    left_side.matches(right_side)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Link {
    pub left: usize,
    pub right: usize,
    pub label: Connector,
}

impl Link {
    pub fn new(left: usize, right: usize, label: Connector) -> Self {
        Link { left, right, label }
    }

    pub fn span(&self) -> usize {
        self.right - self.left
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.left, self.right, self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Linkage {
    pub words: Vec<String>,
    pub choices: Vec<Disjunct>,
    /// Sorted by `(left, right, label)`.
    pub links: Vec<Link>,
}

impl Linkage {
    pub fn new(words: Vec<String>, choices: Vec<Disjunct>, mut links: Vec<Link>) -> Self {
        links.sort();
        Linkage {
            words,
            choices,
            links,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Links touching `pos`.
    pub fn links_at(&self, pos: usize) -> impl Iterator<Item = &Link> {
        self.links
            .iter()
            .filter(move |l| l.left == pos || l.right == pos)
    }

    /// For each link (in `links` order), the connector slot it occupies at
    /// its left word and at its right word, derived from the ordering rule.
    ///
    /// Only meaningful for valid linkages.
    pub fn link_slots(&self) -> Vec<(Slot, Slot)> {
        let mut out = vec![
            (
                Slot {
                    side: Side::Right,
                    index: 0
                },
                Slot {
                    side: Side::Left,
                    index: 0
                }
            );
            self.links.len()
        ];
        for pos in 0..self.words.len() {
            let mut lefts: Vec<usize> = (0..self.links.len())
                .filter(|&k| self.links[k].right == pos)
                .collect();
            lefts.sort_by_key(|&k| self.links[k].span());
            for (i, k) in lefts.into_iter().enumerate() {
                out[k].1 = Slot {
                    side: Side::Left,
                    index: i,
                };
            }
            let mut rights: Vec<usize> = (0..self.links.len())
                .filter(|&k| self.links[k].left == pos)
                .collect();
            rights.sort_by_key(|&k| self.links[k].span());
            let n = rights.len();
            for (i, k) in rights.into_iter().enumerate() {
                out[k].0 = Slot {
                    side: Side::Right,
                    index: n - 1 - i,
                };
            }
        }
        out
    }

    /// Line-oriented form: `index:word:disjunct` lines, then
    /// `link:left:right:label` lines.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for (i, (w, d)) in self.words.iter().zip(&self.choices).enumerate() {
            out.push_str(&format!("{i}:{w}:{d}\n"));
        }
        for l in &self.links {
            out.push_str(&format!("link:{}:{}:{}\n", l.left, l.right, l.label));
        }
        out
    }
}

/// Candidate disjuncts for every position, looked up in `lex`.
pub fn candidates<'a, S: AsRef<str>>(
    words: &[S],
    lex: &'a Lexicon,
) -> Result<Vec<&'a [Disjunct]>, LinkError> {
    if words.is_empty() {
        return Err(LinkError::EmptySentence);
    }
    words
        .iter()
        .enumerate()
        .map(|(position, w)| {
            lex.lookup(w.as_ref())
                .ok_or_else(|| LinkError::UnknownWord {
                    position,
                    word: w.as_ref().to_owned(),
                })
        })
        .collect()
}

/// All linkages of `words`, in canonical order: by the per-word chosen
/// disjunct indices, then by link set. An empty result means the sentence
/// is not valid.
pub fn parse<S: AsRef<str>>(words: &[S], lex: &Lexicon) -> Result<Vec<Linkage>, LinkError> {
    let cands = candidates(words, lex)?;
    Ok(parse_with(words, &cands))
}

/// [`parse`] with explicit per-position candidates.
pub fn parse_with<S: AsRef<str>, D: AsRef<[Disjunct]>>(words: &[S], cands: &[D]) -> Vec<Linkage> {
    let positions: Vec<search::Position<'_>> = cands
        .iter()
        .map(|c| search::Position::Known(c.as_ref()))
        .collect();
    let mut s = search::Search::new(&positions, &[]);
    s.run();
    let words: Vec<String> = words.iter().map(|w| w.as_ref().to_owned()).collect();
    s.into_solutions()
        .into_iter()
        .map(|sol| Linkage::new(words.clone(), sol.disjuncts, sol.links))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn words(s: &str) -> Vec<&str> {
        s.split_whitespace().collect()
    }

    fn d(s: &str) -> Disjunct {
        Disjunct::parse(s).unwrap()
    }

    fn link(l: usize, r: usize, label: &str) -> Link {
        Link::new(l, r, label.parse().unwrap())
    }

    #[test]
    fn condor_sentence_has_the_single_diagrammed_linkage() {
        let lex = samples::sample_lexicon();
        let out = parse(&words("the condor eats the meat"), &lex).unwrap();
        assert_eq!(out.len(), 1);
        let l = &out[0];
        assert_eq!(
            l.links,
            [
                link(0, 1, "Ds"),
                link(1, 2, "Ss"),
                link(2, 4, "Os"),
                link(3, 4, "Ds")
            ]
        );
        let chosen: Vec<_> = l.choices.iter().map(ToString::to_string).collect();
        assert_eq!(
            chosen,
            [
                "(( ) (D))",
                "((Ds) (Ss))",
                "((Ss) (O))",
                "(( ) (D))",
                "((Ds,Os) ( ))"
            ]
        );
    }

    #[test]
    fn single_word_without_empty_disjunct_is_invalid() {
        let lex = samples::sample_lexicon();
        assert!(parse(&["eats"], &lex).unwrap().is_empty());
        let lex = Lexicon::parse("hi: (( ) ( ))").unwrap();
        assert_eq!(parse(&["hi"], &lex).unwrap().len(), 1);
    }

    #[test]
    fn the_meat_eats() {
        let lex = samples::sample_lexicon();
        let out = parse(&words("the meat eats"), &lex).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].links, [link(0, 1, "Ds"), link(1, 2, "Ss")]);
        assert_eq!(out[0].choices[1], d("((Ds) (Ss))"));
        assert_eq!(out[0].choices[2], d("((Ss) ( ))"));
    }

    #[test]
    fn unknown_word_is_reported_with_position() {
        let lex = samples::sample_lexicon();
        let err = parse(&words("the snipe eats meat"), &lex).unwrap_err();
        assert_eq!(
            err,
            LinkError::UnknownWord {
                position: 1,
                word: "snipe".into()
            }
        );
        assert_eq!(
            parse::<&str>(&[], &lex).unwrap_err(),
            LinkError::EmptySentence
        );
    }

    #[test]
    fn records_format() {
        let lex = samples::sample_lexicon();
        let out = parse(&words("the meat eats"), &lex).unwrap();
        assert_eq!(
            out[0].to_records(),
            "0:the:(( ) (D))\n1:meat:((Ds) (Ss))\n2:eats:((Ss) ( ))\n\
             link:0:1:Ds\nlink:1:2:Ss\n"
        );
    }

    #[test]
    fn link_slots_follow_ordering() {
        let lex = samples::sample_lexicon();
        let l = &parse(&words("the condor eats the meat"), &lex).unwrap()[0];
        let slots = l.link_slots();
        // (2,4,Os): eats right slot 0, meat left slot 1.
        let k = l.links.iter().position(|x| x.left == 2).unwrap();
        assert_eq!(
            slots[k].0,
            Slot {
                side: Side::Right,
                index: 0
            }
        );
        assert_eq!(
            slots[k].1,
            Slot {
                side: Side::Left,
                index: 1
            }
        );
    }

    #[test]
    fn cycles_are_allowed() {
        // a-b, b-c and a-c form a triangle.
        let lex = Lexicon::parse("a: (( ) (X,Y))\nb: ((Y) (Z))\nc: ((Z,X) ( ))").unwrap();
        let out = parse(&words("a b c"), &lex).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].links.len(), 3);
    }
}
