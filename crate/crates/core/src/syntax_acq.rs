//! Syntactic acquisition of unknown words.
//!
//! Known words contribute their lexicon disjuncts; unknown positions are
//! wildcards that link to whatever the surrounding words require. Pruning
//! removes known disjuncts that cannot take part in any linkage, the
//! remaining linkages determine the unknown words' disjuncts, and the
//! lexicon inventory then rejects disjuncts no known word has ever used.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::disjunct::{Connector, Disjunct, Side};
use crate::lexicon::Lexicon;
use crate::linker::search::{Position, Search, Solution};
use crate::linker::{self, LinkError, Linkage};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AcquireError {
    #[error("no disjuncts for the unknown words make the sentence valid")]
    NoSolution,
    #[error("{count} unknown words, at most {max} allowed")]
    TooManyUnknowns { count: usize, max: usize },
    #[error(transparent)]
    Link(#[from] LinkError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AcquireOptions {
    pub max_unknowns: usize,
    /// Keep only hypotheses compatible with a disjunct some known word uses.
    pub filter: bool,
}

impl Default for AcquireOptions {
    fn default() -> Self {
        AcquireOptions {
            max_unknowns: 2,
            filter: true,
        }
    }
}

/// A sentence split into known positions (with their lexicon disjuncts) and
/// unknown positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcquisitionProblem {
    pub words: Vec<String>,
    pub known: BTreeMap<usize, Vec<Disjunct>>,
    pub unknown: BTreeSet<usize>,
    /// Connectors available when two unknown words link to each other.
    pub vocabulary: Vec<Connector>,
}

impl AcquisitionProblem {
    pub fn new<S: AsRef<str>>(words: &[S], lex: &Lexicon) -> Self {
        let mut known = BTreeMap::new();
        let mut unknown = BTreeSet::new();
        for (p, w) in words.iter().enumerate() {
            match lex.lookup(w.as_ref()) {
                Some(ds) => {
                    known.insert(p, ds.to_vec());
                }
                None => {
                    unknown.insert(p);
                }
            }
        }
        AcquisitionProblem {
            words: words.iter().map(|w| w.as_ref().to_owned()).collect(),
            known,
            unknown,
            vocabulary: lex.connector_vocabulary().into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    NoWordsLeft,
    NoWordsRight,
    TooFewWords {
        side: Side,
    },
    Isolated,
    /// No word far enough away on `side` can supply a partner for
    /// `connector` once the nearer connectors are placed.
    Ordering {
        connector: Connector,
        side: Side,
    },
    NoLinkage,
    NotInInventory,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &Side| match s {
            Side::Left => "left",
            Side::Right => "right",
        };
        match self {
            Reason::NoWordsLeft => {
                f.write_str("left connector unsatisfiable, no words to the left")
            }
            Reason::NoWordsRight => {
                f.write_str("right connector unsatisfiable, no words to the right")
            }
            Reason::TooFewWords { side: s } => {
                write!(
                    f,
                    "more {} connectors than words to the {}",
                    side(s),
                    side(s)
                )
            }
            Reason::Isolated => f.write_str("connectivity, disjunct has no connectors"),
            Reason::Ordering { connector, side: s } => write!(
                f,
                "ordering conflict, {} connector {connector} has no partner further {}",
                side(s),
                side(s)
            ),
            Reason::NoLinkage => f.write_str("no linkage satisfies the meta-rules"),
            Reason::NotInInventory => f.write_str("not used by any known word"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Accepted because a known word uses a compatible disjunct.
    Inventory,
    /// Kept although no known word uses it, because nothing else survived.
    Novel,
    /// Inventory filtering disabled.
    Synthesized,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Inventory => "inventory",
            Source::Novel => "novel",
            Source::Synthesized => "synthesized",
        })
    }
}

/// One line of the acquisition trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceRecord {
    Eliminate {
        position: usize,
        word: String,
        disjunct: Disjunct,
        reason: Reason,
    },
    Hypothesize {
        position: usize,
        word: String,
        disjunct: Disjunct,
        source: Source,
    },
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceRecord::Eliminate {
                position,
                word,
                disjunct,
                reason,
            } => write!(f, "eliminate:{position}:{word}:{disjunct}:{reason}"),
            TraceRecord::Hypothesize {
                position,
                word,
                disjunct,
                source,
            } => write!(f, "hypothesize:{position}:{word}:{disjunct}:{source}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruned {
    pub surviving: BTreeMap<usize, Vec<Disjunct>>,
    pub trace: Vec<TraceRecord>,
}

/// Removes known disjuncts that cannot appear in any linkage, whatever the
/// unknown words turn out to be.
///
/// Runs in three passes, each recorded in the trace: connectors facing the
/// sentence edge, connectors whose ordering cannot be met by any nearer or
/// farther word, and finally disjuncts unused by every wildcard linkage.
pub fn prune_known(problem: &AcquisitionProblem) -> Pruned {
    prune_and_solve(problem).0
}

fn prune_and_solve(problem: &AcquisitionProblem) -> (Pruned, Vec<Solution>, usize) {
    let n = problem.len();
    let mut surviving = problem.known.clone();
    let mut trace = Vec::new();
    let eliminate = |surviving: &mut BTreeMap<usize, Vec<Disjunct>>,
                     trace: &mut Vec<TraceRecord>,
                     p: usize,
                     d: &Disjunct,
                     reason: Reason| {
        if let Some(ds) = surviving.get_mut(&p) {
            ds.retain(|x| x != d);
        }
        trace.push(TraceRecord::Eliminate {
            position: p,
            word: problem.words[p].clone(),
            disjunct: d.clone(),
            reason,
        });
    };

    for (&p, ds) in &problem.known {
        for d in ds {
            let reason = if n > 1 && d.is_empty() {
                Some(Reason::Isolated)
            } else if !d.right.is_empty() && p + 1 == n {
                Some(Reason::NoWordsRight)
            } else if !d.left.is_empty() && p == 0 {
                Some(Reason::NoWordsLeft)
            } else if d.left.len() > p {
                Some(Reason::TooFewWords { side: Side::Left })
            } else if d.right.len() > n - 1 - p {
                Some(Reason::TooFewWords { side: Side::Right })
            } else {
                None
            };
            if let Some(reason) = reason {
                eliminate(&mut surviving, &mut trace, p, d, reason);
            }
        }
    }

    loop {
        let mut changed = false;
        for &p in problem.known.keys() {
            for d in surviving[&p].clone() {
                if let Some(reason) = ordering_conflict(problem, &surviving, p, &d) {
                    eliminate(&mut surviving, &mut trace, p, &d, reason);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let (solutions, nodes) = wildcard_search(problem, &surviving);
    let mut used: BTreeMap<usize, BTreeSet<&Disjunct>> = BTreeMap::new();
    for sol in &solutions {
        for &p in problem.known.keys() {
            used.entry(p).or_default().insert(&sol.disjuncts[p]);
        }
    }
    for &p in problem.known.keys() {
        for d in surviving[&p].clone() {
            if !used.get(&p).is_some_and(|u| u.contains(&d)) {
                eliminate(&mut surviving, &mut trace, p, &d, Reason::NoLinkage);
            }
        }
    }
    (Pruned { surviving, trace }, solutions, nodes)
}

/// Greedily places each connector on the nearest eligible word beyond the
/// previous one; a connector with no such word can never be satisfied.
fn ordering_conflict(
    problem: &AcquisitionProblem,
    surviving: &BTreeMap<usize, Vec<Disjunct>>,
    p: usize,
    d: &Disjunct,
) -> Option<Reason> {
    let partner_ok = |q: usize, side: Side, c: &Connector| -> bool {
        if problem.unknown.contains(&q) {
            return true;
        }
        surviving[&q].iter().any(|e| match side {
            Side::Left => e.right.iter().any(|rc| rc.matches(c)),
            Side::Right => e.left.iter().any(|lc| c.matches(lc)),
        })
    };
    let mut cur = p;
    for c in &d.left {
        match (0..cur).rev().find(|&q| partner_ok(q, Side::Left, c)) {
            Some(q) => cur = q,
            None => {
                return Some(Reason::Ordering {
                    connector: c.clone(),
                    side: Side::Left,
                })
            }
        }
    }
    let mut cur = p;
    for c in d.right_nearest_first() {
        match (cur + 1..problem.len()).find(|&q| partner_ok(q, Side::Right, c)) {
            Some(q) => cur = q,
            None => {
                return Some(Reason::Ordering {
                    connector: c.clone(),
                    side: Side::Right,
                })
            }
        }
    }
    None
}

fn wildcard_search(
    problem: &AcquisitionProblem,
    known: &BTreeMap<usize, Vec<Disjunct>>,
) -> (Vec<Solution>, usize) {
    let positions: Vec<Position<'_>> = (0..problem.len())
        .map(|p| match known.get(&p) {
            Some(ds) => Position::Known(ds),
            None => Position::Wild,
        })
        .collect();
    let mut s = Search::new(&positions, &problem.vocabulary);
    s.run();
    let nodes = s.nodes;
    (s.into_solutions(), nodes)
}

/// Every joint assignment of disjuncts to the unknown positions, plus what
/// was learned along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inference {
    pub joint: Vec<BTreeMap<usize, Disjunct>>,
    /// Per unknown position, ordered by display form.
    pub per_position: BTreeMap<usize, Vec<Disjunct>>,
    pub pruned: Pruned,
    /// Disjunct choices tried by the wildcard search.
    pub explored: usize,
}

/// Disjuncts for the unknown positions such that the sentence has at least
/// one linkage. Each unknown connector copies the known connector it links
/// to, and every connector of a hypothesis is used by its linkage.
pub fn infer_unknowns(problem: &AcquisitionProblem) -> Result<Inference, AcquireError> {
    let (pruned, solutions, explored) = prune_and_solve(problem);
    let joint: BTreeSet<BTreeMap<usize, Disjunct>> = solutions
        .iter()
        .map(|sol| {
            problem
                .unknown
                .iter()
                .map(|&p| (p, sol.disjuncts[p].clone()))
                .collect()
        })
        .collect();
    if joint.is_empty() {
        return Err(AcquireError::NoSolution);
    }
    let mut per_position: BTreeMap<usize, Vec<Disjunct>> = BTreeMap::new();
    for &p in &problem.unknown {
        let set: BTreeMap<String, Disjunct> = joint
            .iter()
            .map(|j| (j[&p].to_string(), j[&p].clone()))
            .collect();
        per_position.insert(p, set.into_values().collect());
    }
    Ok(Inference {
        joint: joint.into_iter().collect(),
        per_position,
        pruned,
        explored,
    })
}

/// Keeps the hypotheses compatible with some disjunct in the lexicon
/// inventory, preserving input order.
pub fn filter_by_inventory(hyps: &[Disjunct], lex: &Lexicon) -> Vec<Disjunct> {
    let inventory = lex.inventory();
    hyps.iter()
        .filter(|h| inventory.iter().any(|d| h.compatible_with(d)))
        .cloned()
        .collect()
}

/// Inventory disjuncts compatible with `h`.
pub fn inventory_instances(h: &Disjunct, lex: &Lexicon) -> Vec<Disjunct> {
    lex.inventory()
        .into_iter()
        .filter(|d| h.compatible_with(d))
        .collect()
}

/// Orders by how many lexicon words use a compatible disjunct (most first),
/// then by display form.
pub fn rank_by_frequency(hyps: &mut [Disjunct], lex: &Lexicon) {
    hyps.sort_by_cached_key(|h| {
        (
            std::cmp::Reverse(lex.compatible_frequency(h)),
            h.to_string(),
        )
    });
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Disjunct choices tried by the wildcard search over pruned candidates.
    pub explored: usize,
    /// Disjunct choices tried when every inventory disjunct is assigned to
    /// the unknown positions and the unpruned sentence is parsed.
    pub blind: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcquisitionResult {
    pub words: Vec<String>,
    /// Hypotheses before inventory filtering.
    pub candidates: BTreeMap<usize, Vec<Disjunct>>,
    /// Final hypotheses per unknown position, most frequent first.
    pub hypotheses: BTreeMap<usize, Vec<Disjunct>>,
    /// Positions whose hypotheses all failed the inventory filter and were
    /// kept unfiltered.
    pub novel: BTreeSet<usize>,
    pub pruned_known: BTreeMap<usize, Vec<Disjunct>>,
    pub linkages: Vec<Linkage>,
    pub trace: Vec<TraceRecord>,
    pub stats: SearchStats,
}

impl AcquisitionResult {
    /// Hypotheses grouped by word, in position order, for words occurring
    /// at several unknown positions.
    pub fn by_word(&self) -> BTreeMap<&str, Vec<Disjunct>> {
        let mut out: BTreeMap<&str, Vec<Disjunct>> = BTreeMap::new();
        for (&p, ds) in &self.hypotheses {
            let entry = out.entry(self.words[p].as_str()).or_default();
            for d in ds {
                if !entry.contains(d) {
                    entry.push(d.clone());
                }
            }
        }
        out
    }

    pub fn trace_lines(&self) -> String {
        self.trace.iter().map(|r| format!("{r}\n")).collect()
    }
}

/// Prune, infer, filter and witness: the full acquisition pipeline.
pub fn acquire_syntax<S: AsRef<str>>(
    words: &[S],
    lex: &Lexicon,
    opts: AcquireOptions,
) -> Result<AcquisitionResult, AcquireError> {
    if words.is_empty() {
        return Err(LinkError::EmptySentence.into());
    }
    let problem = AcquisitionProblem::new(words, lex);
    if problem.unknown.len() > opts.max_unknowns {
        return Err(AcquireError::TooManyUnknowns {
            count: problem.unknown.len(),
            max: opts.max_unknowns,
        });
    }

    if problem.unknown.is_empty() {
        let pruned = prune_known(&problem);
        let linkages = linker::parse(words, lex)?;
        if linkages.is_empty() {
            return Err(AcquireError::NoSolution);
        }
        return Ok(AcquisitionResult {
            words: problem.words,
            candidates: BTreeMap::new(),
            hypotheses: BTreeMap::new(),
            novel: BTreeSet::new(),
            pruned_known: pruned.surviving,
            linkages,
            trace: pruned.trace,
            stats: SearchStats::default(),
        });
    }

    let inference = infer_unknowns(&problem)?;
    let mut trace = inference.pruned.trace.clone();
    let mut hypotheses = BTreeMap::new();
    let mut novel = BTreeSet::new();
    for (&p, hyps) in &inference.per_position {
        let word = problem.words[p].clone();
        let (mut kept, source) = if opts.filter {
            let kept = filter_by_inventory(hyps, lex);
            for h in hyps.iter().filter(|h| !kept.contains(h)) {
                trace.push(TraceRecord::Eliminate {
                    position: p,
                    word: word.clone(),
                    disjunct: h.clone(),
                    reason: Reason::NotInInventory,
                });
            }
            if kept.is_empty() {
                novel.insert(p);
                (hyps.clone(), Source::Novel)
            } else {
                (kept, Source::Inventory)
            }
        } else {
            (hyps.clone(), Source::Synthesized)
        };
        rank_by_frequency(&mut kept, lex);
        for h in &kept {
            trace.push(TraceRecord::Hypothesize {
                position: p,
                word: word.clone(),
                disjunct: h.clone(),
                source,
            });
        }
        hypotheses.insert(p, kept);
    }

    let mut linkages = BTreeSet::new();
    for joint in &inference.joint {
        if !joint.iter().all(|(p, h)| hypotheses[p].contains(h)) {
            continue;
        }
        let cands: Vec<Vec<Disjunct>> = (0..problem.len())
            .map(|p| match joint.get(&p) {
                Some(h) if opts.filter && !novel.contains(&p) => inventory_instances(h, lex),
                Some(h) => vec![h.clone()],
                None => problem.known[&p].clone(),
            })
            .collect();
        linkages.extend(linker::parse_with(&problem.words, &cands));
    }

    let stats = SearchStats {
        explored: inference.explored,
        blind: blind_nodes(&problem, lex),
    };
    Ok(AcquisitionResult {
        words: problem.words,
        candidates: inference.per_position,
        hypotheses,
        novel,
        pruned_known: inference.pruned.surviving,
        linkages: linkages.into_iter().collect(),
        trace,
        stats,
    })
}

/// Search effort of assigning every inventory disjunct to the unknown
/// positions and parsing without pruning.
fn blind_nodes(problem: &AcquisitionProblem, lex: &Lexicon) -> usize {
    let inventory = lex.inventory();
    let positions: Vec<Position<'_>> = (0..problem.len())
        .map(|p| match problem.known.get(&p) {
            Some(ds) => Position::Known(ds),
            None => Position::Known(&inventory),
        })
        .collect();
    let mut s = Search::new(&positions, &[]);
    s.run();
    s.nodes
}
