#![allow(dead_code)]

use std::collections::BTreeSet;

use linkacq::hierarchy::{ConceptHierarchy, HierarchyKind};
use linkacq::linker::MetaRule;
use linkacq::{Connector, Disjunct, Lexicon, Link, Linkage};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every sentence of exactly `len` words drawn from `lex`.
pub fn all_sentences(lex: &Lexicon, len: usize) -> Vec<Vec<String>> {
    let words: Vec<String> = lex.words().map(str::to_owned).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; len];
    loop {
        out.push(idx.iter().map(|&i| words[i].clone()).collect());
        let mut p = len;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < words.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// A link with the connector used at each end.
#[derive(Debug, Clone)]
pub struct RawLink {
    pub left: usize,
    pub right: usize,
    pub at_left: Connector,
    pub at_right: Connector,
}

pub fn random_connector_pair(rng: &mut impl Rng) -> (Connector, Connector) {
    let base = *["A", "B", "C", "D"].choose(rng).unwrap();
    let sub = *["", "s", "p"].choose(rng).unwrap();
    let full = Connector::new(base, sub).unwrap();
    let bare = Connector::new(base, "").unwrap();
    match rng.gen_range(0..3) {
        0 => (full.clone(), full),
        1 => (full, bare),
        _ => (bare, full),
    }
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let (x, y) = if a <= b { (a, b) } else { (b, a) };
    x.0 < y.0 && y.0 < x.1 && x.1 < y.1
}

fn component_count(n: usize, links: &[RawLink]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for l in links {
        let (a, b) = (find(&mut parent, l.left), find(&mut parent, l.right));
        parent[a] = b;
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

/// A random planar, connected, duplicate-free link set over `n` words.
pub fn random_links(rng: &mut impl Rng, n: usize) -> Vec<RawLink> {
    let mut links: Vec<RawLink> = Vec::new();
    let add = |links: &mut Vec<RawLink>, a: usize, b: usize, rng: &mut _| {
        let (at_left, at_right) = random_connector_pair(rng);
        links.push(RawLink {
            left: a,
            right: b,
            at_left,
            at_right,
        });
    };
    let attempts = rng.gen_range(0..3 * n);
    for _ in 0..attempts {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if a == b
            || links
                .iter()
                .any(|l| (l.left, l.right) == (a, b) || crosses((l.left, l.right), (a, b)))
        {
            continue;
        }
        add(&mut links, a, b, rng);
    }
    // Adjacent pairs cross nothing, so they can always reconnect the graph.
    for a in 0..n.saturating_sub(1) {
        if component_count(n, &links) == 1 {
            break;
        }
        if links.iter().all(|l| (l.left, l.right) != (a, a + 1)) {
            add(&mut links, a, a + 1, rng);
        }
    }
    links
}

/// Builds the linkage whose disjuncts use exactly these links, in the order
/// the ordering rule requires.
pub fn assemble(words: &[String], links: &[RawLink]) -> Linkage {
    let n = words.len();
    let mut choices = Vec::with_capacity(n);
    for p in 0..n {
        let mut lefts: Vec<&RawLink> = links.iter().filter(|l| l.right == p).collect();
        lefts.sort_by_key(|l| l.right - l.left);
        let mut rights: Vec<&RawLink> = links.iter().filter(|l| l.left == p).collect();
        rights.sort_by_key(|l| std::cmp::Reverse(l.right - l.left));
        choices.push(Disjunct::new(
            lefts.iter().map(|l| l.at_right.clone()).collect(),
            rights.iter().map(|l| l.at_left.clone()).collect(),
        ));
    }
    let links = links
        .iter()
        .map(|l| Link::new(l.left, l.right, l.at_left.link_label(&l.at_right)))
        .collect();
    Linkage::new(words.to_vec(), choices, links)
}

pub fn placeholder_words(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

/// A random linkage with some meta-rule violations injected. Returns the
/// linkage and the rules it breaks.
pub fn random_mutated_linkage(rng: &mut impl Rng) -> (Linkage, BTreeSet<MetaRule>) {
    loop {
        let n = rng.gen_range(2..=8);
        let words = placeholder_words(n);
        let mut links = random_links(rng, n);
        let mut injected = BTreeSet::new();
        let roll = rng.gen_range(0..10);
        if roll < 2 {
            return (assemble(&words, &links), injected);
        }
        if roll < 4 {
            let bridges: Vec<usize> = (0..links.len())
                .filter(|&k| {
                    let mut rest = links.clone();
                    rest.remove(k);
                    component_count(n, &rest) > 1
                })
                .collect();
            let Some(&k) = bridges.choose(rng) else {
                continue;
            };
            links.remove(k);
            injected.insert(MetaRule::Connectivity);
            return (assemble(&words, &links), injected);
        }

        let want: Vec<MetaRule> = loop {
            let w: Vec<MetaRule> = [MetaRule::Planarity, MetaRule::Exclusion, MetaRule::Ordering]
                .into_iter()
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            if !w.is_empty() {
                break w;
            }
        };
        if want.contains(&MetaRule::Planarity) {
            let mut options = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if links.iter().all(|l| (l.left, l.right) != (a, b))
                        && links.iter().any(|l| crosses((l.left, l.right), (a, b)))
                    {
                        options.push((a, b));
                    }
                }
            }
            let Some(&(a, b)) = options.choose(rng) else {
                continue;
            };
            let (at_left, at_right) = random_connector_pair(rng);
            links.push(RawLink {
                left: a,
                right: b,
                at_left,
                at_right,
            });
            injected.insert(MetaRule::Planarity);
        }
        if want.contains(&MetaRule::Exclusion) {
            let k = rng.gen_range(0..links.len());
            let (at_left, at_right) = random_connector_pair(rng);
            let (left, right) = (links[k].left, links[k].right);
            links.push(RawLink {
                left,
                right,
                at_left,
                at_right,
            });
            injected.insert(MetaRule::Exclusion);
        }
        let mut linkage = assemble(&words, &links);
        if want.contains(&MetaRule::Ordering) {
            // Connectors of equal-span links may appear in either order, so
            // only swaps across distinct spans break ordering.
            let mut options = Vec::new();
            for (p, d) in linkage.choices.iter().enumerate() {
                let mut left_spans: Vec<usize> = links
                    .iter()
                    .filter(|l| l.right == p)
                    .map(|l| l.right - l.left)
                    .collect();
                left_spans.sort();
                let mut right_spans: Vec<usize> = links
                    .iter()
                    .filter(|l| l.left == p)
                    .map(|l| l.right - l.left)
                    .collect();
                right_spans.sort_by(|a, b| b.cmp(a));
                for (side, list, spans) in [(0, &d.left, &left_spans), (1, &d.right, &right_spans)]
                {
                    for i in 0..list.len() {
                        for j in i + 1..list.len() {
                            if list[i].base() != list[j].base() && spans[i] != spans[j] {
                                options.push((p, side, i, j));
                            }
                        }
                    }
                }
            }
            let Some(&(p, side, i, j)) = options.choose(rng) else {
                continue;
            };
            let d = &mut linkage.choices[p];
            if side == 0 {
                d.left.swap(i, j);
            } else {
                d.right.swap(i, j);
            }
            injected.insert(MetaRule::Ordering);
        }
        return (linkage, injected);
    }
}

/// A random tree of `1..=max_nodes` nodes named `n0` (the root), `n1`, ...
/// and its parent array.
pub fn random_tree(rng: &mut impl Rng, max_nodes: usize) -> (ConceptHierarchy, Vec<Option<usize>>) {
    let n = rng.gen_range(1..=max_nodes);
    let parent: Vec<Option<usize>> = (0..n)
        .map(|i| {
            if i == 0 {
                None
            } else {
                Some(rng.gen_range(0..i))
            }
        })
        .collect();
    let mut edges: Vec<(String, String)> = parent
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|p| (format!("n{p}"), format!("n{i}"))))
        .collect();
    edges.shuffle(rng);
    let h = ConceptHierarchy::from_edges(HierarchyKind::Noun, "n0", &edges).unwrap();
    (h, parent)
}

/// Ancestor set of `i` (inclusive) from a parent array.
pub fn ancestor_set(parent: &[Option<usize>], i: usize) -> Vec<usize> {
    let mut out = vec![i];
    let mut x = i;
    while let Some(p) = parent[x] {
        out.push(p);
        x = p;
    }
    out
}

/// Depth of `i` from a parent array.
pub fn depth(parent: &[Option<usize>], i: usize) -> usize {
    ancestor_set(parent, i).len() - 1
}

/// A random sentence over `lex` that has at least one linkage.
pub fn random_parsable_sentence(rng: &mut impl Rng, lex: &Lexicon, max_len: usize) -> Vec<String> {
    let words: Vec<&str> = lex.words().collect();
    loop {
        let n = rng.gen_range(2..=max_len);
        let s: Vec<String> = (0..n)
            .map(|_| words.choose(rng).unwrap().to_string())
            .collect();
        if !linkacq::linker::parse(&s, lex).unwrap().is_empty() {
            return s;
        }
    }
}
