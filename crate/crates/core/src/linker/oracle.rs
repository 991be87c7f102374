//! Exhaustive reference enumerator.
//!
//! Shares nothing with the stack search: for every combination of disjuncts
//! it tries every pairing of left connectors with right connectors of
//! earlier words, and keeps the link sets that [`validate`] accepts.

use std::collections::BTreeSet;

use crate::disjunct::Disjunct;
use crate::lexicon::Lexicon;
use crate::linker::{candidates, validate, Link, LinkError, Linkage};

pub const DEFAULT_ORACLE_CAP: usize = 7;

pub fn enumerate_bruteforce<S: AsRef<str>>(
    words: &[S],
    lex: &Lexicon,
    cap: usize,
) -> Result<Vec<Linkage>, LinkError> {
    if words.len() > cap {
        return Err(LinkError::CapExceeded {
            len: words.len(),
            cap,
        });
    }
    let cands = candidates(words, lex)?;
    enumerate_bruteforce_with(words, &cands, cap)
}

pub fn enumerate_bruteforce_with<S: AsRef<str>, D: AsRef<[Disjunct]>>(
    words: &[S],
    cands: &[D],
    cap: usize,
) -> Result<Vec<Linkage>, LinkError> {
    let n = words.len();
    if n > cap {
        return Err(LinkError::CapExceeded { len: n, cap });
    }
    if n == 0 {
        return Err(LinkError::EmptySentence);
    }
    let words: Vec<String> = words.iter().map(|w| w.as_ref().to_owned()).collect();
    let cands: Vec<&[Disjunct]> = cands.iter().map(AsRef::as_ref).collect();
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(Vec::new());
    }

    let mut found: BTreeSet<(Vec<usize>, Vec<Link>)> = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let choice: Vec<&Disjunct> = (0..n).map(|p| &cands[p][idx[p]]).collect();
        for links in pairings(&choice) {
            let linkage = Linkage::new(
                words.clone(),
                choice.iter().map(|d| (*d).clone()).collect(),
                links,
            );
            if validate(&linkage).is_empty() {
                found.insert((idx.clone(), linkage.links));
            }
        }
        // Odometer over disjunct indices.
        let mut p = n;
        loop {
            if p == 0 {
                return Ok(found
                    .into_iter()
                    .map(|(idx, links)| {
                        let choices = (0..n).map(|p| cands[p][idx[p]].clone()).collect();
                        Linkage::new(words.clone(), choices, links)
                    })
                    .collect());
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < cands[p].len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Every way to pair each left connector with a distinct right connector of
/// some earlier word such that the two match.
fn pairings(choice: &[&Disjunct]) -> Vec<Vec<Link>> {
    let lefts: Vec<(usize, usize)> = choice
        .iter()
        .enumerate()
        .flat_map(|(p, d)| (0..d.left.len()).map(move |i| (p, i)))
        .collect();
    let rights: Vec<(usize, usize)> = choice
        .iter()
        .enumerate()
        .flat_map(|(p, d)| (0..d.right.len()).map(move |j| (p, j)))
        .collect();
    let mut out = Vec::new();
    if lefts.len() != rights.len() {
        return out;
    }
    let mut used = vec![false; rights.len()];
    let mut current = Vec::with_capacity(lefts.len());
    fn go(
        k: usize,
        choice: &[&Disjunct],
        lefts: &[(usize, usize)],
        rights: &[(usize, usize)],
        used: &mut [bool],
        current: &mut Vec<Link>,
        out: &mut Vec<Vec<Link>>,
    ) {
        if k == lefts.len() {
            out.push(current.clone());
            return;
        }
        let (p, i) = lefts[k];
        let lc = &choice[p].left[i];
        for (r, &(q, j)) in rights.iter().enumerate() {
            if used[r] || q >= p {
                continue;
            }
            let rc = &choice[q].right[j];
            if !rc.matches(lc) {
                continue;
            }
            used[r] = true;
            current.push(Link::new(q, p, rc.link_label(lc)));
            go(k + 1, choice, lefts, rights, used, current, out);
            current.pop();
            used[r] = false;
        }
    }
    go(
        0,
        choice,
        &lefts,
        &rights,
        &mut used,
        &mut current,
        &mut out,
    );
    out
}
