//! Word problem for square presentations: free reduction plus chain
//! replacement.
//!
//! A chain is a strip of `m` relator squares glued along edges; a word that
//! runs along the long side of the strip (`m + 2` letters) equals the `m`
//! letters of the short side. A freely reduced word with no chain in either
//! reading direction is geodesic.

use alloc::vec::Vec;

use crate::presentation::SymmetrizedPresentation;
use crate::word::{Letter, Word};

/// A chain subword `w[start..=end]` together with its shorter replacement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMatch {
    pub start: usize,
    pub end: usize,
    pub replacement: Word,
    pub squares: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RewriteKind {
    Free,
    Chain,
}

/// One rewrite step; `span` is inclusive and indexes the word as it was
/// before the step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    pub kind: RewriteKind,
    pub span: (usize, usize),
    pub replacement: Word,
}

pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        match out.last() {
            Some(&top) if top.is_inverse_of(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word::from_letters(out)
}

pub fn is_freely_reduced(w: &Word) -> bool {
    w.letters().windows(2).all(|p| !p[0].is_inverse_of(p[1]))
}

/// Forward chain starting exactly at `i`, if any.
fn chain_from(p: &SymmetrizedPresentation, w: &[Letter], i: usize) -> Option<ChainMatch> {
    let mut carry = w[i];
    let mut replacement = Vec::new();
    for j in i + 1..w.len() {
        let (q, r) = p.complete(carry, w[j])?;
        replacement.push(r.inv());
        if j + 1 < w.len() && w[j + 1] == q {
            return Some(ChainMatch {
                start: i,
                end: j + 1,
                squares: replacement.len(),
                replacement: Word::from_letters(replacement),
            });
        }
        carry = q.inv();
    }
    None
}

/// Leftmost chain in `w` or in its inverse (mapped back onto `w`).
///
/// For each start position the carry recursion follows the unique relator
/// through each pair; the first position whose strip closes wins. Ties
/// between the two reading directions go to the shorter span, then to the
/// forward reading.
pub fn find_chain(p: &SymmetrizedPresentation, w: &Word) -> Option<ChainMatch> {
    let n = w.len();
    if n < 3 {
        return None;
    }
    let forward = (0..n - 2).find_map(|i| chain_from(p, w.letters(), i));
    let inv = w.inverse();
    let backward = (0..n - 2)
        .filter_map(|i| chain_from(p, inv.letters(), i))
        .map(|m| ChainMatch {
            start: n - 1 - m.end,
            end: n - 1 - m.start,
            replacement: m.replacement.inverse(),
            squares: m.squares,
        })
        .min_by_key(|m| (m.start, m.end));
    match (forward, backward) {
        (Some(f), Some(b)) => {
            if (b.start, b.end) < (f.start, f.end) {
                Some(b)
            } else {
                Some(f)
            }
        }
        (f, b) => f.or(b),
    }
}

fn splice(w: &Word, m: &ChainMatch) -> Word {
    let mut v = Vec::with_capacity(w.len() - 2);
    v.extend_from_slice(&w.letters()[..m.start]);
    v.extend_from_slice(m.replacement.letters());
    v.extend_from_slice(&w.letters()[m.end + 1..]);
    Word::from_letters(v)
}

/// Alternates free reduction and leftmost chain replacement until neither
/// applies. Each chain replacement removes two letters.
pub fn reduce_to_geodesic(p: &SymmetrizedPresentation, w: &Word) -> Word {
    let mut cur = free_reduce(w);
    while let Some(m) = find_chain(p, &cur) {
        cur = free_reduce(&splice(&cur, &m));
    }
    cur
}

/// Same result as [`reduce_to_geodesic`], recording every step. Free
/// cancellations are applied one pair at a time, leftmost first.
pub fn reduce_with_trace(p: &SymmetrizedPresentation, w: &Word) -> (Word, Vec<Rewrite>) {
    let mut cur = w.clone();
    let mut trace = Vec::new();
    loop {
        if let Some(i) = cur.letters().windows(2).position(|q| q[0].is_inverse_of(q[1])) {
            let mut v = cur.into_letters();
            v.drain(i..i + 2);
            cur = Word::from_letters(v);
            trace.push(Rewrite { kind: RewriteKind::Free, span: (i, i + 1), replacement: Word::new() });
            continue;
        }
        match find_chain(p, &cur) {
            Some(m) => {
                let next = splice(&cur, &m);
                trace.push(Rewrite {
                    kind: RewriteKind::Chain,
                    span: (m.start, m.end),
                    replacement: m.replacement,
                });
                cur = next;
            }
            None => return (cur, trace),
        }
    }
}

pub fn is_identity(p: &SymmetrizedPresentation, w: &Word) -> bool {
    reduce_to_geodesic(p, w).is_empty()
}

pub fn is_geodesic(p: &SymmetrizedPresentation, w: &Word) -> bool {
    is_freely_reduced(w) && find_chain(p, w).is_none()
}
