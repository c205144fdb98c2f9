//! Brute-force breadth-first word problem, used to cross-check the chain
//! solver on short words.
//!
//! Moves: cancel an adjacent inverse pair, insert one (within the length
//! cap), or replace `k = 1..=3` consecutive letters that spell part of a
//! symmetrized relator by the inverse of the remaining `4 - k` letters.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::presentation::SymmetrizedPresentation;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Cap on intermediate word length; `None` means input length + 2.
    pub max_length: Option<usize>,
    /// Cap on the number of explored words.
    pub max_steps: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_length: None, max_steps: 200_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleVerdict {
    Identity,
    /// Every word reachable within the length cap was explored.
    NotIdentity,
    /// The step cap was hit first.
    Inconclusive,
}

/// Shortest length found in the explored component, and whether the search
/// ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exploration {
    pub shortest: usize,
    pub complete: bool,
}

struct Search {
    /// Symmetrized relators grouped by first letter (dense index).
    by_first: Vec<Vec<[u16; 4]>>,
    letters: usize,
}

impl Search {
    fn new(p: &SymmetrizedPresentation) -> Self {
        let letters = 2 * p.generator_count();
        let mut by_first = alloc::vec![Vec::new(); letters];
        for s in p.symmetrized() {
            let r: [u16; 4] = core::array::from_fn(|i| s.letters[i].dense() as u16);
            by_first[r[0] as usize].push(r);
        }
        Search { by_first, letters }
    }

    fn neighbours(&self, w: &[u16], cap: usize, out: &mut Vec<Vec<u16>>) {
        let inv = |x: u16| x ^ 1;
        for i in 0..w.len().saturating_sub(1) {
            if w[i] == inv(w[i + 1]) {
                let mut v = w[..i].to_vec();
                v.extend_from_slice(&w[i + 2..]);
                out.push(v);
            }
        }
        if w.len() + 2 <= cap {
            for i in 0..=w.len() {
                for x in 0..self.letters as u16 {
                    let mut v = Vec::with_capacity(w.len() + 2);
                    v.extend_from_slice(&w[..i]);
                    v.push(x);
                    v.push(inv(x));
                    v.extend_from_slice(&w[i..]);
                    out.push(v);
                }
            }
        }
        for i in 0..w.len() {
            for r in &self.by_first[w[i] as usize] {
                for k in 1..=3 {
                    if i + k > w.len() || w[i..i + k] != r[..k] {
                        break;
                    }
                    if w.len() - k + (4 - k) > cap {
                        continue;
                    }
                    let mut v = Vec::with_capacity(w.len() + 4 - 2 * k);
                    v.extend_from_slice(&w[..i]);
                    v.extend(r[k..].iter().rev().map(|&x| inv(x)));
                    v.extend_from_slice(&w[i + k..]);
                    out.push(v);
                }
            }
        }
    }

    /// BFS; stops early when `stop` returns true for a visited word.
    fn run(&self, w: &Word, cfg: &OracleConfig, stop: impl Fn(&[u16]) -> bool) -> (bool, Exploration) {
        let start: Vec<u16> = w.iter().map(|l| l.dense() as u16).collect();
        let cap = cfg.max_length.unwrap_or(start.len() + 2);
        let mut shortest = start.len();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        let mut buf = Vec::new();
        while let Some(u) = queue.pop_front() {
            shortest = shortest.min(u.len());
            if stop(&u) {
                return (true, Exploration { shortest, complete: false });
            }
            if seen.len() > cfg.max_steps {
                return (false, Exploration { shortest, complete: false });
            }
            buf.clear();
            self.neighbours(&u, cap, &mut buf);
            for v in buf.drain(..) {
                if !seen.contains(&v) {
                    seen.insert(v.clone());
                    queue.push_back(v);
                }
            }
        }
        (false, Exploration { shortest, complete: true })
    }
}

pub fn bfs_is_identity(p: &SymmetrizedPresentation, w: &Word, cfg: &OracleConfig) -> OracleVerdict {
    let (hit, ex) = Search::new(p).run(w, cfg, |u| u.is_empty());
    match (hit, ex.complete) {
        (true, _) => OracleVerdict::Identity,
        (false, true) => OracleVerdict::NotIdentity,
        (false, false) => OracleVerdict::Inconclusive,
    }
}

/// Explores the whole bounded component of `w` and reports the shortest
/// word found.
pub fn bfs_shortest(p: &SymmetrizedPresentation, w: &Word, cfg: &OracleConfig) -> Exploration {
    Search::new(p).run(w, cfg, |_| false).1
}

/// `count` freely reduced words of the given length, uniform among all such
/// words, drawn from a ChaCha stream seeded with `seed`.
pub fn random_words(p: &SymmetrizedPresentation, length: usize, count: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = 2 * p.generator_count();
    (0..count)
        .map(|_| {
            let mut w: Vec<Letter> = Vec::with_capacity(length);
            for i in 0..length {
                let l = if i == 0 {
                    Letter::from_dense(rng.gen_range(0..letters))
                } else {
                    let prev_inv = w[i - 1].inv().dense();
                    let mut x = rng.gen_range(0..letters - 1);
                    if x >= prev_inv {
                        x += 1;
                    }
                    Letter::from_dense(x)
                };
                w.push(l);
            }
            Word::from_letters(w)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{compute_regions, parse_pd};
    use crate::geodesic::is_freely_reduced;
    use crate::presentation::build_augmented_dehn;

    fn trefoil() -> SymmetrizedPresentation {
        let pd = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        build_augmented_dehn(&compute_regions(&pd, None).unwrap()).unwrap()
    }

    #[test]
    fn relators_are_identity() {
        let p = trefoil();
        for r in p.relators() {
            assert_eq!(bfs_is_identity(&p, &r.word(), &OracleConfig::default()), OracleVerdict::Identity);
        }
    }

    #[test]
    fn generators_are_not_identity() {
        let p = trefoil();
        let cfg = OracleConfig { max_length: Some(1), max_steps: 1000 };
        for g in 0..p.generator_count() as u32 {
            let w = Word::from_letters(alloc::vec![Letter::pos(g)]);
            assert_eq!(bfs_is_identity(&p, &w, &cfg), OracleVerdict::NotIdentity);
        }
    }

    #[test]
    fn step_cap_is_inconclusive() {
        let p = trefoil();
        let w = Word::parse("X1 X2 X3 X4").unwrap();
        let cfg = OracleConfig { max_length: Some(8), max_steps: 10 };
        assert_eq!(bfs_is_identity(&p, &w, &cfg), OracleVerdict::Inconclusive);
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = trefoil();
        let a = random_words(&p, 7, 50, 42);
        assert_eq!(a, random_words(&p, 7, 50, 42));
        assert_ne!(a, random_words(&p, 7, 50, 43));
        assert_eq!(a.len(), 50);
        assert!(a.iter().all(|w| w.len() == 7 && is_freely_reduced(w)));
        assert_eq!(random_words(&p, 0, 3, 1), alloc::vec![Word::new(); 3]);
    }
}
