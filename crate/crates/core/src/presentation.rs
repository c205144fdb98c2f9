//! The augmented Dehn presentation and its small-cancellation checks.
//!
//! One generator per region and one relator `X_a X_b^-1 X_c X_d^-1` per
//! crossing, where `a, b, c, d` are the NW, NE, SE, SW corner regions. The
//! symmetrized relator set (all rotations of every relator and its inverse)
//! is indexed by two-letter prefix in a dense table, so the completion of a
//! pair is an O(1) lookup.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::LabeledDiagram;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Base relator of one crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relator {
    pub letters: [Letter; 4],
    /// 1-based crossing index, or 0 when built from raw relators.
    pub crossing: usize,
}

impl Relator {
    pub fn word(&self) -> Word {
        Word::from_letters(self.letters.to_vec())
    }
}

/// A cyclic relator word together with the base relator it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymmetrizedRelator {
    pub letters: [Letter; 4],
    /// Index into the base relators.
    pub base: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetrizedPresentation {
    generator_count: usize,
    base: Vec<Relator>,
    symmetrized: Vec<SymmetrizedRelator>,
    /// `pair_first[x * L + y]` is 1 + index of the first symmetrized relator
    /// starting with `x y`, or 0. `L = 2 * generator_count`.
    pair_first: Vec<u32>,
    pair_count: Vec<u16>,
}

/// All eight cyclic readings of a length-4 word and its inverse.
pub fn symmetrize(r: [Letter; 4]) -> [[Letter; 4]; 8] {
    let inv = [r[3].inv(), r[2].inv(), r[1].inv(), r[0].inv()];
    let mut out = [r; 8];
    for s in 0..4 {
        out[s] = core::array::from_fn(|i| r[(s + i) % 4]);
        out[4 + s] = core::array::from_fn(|i| inv[(s + i) % 4]);
    }
    out
}

/// Builds the augmented Dehn presentation; refuses diagrams that are not
/// prime, reduced and alternating.
pub fn build_augmented_dehn(d: &LabeledDiagram) -> Result<SymmetrizedPresentation> {
    let report = d.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(report.problems.join("; ")));
    }
    Ok(SymmetrizedPresentation::from_diagram_unchecked(d))
}

impl SymmetrizedPresentation {
    /// Reads the relators without validating the diagram first. Used to
    /// inspect presentations of diagrams that fail validation.
    pub fn from_diagram_unchecked(d: &LabeledDiagram) -> SymmetrizedPresentation {
        let base = (1..=d.n())
            .map(|k| {
                let [a, b, c, dd] = d.corner_regions(k);
                Relator {
                    letters: [Letter::pos(a), Letter::neg(b), Letter::pos(c), Letter::neg(dd)],
                    crossing: k,
                }
            })
            .collect();
        SymmetrizedPresentation::with_relators(d.region_count(), base)
    }

    /// Presentation on generators `X0..X{generator_count-1}` with the given
    /// relators. No validation beyond generator range.
    pub fn from_relators(generator_count: usize, relators: Vec<[Letter; 4]>) -> Result<Self> {
        for r in &relators {
            for l in r {
                if l.generator.0 as usize >= generator_count {
                    return Err(Error::GeneratorRange {
                        generator: l.generator.0,
                        count: generator_count,
                    });
                }
            }
        }
        let base = relators
            .into_iter()
            .map(|letters| Relator { letters, crossing: 0 })
            .collect();
        Ok(SymmetrizedPresentation::with_relators(generator_count, base))
    }

    fn with_relators(generator_count: usize, base: Vec<Relator>) -> SymmetrizedPresentation {
        let mut seen = BTreeSet::new();
        let mut symmetrized = Vec::with_capacity(8 * base.len());
        for (i, r) in base.iter().enumerate() {
            for letters in symmetrize(r.letters) {
                if seen.insert(letters) {
                    symmetrized.push(SymmetrizedRelator { letters, base: i });
                }
            }
        }
        let l = 2 * generator_count;
        let mut pair_first = vec![0u32; l * l];
        let mut pair_count = vec![0u16; l * l];
        for (i, s) in symmetrized.iter().enumerate() {
            let key = s.letters[0].dense() * l + s.letters[1].dense();
            if pair_first[key] == 0 {
                pair_first[key] = i as u32 + 1;
            }
            pair_count[key] = pair_count[key].saturating_add(1);
        }
        SymmetrizedPresentation { generator_count, base, symmetrized, pair_first, pair_count }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Relator] {
        &self.base
    }

    pub fn symmetrized(&self) -> &[SymmetrizedRelator] {
        &self.symmetrized
    }

    fn key(&self, x: Letter, y: Letter) -> Option<usize> {
        let l = 2 * self.generator_count;
        let (a, b) = (x.dense(), y.dense());
        (a < l && b < l).then_some(a * l + b)
    }

    /// The first symmetrized relator that starts with `x y`.
    pub fn relator_with_prefix(&self, x: Letter, y: Letter) -> Option<&SymmetrizedRelator> {
        let k = self.key(x, y)?;
        match self.pair_first[k] {
            0 => None,
            i => Some(&self.symmetrized[i as usize - 1]),
        }
    }

    /// Completes the pair `x y` to the relator `x y q r`, returning `(q, r)`.
    pub fn complete(&self, x: Letter, y: Letter) -> Option<(Letter, Letter)> {
        self.relator_with_prefix(x, y).map(|s| (s.letters[2], s.letters[3]))
    }

    /// Number of symmetrized relators with prefix `x y`.
    pub fn pair_multiplicity(&self, x: Letter, y: Letter) -> usize {
        self.key(x, y).map_or(0, |k| self.pair_count[k] as usize)
    }

    /// Errors if the word uses a generator outside `X0..`.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.iter().find(|l| l.generator.0 as usize >= self.generator_count) {
            Some(l) => Err(Error::GeneratorRange {
                generator: l.generator.0,
                count: self.generator_count,
            }),
            None => Ok(()),
        }
    }

    pub fn is_pair(&self, w: &Word) -> Result<bool> {
        let [x, y] = two_letters(w)?;
        Ok(self.pair_multiplicity(x, y) > 0)
    }

    /// `x z` is a sister-set when `x y` and `y^-1 z` are pairs for some
    /// `y != z`.
    pub fn is_sister_set(&self, w: &Word) -> Result<bool> {
        let [x, z] = two_letters(w)?;
        let l = 2 * self.generator_count;
        Ok((0..l).map(Letter::from_dense).any(|y| {
            y != z && self.pair_multiplicity(x, y) > 0 && self.pair_multiplicity(y.inv(), z) > 0
        }))
    }

    pub fn check_small_cancellation(&self) -> SmallCancellationReport {
        check_small_cancellation(self)
    }
}

fn two_letters(w: &Word) -> Result<[Letter; 2]> {
    match w.letters() {
        &[x, y] => Ok([x, y]),
        other => Err(Error::WordLength(other.len())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallCancellationReport {
    /// Pairs that occur in two or more distinct symmetrized relators.
    pub c4_violations: Vec<(Letter, Letter)>,
    /// Sister-sets that are also pairs.
    pub t4_violations: Vec<(Letter, Letter)>,
    /// Colour (0 or 1) per generator such that every relator alternates
    /// colours, if one exists.
    pub coloring: Option<Vec<u8>>,
}

impl SmallCancellationReport {
    pub fn is_grid(&self) -> bool {
        self.c4_violations.is_empty() && self.t4_violations.is_empty() && self.coloring.is_some()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} C''(4) violation(s), {} T(4) violation(s), coloring {}",
            self.c4_violations.len(),
            self.t4_violations.len(),
            if self.coloring.is_some() { "found" } else { "impossible" }
        )
    }
}

pub fn check_small_cancellation(p: &SymmetrizedPresentation) -> SmallCancellationReport {
    let mut pairs = BTreeSet::new();
    let mut c4 = BTreeSet::new();
    for s in &p.symmetrized {
        let (x, y) = (s.letters[0], s.letters[1]);
        pairs.insert((x, y));
        if p.pair_multiplicity(x, y) > 1 {
            c4.insert((x, y));
        }
    }

    let mut after: BTreeMap<Letter, Vec<Letter>> = BTreeMap::new();
    for &(x, y) in &pairs {
        after.entry(x).or_default().push(y);
    }
    let mut t4 = BTreeSet::new();
    for &(x, y) in &pairs {
        for &z in after.get(&y.inv()).into_iter().flatten() {
            if y != z && pairs.contains(&(x, z)) {
                t4.insert((x, z));
            }
        }
    }

    SmallCancellationReport {
        c4_violations: c4.into_iter().collect(),
        t4_violations: t4.into_iter().collect(),
        coloring: two_coloring(p),
    }
}

/// Colours generators so that consecutive relator letters differ.
fn two_coloring(p: &SymmetrizedPresentation) -> Option<Vec<u8>> {
    let g = p.generator_count;
    let mut adj = vec![Vec::new(); g];
    for r in &p.base {
        for i in 0..4 {
            let a = r.letters[i].generator.0 as usize;
            let b = r.letters[(i + 1) % 4].generator.0 as usize;
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut color = vec![u8::MAX; g];
    for s in 0..g {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Rewrites a Dehn-presentation word into the augmented presentation:
/// `X_i -> X_i X_0`, `X_i^-1 -> X_0^-1 X_i^-1`.
pub fn dehn_to_augmented(w: &Word) -> Result<Word> {
    let mut out = Word::new();
    for &l in w {
        if l.generator.0 == 0 {
            return Err(Error::ContainsOuterGenerator);
        }
        if l.inverse {
            out.push(Letter::neg(0));
            out.push(l);
        } else {
            out.push(l);
            out.push(Letter::pos(0));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pass {
    Down,
    Up,
}

/// Reads a loop that passes through regions: down through region `i`
/// contributes `X_i`, up contributes `X_i^-1`.
pub fn read_loop_word(d: &LabeledDiagram, trace: &[(u32, Pass)]) -> Result<Word> {
    trace
        .iter()
        .map(|&(r, pass)| {
            if r as usize >= d.region_count() {
                Err(Error::UnknownRegion(r))
            } else {
                Ok(Letter::new(r, pass == Pass::Up))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{compute_regions, parse_pd};
    use alloc::string::ToString;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    fn trefoil() -> (LabeledDiagram, SymmetrizedPresentation) {
        let d = compute_regions(&parse_pd(TREFOIL).unwrap(), None).unwrap();
        let p = build_augmented_dehn(&d).unwrap();
        (d, p)
    }

    #[test]
    fn relator_shape() {
        let (d, p) = trefoil();
        assert_eq!(p.generator_count(), 5);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.symmetrized().len(), 24);
        for r in p.relators() {
            let [a, b, c, dd] = d.corner_regions(r.crossing);
            assert_eq!(r.word().to_string(), format!("X{a} X{b}^-1 X{c} X{dd}^-1"));
        }
        for s in p.symmetrized() {
            let (q, r) = p.complete(s.letters[0], s.letters[1]).unwrap();
            assert_eq!((q, r), (s.letters[2], s.letters[3]));
        }
    }

    #[test]
    fn trefoil_is_grid() {
        let (_, p) = trefoil();
        let rep = p.check_small_cancellation();
        assert!(rep.is_grid(), "{}", rep.summary());
    }

    #[test]
    fn pairs_and_sister_sets() {
        let (_, p) = trefoil();
        let r = p.relators()[0].letters;
        let w = Word::from_letters(vec![r[0], r[1]]);
        assert!(p.is_pair(&w).unwrap());
        assert!(!p.is_sister_set(&w).unwrap());
        let same = Word::from_letters(vec![r[0], r[0]]);
        assert!(!p.is_pair(&same).unwrap());
        assert_eq!(p.is_pair(&Word::new()), Err(Error::WordLength(0)));
    }

    #[test]
    fn empty_presentation_passes() {
        let p = SymmetrizedPresentation::from_relators(3, vec![]).unwrap();
        assert!(p.check_small_cancellation().is_grid());
    }

    #[test]
    fn duplicated_relator_violates_c4() {
        let r = [Letter::pos(1), Letter::neg(2), Letter::pos(3), Letter::neg(4)];
        let s = [Letter::pos(1), Letter::neg(2), Letter::pos(4), Letter::neg(3)];
        let p = SymmetrizedPresentation::from_relators(5, vec![r, s]).unwrap();
        assert!(!p.check_small_cancellation().c4_violations.is_empty());
    }

    #[test]
    fn dehn_translation() {
        let w = Word::parse("X3").unwrap();
        assert_eq!(dehn_to_augmented(&w).unwrap().to_string(), "X3 X0");
        let w = Word::parse("X1 X2^-1").unwrap();
        assert_eq!(dehn_to_augmented(&w).unwrap().to_string(), "X1 X0 X0^-1 X2^-1");
        assert_eq!(dehn_to_augmented(&Word::new()).unwrap(), Word::new());
        assert_eq!(
            dehn_to_augmented(&Word::parse("X0").unwrap()),
            Err(Error::ContainsOuterGenerator)
        );
    }

    #[test]
    fn loop_words() {
        let (d, _) = trefoil();
        let w = read_loop_word(&d, &[(2, Pass::Down), (0, Pass::Up)]).unwrap();
        assert_eq!(w.to_string(), "X2 X0^-1");
        assert_eq!(read_loop_word(&d, &[]).unwrap(), Word::new());
        assert_eq!(read_loop_word(&d, &[(5, Pass::Up)]), Err(Error::UnknownRegion(5)));
    }
}
