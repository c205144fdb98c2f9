//! The four loop families (Wirtinger arcs, Wirtinger loops, Dehn arcs,
//! short arcs) read as words, with peripherality verdicts.
//!
//! Loops are read with the region rule: passing down through region `i`
//! contributes `X_i`, passing up contributes `X_i^-1`. Following the double
//! of the diagram through an under-pass from region `u` to region `v`
//! contributes `X_u X_v^-1`.

use alloc::vec::Vec;

use crate::diagram::LabeledDiagram;
use crate::geodesic::{free_reduce, reduce_to_geodesic};
use crate::peripheral::{is_conjugate_peripheral, is_peripheral, ConjugacyVerdict, PeripheralComplex, PeripheralVerdict};
use crate::presentation::SymmetrizedPresentation;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcKind {
    WirtingerArc,
    WirtingerLoop,
    DehnArc,
    ShortArc,
}

impl ArcKind {
    pub const ALL: [ArcKind; 4] = [ArcKind::WirtingerArc, ArcKind::WirtingerLoop, ArcKind::DehnArc, ArcKind::ShortArc];

    pub fn name(self) -> &'static str {
        match self {
            ArcKind::WirtingerArc => "wirtinger_arc",
            ArcKind::WirtingerLoop => "wirtinger_loop",
            ArcKind::DehnArc => "dehn_arc",
            ArcKind::ShortArc => "short_arc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcParams {
    /// Longitude prefix through the first `p` under-passes.
    Prefix { p: usize },
    /// Follow the double through `k` crossings, return through the upper
    /// half-space.
    UpperReturn { k: usize },
    /// Follow the double through `k` crossings, drop down through `region`
    /// and come back up through the outer region.
    LowerReturn { k: usize, region: u32 },
    /// Pass through `first` then the adjacent `second`; `upper` loops go
    /// down through `first`.
    Regions { first: u32, second: u32, upper: bool },
    /// Dehn arc through `region`; `upper` arcs go down through it.
    Region { region: u32, upper: bool },
    /// Jump at a crossing from visit `from` to visit `to` (1-based), then
    /// follow the double forward to the end or backward to the start.
    Jump { crossing: usize, from: usize, to: usize, forward: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcInstance {
    pub kind: ArcKind,
    pub params: ArcParams,
    pub word: Word,
    pub verdict: PeripheralVerdict,
    /// Short arcs only.
    pub conjugate: Option<ConjugacyVerdict>,
    pub paper_asserted: bool,
}

impl ArcInstance {
    /// An asserted instance whose verdict contradicts non-peripherality.
    pub fn is_failure(&self) -> bool {
        self.paper_asserted && self.is_peripheral_in_any_sense()
    }

    pub fn is_peripheral_in_any_sense(&self) -> bool {
        self.verdict.peripheral || self.conjugate.as_ref().is_some_and(|c| c.verdict.peripheral)
    }
}

/// Double of the diagram through visits `range`: `X_u X_v^-1` per
/// under-pass.
fn double_word(d: &LabeledDiagram, range: core::ops::Range<usize>) -> Word {
    let mut w = Word::new();
    for v in &d.visits()[range] {
        if let (Some(a), Some(b)) = (v.from_region, v.to_region) {
            w.push(Letter::pos(a));
            w.push(Letter::neg(b));
        }
    }
    w
}

/// Both geodesic words for the meridian (`(0,0) -> (0,1) -> (-1,1)` and
/// `(0,0) -> (-1,0) -> (-1,1)`) and their inverses.
pub fn meridian_representatives(c: &PeripheralComplex) -> [Word; 4] {
    let a = c.meridian_word();
    let b = c.path_word(&[(0, 0), (-1, 0), (-1, 1)]);
    [a.inverse(), b.inverse(), a, b]
}

fn instance(
    c: &PeripheralComplex,
    p: &SymmetrizedPresentation,
    kind: ArcKind,
    params: ArcParams,
    word: Word,
    paper_asserted: bool,
) -> ArcInstance {
    let verdict = is_peripheral(c, p, &word);
    let conjugate = (kind == ArcKind::ShortArc).then(|| is_conjugate_peripheral(c, p, &word));
    ArcInstance { kind, params, word, verdict, conjugate, paper_asserted }
}

/// Longitude prefixes `l_1..l_2p` for `1 <= p < n` (asserted), plus the
/// returns after `k` crossings for `1 < k < 2n` through either half-space
/// (informational).
pub fn wirtinger_arcs(d: &LabeledDiagram, p: &SymmetrizedPresentation, c: &PeripheralComplex) -> Vec<ArcInstance> {
    let n = d.n();
    let l = c.longitude_word();
    let mut out: Vec<ArcInstance> = (1..n)
        .map(|q| instance(c, p, ArcKind::WirtingerArc, ArcParams::Prefix { p: q }, l.prefix(2 * q), true))
        .collect();
    for k in 2..2 * n {
        let upper = double_word(d, 0..k);
        out.push(instance(c, p, ArcKind::WirtingerArc, ArcParams::UpperReturn { k }, upper.clone(), false));
        let region = d.left_of(d.visits()[k - 1].out_edge);
        let mut lower = upper;
        lower.push(Letter::pos(region));
        lower.push(Letter::neg(0));
        out.push(instance(c, p, ArcKind::WirtingerArc, ArcParams::LowerReturn { k, region }, lower, false));
    }
    out
}

/// `X_R X_R'^-1` and `X_R^-1 X_R'` for every ordered pair of regions that
/// share an edge, minus the four meridian words.
pub fn wirtinger_loops(d: &LabeledDiagram, p: &SymmetrizedPresentation, c: &PeripheralComplex) -> Vec<ArcInstance> {
    let forbidden = meridian_representatives(c);
    let mut pairs = alloc::collections::BTreeSet::new();
    for e in 1..=2 * d.n() as u32 {
        let (a, b) = (d.left_of(e), d.right_of(e));
        if a != b {
            pairs.insert((a, b));
            pairs.insert((b, a));
        }
    }
    let mut out = Vec::new();
    for (first, second) in pairs {
        for upper in [true, false] {
            let word = Word::from_letters([Letter::new(first, !upper), Letter::new(second, upper)]);
            if forbidden.contains(&word) {
                continue;
            }
            let params = ArcParams::Regions { first, second, upper };
            out.push(instance(c, p, ArcKind::WirtingerLoop, params, word, true));
        }
    }
    out
}

/// `X_a X_0^-1` and `X_a^-1 X_0` for every bounded region `a`. An instance
/// that spells one of the meridian words is a loop around the basepoint
/// strand and is reported as not asserted.
pub fn dehn_arcs(d: &LabeledDiagram, p: &SymmetrizedPresentation, c: &PeripheralComplex) -> Vec<ArcInstance> {
    let forbidden = meridian_representatives(c);
    let mut out = Vec::new();
    for region in 1..d.region_count() as u32 {
        for upper in [true, false] {
            let word = Word::from_letters([Letter::new(region, !upper), Letter::new(0, upper)]);
            let asserted = !forbidden.contains(&word);
            out.push(instance(c, p, ArcKind::DehnArc, ArcParams::Region { region, upper }, word, asserted));
        }
    }
    out
}

/// For each crossing with visits `i < j`: follow the double to `c_i`, jump
/// to the strand at `c_j`, then follow the double forward to the end or
/// backward to the start. Verdicts use conjugate-peripherality.
/// Crossing an unlabelled (outer) region contributes nothing.
fn region_letter(w: &mut Word, region: u32, inverse: bool) {
    if region != 0 {
        w.push(Letter::new(region, inverse));
    }
}

/// The jump is the vertical segment at the crossing between the doubles of
/// the two strands. It pierces the plane in the quadrant left of both
/// strands: NW when the over-strand runs north, NE when it runs south.
pub fn short_arcs(d: &LabeledDiagram, p: &SymmetrizedPresentation, c: &PeripheralComplex) -> Vec<ArcInstance> {
    let visits = d.visits();
    let len = visits.len();
    let mut out = Vec::new();
    for crossing in 1..=d.n() {
        let mut at = visits.iter().enumerate().filter(|(_, v)| v.crossing == crossing).map(|(i, _)| i);
        let (Some(i), Some(j)) = (at.next(), at.next()) else { continue };
        let [nw, ne, _, _] = d.corner_regions(crossing);
        let over = if visits[i].is_under { &visits[j] } else { &visits[i] };
        let q = if over.entry_slot == 1 { nw } else { ne };
        let mut head = double_word(d, 0..i);
        let (fwd_mid, bwd_mid) = if visits[i].is_under {
            region_letter(&mut head, nw, false);
            region_letter(&mut head, q, true);
            (Word::new(), Word::new())
        } else {
            region_letter(&mut head, q, false);
            let mut f = Word::new();
            region_letter(&mut f, ne, true);
            let mut b = Word::new();
            region_letter(&mut b, nw, true);
            (f, b)
        };
        let forward = &(&head * &fwd_mid) * &double_word(d, j + 1..len);
        let backward = &(&head * &bwd_mid) * &double_word(d, 0..j).inverse();
        for (word, fwd) in [(forward, true), (backward, false)] {
            let params = ArcParams::Jump { crossing, from: i + 1, to: j + 1, forward: fwd };
            out.push(instance(c, p, ArcKind::ShortArc, params, word, true));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FamilyCount {
    pub total: usize,
    pub asserted: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem2Report {
    /// Indexed like [`ArcKind::ALL`].
    pub families: [FamilyCount; 4],
    /// Asserted instances found peripheral (or conjugate-peripheral for
    /// short arcs).
    pub failures: Vec<ArcInstance>,
    /// Instances outside the asserted forms, with their verdicts.
    pub informational: Vec<ArcInstance>,
}

impl Theorem2Report {
    pub fn asserted_total(&self) -> usize {
        self.families.iter().map(|f| f.asserted).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs all four enumerations. Meaningful for non-torus knots only; the
/// caller decides whether failures on torus knots count.
pub fn verify_theorem2(d: &LabeledDiagram, p: &SymmetrizedPresentation, c: &PeripheralComplex) -> Theorem2Report {
    let all = [wirtinger_arcs(d, p, c), wirtinger_loops(d, p, c), dehn_arcs(d, p, c), short_arcs(d, p, c)];
    let mut families = [FamilyCount::default(); 4];
    let mut failures = Vec::new();
    let mut informational = Vec::new();
    for (f, list) in families.iter_mut().zip(all) {
        for inst in list {
            f.total += 1;
            if inst.paper_asserted {
                f.asserted += 1;
                if inst.is_failure() {
                    f.failures += 1;
                    failures.push(inst);
                }
            } else {
                informational.push(inst);
            }
        }
    }
    Theorem2Report { families, failures, informational }
}

/// Length of the shortest cyclic conjugate reachable by free and chain
/// reduction; short-arc words stay below `2n`.
pub fn reduced_length(p: &SymmetrizedPresentation, w: &Word) -> usize {
    reduce_to_geodesic(p, &free_reduce(w)).len()
}
