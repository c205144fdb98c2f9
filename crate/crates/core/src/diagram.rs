//! Planar diagram codes, face tracing and the labelling conventions.
//!
//! A crossing `X(a,b,c,d)` lists its four edge ends counterclockwise starting
//! at the incoming under-strand. Positions are called W, S, E, N in that
//! order: the under-strand runs W → E and the over-strand runs between S and
//! N. The corner between position `i` and position `i + 1` is the corner `i`;
//! corners 0..4 are therefore SW, SE, NE, NW.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Crossings as 4-tuples of edge ids, counterclockwise from the incoming
/// under-strand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
}

/// Position of an edge end at a crossing: `crossing * 4 + slot`.
type Dart = usize;

fn dart(crossing: usize, slot: usize) -> Dart {
    crossing * 4 + slot
}

impl PdCode {
    /// Checks edge ranges and multiplicities, then traces the strand to make
    /// sure the code is a single, consistently oriented component.
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<PdCode> {
        let n = crossings.len();
        if n == 0 {
            return Err(Error::EmptyDiagram);
        }
        let mut count = vec![0usize; 2 * n + 1];
        for c in &crossings {
            for &e in c {
                if e == 0 || e as usize > 2 * n {
                    return Err(Error::EdgeRange { edge: e, crossings: n });
                }
                count[e as usize] += 1;
            }
        }
        for (e, &k) in count.iter().enumerate().skip(1) {
            if k != 2 {
                return Err(Error::EdgeCount { edge: e as u32, count: k });
            }
        }
        let pd = PdCode { crossings };
        pd.trace()?;
        Ok(pd)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn edge_at(&self, d: Dart) -> u32 {
        self.crossings[d / 4][d % 4]
    }

    /// For every dart, the dart at the other end of the same edge.
    fn partners(&self) -> Vec<Dart> {
        let n = self.crossings.len();
        let mut first: Vec<Option<Dart>> = vec![None; 2 * n + 1];
        let mut other = vec![0; 4 * n];
        for d in 0..4 * n {
            let e = self.edge_at(d) as usize;
            match first[e] {
                None => first[e] = Some(d),
                Some(f) => {
                    other[f] = d;
                    other[d] = f;
                }
            }
        }
        other
    }

    /// Follows the knot from the incoming under-strand of the first crossing.
    /// Returns the entry darts in travel order.
    fn trace(&self) -> Result<Vec<Dart>> {
        let n = self.crossings.len();
        let other = self.partners();
        let mut entries = Vec::with_capacity(2 * n);
        let mut under_seen = vec![0u8; n];
        let mut over_seen = vec![0u8; n];
        let start = dart(0, 0);
        let mut at = start;
        loop {
            let (k, slot) = (at / 4, at % 4);
            match slot {
                0 => under_seen[k] += 1,
                2 => return Err(Error::Orientation { crossing: k + 1 }),
                _ => over_seen[k] += 1,
            }
            entries.push(at);
            if entries.len() > 4 * n {
                return Err(Error::Orientation { crossing: k + 1 });
            }
            let exit = dart(k, (slot + 2) % 4);
            at = other[exit];
            if at == start {
                break;
            }
        }
        if entries.len() < 2 * n {
            return Err(Error::MultiComponent {
                start: self.edge_at(start),
                covered: entries.len(),
                total: 2 * n,
            });
        }
        if let Some(k) = (0..n).find(|&k| under_seen[k] != 1 || over_seen[k] != 1) {
            return Err(Error::Orientation { crossing: k + 1 });
        }
        Ok(entries)
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "X({a},{b},{c},{d})")?;
        }
        Ok(())
    }
}

/// Parses `X(a,b,c,d)` terms separated by whitespace; `#` starts a comment.
pub fn parse_pd(text: &str) -> Result<PdCode> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut crossings = Vec::new();
    let syntax = |position: usize, message: &str| Error::Syntax {
        position,
        message: message.to_string(),
    };
    let skip_blank = |i: &mut usize| {
        while *i < bytes.len() {
            match bytes[*i] {
                b'#' => {
                    while *i < bytes.len() && bytes[*i] != b'\n' {
                        *i += 1;
                    }
                }
                b if b.is_ascii_whitespace() => *i += 1,
                _ => break,
            }
        }
    };
    loop {
        skip_blank(&mut i);
        if i >= bytes.len() {
            break;
        }
        if bytes[i] != b'X' {
            return Err(syntax(i, "expected `X(`"));
        }
        i += 1;
        if bytes.get(i) != Some(&b'(') {
            return Err(syntax(i, "expected `(` after `X`"));
        }
        i += 1;
        let mut tuple = [0u32; 4];
        for (slot, value) in tuple.iter_mut().enumerate() {
            while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b'\t') {
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(syntax(start, "expected a positive integer"));
            }
            *value = text[start..i]
                .parse()
                .map_err(|_| syntax(start, "edge id does not fit in 32 bits"))?;
            if *value == 0 {
                return Err(syntax(start, "edge ids start at 1"));
            }
            while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b'\t') {
                i += 1;
            }
            let want = if slot == 3 { b')' } else { b',' };
            if bytes.get(i) != Some(&want) {
                let msg = if slot == 3 { "expected `)`" } else { "expected `,`" };
                return Err(syntax(i, msg));
            }
            i += 1;
        }
        crossings.push(tuple);
    }
    PdCode::new(crossings)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One (edge, side) incidence on a region boundary; sides are relative to
/// the direction of travel along the knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Incidence {
    pub edge: u32,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub id: u32,
    /// Cyclic boundary in face-tracing order.
    pub boundary: Vec<Incidence>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingVisit {
    /// 1-based crossing index into the PD code.
    pub crossing: usize,
    pub is_under: bool,
    /// Position where the strand enters: 0 (W) for under-passes, 1 (S) or
    /// 3 (N) for over-passes.
    pub entry_slot: usize,
    pub in_edge: u32,
    pub out_edge: u32,
    /// For under-passes: the regions on the left of the strand before and
    /// after the crossing (separated by the over-strand).
    pub from_region: Option<u32>,
    pub to_region: Option<u32>,
    /// Regions at the NW, NE, SE, SW corners.
    pub corner_regions: [u32; 4],
}

/// A traced diagram with regions labelled `0..=n+1` (0 outer) and crossing
/// visits `c_1..c_2n` starting at the first under-pass after the basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDiagram {
    pd: PdCode,
    n: usize,
    regions: Vec<Region>,
    /// Corner regions per crossing, indexed by corner 0..4 (SW, SE, NE, NW).
    corners: Vec<[u32; 4]>,
    /// Left and right region of every edge, indexed by edge id.
    left: Vec<u32>,
    right: Vec<u32>,
    basepoint_edge: u32,
    outer_choice: Option<usize>,
    visits: Vec<CrossingVisit>,
}

/// Traces faces, picks the outer region and fixes the crossing-visit order.
///
/// Faces are discovered by scanning corners in PD order. `outer_choice`
/// picks the outer face by its label under the default choice (the face on
/// the right of edge 1).
pub fn compute_regions(pd: &PdCode, outer_choice: Option<usize>) -> Result<LabeledDiagram> {
    let n = pd.crossing_count();
    let other = pd.partners();
    let entries = pd.trace()?;

    // Corner (k, i) continues to corner (k', i' - 1) across the edge at slot i.
    let next_corner = |c: usize| -> usize {
        let o = other[c];
        dart(o / 4, (o % 4 + 3) % 4)
    };
    let mut raw_face = vec![usize::MAX; 4 * n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for c in 0..4 * n {
        if raw_face[c] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut cycle = Vec::new();
        let mut at = c;
        while raw_face[at] == usize::MAX {
            raw_face[at] = id;
            cycle.push(at);
            at = next_corner(at);
        }
        cycles.push(cycle);
    }
    let faces = cycles.len();
    if faces != n + 2 {
        return Err(Error::NonPlanar { euler: faces as i64 - n as i64 });
    }

    // Travel direction: each edge leaves the crossing it is exited from.
    let mut tail: Vec<Dart> = vec![0; 2 * n + 1];
    let mut is_tail = vec![false; 4 * n];
    for &entry in &entries {
        let exit = dart(entry / 4, (entry % 4 + 2) % 4);
        tail[pd.edge_at(exit) as usize] = exit;
        is_tail[exit] = true;
    }
    let raw_left = |e: usize| raw_face[tail[e]];
    let raw_right = |e: usize| {
        let t = tail[e];
        raw_face[dart(t / 4, (t % 4 + 3) % 4)]
    };

    let default_outer = raw_right(1);
    let default_label = relabel(faces, default_outer);
    let outer = match outer_choice {
        None => default_outer,
        Some(label) => {
            if label >= faces {
                return Err(Error::InvalidOuter { requested: label, max: faces - 1 });
            }
            default_label.iter().position(|&l| l == label as u32).unwrap()
        }
    };
    let label = relabel(faces, outer);

    let mut regions: Vec<Region> = (0..faces)
        .map(|id| Region { id: id as u32, boundary: Vec::new() })
        .collect();
    for (raw, cycle) in cycles.iter().enumerate() {
        let r = &mut regions[label[raw] as usize];
        for &c in cycle {
            let side = if is_tail[c] { Side::Left } else { Side::Right };
            r.boundary.push(Incidence { edge: pd.edge_at(c), side });
        }
    }
    let corners: Vec<[u32; 4]> = (0..n)
        .map(|k| core::array::from_fn(|i| label[raw_face[dart(k, i)]]))
        .collect();
    let mut left = vec![u32::MAX; 2 * n + 1];
    let mut right = vec![u32::MAX; 2 * n + 1];
    for e in 1..=2 * n {
        left[e] = label[raw_left(e)];
        right[e] = label[raw_right(e)];
    }

    // Knot order starting at edge 1; entries[s] is the head of edge in_edge(s).
    let in_edge = |s: usize| pd.edge_at(other[entries[s]]);
    let len = entries.len();
    let first = (0..len).find(|&s| in_edge(s) == 1).unwrap();
    let bounds_outer = |e: u32| left[e as usize] == 0 || right[e as usize] == 0;
    let base_step = (0..len)
        .map(|j| (first + j) % len)
        .find(|&s| bounds_outer(in_edge(s)))
        .expect("some edge bounds every face");
    let basepoint_edge = in_edge(base_step);
    let under_step = (0..len)
        .map(|j| (base_step + j) % len)
        .find(|&s| entries[s] % 4 == 0)
        .unwrap();

    let visits = (0..len)
        .map(|j| {
            let s = (under_step + j) % len;
            let entry = entries[s];
            let (k, slot) = (entry / 4, entry % 4);
            let in_e = in_edge(s);
            let out_e = pd.edge_at(dart(k, (slot + 2) % 4));
            let is_under = slot == 0;
            let [sw, se, ne, nw] = corners[k];
            CrossingVisit {
                crossing: k + 1,
                is_under,
                entry_slot: slot,
                in_edge: in_e,
                out_edge: out_e,
                from_region: is_under.then(|| left[in_e as usize]),
                to_region: is_under.then(|| left[out_e as usize]),
                corner_regions: [nw, ne, se, sw],
            }
        })
        .collect();

    Ok(LabeledDiagram {
        pd: pd.clone(),
        n,
        regions,
        corners,
        left,
        right,
        basepoint_edge,
        outer_choice,
        visits,
    })
}

/// Raw face id → label, with `outer` mapped to 0 and the rest in order.
fn relabel(faces: usize, outer: usize) -> Vec<u32> {
    let mut next = 1;
    (0..faces)
        .map(|f| {
            if f == outer {
                0
            } else {
                next += 1;
                next - 1
            }
        })
        .collect()
}

impl LabeledDiagram {
    pub fn from_pd(pd: &PdCode) -> Result<LabeledDiagram> {
        compute_regions(pd, None)
    }

    pub fn pd(&self) -> &PdCode {
        &self.pd
    }

    /// Number of crossings.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn outer_region(&self) -> u32 {
        0
    }

    pub fn outer_choice(&self) -> Option<usize> {
        self.outer_choice
    }

    pub fn basepoint_edge(&self) -> u32 {
        self.basepoint_edge
    }

    /// `c_1..c_2n`.
    pub fn visits(&self) -> &[CrossingVisit] {
        &self.visits
    }

    /// Corner regions of a 1-based crossing, in NW, NE, SE, SW order.
    pub fn corner_regions(&self, crossing: usize) -> [u32; 4] {
        let [sw, se, ne, nw] = self.corners[crossing - 1];
        [nw, ne, se, sw]
    }

    /// Region on the left of an edge, seen along the knot.
    pub fn left_of(&self, edge: u32) -> u32 {
        self.left[edge as usize]
    }

    pub fn right_of(&self, edge: u32) -> u32 {
        self.right[edge as usize]
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn gauss_code(&self) -> GaussCode {
        gauss_code(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub alternating: bool,
    pub reduced: bool,
    pub prime: bool,
    pub connected: bool,
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.alternating && self.reduced && self.prime && self.connected
    }
}

pub fn validate(d: &LabeledDiagram) -> ValidationReport {
    let mut problems = Vec::new();
    let visits = d.visits();
    let len = visits.len();

    let mut alternating = true;
    for i in 0..len {
        if visits[i].is_under == visits[(i + 1) % len].is_under {
            alternating = false;
            problems.push(format!(
                "visits c_{} and c_{} are both {}",
                i + 1,
                (i + 1) % len + 1,
                if visits[i].is_under { "under" } else { "over" }
            ));
            break;
        }
    }

    let mut reduced = true;
    for (k, c) in d.corners.iter().enumerate() {
        let mut sorted = *c;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            reduced = false;
            problems.push(format!("crossing {} meets a region twice (nugatory)", k + 1));
        }
    }

    let mut shared: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
    for e in 1..=2 * d.n as u32 {
        let (a, b) = (d.left_of(e), d.right_of(e));
        if a != b {
            shared.entry((a.min(b), a.max(b))).or_default().push(e);
        }
    }
    let mut prime = true;
    for ((a, b), edges) in &shared {
        if edges.len() > 1 {
            prime = false;
            problems.push(format!("regions {a} and {b} share edges {edges:?}"));
        }
    }

    let mut seen = vec![false; d.n];
    for v in visits {
        seen[v.crossing - 1] = true;
    }
    let connected = seen.iter().all(|&s| s);
    if !connected {
        problems.push("the strand misses some crossings".into());
    }

    ValidationReport { alternating, reduced, prime, connected, problems }
}

/// Signed crossing sequence: crossings numbered by first visit, negative
/// entries for under-passes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussCode(pub Vec<i32>);

impl GaussCode {
    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Renumbers an arbitrary signed sequence by first occurrence.
    pub fn normalized(raw: &[(usize, bool)]) -> GaussCode {
        let mut number: BTreeMap<usize, i32> = BTreeMap::new();
        let mut code = Vec::with_capacity(raw.len());
        for &(key, under) in raw {
            let next = number.len() as i32 + 1;
            let m = *number.entry(key).or_insert(next);
            code.push(if under { -m } else { m });
        }
        GaussCode(code)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn gauss_code(d: &LabeledDiagram) -> GaussCode {
    let raw: Vec<(usize, bool)> = d.visits.iter().map(|v| (v.crossing, v.is_under)).collect();
    GaussCode::normalized(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
    const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

    fn diagram(text: &str) -> LabeledDiagram {
        compute_regions(&parse_pd(text).unwrap(), None).unwrap()
    }

    #[test]
    fn parses_trefoil() {
        let pd = parse_pd(TREFOIL).unwrap();
        assert_eq!(pd.crossing_count(), 3);
        assert_eq!(pd.to_string(), TREFOIL);
        let pd2 = parse_pd("# comment\nX( 1, 4,2 ,5 )\tX(3,6,4,1) # tail\nX(5,2,6,3)").unwrap();
        assert_eq!(pd, pd2);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_pd(""), Err(Error::EmptyDiagram));
        assert_eq!(parse_pd("  # nothing\n"), Err(Error::EmptyDiagram));
        assert!(matches!(parse_pd("X(1,4,2,5)"), Err(Error::EdgeRange { edge: 4, .. })));
        assert!(parse_pd("X(1,1,2,2)").is_ok());
        assert!(matches!(
            parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,6)"),
            Err(Error::EdgeCount { .. })
        ));
        assert!(matches!(parse_pd("X(1,2,3)"), Err(Error::Syntax { position: 7, .. })));
        assert!(matches!(parse_pd("Y(1,2,3,4)"), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(parse_pd("X(1,0,2,2)"), Err(Error::Syntax { .. })));
        // Hopf link: two components.
        assert!(matches!(
            parse_pd("X(4,1,3,2) X(2,3,1,4)"),
            Err(Error::MultiComponent { .. })
        ));
    }

    #[test]
    fn trefoil_regions() {
        let d = diagram(TREFOIL);
        assert_eq!(d.region_count(), 5);
        assert_eq!(d.basepoint_edge(), 1);
        let total: usize = d.regions().iter().map(|r| r.boundary.len()).sum();
        assert_eq!(total, 4 * 3);
        assert!(d.validate().is_valid());
        assert_eq!(d.gauss_code().0, [-1, 2, -3, 1, -2, 3]);
    }

    #[test]
    fn figure_eight_visits_alternate() {
        let d = diagram(FIGURE_EIGHT);
        assert_eq!(d.visits().len(), 8);
        for (i, v) in d.visits().iter().enumerate() {
            assert_eq!(v.is_under, i % 2 == 0);
        }
        assert_eq!(d.region_count(), 6);
        assert!(d.validate().is_valid());
    }

    #[test]
    fn under_pass_regions_are_left_neighbours() {
        let d = diagram(FIGURE_EIGHT);
        for v in d.visits() {
            let [nw, ne, _, _] = v.corner_regions;
            if v.is_under {
                assert_eq!(v.from_region, Some(nw));
                assert_eq!(v.to_region, Some(ne));
            } else {
                assert_eq!(v.from_region, None);
            }
        }
    }

    #[test]
    fn outer_choice() {
        let pd = parse_pd(TREFOIL).unwrap();
        let d0 = compute_regions(&pd, Some(0)).unwrap();
        assert_eq!(d0, compute_regions(&pd, None).unwrap().clone_with_choice(Some(0)));
        for label in 0..5 {
            let d = compute_regions(&pd, Some(label)).unwrap();
            assert!(d.validate().is_valid());
            let b = d.basepoint_edge();
            assert!(d.left_of(b) == 0 || d.right_of(b) == 0);
            assert!(d.visits()[0].is_under);
        }
        assert_eq!(
            compute_regions(&pd, Some(5)),
            Err(Error::InvalidOuter { requested: 5, max: 4 })
        );
    }

    #[test]
    fn nugatory_is_not_reduced() {
        let d = diagram("X(1,4,2,5) X(3,8,4,1) X(5,2,6,3) X(6,7,7,8)");
        let r = d.validate();
        assert!(!r.reduced);
        assert!(!r.is_valid());
    }

    impl LabeledDiagram {
        fn clone_with_choice(&self, c: Option<usize>) -> LabeledDiagram {
            LabeledDiagram { outer_choice: c, ..self.clone() }
        }
    }
}
