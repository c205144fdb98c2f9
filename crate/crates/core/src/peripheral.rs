//! Fundamental block, peripheral complex and peripherality decisions.
//!
//! The complex is the plane tiled by unit squares; the cell whose bottom-left
//! corner is `(j, r)` carries square `P[(j + r) mod 2n]` of the fundamental
//! block. Every edge points from its even vertex (`x + y` even) to its odd
//! one, so a square with an even bottom-left corner reads `B R^-1 T L^-1`
//! counterclockwise and one with an odd corner reads `B^-1 R T^-1 L`.
//!
//! Translations by `(X, Y)` with `X + Y ≡ 0 (mod 2n)` preserve all labels and
//! orientations; `(n, n)` is the longitude and `(-1, 1)` the meridian.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{GaussCode, LabeledDiagram};
use crate::error::{Error, Result};
use crate::geodesic::{free_reduce, reduce_to_geodesic};
use crate::presentation::{symmetrize, SymmetrizedPresentation};
use crate::word::{Letter, Word};

pub type Vertex = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlacedSquare {
    pub bottom: u32,
    pub top: u32,
    pub left: u32,
    pub right: u32,
    /// 1-based position in the block (the crossing visit it came from).
    pub visit: usize,
}

impl PlacedSquare {
    /// Counterclockwise boundary word from the bottom-left corner, for a
    /// square whose bottom-left corner has the given parity.
    pub fn boundary_word(&self, bottom_left_even: bool) -> [Letter; 4] {
        let s = !bottom_left_even;
        [
            Letter::new(self.bottom, s),
            Letter::new(self.right, !s),
            Letter::new(self.top, s),
            Letter::new(self.left, !s),
        ]
    }
}

/// Canonical representative of a relator class: the least of its eight
/// cyclic readings.
fn relator_class(r: [Letter; 4]) -> [Letter; 4] {
    symmetrize(r).into_iter().min().unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalBlock {
    squares: Vec<PlacedSquare>,
}

impl FundamentalBlock {
    /// Checks the block invariants: even length, labels distinct within each
    /// square, `top(P_i) = bottom(P_{i+1})` cyclically and
    /// `left(P_1) = right(P_2n)`. With a presentation, also checks that every
    /// boundary word is a relator and every relator occurs exactly twice.
    pub fn from_squares(
        squares: Vec<PlacedSquare>,
        p: Option<&SymmetrizedPresentation>,
    ) -> Result<FundamentalBlock> {
        let len = squares.len();
        if len == 0 || !len.is_multiple_of(2) {
            return Err(Error::BlockInvariant(format!("block has {len} squares")));
        }
        for (i, s) in squares.iter().enumerate() {
            let mut l = [s.bottom, s.top, s.left, s.right];
            l.sort_unstable();
            if l.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BlockInvariant(format!("square {} repeats a label", i + 1)));
            }
            let next = &squares[(i + 1) % len];
            if s.top != next.bottom {
                return Err(Error::BlockInvariant(format!(
                    "top of square {} is X{} but bottom of square {} is X{}",
                    i + 1,
                    s.top,
                    (i + 1) % len + 1,
                    next.bottom
                )));
            }
            if i + 1 < len && s.right != next.left {
                return Err(Error::BlockInvariant(format!("squares {} and {} do not glue", i + 1, i + 2)));
            }
        }
        if squares[0].left != squares[len - 1].right {
            return Err(Error::BlockInvariant(format!(
                "left edge X{} of the first square differs from right edge X{} of the last",
                squares[0].left,
                squares[len - 1].right
            )));
        }
        if let Some(p) = p {
            let classes: BTreeSet<[Letter; 4]> =
                p.relators().iter().map(|r| relator_class(r.letters)).collect();
            let mut count: BTreeMap<[Letter; 4], usize> = BTreeMap::new();
            for (i, s) in squares.iter().enumerate() {
                let c = relator_class(s.boundary_word(i % 2 == 0));
                if !classes.contains(&c) {
                    return Err(Error::BlockInvariant(format!(
                        "square {} does not spell a relator",
                        i + 1
                    )));
                }
                *count.entry(c).or_default() += 1;
            }
            if count.len() != classes.len() || count.values().any(|&k| k != 2) {
                return Err(Error::BlockInvariant("some relator does not occur exactly twice".into()));
            }
        }
        Ok(FundamentalBlock { squares })
    }

    pub fn squares(&self) -> &[PlacedSquare] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// Vertical edge labels left to right: `left(P_1), right(P_1), ...,
    /// right(P_2n)`.
    pub fn verticals(&self) -> Vec<u32> {
        let mut v = vec![self.squares[0].left];
        v.extend(self.squares.iter().map(|s| s.right));
        v
    }

    pub fn tops(&self) -> Vec<u32> {
        self.squares.iter().map(|s| s.top).collect()
    }

    pub fn bottoms(&self) -> Vec<u32> {
        self.squares.iter().map(|s| s.bottom).collect()
    }
}

/// Lays the relator squares of `c_1..c_2n` side by side. `P_1` has the
/// first under-pass word `X_u X_v^-1` along its lower staircase; each later
/// square is glued along the edge labelled like the previous right edge.
pub fn build_fundamental_block(d: &LabeledDiagram, p: &SymmetrizedPresentation) -> Result<FundamentalBlock> {
    let visits = d.visits();
    let relator_of = |visit: usize| -> Result<[[Letter; 4]; 8]> {
        let crossing = visits[visit].crossing;
        p.relators()
            .iter()
            .find(|r| r.crossing == crossing)
            .map(|r| symmetrize(r.letters))
            .ok_or_else(|| Error::Gluing {
                index: visit + 1,
                reason: format!("no relator for crossing {crossing}"),
            })
    };
    let first = &visits[0];
    let (Some(u), Some(v)) = (first.from_region, first.to_region) else {
        return Err(Error::Gluing { index: 1, reason: "c_1 is not an under-pass".into() });
    };
    let w = relator_of(0)?
        .into_iter()
        .find(|w| w[0] == Letter::pos(u) && w[1] == Letter::neg(v))
        .ok_or_else(|| Error::Gluing {
            index: 1,
            reason: format!("X{u} X{v}^-1 is not a pair of the c_1 relator"),
        })?;
    let mut squares = vec![PlacedSquare {
        bottom: u,
        right: v,
        top: w[2].generator.0,
        left: w[3].generator.0,
        visit: 1,
    }];
    for k in 1..visits.len() {
        let left = squares[k - 1].right;
        let want = Letter::new(left, k % 2 == 0);
        let w = relator_of(k)?
            .into_iter()
            .find(|w| w[3] == want)
            .ok_or_else(|| Error::Gluing {
                index: k + 1,
                reason: format!("no edge labelled X{left} on the relator square"),
            })?;
        squares.push(PlacedSquare {
            bottom: w[0].generator.0,
            right: w[1].generator.0,
            top: w[2].generator.0,
            left,
            visit: k + 1,
        });
    }
    FundamentalBlock::from_squares(squares, Some(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Right, Direction::Down, Direction::Left];

    pub fn step(self) -> Vertex {
        match self {
            Direction::Up => (0, 1),
            Direction::Down => (0, -1),
            Direction::Left => (-1, 0),
            Direction::Right => (1, 0),
        }
    }

    fn from_step(d: Vertex) -> Option<Direction> {
        Some(match d {
            (0, 1) => Direction::Up,
            (0, -1) => Direction::Down,
            (-1, 0) => Direction::Left,
            (1, 0) => Direction::Right,
            _ => return None,
        })
    }
}

fn add(v: Vertex, d: Direction) -> Vertex {
    let (dx, dy) = d.step();
    (v.0 + dx, v.1 + dy)
}

fn is_odd(v: Vertex) -> bool {
    (v.0 + v.1).rem_euclid(2) == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeripheralComplex {
    block: FundamentalBlock,
}

pub fn build_complex(block: FundamentalBlock) -> PeripheralComplex {
    PeripheralComplex { block }
}

impl PeripheralComplex {
    pub fn block(&self) -> &FundamentalBlock {
        &self.block
    }

    /// Number of crossings.
    pub fn n(&self) -> usize {
        self.block.len() / 2
    }

    /// `2n`, the length of the fundamental block.
    pub fn period(&self) -> i64 {
        self.block.len() as i64
    }

    /// Square carried by the cell with bottom-left corner `(x, y)`.
    pub fn square_at(&self, x: i64, y: i64) -> &PlacedSquare {
        &self.block.squares[(x + y).rem_euclid(self.period()) as usize]
    }

    /// Signed letter read when leaving `v` in direction `dir`.
    pub fn edge_letter(&self, v: Vertex, dir: Direction) -> Letter {
        let (x, y) = v;
        let label = match dir {
            Direction::Right => self.square_at(x, y).bottom,
            Direction::Left => self.square_at(x - 1, y).bottom,
            Direction::Up => self.square_at(x, y).left,
            Direction::Down => self.square_at(x, y - 1).left,
        };
        Letter::new(label, !is_odd(add(v, dir)))
    }

    /// Outgoing letters at `v` in the order up, right, down, left.
    pub fn outgoing(&self, v: Vertex) -> [Letter; 4] {
        Direction::ALL.map(|d| self.edge_letter(v, d))
    }

    /// All endpoints of paths from `start` labelled by `w`, sorted.
    pub fn walk(&self, w: &Word, start: Vertex) -> Vec<Vertex> {
        let mut frontier = vec![start];
        for &l in w {
            let mut next = BTreeSet::new();
            for &v in &frontier {
                for d in Direction::ALL {
                    if self.edge_letter(v, d) == l {
                        next.insert(add(v, d));
                    }
                }
            }
            debug_assert!(next.len() <= 1, "walk is not deterministic");
            frontier = next.into_iter().collect();
            if frontier.is_empty() {
                break;
            }
        }
        frontier
    }

    /// The vertices of the first path labelled by `w` from `start`, if any.
    pub fn trace_path(&self, w: &Word, start: Vertex) -> Option<Vec<Vertex>> {
        let mut path = vec![start];
        for &l in w {
            let v = *path.last().unwrap();
            let d = Direction::ALL.into_iter().find(|&d| self.edge_letter(v, d) == l)?;
            path.push(add(v, d));
        }
        Some(path)
    }

    /// Label of a path given by consecutive adjacent vertices.
    pub fn path_word(&self, path: &[Vertex]) -> Word {
        path.windows(2)
            .map(|p| {
                let d = Direction::from_step((p[1].0 - p[0].0, p[1].1 - p[0].1))
                    .expect("path vertices must be adjacent");
                self.edge_letter(p[0], d)
            })
            .collect()
    }

    /// `(0,0) -> (0,1) -> (-1,1)`.
    pub fn meridian_word(&self) -> Word {
        self.path_word(&[(0, 0), (0, 1), (-1, 1)])
    }

    /// Lower staircase `(0,0) -> (1,0) -> (1,1) -> ... -> (n,n)`.
    pub fn longitude_word(&self) -> Word {
        let n = self.n() as i64;
        let mut path = vec![(0, 0)];
        for k in 0..n {
            path.push((k + 1, k));
            path.push((k + 1, k + 1));
        }
        self.path_word(&path)
    }

    /// Horizontal then vertical path from the origin to `(an - b, an + b)`.
    pub fn staircase_word(&self, a: i64, b: i64) -> Word {
        let n = self.n() as i64;
        let (x, y) = (a * n - b, a * n + b);
        let mut path = vec![(0, 0)];
        let sx = x.signum();
        for i in 1..=x.abs() {
            path.push((sx * i, 0));
        }
        let sy = y.signum();
        for j in 1..=y.abs() {
            path.push((x, sy * j));
        }
        self.path_word(&path)
    }

    /// Exponents `(a, b)` of the translation `(dx, dy)` if it is a deck
    /// translation, i.e. `dx + dy ≡ 0 (mod 2n)`.
    pub fn translation_exponents(&self, dx: i64, dy: i64) -> Option<(i64, i64)> {
        let s = dx + dy;
        (s.rem_euclid(self.period()) == 0).then(|| (s / self.period(), (dy - dx) / 2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeripheralVerdict {
    pub peripheral: bool,
    /// Longitude exponent; 0 when not peripheral.
    pub a: i64,
    /// Meridian exponent, with `(0,0) -> (-1,1)` counted as `+1`.
    pub b: i64,
    /// Endpoint of the traced path when peripheral.
    pub endpoint: Option<Vertex>,
}

impl PeripheralVerdict {
    const NO: PeripheralVerdict = PeripheralVerdict { peripheral: false, a: 0, b: 0, endpoint: None };
}

/// Reduces `w` to a geodesic and walks it from the origin; `w` is peripheral
/// iff the walk ends at a deck translate of the origin.
pub fn is_peripheral(c: &PeripheralComplex, p: &SymmetrizedPresentation, w: &Word) -> PeripheralVerdict {
    let g = reduce_to_geodesic(p, w);
    for (x, y) in c.walk(&g, (0, 0)) {
        if let Some((a, b)) = c.translation_exponents(x, y) {
            return PeripheralVerdict { peripheral: true, a, b, endpoint: Some((x, y)) };
        }
    }
    PeripheralVerdict::NO
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyVerdict {
    pub verdict: PeripheralVerdict,
    /// Start vertex `(0, k)` of the witnessing path.
    pub offset: Option<i64>,
    /// The conjugate geodesic that labels the path.
    pub witness: Option<Word>,
}

/// Strips letters that cancel cyclically (first against last).
fn cyclic_core(w: &Word) -> Word {
    let l = w.letters();
    let (mut i, mut j) = (0, l.len());
    while j - i >= 2 && l[i].is_inverse_of(l[j - 1]) {
        i += 1;
        j -= 1;
    }
    w.slice(i, j)
}

/// Geodesic conjugates of `w` tried by [`is_conjugate_peripheral`]: the
/// geodesic itself and every rotation of a cyclically minimal form.
pub fn conjugate_candidates(p: &SymmetrizedPresentation, w: &Word) -> Vec<Word> {
    let g = reduce_to_geodesic(p, w);
    let mut best = cyclic_core(&g);
    'shrink: loop {
        for r in 0..best.len() {
            let h = cyclic_core(&reduce_to_geodesic(p, &best.rotate(r)));
            if h.len() < best.len() {
                best = h;
                continue 'shrink;
            }
        }
        break;
    }
    let mut out = vec![g.clone()];
    let mut seen = BTreeSet::from([g]);
    for r in 0..best.len().max(1) {
        let h = reduce_to_geodesic(p, &best.rotate(r));
        if seen.insert(h.clone()) {
            out.push(h);
        }
    }
    out
}

/// Conjugate-peripherality: some geodesic conjugate of `w` labels a path
/// from `(0, k)` to a deck translate of `(0, k)`, `0 <= k < 2n`.
pub fn is_conjugate_peripheral(c: &PeripheralComplex, p: &SymmetrizedPresentation, w: &Word) -> ConjugacyVerdict {
    for h in conjugate_candidates(p, w) {
        for k in 0..c.period() {
            for (x, y) in c.walk(&h, (0, k)) {
                if let Some((a, b)) = c.translation_exponents(x, y - k) {
                    return ConjugacyVerdict {
                        verdict: PeripheralVerdict { peripheral: true, a, b, endpoint: Some((x, y)) },
                        offset: Some(k),
                        witness: Some(h),
                    };
                }
            }
        }
    }
    ConjugacyVerdict { verdict: PeripheralVerdict::NO, offset: None, witness: None }
}

/// Which diagonal of the seed square the translated copies run along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Diagonal {
    /// Top-left corner of each copy meets the bottom-right of the previous.
    Anti,
    /// Bottom-left corner of each copy meets the top-right of the previous.
    Main,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed {
    /// Index into the symmetrized relators; read counterclockwise from the
    /// bottom-left corner of the seed square.
    pub relator: usize,
    pub diagonal: Diagonal,
}

/// Signed letters `[b, r, t, l]` read counterclockwise from bottom-left.
type Cell = [Letter; 4];

struct Tiling {
    radius: i64,
    cells: Vec<Option<Cell>>,
}

impl Tiling {
    fn index(&self, x: i64, y: i64) -> Option<usize> {
        let r = self.radius;
        (x.abs() <= r && y.abs() <= r).then(|| ((y + r) * (2 * r + 1) + (x + r)) as usize)
    }

    fn get(&self, x: i64, y: i64) -> Option<Cell> {
        self.index(x, y).and_then(|i| self.cells[i])
    }
}

fn completion_error(x: i64, y: i64, reason: &str) -> Error {
    Error::Completion { x, y, reason: String::from(reason) }
}

/// Grows the unique tiling from a row of translated seed squares, filling
/// any cell with two known adjacent sides by pair lookup.
fn grow(p: &SymmetrizedPresentation, seed: Cell, diagonal: Diagonal, radius: i64) -> Result<Tiling> {
    let side = (2 * radius + 1) as usize;
    let mut t = Tiling { radius, cells: vec![None; side * side] };
    for s in -radius..=radius {
        let (x, y) = match diagonal {
            Diagonal::Anti => (s, -s),
            Diagonal::Main => (s, s),
        };
        let i = t.index(x, y).unwrap();
        t.cells[i] = Some(seed);
    }
    loop {
        let mut progress = false;
        for y in -radius..=radius {
            for x in -radius..=radius {
                if t.get(x, y).is_some() {
                    continue;
                }
                // Known sides [b, r, t, l], read in this cell's orientation.
                let known: [Option<Letter>; 4] = [
                    t.get(x, y - 1).map(|c| c[2].inv()),
                    t.get(x + 1, y).map(|c| c[3].inv()),
                    t.get(x, y + 1).map(|c| c[0].inv()),
                    t.get(x - 1, y).map(|c| c[1].inv()),
                ];
                // Corner between side i-1 and side i (BL is between l and b).
                let mut cell = None;
                for i in 0..4 {
                    let (Some(first), Some(second)) = (known[(i + 3) % 4], known[i]) else {
                        continue;
                    };
                    if p.pair_multiplicity(first, second) > 1 {
                        return Err(completion_error(x, y, "pair lies on two relators"));
                    }
                    let Some((q, r)) = p.complete(first, second) else {
                        return Err(completion_error(x, y, "corner is not a pair"));
                    };
                    let mut c = [first; 4];
                    c[(i + 3) % 4] = first;
                    c[i] = second;
                    c[(i + 1) % 4] = q;
                    c[(i + 2) % 4] = r;
                    cell = Some(c);
                    break;
                }
                let Some(c) = cell else { continue };
                if known.iter().zip(c).any(|(k, l)| k.is_some_and(|k| k != l)) {
                    return Err(completion_error(x, y, "completion disagrees with a neighbour"));
                }
                let i = t.index(x, y).unwrap();
                t.cells[i] = Some(c);
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    if let Some(i) = t.cells.iter().position(|c| c.is_none()) {
        let x = (i % side) as i64 - radius;
        let y = (i / side) as i64 - radius;
        return Err(completion_error(x, y, "cell left empty"));
    }
    Ok(t)
}

/// Builds the complex from relators alone: a seed square, a diagonal of
/// translated copies, then unique completion by pair lookups. A `Main`
/// diagonal tiling is mirrored left-right so that the result has the same
/// placement rule as the oriented complex.
pub fn build_complex_unoriented(p: &SymmetrizedPresentation, seed: Seed) -> Result<PeripheralComplex> {
    let n = p.relators().len() as i64;
    if n == 0 {
        return Err(Error::BlockInvariant("no relators".into()));
    }
    let s = p
        .symmetrized()
        .get(seed.relator)
        .ok_or_else(|| Error::BlockInvariant(format!("no symmetrized relator {}", seed.relator)))?;
    let radius = 2 * n + 2;
    let t = grow(p, s.letters, seed.diagonal, radius)?;
    let cell = |x: i64, y: i64| -> Option<Cell> {
        match seed.diagonal {
            Diagonal::Anti => t.get(x, y),
            Diagonal::Main => t.get(-x - 1, y).map(|[b, r, tt, l]| [b.inv(), l.inv(), tt.inv(), r.inv()]),
        }
    };

    // Shift by one column if the origin cell is oriented the other way.
    let o = if cell(0, 0).unwrap()[0].inverse { 1 } else { 0 };
    let period = 2 * n;
    let squares = (0..period)
        .map(|k| {
            let [b, r, tt, l] = cell(o + k, 0).unwrap();
            PlacedSquare {
                bottom: b.generator.0,
                right: r.generator.0,
                top: tt.generator.0,
                left: l.generator.0,
                visit: k as usize + 1,
            }
        })
        .collect();
    let complex = build_complex(FundamentalBlock::from_squares(squares, Some(p))?);
    let r = radius - 2;
    for y in -r..=r {
        for x in -r..=r {
            let sq = complex.square_at(x, y);
            let want = sq.boundary_word((x + y).rem_euclid(2) == 0);
            if cell(x + o, y) != Some(want) {
                return Err(completion_error(x + o, y, "tiling does not follow the placement rule"));
            }
        }
    }
    Ok(complex)
}

/// A lattice isometry `v -> M v + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Isometry {
    pub matrix: [[i64; 2]; 2],
    pub shift: Vertex,
}

impl Isometry {
    pub fn apply(&self, v: Vertex) -> Vertex {
        let [[a, b], [c, d]] = self.matrix;
        (a * v.0 + b * v.1 + self.shift.0, c * v.0 + d * v.1 + self.shift.1)
    }
}

const D4: [[[i64; 2]; 2]; 8] = [
    [[1, 0], [0, 1]],
    [[0, -1], [1, 0]],
    [[-1, 0], [0, -1]],
    [[0, 1], [-1, 0]],
    [[-1, 0], [0, 1]],
    [[1, 0], [0, -1]],
    [[0, 1], [1, 0]],
    [[0, -1], [-1, 0]],
];

/// Finds a symmetry of the square lattice carrying every signed edge
/// letter of `a` onto the same letter of `b`, checked over a window that
/// covers a full period in both directions.
pub fn find_isometry(a: &PeripheralComplex, b: &PeripheralComplex) -> Option<Isometry> {
    if a.period() != b.period() {
        return None;
    }
    let r = a.period() + 1;
    for matrix in D4 {
        for k in 0..b.period() {
            let f = Isometry { matrix, shift: (k, 0) };
            let ok = (-r..=r).all(|y| {
                (-r..=r).all(|x| {
                    [Direction::Right, Direction::Up].into_iter().all(|d| {
                        let v = (x, y);
                        let (fv, fw) = (f.apply(v), f.apply(add(v, d)));
                        let d2 = Direction::from_step((fw.0 - fv.0, fw.1 - fv.1)).unwrap();
                        a.edge_letter(v, d) == b.edge_letter(fv, d2)
                    })
                })
            });
            if ok {
                return Some(f);
            }
        }
    }
    None
}

/// Reads the Gauss code off the row strip: squares spelling the same
/// relator are the same crossing; squares with an even bottom-left corner
/// are under-passes.
pub fn recover_gauss_code(c: &PeripheralComplex) -> Result<GaussCode> {
    let squares = c.block().squares();
    let classes: Vec<[Letter; 4]> = squares
        .iter()
        .enumerate()
        .map(|(i, s)| relator_class(s.boundary_word(i % 2 == 0)))
        .collect();
    let mut count: BTreeMap<[Letter; 4], usize> = BTreeMap::new();
    for &k in &classes {
        *count.entry(k).or_default() += 1;
    }
    if let Some((_, k)) = count.iter().find(|(_, &k)| k != 2) {
        return Err(Error::Pairing(format!("a relator square occurs {k} time(s) in the strip")));
    }
    let index: BTreeMap<[Letter; 4], usize> = count.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    let raw: Vec<(usize, bool)> = classes.iter().enumerate().map(|(i, k)| (index[k], i % 2 == 0)).collect();
    Ok(GaussCode::normalized(&raw))
}

/// Longitude read from the diagram: each under-pass contributes
/// `X_from X_to^-1` (down through the region before the over-strand, up
/// through the one after).
pub fn longitude_from_diagram(d: &LabeledDiagram) -> Word {
    let mut w = Word::new();
    for v in d.visits() {
        if let (Some(a), Some(b)) = (v.from_region, v.to_region) {
            w.push(Letter::pos(a));
            w.push(Letter::neg(b));
        }
    }
    free_reduce(&w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{compute_regions, parse_pd};
    use crate::geodesic::{is_geodesic, is_identity};
    use crate::presentation::build_augmented_dehn;

    const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

    fn setup(text: &str) -> (LabeledDiagram, SymmetrizedPresentation, PeripheralComplex) {
        let d = compute_regions(&parse_pd(text).unwrap(), None).unwrap();
        let p = build_augmented_dehn(&d).unwrap();
        let c = build_complex(build_fundamental_block(&d, &p).unwrap());
        (d, p, c)
    }

    #[test]
    fn block_invariants() {
        let (_, _, c) = setup(FIGURE_EIGHT);
        let v = c.block().verticals();
        assert_eq!(v.first(), v.last());
        let (t, b) = (c.block().tops(), c.block().bottoms());
        for i in 0..t.len() {
            assert_eq!(t[i], b[(i + 1) % b.len()]);
        }
    }

    #[test]
    fn placement_rule() {
        let (_, _, c) = setup(FIGURE_EIGHT);
        assert_eq!(c.square_at(0, 0), &c.block().squares()[0]);
        for (x, y) in [(0, 0), (3, -2), (-5, 7)] {
            assert_eq!(c.square_at(x, y), c.square_at(x + 1, y - 1));
            assert_eq!(c.square_at(x, y), c.square_at(x + 8, y));
        }
    }

    #[test]
    fn edge_letters_agree_from_both_ends() {
        let (_, _, c) = setup(FIGURE_EIGHT);
        for x in -4..4 {
            for y in -4..4 {
                assert_eq!(c.edge_letter((x, y), Direction::Up), c.edge_letter((x, y + 1), Direction::Down).inv());
                assert_eq!(c.edge_letter((x, y), Direction::Right), c.edge_letter((x + 1, y), Direction::Left).inv());
            }
        }
    }

    #[test]
    fn longitude_and_meridian() {
        let (d, p, c) = setup(FIGURE_EIGHT);
        let l = c.longitude_word();
        let m = c.meridian_word();
        assert_eq!(l.len(), 8);
        assert_eq!(l, longitude_from_diagram(&d));
        assert!(is_geodesic(&p, &l));
        let comm = &(&(&l * &m) * &l.inverse()) * &m.inverse();
        assert!(is_identity(&p, &comm));
        let v = is_peripheral(&c, &p, &l);
        assert_eq!((v.peripheral, v.a, v.b, v.endpoint), (true, 1, 0, Some((4, 4))));
        let v = is_peripheral(&c, &p, &m);
        assert_eq!((v.peripheral, v.a, v.b), (true, 0, 1));
        assert_eq!(c.walk(&Word::new(), (2, 3)), vec![(2, 3)]);
    }

    #[test]
    fn conjugated_longitude() {
        let (_, p, c) = setup(FIGURE_EIGHT);
        let l = c.longitude_word();
        let x0 = Word::parse("X0").unwrap();
        let w = &(&x0 * &l) * &x0.inverse();
        let v = is_conjugate_peripheral(&c, &p, &w);
        assert!(v.verdict.peripheral);
        assert_eq!((v.verdict.a, v.verdict.b), (1, 0));
    }

    #[test]
    fn unoriented_matches_oriented() {
        let (_, p, c) = setup(FIGURE_EIGHT);
        for relator in 0..p.symmetrized().len() {
            for diagonal in [Diagonal::Anti, Diagonal::Main] {
                let u = build_complex_unoriented(&p, Seed { relator, diagonal }).unwrap();
                assert!(find_isometry(&u, &c).is_some(), "seed {relator} {diagonal:?}");
            }
        }
    }

    #[test]
    fn gauss_round_trip() {
        let (d, _, c) = setup(FIGURE_EIGHT);
        assert_eq!(recover_gauss_code(&c).unwrap(), d.gauss_code());
    }
}
