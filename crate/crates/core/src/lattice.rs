//! Geometry on the hexagonal lattice.
//!
//! Lattice vertices live on the triangular lattice spanned by `u = (1, 0)`
//! and `v = (1/2, √3/2)`; edges run along the six unit directions. Hexagons
//! are addressed by axial coordinates `(q, r)` whose neighbor offsets follow
//! the same counter-clockwise order as the edge directions.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::Code;

const UNIT_STEPS: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

/// Axial offsets to the six neighbors of a hexagon; entry `k` is the
/// hexagon across the cell edge running from corner `k` to corner `k + 1`.
pub const NEIGHBOR_OFFSETS: [(i32, i32); 6] = UNIT_STEPS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("code contains symbols outside 1..5")]
    InvalidSymbols,
    #[error("boundary walk does not close")]
    NotClosed,
    #[error("boundary walk intersects itself")]
    SelfIntersecting,
    #[error("cell set is empty")]
    Empty,
    #[error("cell set is not edge-connected")]
    Disconnected,
    #[error("cell set encloses a hole")]
    Holed,
    #[error("malformed cell line {line}: {text:?}")]
    MalformedCell { line: usize, text: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVertex {
    pub x: i32,
    pub y: i32,
}

impl LatticeVertex {
    pub const ORIGIN: LatticeVertex = LatticeVertex { x: 0, y: 0 };

    pub fn step(self, dir: Direction) -> LatticeVertex {
        let (dx, dy) = dir.offset();
        LatticeVertex {
            x: self.x + dx,
            y: self.y + dy,
        }
    }

    /// Cartesian position `x·u + y·v`.
    pub fn cartesian(self) -> (f64, f64) {
        let (x, y) = (f64::from(self.x), f64::from(self.y));
        (x + 0.5 * y, y * 3f64.sqrt() / 2.0)
    }

    fn cell_on_left(self, dir: Direction) -> HexCell {
        HexCell::from_center(self.step(dir.left()))
    }

    fn cell_on_right(self, dir: Direction) -> HexCell {
        HexCell::from_center(self.step(dir.right()))
    }
}

/// One of the six unit edge directions, indexed counter-clockwise from `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction(u8);

impl Direction {
    pub const EAST: Direction = Direction(0);

    pub fn new(k: u8) -> Direction {
        Direction(k % 6)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn offset(self) -> (i32, i32) {
        UNIT_STEPS[usize::from(self.0)]
    }

    pub fn left(self) -> Direction {
        Direction((self.0 + 1) % 6)
    }

    pub fn right(self) -> Direction {
        Direction((self.0 + 5) % 6)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HexCell {
    pub q: i32,
    pub r: i32,
}

impl HexCell {
    pub fn new(q: i32, r: i32) -> HexCell {
        HexCell { q, r }
    }

    pub fn neighbor(self, k: usize) -> HexCell {
        let (dq, dr) = NEIGHBOR_OFFSETS[k];
        HexCell::new(self.q + dq, self.r + dr)
    }

    pub fn neighbors(self) -> impl Iterator<Item = HexCell> {
        (0..6).map(move |k| self.neighbor(k))
    }

    pub fn is_adjacent(self, other: HexCell) -> bool {
        NEIGHBOR_OFFSETS.contains(&(other.q - self.q, other.r - self.r))
    }

    /// Center in vertex coordinates. Centers form the index-3 sublattice
    /// containing `(0, 1)`, the hexagon left of the first step of every walk.
    pub fn center(self) -> LatticeVertex {
        LatticeVertex {
            x: self.q - self.r,
            y: self.q + 2 * self.r + 1,
        }
    }

    fn from_center(c: LatticeVertex) -> HexCell {
        let y = c.y - 1;
        debug_assert_eq!((y - c.x).rem_euclid(3), 0, "{c:?} is not a hexagon center");
        let r = (y - c.x).div_euclid(3);
        HexCell::new(c.x + r, r)
    }

    /// Corner `k` of the hexagon; corners are counter-clockwise.
    pub fn corner(self, k: usize) -> LatticeVertex {
        self.center().step(Direction::new(k as u8))
    }

    /// 60° rotation about the origin cell.
    pub fn rotated(self) -> HexCell {
        HexCell::new(-self.r, self.q + self.r)
    }

    /// Reflection exchanging the first two neighbor directions.
    pub fn reflected(self) -> HexCell {
        HexCell::new(self.r, self.q)
    }
}

/// Sorted, duplicate-free set of hexagons.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct CellSet(Vec<HexCell>);

impl CellSet {
    pub fn new(cells: impl IntoIterator<Item = HexCell>) -> CellSet {
        let mut cells: Vec<HexCell> = cells.into_iter().collect();
        cells.sort_unstable();
        cells.dedup();
        CellSet(cells)
    }

    pub fn cells(&self) -> &[HexCell] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &HexCell> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, cell: HexCell) -> bool {
        self.0.binary_search(&cell).is_ok()
    }

    /// Translated so the minimal `q` and minimal `r` are both zero.
    pub fn normalized(&self) -> CellSet {
        let min_q = self.0.iter().map(|c| c.q).min().unwrap_or(0);
        let min_r = self.0.iter().map(|c| c.r).min().unwrap_or(0);
        CellSet::new(self.0.iter().map(|c| HexCell::new(c.q - min_q, c.r - min_r)))
    }

    fn map(&self, f: impl Fn(HexCell) -> HexCell) -> CellSet {
        CellSet::new(self.0.iter().map(|&c| f(c)))
    }

    /// Text form: one `q r` line per cell, sorted.
    pub fn to_text(&self) -> String {
        self.0.iter().map(|c| format!("{} {}\n", c.q, c.r)).collect()
    }
}

impl FromStr for CellSet {
    type Err = LatticeError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut cells = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let malformed = || LatticeError::MalformedCell {
                line: i + 1,
                text: line.to_string(),
            };
            let mut parts = line.split_whitespace();
            let q = parts.next().and_then(|p| p.parse().ok()).ok_or_else(malformed)?;
            let r = parts.next().and_then(|p| p.parse().ok()).ok_or_else(malformed)?;
            if parts.next().is_some() {
                return Err(malformed());
            }
            cells.push(HexCell::new(q, r));
        }
        Ok(CellSet::new(cells))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryWalk {
    /// `edges + 1` vertices; the last equals the first when closed.
    pub vertices: Vec<LatticeVertex>,
    /// Direction of the edge leaving `vertices[i]`.
    pub directions: Vec<Direction>,
    pub left_turns: usize,
    pub right_turns: usize,
}

impl BoundaryWalk {
    pub fn edge_count(&self) -> usize {
        self.directions.len()
    }

    pub fn net_turning(&self) -> i64 {
        self.left_turns as i64 - self.right_turns as i64
    }

    pub fn is_simple(&self) -> bool {
        let n = self.edge_count();
        let mut seen = HashSet::with_capacity(n);
        self.vertices[..n].iter().all(|v| seen.insert(*v))
    }

    fn edges(&self) -> impl Iterator<Item = (LatticeVertex, Direction)> + '_ {
        self.vertices.iter().copied().zip(self.directions.iter().copied())
    }
}

fn trace_path(code: &Code) -> BoundaryWalk {
    let mut pos = LatticeVertex::ORIGIN;
    let mut dir = Direction::EAST;
    let mut walk = BoundaryWalk {
        vertices: vec![pos],
        directions: Vec::new(),
        left_turns: 0,
        right_turns: 0,
    };
    let mut advance = |dir: Direction, walk: &mut BoundaryWalk| {
        walk.directions.push(dir);
        pos = pos.step(dir);
        walk.vertices.push(pos);
    };
    if code.is_benzene() {
        for _ in 0..6 {
            advance(dir, &mut walk);
            dir = dir.left();
            walk.left_turns += 1;
        }
        return walk;
    }
    for &s in code.symbols() {
        for _ in 1..s {
            advance(dir, &mut walk);
            dir = dir.left();
            walk.left_turns += 1;
        }
        advance(dir, &mut walk);
        dir = dir.right();
        walk.right_turns += 1;
    }
    walk
}

/// Walks the perimeter described by `code`, counter-clockwise from the
/// origin heading east: within a symbol `s` the walk turns left after each
/// of the first `s - 1` edges and right after the last one.
pub fn walk(code: &Code) -> Result<BoundaryWalk, LatticeError> {
    let walk = trace_path(code);
    let closed = walk.vertices.last() == Some(&LatticeVertex::ORIGIN)
        && walk.net_turning().rem_euclid(6) == 0;
    let winding_ok = code.is_benzene() || code.winding() == 6;
    if closed && winding_ok {
        Ok(walk)
    } else {
        Err(LatticeError::NotClosed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condensation {
    CatacondensedUnbranched,
    CatacondensedBranched,
    Pericondensed,
}

impl Condensation {
    pub fn as_str(self) -> &'static str {
        match self {
            Condensation::CatacondensedUnbranched => "catacondensed-unbranched",
            Condensation::CatacondensedBranched => "catacondensed-branched",
            Condensation::Pericondensed => "pericondensed",
        }
    }
}

impl fmt::Display for Condensation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A validated benzenoid: hexagons in normal position plus its canonical code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Benzenoid {
    pub cells: CellSet,
    pub code: Code,
    pub condensation: Condensation,
}

impl Benzenoid {
    pub fn hexagons(&self) -> usize {
        self.cells.len()
    }

    /// Validates an arbitrary cell set and derives its code.
    pub fn from_cells(cells: &CellSet) -> Result<Benzenoid, LatticeError> {
        let code = trace(cells)?;
        Ok(Benzenoid {
            cells: cells.normalized(),
            code,
            condensation: condensation_class(cells),
        })
    }
}

/// Realizes `code` in the lattice. Either traversal orientation is accepted;
/// reversing the code yields the mirror image.
pub fn embed(code: &Code) -> Result<Benzenoid, LatticeError> {
    if code.is_benzene() {
        let cells = CellSet::new([HexCell::new(0, 0)]);
        return Ok(Benzenoid {
            condensation: condensation_class(&cells),
            cells,
            code: code.clone(),
        });
    }
    if code.symbols().iter().any(|s| !(1..=5).contains(s)) {
        return Err(LatticeError::InvalidSymbols);
    }
    let walk = walk(code)?;
    if !walk.is_simple() {
        return Err(LatticeError::SelfIntersecting);
    }

    // Positive winding means the interior is on the left of every edge.
    let crossings: HashSet<(HexCell, HexCell)> = walk
        .edges()
        .map(|(v, d)| (v.cell_on_left(d), v.cell_on_right(d)))
        .collect();
    let mut inside: HashSet<HexCell> = crossings.iter().map(|&(l, _)| l).collect();
    let mut queue: VecDeque<HexCell> = inside.iter().copied().collect();
    let limit = walk.edge_count() * walk.edge_count();
    while let Some(cell) = queue.pop_front() {
        for next in cell.neighbors() {
            if !crossings.contains(&(cell, next)) && inside.insert(next) {
                queue.push_back(next);
            }
        }
        if inside.len() > limit {
            return Err(LatticeError::SelfIntersecting);
        }
    }

    let cells = CellSet::new(inside).normalized();
    Ok(Benzenoid {
        condensation: condensation_class(&cells),
        cells,
        code: code.canonical(),
    })
}

fn check_connected(cells: &CellSet) -> Result<(), LatticeError> {
    let first = *cells.cells().first().ok_or(LatticeError::Empty)?;
    let mut seen = HashSet::from([first]);
    let mut queue = VecDeque::from([first]);
    while let Some(cell) = queue.pop_front() {
        for next in cell.neighbors() {
            if cells.contains(next) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    if seen.len() == cells.len() {
        Ok(())
    } else {
        Err(LatticeError::Disconnected)
    }
}

/// True when the complement of `cells` has a bounded component. Flood-fills
/// the complement inside the bounding box grown by one ring.
pub fn has_hole(cells: &CellSet) -> bool {
    let Some(first) = cells.cells().first() else {
        return false;
    };
    let (mut q0, mut q1, mut r0, mut r1) = (first.q, first.q, first.r, first.r);
    for c in cells.iter() {
        q0 = q0.min(c.q);
        q1 = q1.max(c.q);
        r0 = r0.min(c.r);
        r1 = r1.max(c.r);
    }
    let (q0, q1, r0, r1) = (q0 - 1, q1 + 1, r0 - 1, r1 + 1);
    let width = (q1 - q0 + 1) as usize;
    let height = (r1 - r0 + 1) as usize;
    let index = |c: HexCell| (c.r - r0) as usize * width + (c.q - q0) as usize;
    let mut blocked = vec![false; width * height];
    for &c in cells.iter() {
        blocked[index(c)] = true;
    }
    let start = HexCell::new(q0, r0);
    blocked[index(start)] = true;
    let mut reached = 1;
    let mut stack = vec![start];
    while let Some(cell) = stack.pop() {
        for next in cell.neighbors() {
            if next.q < q0 || next.q > q1 || next.r < r0 || next.r > r1 {
                continue;
            }
            let i = index(next);
            if !blocked[i] {
                blocked[i] = true;
                reached += 1;
                stack.push(next);
            }
        }
    }
    reached + cells.len() != width * height
}

/// Reads the canonical code off the perimeter of a simply connected cell set.
pub fn trace(cells: &CellSet) -> Result<Code, LatticeError> {
    check_connected(cells)?;
    if has_hole(cells) {
        return Err(LatticeError::Holed);
    }
    if cells.len() == 1 {
        return Ok(Code::benzene());
    }

    // Outgoing boundary edge at each perimeter vertex, interior on the left.
    // In the hexagonal lattice every perimeter vertex carries exactly one.
    let mut next_edge: HashMap<LatticeVertex, Direction> = HashMap::new();
    let mut start = None;
    for &cell in cells.iter() {
        for k in 0..6 {
            if !cells.contains(cell.neighbor(k)) {
                let from = cell.corner(k);
                let dir = Direction::new(k as u8 + 2);
                next_edge.insert(from, dir);
                start.get_or_insert((from, dir));
            }
        }
    }
    let (origin, first_dir) = start.expect("a multi-cell set has a perimeter");

    let mut dirs = vec![first_dir];
    let mut pos = origin.step(first_dir);
    while pos != origin {
        let dir = next_edge[&pos];
        dirs.push(dir);
        pos = pos.step(dir);
    }

    let n = dirs.len();
    let turns_right: Vec<bool> = (0..n)
        .map(|i| dirs[(i + 1) % n] == dirs[i].right())
        .collect();
    let last_right = turns_right
        .iter()
        .position(|&r| r)
        .expect("a multi-cell perimeter has a degree-3 vertex");
    let mut symbols = Vec::new();
    let mut run = 0u8;
    for t in 1..=n {
        let i = (last_right + t) % n;
        run += 1;
        if turns_right[i] {
            symbols.push(run);
            run = 0;
        }
    }
    Ok(Code::new(symbols).expect("perimeter runs are 1..5").canonical())
}

/// Hexagon adjacency graph (dual graph without the outer face).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerDual {
    pub nodes: Vec<HexCell>,
    pub adjacency: Vec<Vec<usize>>,
}

impl InnerDual {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn inner_dual(cells: &CellSet) -> InnerDual {
    let nodes = cells.cells().to_vec();
    let adjacency = nodes
        .iter()
        .map(|&c| {
            c.neighbors()
                .filter_map(|n| nodes.binary_search(&n).ok())
                .collect()
        })
        .collect();
    InnerDual { nodes, adjacency }
}

/// Tree and path → unbranched; tree with a degree ≥ 3 node → branched;
/// any cycle → pericondensed. Assumes a connected cell set.
pub fn condensation_class(cells: &CellSet) -> Condensation {
    let dual = inner_dual(cells);
    if dual.edge_count() + 1 != dual.nodes.len() {
        Condensation::Pericondensed
    } else if dual.max_degree() <= 2 {
        Condensation::CatacondensedUnbranched
    } else {
        Condensation::CatacondensedBranched
    }
}

/// The twelve point symmetries of the lattice applied to `cells`, each
/// translated to normal form.
pub fn symmetric_images(cells: &CellSet) -> Vec<CellSet> {
    let mut images = Vec::with_capacity(12);
    let mut current = cells.clone();
    for _ in 0..6 {
        images.push(current.normalized());
        images.push(current.map(HexCell::reflected).normalized());
        current = current.map(HexCell::rotated);
    }
    images
}

/// Minimum image over rotations, reflections and translation; equal for
/// congruent cell sets, mirror images included.
pub fn canonical_cells(cells: &CellSet) -> CellSet {
    symmetric_images(cells)
        .into_iter()
        .min()
        .unwrap_or_default()
}
