//! Boards on the four supported surfaces.
//!
//! A board has `a` rows (height) and `b` columns (circumference on the
//! wrapped surfaces). Row 0 is at the top. Every domino is identified by the
//! unit grid segment it straddles, its [`CrossingEdge`]. Grid lines are
//! grouped into [`FaultCurve`]s: the fold loci a fault-free tiling must cross.
//!
//! Line numbering:
//! - horizontal line `l` separates rows `l - 1` and `l`; on the torus line 0
//!   is the glued top/bottom edge and joins row `a - 1` to row 0.
//! - vertical line `j` separates columns `j - 1` and `j`; on wrapped surfaces
//!   line 0 is the seam joining column `b - 1` to column 0. On the Möbius
//!   strip the seam reverses row order: `(r, b - 1)` meets `(a - 1 - r, 0)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardError {
    #[error("invalid dimension {a}x{b}: both sides must be at least 1")]
    InvalidDimension { a: i64, b: i64 },
    #[error("unknown topology `{0}` (expected rectangle, cylinder, torus or mobius)")]
    UnknownTopology(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Rectangle,
    Cylinder,
    Torus,
    Mobius,
}

impl Topology {
    pub const ALL: [Topology; 4] = [Topology::Rectangle, Topology::Cylinder, Topology::Torus, Topology::Mobius];

    pub fn name(self) -> &'static str {
        match self {
            Topology::Rectangle => "rectangle",
            Topology::Cylinder => "cylinder",
            Topology::Torus => "torus",
            Topology::Mobius => "mobius",
        }
    }

    /// True when the left and right edges are glued (vertical line 0 exists).
    pub fn wraps_columns(self) -> bool {
        !matches!(self, Topology::Rectangle)
    }

    /// True when the top and bottom edges are glued (horizontal line 0 exists).
    pub fn wraps_rows(self) -> bool {
        matches!(self, Topology::Torus)
    }

    /// Decoration used in board names: `a′ × b` for cylinders, `a″ × b` for
    /// Möbius strips, `a′ × b′` for tori.
    pub fn dimension_marks(self) -> (&'static str, &'static str) {
        match self {
            Topology::Rectangle => ("", ""),
            Topology::Cylinder => ("′", ""),
            Topology::Torus => ("′", "′"),
            Topology::Mobius => ("″", ""),
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Topology {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rectangle" | "rect" => Ok(Topology::Rectangle),
            "cylinder" | "cyl" => Ok(Topology::Cylinder),
            "torus" => Ok(Topology::Torus),
            "mobius" | "möbius" | "moebius" => Ok(Topology::Mobius),
            other => Err(BoardError::UnknownTopology(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub r: usize,
    pub c: usize,
}

impl Cell {
    pub const fn new(r: usize, c: usize) -> Self {
        Cell { r, c }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.c)
    }
}

/// Orientation of a grid line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LineAxis {
    /// A horizontal line, crossed by vertical dominoes. Offsets are columns.
    Horizontal,
    /// A vertical line, crossed by horizontal dominoes. Offsets are rows.
    Vertical,
}

impl LineAxis {
    pub fn code(self) -> &'static str {
        match self {
            LineAxis::Horizontal => "h",
            LineAxis::Vertical => "v",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "h" => Some(LineAxis::Horizontal),
            "v" => Some(LineAxis::Vertical),
            _ => None,
        }
    }
}

/// A unit segment of a grid line; a domino occupies exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CrossingEdge {
    pub axis: LineAxis,
    pub line: usize,
    pub offset: usize,
}

impl CrossingEdge {
    pub const fn horizontal(line: usize, offset: usize) -> Self {
        CrossingEdge { axis: LineAxis::Horizontal, line, offset }
    }

    pub const fn vertical(line: usize, offset: usize) -> Self {
        CrossingEdge { axis: LineAxis::Vertical, line, offset }
    }
}

impl fmt::Display for CrossingEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}@{}", self.axis.code(), self.line, self.offset)
    }
}

/// A domino: its crossing edge plus the two cells it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement {
    pub edge: CrossingEdge,
    pub cells: [Cell; 2],
}

/// A fold locus together with every edge a domino could use to cross it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaultCurve {
    pub id: usize,
    pub axis: LineAxis,
    pub lines: Vec<usize>,
    pub crossing_edges: Vec<CrossingEdge>,
}

impl FaultCurve {
    /// Number of distinct edges that cross this curve.
    pub fn cap(&self) -> usize {
        self.crossing_edges.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoardSpec {
    pub topology: Topology,
    pub a: usize,
    pub b: usize,
}

impl fmt::Display for BoardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ma, mb) = self.topology.dimension_marks();
        write!(f, "{} {}{}×{}{}", self.topology, self.a, ma, self.b, mb)
    }
}

impl BoardSpec {
    pub fn new(topology: Topology, a: usize, b: usize) -> Result<Self, BoardError> {
        if a == 0 || b == 0 {
            return Err(BoardError::InvalidDimension { a: a as i64, b: b as i64 });
        }
        Ok(BoardSpec { topology, a, b })
    }

    /// Builds a board from signed dimensions as read from user input.
    pub fn from_signed(topology: Topology, a: i64, b: i64) -> Result<Self, BoardError> {
        if a < 1 || b < 1 {
            return Err(BoardError::InvalidDimension { a, b });
        }
        Ok(BoardSpec { topology, a: a as usize, b: b as usize })
    }

    pub fn area(&self) -> usize {
        self.a * self.b
    }

    /// Number of dominoes in a complete tiling, when one can exist.
    pub fn capacity(&self) -> Option<usize> {
        self.area().is_multiple_of(2).then(|| self.area() / 2)
    }

    /// The same surface rotated by a quarter turn. Only rectangles and tori
    /// are closed under this.
    pub fn transposed(&self) -> Option<BoardSpec> {
        match self.topology {
            Topology::Rectangle | Topology::Torus => Some(BoardSpec { topology: self.topology, a: self.b, b: self.a }),
            _ => None,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.a).flat_map(move |r| (0..self.b).map(move |c| Cell::new(r, c)))
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.r < self.a && cell.c < self.b
    }

    pub fn cell_index(&self, cell: Cell) -> usize {
        cell.r * self.b + cell.c
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        Cell::new(index / self.b, index % self.b)
    }

    /// Checkerboard colour `(r + c) mod 2`.
    pub fn cell_color(&self, cell: Cell) -> u8 {
        ((cell.r + cell.c) % 2) as u8
    }

    /// Horizontal line indices that carry crossing edges or fault curves.
    pub fn horizontal_lines(&self) -> std::ops::Range<usize> {
        if self.topology.wraps_rows() {
            0..self.a
        } else {
            1..self.a
        }
    }

    /// Vertical line indices, the seam (line 0) included on wrapped boards.
    pub fn vertical_lines(&self) -> std::ops::Range<usize> {
        if self.topology.wraps_columns() {
            0..self.b
        } else {
            1..self.b
        }
    }

    /// The row joined to row `r` across the Möbius seam.
    pub fn mobius_mirror(&self, r: usize) -> usize {
        self.a - 1 - r
    }

    /// The two cells joined by `edge`, or `None` when the edge does not exist
    /// on this board (out of range, or a wrap that would join a cell to
    /// itself).
    pub fn endpoints(&self, edge: CrossingEdge) -> Option<[Cell; 2]> {
        let CrossingEdge { axis, line, offset } = edge;
        match axis {
            LineAxis::Horizontal => {
                if offset >= self.b || !self.horizontal_lines().contains(&line) {
                    return None;
                }
                if line == 0 {
                    // Torus glued edge.
                    if self.a < 2 {
                        return None;
                    }
                    Some([Cell::new(self.a - 1, offset), Cell::new(0, offset)])
                } else {
                    Some([Cell::new(line - 1, offset), Cell::new(line, offset)])
                }
            }
            LineAxis::Vertical => {
                if offset >= self.a || !self.vertical_lines().contains(&line) {
                    return None;
                }
                if line > 0 {
                    return Some([Cell::new(offset, line - 1), Cell::new(offset, line)]);
                }
                match self.topology {
                    Topology::Rectangle => None,
                    Topology::Cylinder | Topology::Torus => {
                        (self.b >= 2).then(|| [Cell::new(offset, self.b - 1), Cell::new(offset, 0)])
                    }
                    Topology::Mobius => {
                        let mirror = self.mobius_mirror(offset);
                        // With one column the seam segments at offsets r and
                        // a-1-r join the same pair; only the lower one is kept.
                        if self.b == 1 && mirror <= offset {
                            return None;
                        }
                        Some([Cell::new(offset, self.b - 1), Cell::new(mirror, 0)])
                    }
                }
            }
        }
    }

    pub fn contains_edge(&self, edge: CrossingEdge) -> bool {
        self.endpoints(edge).is_some()
    }

    /// True for edges on a glued line (the seam or the torus top/bottom).
    pub fn is_wrap(&self, edge: CrossingEdge) -> bool {
        edge.line == 0
            && match edge.axis {
                LineAxis::Horizontal => self.topology.wraps_rows(),
                LineAxis::Vertical => self.topology.wraps_columns(),
            }
    }

    /// Every existing crossing edge, sorted.
    pub fn edges(&self) -> Vec<CrossingEdge> {
        let mut out = Vec::new();
        for line in self.horizontal_lines() {
            for offset in 0..self.b {
                let e = CrossingEdge::horizontal(line, offset);
                if self.contains_edge(e) {
                    out.push(e);
                }
            }
        }
        for line in self.vertical_lines() {
            for offset in 0..self.a {
                let e = CrossingEdge::vertical(line, offset);
                if self.contains_edge(e) {
                    out.push(e);
                }
            }
        }
        out
    }

    pub fn placements(&self) -> Vec<Placement> {
        self.edges()
            .into_iter()
            .map(|edge| Placement { edge, cells: self.endpoints(edge).expect("listed edge exists") })
            .collect()
    }

    /// The fold loci of the board. Horizontal curves come first, ordered by
    /// their lowest line, then vertical curves by line.
    pub fn fault_curves(&self) -> Vec<FaultCurve> {
        let mut groups: Vec<(LineAxis, Vec<usize>)> = Vec::new();
        match self.topology {
            Topology::Mobius => {
                for l in 1..self.a {
                    let partner = self.a - l;
                    if l <= partner {
                        let lines = if l == partner { vec![l] } else { vec![l, partner] };
                        groups.push((LineAxis::Horizontal, lines));
                    }
                }
            }
            _ => groups.extend(self.horizontal_lines().map(|l| (LineAxis::Horizontal, vec![l]))),
        }
        groups.extend(self.vertical_lines().map(|j| (LineAxis::Vertical, vec![j])));

        groups
            .into_iter()
            .enumerate()
            .map(|(id, (axis, lines))| {
                let span = match axis {
                    LineAxis::Horizontal => self.b,
                    LineAxis::Vertical => self.a,
                };
                let crossing_edges = lines
                    .iter()
                    .flat_map(|&line| (0..span).map(move |offset| CrossingEdge { axis, line, offset }))
                    .filter(|&e| self.contains_edge(e))
                    .collect();
                FaultCurve { id, axis, lines, crossing_edges }
            })
            .collect()
    }

    /// Maps each horizontal and vertical line to the id of its fault curve.
    pub fn curve_index(&self) -> CurveIndex {
        let curves = self.fault_curves();
        let mut horizontal = vec![usize::MAX; self.a + 1];
        let mut vertical = vec![usize::MAX; self.b + 1];
        for curve in &curves {
            for &l in &curve.lines {
                match curve.axis {
                    LineAxis::Horizontal => horizontal[l] = curve.id,
                    LineAxis::Vertical => vertical[l] = curve.id,
                }
            }
        }
        CurveIndex { horizontal, vertical, count: curves.len() }
    }
}

/// Line-to-curve lookup table for one board.
#[derive(Debug, Clone)]
pub struct CurveIndex {
    horizontal: Vec<usize>,
    vertical: Vec<usize>,
    count: usize,
}

impl CurveIndex {
    pub fn curve_of(&self, edge: CrossingEdge) -> usize {
        match edge.axis {
            LineAxis::Horizontal => self.horizontal[edge.line],
            LineAxis::Vertical => self.vertical[edge.line],
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn board(t: Topology, a: usize, b: usize) -> BoardSpec {
        BoardSpec::new(t, a, b).unwrap()
    }

    fn curve_counts(board: &BoardSpec) -> (usize, usize) {
        let curves = board.fault_curves();
        let h = curves.iter().filter(|c| c.axis == LineAxis::Horizontal).count();
        (h, curves.len() - h)
    }

    #[test]
    fn rejects_zero_dimensions() {
        assert!(BoardSpec::new(Topology::Torus, 0, 3).is_err());
        assert!(BoardSpec::from_signed(Topology::Cylinder, 4, -2).is_err());
    }

    #[test]
    fn curve_counts_by_surface() {
        let b = board(Topology::Rectangle, 6, 6);
        assert_eq!(b.cells().count(), 36);
        assert_eq!(b.fault_curves().len(), 10);
        assert_eq!(curve_counts(&board(Topology::Cylinder, 5, 6)), (4, 6));
        assert_eq!(curve_counts(&board(Topology::Torus, 6, 5)), (6, 5));
        assert_eq!(board(Topology::Rectangle, 5, 6).fault_curves().len(), 9);
    }

    #[test]
    fn mobius_horizontal_lines_pair_through_the_twist() {
        let curves = board(Topology::Mobius, 6, 4).fault_curves();
        let h: Vec<_> = curves.iter().filter(|c| c.axis == LineAxis::Horizontal).map(|c| c.lines.clone()).collect();
        assert_eq!(h, vec![vec![1, 5], vec![2, 4], vec![3]]);
        assert_eq!(curves.len() - h.len(), 4);

        let curves = board(Topology::Mobius, 7, 2).fault_curves();
        let h: Vec<_> = curves.iter().filter(|c| c.axis == LineAxis::Horizontal).map(|c| c.lines.clone()).collect();
        assert_eq!(h, vec![vec![1, 6], vec![2, 5], vec![3, 4]]);
        assert_eq!(curves.len() - h.len(), 2);
    }

    #[test]
    fn small_placement_sets() {
        assert_eq!(board(Topology::Rectangle, 2, 2).placements().len(), 4);

        let cyl = board(Topology::Cylinder, 1, 2).placements();
        assert_eq!(cyl.len(), 2);
        assert!(cyl.iter().all(|p| p.edge.axis == LineAxis::Vertical));
        let pairs: HashSet<_> = cyl
            .iter()
            .map(|p| {
                let mut c = p.cells;
                c.sort();
                c
            })
            .collect();
        assert_eq!(pairs.len(), 1);

        let mob = board(Topology::Mobius, 4, 1).placements();
        let vertical_dominoes = mob.iter().filter(|p| p.edge.axis == LineAxis::Horizontal).count();
        let wraps: Vec<_> = mob.iter().filter(|p| p.edge.axis == LineAxis::Vertical).map(|p| p.cells).collect();
        assert_eq!(vertical_dominoes, 3);
        assert_eq!(wraps, vec![[Cell::new(0, 0), Cell::new(3, 0)], [Cell::new(1, 0), Cell::new(2, 0)]]);

        let cyl = board(Topology::Cylinder, 2, 1).placements();
        assert_eq!(cyl.len(), 1);
        assert_eq!(cyl[0].edge, CrossingEdge::horizontal(1, 0));
    }

    #[test]
    fn torus_two_by_two_curves() {
        let curves = board(Topology::Torus, 2, 2).fault_curves();
        assert_eq!(curves.len(), 4);
        assert!(curves.iter().all(|c| c.cap() == 2));
    }

    #[test]
    fn mobius_wrap_joins_mirrored_rows() {
        let b = board(Topology::Mobius, 5, 3);
        assert_eq!(b.endpoints(CrossingEdge::vertical(0, 1)), Some([Cell::new(1, 2), Cell::new(3, 0)]));
    }

    #[test]
    fn colours() {
        let b = board(Topology::Rectangle, 5, 5);
        assert_eq!(b.cell_color(Cell::new(0, 0)), 0);
        assert_eq!(b.cell_color(Cell::new(3, 4)), 1);
    }

    #[test]
    fn invariants_hold_on_small_boards() {
        for t in Topology::ALL {
            for a in 1..=8 {
                for b in 1..=8 {
                    let board = board(t, a, b);
                    let curves = board.fault_curves();
                    let mut seen = HashSet::new();
                    for curve in &curves {
                        for &e in &curve.crossing_edges {
                            assert!(seen.insert(e), "{board}: edge {e} in two curves");
                        }
                    }
                    let edges: HashSet<_> = board.edges().into_iter().collect();
                    assert_eq!(seen, edges, "{board}: curves must cover every edge");
                    for p in board.placements() {
                        assert_ne!(p.cells[0], p.cells[1], "{board}: self loop at {}", p.edge);
                        assert!(board.contains(p.cells[0]) && board.contains(p.cells[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn curve_count_formulas() {
        for a in 1..=20 {
            for b in 1..=20 {
                assert_eq!(curve_counts(&board(Topology::Rectangle, a, b)), (a - 1, b - 1));
                assert_eq!(curve_counts(&board(Topology::Cylinder, a, b)), (a - 1, b));
                assert_eq!(curve_counts(&board(Topology::Torus, a, b)), (a, b));
                let mobius_h = if a % 2 == 0 { a / 2 } else { (a - 1) / 2 };
                assert_eq!(curve_counts(&board(Topology::Mobius, a, b)), (mobius_h, b));
            }
        }
    }

    #[test]
    fn mobius_wrap_colours() {
        for a in 1..=10 {
            for b in 1..=10 {
                let board = board(Topology::Mobius, a, b);
                for p in board.placements().iter().filter(|p| board.is_wrap(p.edge)) {
                    let same = board.cell_color(p.cells[0]) == board.cell_color(p.cells[1]);
                    if a % 2 == 0 && b % 2 == 0 {
                        assert!(same, "{board} {}", p.edge);
                    } else if (a + b) % 2 == 1 {
                        assert!(!same, "{board} {}", p.edge);
                    }
                }
            }
        }
    }
}
