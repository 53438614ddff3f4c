//! Growing a fault-free tiling by two rows or two columns.
//!
//! A cut runs across the board, one position per lane (column for a row
//! expansion, row for a column expansion). Cells past the cut shift by two and
//! the gap is filled by a band of dominoes straddling the cut. A cut may only
//! pass between cells no domino joins, and a staircase cut (neighbouring lanes
//! differing by one) keeps every old and new fault line crossed. When no cut
//! fits, nearby tilings reached by flipping 2×2 squares are tried. Every result
//! is re-verified before it is returned.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::tiling::{verify, Tiling, TilingError};
use crate::topology::{BoardSpec, Cell, CrossingEdge, LineAxis, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpandAxis {
    Rows,
    Cols,
}

impl ExpandAxis {
    pub fn name(self) -> &'static str {
        match self {
            ExpandAxis::Rows => "rows",
            ExpandAxis::Cols => "cols",
        }
    }
}

impl fmt::Display for ExpandAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ExpandAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rows" | "a" => Ok(ExpandAxis::Rows),
            "cols" | "b" => Ok(ExpandAxis::Cols),
            _ => Err(format!("unknown axis '{s}' (expected rows or cols)")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ExpandError {
    #[error("input is not a fault-free tiling of {0}")]
    NotFaultFree(BoardSpec),
    #[error("no admissible cut found on {board} along {axis}")]
    NoCut { board: BoardSpec, axis: ExpandAxis },
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// Leaves tried before giving up on a cut.
const LEAF_LIMIT: usize = 20_000;
const NODE_LIMIT: usize = 2_000_000;
const RETILE_LIMIT: usize = 4_096;
const RETILE_NODE_LIMIT: usize = 50_000;

/// Adds two rows or two columns to a fault-free tiling.
pub fn expand(tiling: &Tiling, axis: ExpandAxis) -> Result<Tiling, ExpandError> {
    let board = tiling.board;
    if !verify(&board, tiling)?.fault_free {
        return Err(ExpandError::NotFaultFree(board));
    }
    if let Some(found) = cut_and_insert(tiling, axis, NODE_LIMIT) {
        return Ok(found);
    }
    // No cut fits this tiling: look for one in fault-free tilings a few
    // square flips away.
    let flips = FlipGraph::new(&board);
    let mut seen: HashSet<Vec<CrossingEdge>> = HashSet::from([tiling.dominoes.clone()]);
    let mut queue = VecDeque::from([tiling.dominoes.clone()]);
    while let Some(current) = queue.pop_front() {
        for next in flips.neighbours(&current) {
            if seen.len() >= RETILE_LIMIT {
                return Err(ExpandError::NoCut { board, axis });
            }
            if !seen.insert(next.clone()) {
                continue;
            }
            let candidate = Tiling::new(board, next.clone());
            if verify(&board, &candidate)?.fault_free {
                if let Some(found) = cut_and_insert(&candidate, axis, RETILE_NODE_LIMIT) {
                    return Ok(found);
                }
            }
            queue.push_back(next);
        }
    }
    Err(ExpandError::NoCut { board, axis })
}

fn cut_and_insert(tiling: &Tiling, axis: ExpandAxis, node_limit: usize) -> Option<Tiling> {
    let mut cutter = Cutter::new(tiling, axis);
    // Staircase cuts first, then cuts with arbitrary jumps between lanes.
    for max_step in [1, cutter.depth] {
        cutter.max_step = max_step;
        cutter.node_limit = node_limit;
        cutter.nodes = 0;
        cutter.leaves = 0;
        let mut cut = Vec::with_capacity(cutter.lanes);
        if let Some(found) = cutter.search(&mut cut) {
            return Some(found);
        }
    }
    None
}

/// Replacing two parallel dominoes on a 4-cycle of cells by the other two.
struct FlipGraph {
    board: BoardSpec,
    edge_between: HashMap<(Cell, Cell), CrossingEdge>,
    neighbours: Vec<Vec<Cell>>,
}

impl FlipGraph {
    fn new(board: &BoardSpec) -> Self {
        let mut edge_between = HashMap::new();
        let mut neighbours = vec![Vec::new(); board.area()];
        for p in board.placements() {
            let [x, y] = p.cells;
            edge_between.entry((x, y)).or_insert(p.edge);
            edge_between.entry((y, x)).or_insert(p.edge);
            neighbours[board.cell_index(x)].push(y);
            neighbours[board.cell_index(y)].push(x);
        }
        FlipGraph { board: *board, edge_between, neighbours }
    }

    fn neighbours(&self, dominoes: &[CrossingEdge]) -> Vec<Vec<CrossingEdge>> {
        let board = &self.board;
        let mut partner = vec![Cell::new(0, 0); board.area()];
        let mut owner = vec![0usize; board.area()];
        for (i, &e) in dominoes.iter().enumerate() {
            let [x, y] = board.endpoints(e).expect("verified tiling");
            partner[board.cell_index(x)] = y;
            partner[board.cell_index(y)] = x;
            owner[board.cell_index(x)] = i;
            owner[board.cell_index(y)] = i;
        }
        let mut out = Vec::new();
        for (i, &e) in dominoes.iter().enumerate() {
            let [x, y] = board.endpoints(e).expect("verified tiling");
            for &z in &self.neighbours[board.cell_index(x)] {
                let j = owner[board.cell_index(z)];
                if j <= i {
                    continue;
                }
                let w = partner[board.cell_index(z)];
                let (Some(&xz), Some(&yw)) = (self.edge_between.get(&(x, z)), self.edge_between.get(&(y, w))) else {
                    continue;
                };
                let mut next: Vec<CrossingEdge> =
                    dominoes.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &d)| d).collect();
                next.extend([xz, yw]);
                next.sort();
                out.push(next);
            }
        }
        out
    }
}

/// Applies `rows` row expansions then `cols` column expansions.
pub fn expand_by(tiling: &Tiling, rows: usize, cols: usize) -> Result<Tiling, ExpandError> {
    let mut current = tiling.clone();
    for _ in 0..rows {
        current = expand(&current, ExpandAxis::Rows)?;
    }
    for _ in 0..cols {
        current = expand(&current, ExpandAxis::Cols)?;
    }
    Ok(current)
}

struct Cutter<'a> {
    tiling: &'a Tiling,
    axis: ExpandAxis,
    dominoes: HashSet<CrossingEdge>,
    target: BoardSpec,
    lanes: usize,
    depth: usize,
    cuts: std::ops::RangeInclusive<usize>,
    depth_wraps: bool,
    lanes_wrap: bool,
    max_step: usize,
    node_limit: usize,
    nodes: usize,
    leaves: usize,
}

impl<'a> Cutter<'a> {
    fn new(tiling: &'a Tiling, axis: ExpandAxis) -> Self {
        let board = tiling.board;
        let t = board.topology;
        let (lanes, depth, depth_wraps, lanes_wrap, target) = match axis {
            ExpandAxis::Rows => {
                (board.b, board.a, t.wraps_rows(), t.wraps_columns(), BoardSpec { a: board.a + 2, ..board })
            }
            ExpandAxis::Cols => {
                (board.a, board.b, t.wraps_columns(), t.wraps_rows(), BoardSpec { b: board.b + 2, ..board })
            }
        };
        // On a glued depth axis position 0 and position `depth` coincide.
        let cuts = if depth_wraps { 1..=depth } else { 0..=depth };
        Cutter {
            tiling,
            axis,
            dominoes: tiling.dominoes.iter().copied().collect(),
            target,
            lanes,
            depth,
            cuts,
            depth_wraps,
            lanes_wrap,
            max_step: 1,
            node_limit: NODE_LIMIT,
            nodes: 0,
            leaves: 0,
        }
    }

    /// Edge crossing depth line `k` inside `lane`.
    fn across(&self, k: usize, lane: usize) -> CrossingEdge {
        let line = if k == self.depth { 0 } else { k };
        match self.axis {
            ExpandAxis::Rows => CrossingEdge::horizontal(line, lane),
            ExpandAxis::Cols => CrossingEdge::vertical(line, lane),
        }
    }

    /// Edge crossing lane line `line` at depth `d`.
    fn along(&self, line: usize, d: usize) -> CrossingEdge {
        match self.axis {
            ExpandAxis::Rows => CrossingEdge::vertical(line, d),
            ExpandAxis::Cols => CrossingEdge::horizontal(line, d),
        }
    }

    fn cut_open(&self, lane: usize, k: usize) -> bool {
        let boundary = k == 0 || (k == self.depth && !self.depth_wraps);
        boundary || !self.dominoes.contains(&self.across(k, lane))
    }

    fn step_open(&self, line: usize, k0: usize, k1: usize) -> bool {
        (k0.min(k1)..k0.max(k1)).all(|d| !self.dominoes.contains(&self.along(line, d)))
    }

    fn closure_open(&self, cut: &[usize]) -> bool {
        if !self.lanes_wrap {
            return true;
        }
        let (first, last) = (cut[0], cut[self.lanes - 1]);
        if self.tiling.board.topology == Topology::Mobius {
            // The twist sends depth k on the last lane to depth a - k on the
            // first; the remap check below covers the seam dominoes.
            first + last == self.depth
        } else {
            first.abs_diff(last) <= self.max_step && self.step_open(0, first, last)
        }
    }

    fn search(&mut self, cut: &mut Vec<usize>) -> Option<Tiling> {
        if self.nodes >= self.node_limit || self.leaves >= LEAF_LIMIT {
            return None;
        }
        self.nodes += 1;
        let lane = cut.len();
        if lane == self.lanes {
            if cut.iter().all(|&k| k == cut[0]) || !self.closure_open(cut) {
                return None;
            }
            self.leaves += 1;
            return self.apply(cut);
        }
        let candidates: Vec<usize> = match cut.last() {
            None => self.cuts.clone().collect(),
            Some(&prev) => {
                let lo = prev.saturating_sub(self.max_step).max(*self.cuts.start());
                let hi = (prev + self.max_step).min(*self.cuts.end());
                let mut ks: Vec<usize> = (lo..=hi).collect();
                ks.sort_by_key(|&k| k.abs_diff(prev));
                ks
            }
        };
        for k in candidates {
            if !self.cut_open(lane, k) {
                continue;
            }
            if let Some(&prev) = cut.last() {
                if !self.step_open(lane, prev, k) {
                    continue;
                }
            }
            cut.push(k);
            let found = self.search(cut);
            cut.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn map(&self, cut: &[usize], cell: Cell) -> Cell {
        match self.axis {
            ExpandAxis::Rows => Cell::new(cell.r + 2 * usize::from(cell.r >= cut[cell.c]), cell.c),
            ExpandAxis::Cols => Cell::new(cell.r, cell.c + 2 * usize::from(cell.c >= cut[cell.r])),
        }
    }

    fn depth_of(&self, cell: Cell) -> usize {
        match self.axis {
            ExpandAxis::Rows => cell.r,
            ExpandAxis::Cols => cell.c,
        }
    }

    fn apply(&self, cut: &[usize]) -> Option<Tiling> {
        let board = self.tiling.board;
        let depth_axis = match self.axis {
            ExpandAxis::Rows => LineAxis::Horizontal,
            ExpandAxis::Cols => LineAxis::Vertical,
        };
        let mut dominoes = Vec::with_capacity(self.tiling.len() + self.lanes);
        for &edge in &self.tiling.dominoes {
            let [p, q] = board.endpoints(edge)?;
            let (p2, q2) = (self.map(cut, p), self.map(cut, q));
            let moved = if edge.axis == depth_axis {
                let line = if edge.line == 0 { 0 } else { self.depth_of(p2) + 1 };
                CrossingEdge { line, ..edge }
            } else {
                CrossingEdge { offset: self.depth_of(p2), ..edge }
            };
            if self.target.endpoints(moved)? != [p2, q2] {
                return None;
            }
            dominoes.push(moved);
        }
        for (lane, &k) in cut.iter().enumerate() {
            dominoes.push(CrossingEdge { axis: depth_axis, line: k + 1, offset: lane });
        }
        let grown = Tiling::new(self.target, dominoes);
        let report = verify(&self.target, &grown).ok()?;
        report.fault_free.then_some(grown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::base_boards;
    use crate::search::{find_fault_free, SearchBudget};

    fn base_witness(board: &BoardSpec) -> Tiling {
        find_fault_free(board, SearchBudget::unlimited()).witness.expect("base boards are tileable")
    }

    #[test]
    fn every_base_grows_three_times_each_way() {
        for t in Topology::ALL {
            for base in base_boards(t) {
                let w = base_witness(&base);
                for axis in [ExpandAxis::Rows, ExpandAxis::Cols] {
                    let mut cur = w.clone();
                    for step in 1..=3 {
                        cur = expand(&cur, axis).unwrap_or_else(|e| panic!("{base} {axis} step {step}: {e}"));
                        let report = verify(&cur.board, &cur).unwrap();
                        assert!(report.fault_free, "{}", cur.board);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_faulty_input() {
        let board = BoardSpec::new(Topology::Rectangle, 2, 2).unwrap();
        let t = Tiling::new(board, vec![CrossingEdge::horizontal(1, 0), CrossingEdge::horizontal(1, 1)]);
        assert!(matches!(expand(&t, ExpandAxis::Rows), Err(ExpandError::NotFaultFree(_))));
    }

    #[test]
    fn dimensions_grow_by_two() {
        let base = BoardSpec::new(Topology::Cylinder, 4, 6).unwrap();
        let grown = expand_by(&base_witness(&base), 2, 1).unwrap();
        assert_eq!((grown.board.a, grown.board.b), (8, 8));
        assert_eq!(grown.len(), 32);
    }
}
