//! Tilings, their verification, and the JSON witness format.
//!
//! A witness document looks like
//!
//! ```text
//! {"topology":"cylinder","a":1,"b":2,"dominoes":[
//! {"edge":["v",0,0],"cells":[[0,1],[0,0]]}
//! ]}
//! ```
//!
//! with one domino per line. `cells` is redundant with `edge` and is checked
//! on decode. Parsing and semantic validation are separate: a document with
//! the wrong number of dominoes decodes fine and is rejected by [`verify`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::topology::{BoardError, BoardSpec, Cell, CrossingEdge, LineAxis, Topology};

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("witness syntax error: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error("witness is for {found}, expected {expected}")]
    DimensionMismatch { expected: BoardSpec, found: BoardSpec },
    #[error("unknown edge {0:?} on this board")]
    UnknownEdge(String),
    #[error("domino {index}: cells {cells:?} do not match edge {edge}")]
    CellsMismatch { index: usize, edge: CrossingEdge, cells: [[usize; 2]; 2] },
    #[error("placement {0} does not belong to the board")]
    ForeignPlacement(CrossingEdge),
}

/// A board together with a list of dominoes claimed to tile it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tiling {
    pub board: BoardSpec,
    pub dominoes: Vec<CrossingEdge>,
}

impl Tiling {
    pub fn new(board: BoardSpec, mut dominoes: Vec<CrossingEdge>) -> Self {
        dominoes.sort();
        Tiling { board, dominoes }
    }

    /// Keeps the domino order exactly as given.
    pub fn from_parts(board: BoardSpec, dominoes: Vec<CrossingEdge>) -> Self {
        Tiling { board, dominoes }
    }

    pub fn len(&self) -> usize {
        self.dominoes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dominoes.is_empty()
    }

    /// Rotates a rectangle or torus tiling a quarter turn (rows become columns).
    pub fn transposed(&self) -> Option<Tiling> {
        let board = self.board.transposed()?;
        let dominoes = self
            .dominoes
            .iter()
            .map(|e| CrossingEdge {
                axis: match e.axis {
                    LineAxis::Horizontal => LineAxis::Vertical,
                    LineAxis::Vertical => LineAxis::Horizontal,
                },
                line: e.line,
                offset: e.offset,
            })
            .collect();
        Some(Tiling::new(board, dominoes))
    }

    /// Domino count per fault curve id. Errors on edges foreign to the board.
    pub fn curve_crossings(&self) -> Result<BTreeMap<usize, usize>, TilingError> {
        let index = self.board.curve_index();
        let mut crossings: BTreeMap<usize, usize> = (0..index.len()).map(|id| (id, 0)).collect();
        for &e in &self.dominoes {
            if !self.board.contains_edge(e) {
                return Err(TilingError::ForeignPlacement(e));
            }
            *crossings.entry(index.curve_of(e)).or_default() += 1;
        }
        Ok(crossings)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub matching_valid: bool,
    pub uncovered_cells: Vec<Cell>,
    pub doubly_covered_cells: Vec<Cell>,
    pub curve_crossings: BTreeMap<usize, usize>,
    pub uncrossed_curves: Vec<usize>,
    pub fault_free: bool,
}

impl VerificationReport {
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "matching valid: {}", self.matching_valid);
        if !self.uncovered_cells.is_empty() {
            let _ = writeln!(s, "uncovered cells: {}", join_cells(&self.uncovered_cells));
        }
        if !self.doubly_covered_cells.is_empty() {
            let _ = writeln!(s, "doubly covered cells: {}", join_cells(&self.doubly_covered_cells));
        }
        if !self.uncrossed_curves.is_empty() {
            let ids: Vec<String> = self.uncrossed_curves.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "uncrossed fault curves: {}", ids.join(" "));
        }
        let _ = writeln!(s, "fault-free: {}", self.fault_free);
        s
    }
}

fn join_cells(cells: &[Cell]) -> String {
    cells.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// Checks that `tiling` is a perfect matching of `board` and that every fault
/// curve is crossed.
pub fn verify(board: &BoardSpec, tiling: &Tiling) -> Result<VerificationReport, TilingError> {
    if tiling.board != *board {
        return Err(TilingError::DimensionMismatch { expected: *board, found: tiling.board });
    }
    let mut cover = vec![0usize; board.area()];
    for &e in &tiling.dominoes {
        let cells = board.endpoints(e).ok_or(TilingError::ForeignPlacement(e))?;
        for cell in cells {
            cover[board.cell_index(cell)] += 1;
        }
    }
    let uncovered_cells: Vec<Cell> = (0..board.area()).filter(|&i| cover[i] == 0).map(|i| board.cell_at(i)).collect();
    let doubly_covered_cells: Vec<Cell> =
        (0..board.area()).filter(|&i| cover[i] > 1).map(|i| board.cell_at(i)).collect();
    let matching_valid = uncovered_cells.is_empty() && doubly_covered_cells.is_empty();

    let curve_crossings = tiling.curve_crossings()?;
    let uncrossed_curves: Vec<usize> = curve_crossings.iter().filter(|(_, &n)| n == 0).map(|(&id, _)| id).collect();
    let fault_free = matching_valid && uncrossed_curves.is_empty();
    Ok(VerificationReport {
        matching_valid,
        uncovered_cells,
        doubly_covered_cells,
        curve_crossings,
        uncrossed_curves,
        fault_free,
    })
}

/// Serialises a tiling in the witness format. Domino order is preserved.
pub fn encode(tiling: &Tiling) -> String {
    let board = &tiling.board;
    let mut out = String::new();
    let _ = write!(out, "{{\"topology\":\"{}\",\"a\":{},\"b\":{},\"dominoes\":[", board.topology, board.a, board.b);
    for (i, &e) in tiling.dominoes.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let _ = write!(out, "{{\"edge\":[\"{}\",{},{}]", e.axis.code(), e.line, e.offset);
        if let Some([p, q]) = board.endpoints(e) {
            let _ = write!(out, ",\"cells\":[[{},{}],[{},{}]]", p.r, p.c, q.r, q.c);
        }
        out.push('}');
    }
    out.push_str("\n]}\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessDoc {
    topology: String,
    a: i64,
    b: i64,
    dominoes: Vec<DominoDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DominoDoc {
    edge: (String, usize, usize),
    cells: Option<[[usize; 2]; 2]>,
}

/// Parses a witness document. Each edge must exist on the declared board and
/// agree with its `cells`; coverage is not checked here.
pub fn decode(text: &str) -> Result<Tiling, TilingError> {
    let doc: WitnessDoc = serde_json::from_str(text)?;
    let topology: Topology = doc.topology.parse()?;
    let board = BoardSpec::from_signed(topology, doc.a, doc.b)?;
    let mut dominoes = Vec::with_capacity(doc.dominoes.len());
    for (index, d) in doc.dominoes.into_iter().enumerate() {
        let (code, line, offset) = d.edge;
        let axis = LineAxis::from_code(&code)
            .ok_or_else(|| TilingError::UnknownEdge(format!("[{code:?},{line},{offset}]")))?;
        let edge = CrossingEdge { axis, line, offset };
        let ends = board.endpoints(edge).ok_or_else(|| TilingError::UnknownEdge(edge.to_string()))?;
        if let Some(cells) = d.cells {
            let given = [Cell::new(cells[0][0], cells[0][1]), Cell::new(cells[1][0], cells[1][1])];
            let same = given == ends || given == [ends[1], ends[0]];
            if !same {
                return Err(TilingError::CellsMismatch { index, edge, cells });
            }
        }
        dominoes.push(edge);
    }
    Ok(Tiling::from_parts(board, dominoes))
}

/// Parses a witness and rejects it unless it was written for `board`.
pub fn decode_for(board: &BoardSpec, text: &str) -> Result<Tiling, TilingError> {
    let tiling = decode(text)?;
    if tiling.board != *board {
        return Err(TilingError::DimensionMismatch { expected: *board, found: tiling.board });
    }
    Ok(tiling)
}
