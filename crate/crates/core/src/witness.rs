//! Fault-free witnesses for tileable boards: the base board's tiling grown by
//! expansion, with a budgeted direct search when expansion gets stuck.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::classify::{base_boards, classify, Reason, Verdict};
use crate::expand::expand_by;
use crate::search::{find_fault_free, SearchBudget, SearchStatus};
use crate::tiling::{verify, Tiling};
use crate::topology::{BoardSpec, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    Base,
    Expanded { base: (usize, usize), rows: usize, cols: usize },
    DirectSearch,
    Cache,
}

impl fmt::Display for WitnessSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessSource::Base => f.write_str("base case"),
            WitnessSource::Expanded { base: (a, b), rows, cols } => {
                write!(f, "base {a}×{b} expanded by {rows} rows and {cols} columns")
            }
            WitnessSource::DirectSearch => f.write_str("direct search"),
            WitnessSource::Cache => f.write_str("cache"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub tiling: Tiling,
    pub source: WitnessSource,
}

#[derive(Debug, thiserror::Error)]
pub enum WitnessError {
    #[error("{} is not fault-free tileable", .0.board)]
    NotTileable(Verdict),
    #[error("no witness for {board}: {detail}")]
    Unavailable { board: BoardSpec, detail: String },
}

/// A fault-free tiling of a base board, found once per process.
pub fn base_witness(board: &BoardSpec) -> Option<Tiling> {
    static BASES: OnceLock<Mutex<HashMap<BoardSpec, Option<Tiling>>>> = OnceLock::new();
    let cache = BASES.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("base cache poisoned").get(board) {
        return hit.clone();
    }
    let found = find_fault_free(board, SearchBudget::unlimited()).witness;
    cache.lock().expect("base cache poisoned").insert(*board, found.clone());
    found
}

#[derive(Debug, Clone)]
pub struct BaseCase {
    pub board: BoardSpec,
    pub witness: Tiling,
}

/// Base boards of a surface with their search-derived witnesses.
pub fn base_cases(topology: Topology) -> Vec<BaseCase> {
    base_boards(topology)
        .into_iter()
        .map(|board| BaseCase { board, witness: base_witness(&board).expect("every base board is tileable") })
        .collect()
}

/// Builds a fault-free tiling for a tileable board.
pub fn witness(board: &BoardSpec, budget: SearchBudget) -> Result<Witness, WitnessError> {
    let verdict = classify(board);
    if !verdict.tileable {
        return Err(WitnessError::NotTileable(verdict));
    }
    let built = match verdict.reason {
        Reason::BaseExpansion { base, n, m } => {
            let canonical = verdict.canonical;
            let base_board = BoardSpec { a: base.0, b: base.1, ..canonical };
            base_witness(&base_board)
                .and_then(|w| expand_by(&w, n, m).ok())
                .map(|t| {
                    let source = if n + m == 0 {
                        WitnessSource::Base
                    } else {
                        WitnessSource::Expanded { base, rows: 2 * n, cols: 2 * m }
                    };
                    (t, source)
                })
                .and_then(|(t, source)| orient(t, board).map(|t| (t, source)))
        }
        _ => None,
    };
    let (tiling, source) = match built {
        Some(found) => found,
        None => {
            let outcome = find_fault_free(board, budget);
            match (outcome.status, outcome.witness) {
                (SearchStatus::Found, Some(t)) => (t, WitnessSource::DirectSearch),
                (status, _) => {
                    return Err(WitnessError::Unavailable {
                        board: *board,
                        detail: format!("expansion failed and direct search was {}", status.label()),
                    })
                }
            }
        }
    };
    let report =
        verify(board, &tiling).map_err(|e| WitnessError::Unavailable { board: *board, detail: e.to_string() })?;
    if !report.fault_free {
        return Err(WitnessError::Unavailable {
            board: *board,
            detail: "constructed tiling failed verification".into(),
        });
    }
    Ok(Witness { tiling, source })
}

/// Tori are built with the longer side first; flip back if needed.
fn orient(tiling: Tiling, board: &BoardSpec) -> Option<Tiling> {
    if tiling.board == *board {
        Some(tiling)
    } else {
        tiling.transposed().filter(|t| t.board == *board)
    }
}
