//! Exhaustive backtracking over domino placements.
//!
//! The search always extends the first uncovered cell of a fixed sweep
//! (column by column when the board is at least as wide as it is tall, row by
//! row otherwise, so the frontier spans the short side). Candidate dominoes
//! are tried vertical first, then horizontal, then wrapping, lower line index
//! first.
//!
//! The fault-free search keeps, per fault curve, the number of crossing edges
//! whose two cells are both still free. A branch dies as soon as an uncrossed
//! curve runs out of such edges. Failed states are memoised on
//! `(covered cells, crossed curves)`, which determines the rest of the search.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::tiling::{verify, Tiling};
use crate::topology::{BoardSpec, CrossingEdge, LineAxis};

/// Default largest area the oracle agrees to enumerate.
pub const DEFAULT_ORACLE_CEILING: usize = 48;

const MEMO_LIMIT: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("{board} has area {area}, above the oracle ceiling of {ceiling}")]
    OracleOutOfRange { board: BoardSpec, area: usize, ceiling: usize },
}

/// Limits on a single search. Hitting either limit yields
/// [`SearchStatus::Inconclusive`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_millis: u64,
}

impl SearchBudget {
    pub const fn unlimited() -> Self {
        SearchBudget { max_nodes: u64::MAX, max_millis: u64::MAX }
    }

    pub const fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes, max_millis: u64::MAX }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 50_000_000, max_millis: 60_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    ExhaustedNone,
    Inconclusive,
}

impl SearchStatus {
    pub fn label(self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::ExhaustedNone => "exhausted-none",
            SearchStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Tiling>,
    pub nodes: u64,
}

/// Switches for the fault-free search. Turning both off gives plain
/// enumeration with a fault check at the leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub prune: bool,
    pub memo: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { prune: true, memo: true }
    }
}

impl SearchOptions {
    pub const PLAIN: SearchOptions = SearchOptions { prune: false, memo: false };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TilingCount {
    Exact(u128),
    Inconclusive,
}

#[derive(Clone, Copy)]
struct Arc {
    edge: u32,
    other: u32,
}

/// The board flattened into index form for the inner loops.
struct SearchGraph {
    board: BoardSpec,
    order: Vec<u32>,
    arcs: Vec<Vec<Arc>>,
    edges: Vec<CrossingEdge>,
    edge_curve: Vec<u32>,
    curve_caps: Vec<u32>,
}

impl SearchGraph {
    fn new(board: &BoardSpec) -> Self {
        let n = board.area();
        let order: Vec<u32> = if board.a <= board.b {
            (0..board.b).flat_map(|c| (0..board.a).map(move |r| (r * board.b + c) as u32)).collect()
        } else {
            (0..n as u32).collect()
        };

        let index = board.curve_index();
        let edges = board.edges();
        let mut arcs: Vec<Vec<(u8, usize, usize, Arc)>> = vec![Vec::new(); n];
        let mut edge_curve = Vec::with_capacity(edges.len());
        let mut curve_caps = vec![0u32; index.len()];
        for (i, &e) in edges.iter().enumerate() {
            let [p, q] = board.endpoints(e).expect("listed edge exists");
            let (p, q) = (board.cell_index(p), board.cell_index(q));
            let rank = match (board.is_wrap(e), e.axis) {
                (true, _) => 2u8,
                (false, LineAxis::Horizontal) => 0,
                (false, LineAxis::Vertical) => 1,
            };
            arcs[p].push((rank, e.line, e.offset, Arc { edge: i as u32, other: q as u32 }));
            arcs[q].push((rank, e.line, e.offset, Arc { edge: i as u32, other: p as u32 }));
            let curve = index.curve_of(e);
            edge_curve.push(curve as u32);
            curve_caps[curve] += 1;
        }
        let arcs = arcs
            .into_iter()
            .map(|mut list| {
                list.sort_by_key(|&(rank, line, offset, _)| (rank, line, offset));
                list.into_iter().map(|(_, _, _, arc)| arc).collect()
            })
            .collect();
        SearchGraph { board: *board, order, arcs, edges, edge_curve, curve_caps }
    }

    fn words(&self) -> usize {
        self.board.area().div_ceil(64)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Found,
    Failed,
    Aborted,
}

struct Searcher<'g> {
    graph: &'g SearchGraph,
    fault_free: bool,
    options: SearchOptions,
    covered: Vec<u64>,
    crossed: Vec<u64>,
    crossed_count: Vec<u32>,
    available: Vec<u32>,
    starved: u32,
    chosen: Vec<u32>,
    solution: Vec<u32>,
    failed: HashSet<Box<[u64]>>,
    nodes: u64,
    budget: SearchBudget,
    deadline: Option<Instant>,
}

impl<'g> Searcher<'g> {
    fn new(graph: &'g SearchGraph, fault_free: bool, options: SearchOptions, budget: SearchBudget) -> Self {
        let ncurves = graph.curve_caps.len();
        let deadline =
            (budget.max_millis != u64::MAX).then(|| Instant::now() + Duration::from_millis(budget.max_millis));
        Searcher {
            graph,
            fault_free,
            options,
            covered: vec![0; graph.words()],
            crossed: vec![0; ncurves.div_ceil(64).max(1)],
            crossed_count: vec![0; ncurves],
            available: graph.curve_caps.clone(),
            starved: graph.curve_caps.iter().filter(|&&c| c == 0).count() as u32,
            chosen: Vec::with_capacity(graph.board.area() / 2),
            solution: Vec::new(),
            failed: HashSet::new(),
            nodes: 0,
            budget,
            deadline,
        }
    }

    #[inline]
    fn is_covered(&self, cell: u32) -> bool {
        self.covered[(cell / 64) as usize] >> (cell % 64) & 1 == 1
    }

    #[inline]
    fn flip_cell(&mut self, cell: u32) {
        self.covered[(cell / 64) as usize] ^= 1 << (cell % 64);
    }

    fn cover(&mut self, cell: u32) {
        if self.fault_free {
            for i in 0..self.graph.arcs[cell as usize].len() {
                let arc = self.graph.arcs[cell as usize][i];
                if !self.is_covered(arc.other) {
                    let k = self.graph.edge_curve[arc.edge as usize] as usize;
                    self.available[k] -= 1;
                    if self.available[k] == 0 && self.crossed_count[k] == 0 {
                        self.starved += 1;
                    }
                }
            }
        }
        self.flip_cell(cell);
    }

    fn uncover(&mut self, cell: u32) {
        self.flip_cell(cell);
        if self.fault_free {
            for i in 0..self.graph.arcs[cell as usize].len() {
                let arc = self.graph.arcs[cell as usize][i];
                if !self.is_covered(arc.other) {
                    let k = self.graph.edge_curve[arc.edge as usize] as usize;
                    if self.available[k] == 0 && self.crossed_count[k] == 0 {
                        self.starved -= 1;
                    }
                    self.available[k] += 1;
                }
            }
        }
    }

    fn mark_crossed(&mut self, edge: u32, on: bool) {
        let k = self.graph.edge_curve[edge as usize] as usize;
        if on {
            if self.crossed_count[k] == 0 {
                self.crossed[k / 64] |= 1 << (k % 64);
                if self.available[k] == 0 {
                    self.starved -= 1;
                }
            }
            self.crossed_count[k] += 1;
        } else {
            self.crossed_count[k] -= 1;
            if self.crossed_count[k] == 0 {
                self.crossed[k / 64] &= !(1 << (k % 64));
                if self.available[k] == 0 {
                    self.starved += 1;
                }
            }
        }
    }

    fn place(&mut self, u: u32, arc: Arc) {
        if self.fault_free {
            self.mark_crossed(arc.edge, true);
        }
        self.cover(u);
        self.cover(arc.other);
        self.chosen.push(arc.edge);
    }

    fn unplace(&mut self, u: u32, arc: Arc) {
        self.chosen.pop();
        self.uncover(arc.other);
        self.uncover(u);
        if self.fault_free {
            self.mark_crossed(arc.edge, false);
        }
    }

    fn memo_key(&self) -> Box<[u64]> {
        self.covered.iter().chain(self.crossed.iter()).copied().collect()
    }

    fn out_of_budget(&self) -> bool {
        if self.nodes > self.budget.max_nodes {
            return true;
        }
        match self.deadline {
            Some(deadline) if self.nodes.is_multiple_of(4096) => Instant::now() > deadline,
            _ => false,
        }
    }

    fn all_crossed(&self) -> bool {
        self.crossed_count.iter().all(|&n| n > 0)
    }

    fn dfs(&mut self, mut cursor: usize) -> Flow {
        let order = &self.graph.order;
        while cursor < order.len() && self.is_covered(order[cursor]) {
            cursor += 1;
        }
        if cursor == order.len() {
            if self.fault_free && !self.all_crossed() {
                return Flow::Failed;
            }
            self.solution = self.chosen.clone();
            return Flow::Found;
        }
        let use_memo = self.options.memo;
        if use_memo && self.failed.contains(&self.memo_key()) {
            return Flow::Failed;
        }
        self.nodes += 1;
        if self.out_of_budget() {
            return Flow::Aborted;
        }

        let u = order[cursor];
        for i in 0..self.graph.arcs[u as usize].len() {
            let arc = self.graph.arcs[u as usize][i];
            if self.is_covered(arc.other) {
                continue;
            }
            self.place(u, arc);
            let flow = if self.options.prune && self.starved > 0 { Flow::Failed } else { self.dfs(cursor + 1) };
            self.unplace(u, arc);
            if flow != Flow::Failed {
                return flow;
            }
        }
        if use_memo && self.failed.len() < MEMO_LIMIT {
            let key = self.memo_key();
            self.failed.insert(key);
        }
        Flow::Failed
    }

    fn run(mut self) -> SearchOutcome {
        let graph = self.graph;
        if graph.board.area() % 2 == 1 {
            return SearchOutcome { status: SearchStatus::ExhaustedNone, witness: None, nodes: 0 };
        }
        if self.fault_free && self.options.prune && graph.curve_caps.contains(&0) {
            return SearchOutcome { status: SearchStatus::ExhaustedNone, witness: None, nodes: 0 };
        }
        match self.dfs(0) {
            Flow::Found => {
                let dominoes = self.solution.iter().map(|&e| graph.edges[e as usize]).collect();
                let tiling = Tiling::new(graph.board, dominoes);
                let report = verify(&graph.board, &tiling).expect("search emits board edges");
                assert!(
                    report.matching_valid && (!self.fault_free || report.fault_free),
                    "search produced an invalid witness for {}",
                    graph.board
                );
                SearchOutcome { status: SearchStatus::Found, witness: Some(tiling), nodes: self.nodes }
            }
            Flow::Failed => SearchOutcome { status: SearchStatus::ExhaustedNone, witness: None, nodes: self.nodes },
            Flow::Aborted => SearchOutcome { status: SearchStatus::Inconclusive, witness: None, nodes: self.nodes },
        }
    }
}

/// Looks for any perfect matching of the board.
pub fn find_tiling(board: &BoardSpec, budget: SearchBudget) -> SearchOutcome {
    let graph = SearchGraph::new(board);
    Searcher::new(&graph, false, SearchOptions::default(), budget).run()
}

/// Looks for a fault-free tiling with pruning and memoisation on.
pub fn find_fault_free(board: &BoardSpec, budget: SearchBudget) -> SearchOutcome {
    find_fault_free_with(board, budget, SearchOptions::default())
}

pub fn find_fault_free_with(board: &BoardSpec, budget: SearchBudget, options: SearchOptions) -> SearchOutcome {
    let graph = SearchGraph::new(board);
    Searcher::new(&graph, true, options, budget).run()
}

/// Counts perfect matchings. Parallel edges between the same two cells are
/// distinct placements and counted separately.
pub fn count_tilings(board: &BoardSpec, budget: SearchBudget) -> TilingCount {
    if board.area() % 2 == 1 {
        return TilingCount::Exact(0);
    }
    let graph = SearchGraph::new(board);
    let mut counter =
        Counter { searcher: Searcher::new(&graph, false, SearchOptions::PLAIN, budget), memo: HashMap::new() };
    match counter.count(0) {
        Some(n) => TilingCount::Exact(n),
        None => TilingCount::Inconclusive,
    }
}

struct Counter<'g> {
    searcher: Searcher<'g>,
    memo: HashMap<Box<[u64]>, u128>,
}

impl Counter<'_> {
    fn count(&mut self, mut cursor: usize) -> Option<u128> {
        let s = &mut self.searcher;
        let order = &s.graph.order;
        while cursor < order.len() && s.is_covered(order[cursor]) {
            cursor += 1;
        }
        if cursor == order.len() {
            return Some(1);
        }
        if let Some(&n) = self.memo.get(s.covered.as_slice()) {
            return Some(n);
        }
        s.nodes += 1;
        if s.out_of_budget() {
            return None;
        }
        let u = order[cursor];
        let mut total = 0u128;
        for i in 0..s.graph.arcs[u as usize].len() {
            let arc = self.searcher.graph.arcs[u as usize][i];
            if self.searcher.is_covered(arc.other) {
                continue;
            }
            self.searcher.place(u, arc);
            let sub = self.count(cursor + 1);
            self.searcher.unplace(u, arc);
            total += sub?;
        }
        if self.memo.len() < MEMO_LIMIT {
            self.memo.insert(self.searcher.covered.clone().into_boxed_slice(), total);
        }
        Some(total)
    }
}

/// Unbudgeted exhaustive decision procedure for small boards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub ceiling: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { ceiling: DEFAULT_ORACLE_CEILING }
    }
}

impl Oracle {
    pub fn fault_free_exists(&self, board: &BoardSpec) -> Result<bool, SearchError> {
        if board.area() > self.ceiling {
            return Err(SearchError::OracleOutOfRange { board: *board, area: board.area(), ceiling: self.ceiling });
        }
        let outcome = find_fault_free(board, SearchBudget::unlimited());
        Ok(match outcome.status {
            SearchStatus::Found => true,
            SearchStatus::ExhaustedNone => false,
            SearchStatus::Inconclusive => unreachable!("unlimited budget"),
        })
    }
}

/// [`Oracle::fault_free_exists`] with the default ceiling.
pub fn fault_free_exists_oracle(board: &BoardSpec) -> Result<bool, SearchError> {
    Oracle::default().fault_free_exists(board)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Topology;

    fn board(t: Topology, a: usize, b: usize) -> BoardSpec {
        BoardSpec::new(t, a, b).unwrap()
    }

    #[test]
    fn plain_tiling_existence() {
        let odd = find_tiling(&board(Topology::Rectangle, 5, 5), SearchBudget::unlimited());
        assert_eq!(odd.status, SearchStatus::ExhaustedNone);
        assert_eq!(odd.nodes, 0);
        let six = find_tiling(&board(Topology::Rectangle, 6, 6), SearchBudget::unlimited());
        assert_eq!(six.status, SearchStatus::Found);
        assert_eq!(six.witness.unwrap().len(), 18);
        let mob = find_tiling(&board(Topology::Mobius, 2, 1), SearchBudget::unlimited());
        assert_eq!(mob.status, SearchStatus::Found);
    }

    #[test]
    fn counts() {
        let count = |t, a, b| count_tilings(&board(t, a, b), SearchBudget::unlimited());
        assert_eq!(count(Topology::Rectangle, 2, 3), TilingCount::Exact(3));
        assert_eq!(count(Topology::Rectangle, 1, 2), TilingCount::Exact(1));
        assert_eq!(count(Topology::Cylinder, 1, 2), TilingCount::Exact(2));
        assert_eq!(count(Topology::Rectangle, 8, 8), TilingCount::Exact(12_988_816));
        assert_eq!(count(Topology::Rectangle, 3, 3), TilingCount::Exact(0));
    }

    #[test]
    fn fault_free_examples() {
        let ff = |t, a, b| find_fault_free(&board(t, a, b), SearchBudget::unlimited()).status;
        assert_eq!(ff(Topology::Rectangle, 6, 6), SearchStatus::ExhaustedNone);
        assert_eq!(ff(Topology::Rectangle, 5, 6), SearchStatus::Found);
        assert_eq!(ff(Topology::Cylinder, 4, 6), SearchStatus::Found);
        assert_eq!(ff(Topology::Torus, 4, 4), SearchStatus::Found);
        assert_eq!(ff(Topology::Mobius, 4, 3), SearchStatus::Found);
    }

    #[test]
    fn oracle_examples() {
        let o = |t, a, b| fault_free_exists_oracle(&board(t, a, b)).unwrap();
        assert!(!o(Topology::Cylinder, 5, 6));
        assert!(o(Topology::Mobius, 5, 4));
        assert!(!o(Topology::Torus, 2, 2));
        assert!(matches!(
            fault_free_exists_oracle(&board(Topology::Torus, 7, 7)),
            Err(SearchError::OracleOutOfRange { .. })
        ));
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let out = find_fault_free(&board(Topology::Rectangle, 6, 6), SearchBudget::nodes(10));
        assert_eq!(out.status, SearchStatus::Inconclusive);
        assert!(out.witness.is_none());
        let count = count_tilings(&board(Topology::Rectangle, 6, 6), SearchBudget::nodes(5));
        assert_eq!(count, TilingCount::Inconclusive);
    }

    #[test]
    fn deterministic_node_counts() {
        let b = board(Topology::Cylinder, 5, 6);
        let first = find_fault_free(&b, SearchBudget::unlimited());
        let second = find_fault_free(&b, SearchBudget::unlimited());
        assert_eq!(first, second);
    }
}
