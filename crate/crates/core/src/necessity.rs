//! Counting obstructions to fault-free tilings.
//!
//! Every domino straddles exactly one grid line, so a tiling is summarised by
//! how many dominoes cross each line. Those counts obey:
//!
//! - row parity: a row of `b` cells loses one cell to each vertical domino
//!   through its top or bottom line (and, on a Möbius strip, to each wrapping
//!   domino joining it to its mirror row); the rest pair up, so
//!   `x[top] + x[bottom] (+ u[pair]) ≡ b (mod 2)`.
//! - column parity: likewise `y[left] + y[right] ≡ a (mod 2)`, with the seam
//!   count standing in at glued boundaries.
//! - colour balance: on a Möbius strip with `a` and `b` both even a wrapping
//!   domino covers two cells of one colour and the two placements of a row
//!   pair cover opposite colours, so the seam total is even.
//! - coverage: every fault curve is crossed at least once.
//! - capacity: each line has only so many crossing edges.
//! - exact sum: all counts add up to `a·b / 2`.
//!
//! The parity constraints are solved over GF(2); each solution fixes the
//! parity of every count, and within a parity class the attainable totals
//! form an arithmetic progression with step 2. A board is counting-feasible
//! when some class reaches exactly `a·b / 2`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::gf2::{BitVec, LinearSystem};
use crate::tiling::{Tiling, TilingError};
use crate::topology::{BoardSpec, CrossingEdge, LineAxis, Topology};

/// Largest parity-class count enumerated before giving up.
pub const MAX_PARITY_CLASSES: usize = 1 << 16;

/// A crossing-count variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    /// Vertical dominoes crossing horizontal line `l`.
    X(usize),
    /// Horizontal dominoes crossing interior vertical line `j`.
    Y(usize),
    /// Dominoes crossing the seam of a cylinder or torus.
    Seam,
    /// Möbius wrapping dominoes joining row `r` and its mirror, `r` the lower.
    U(usize),
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::X(l) => write!(f, "x{l}"),
            Variable::Y(j) => write!(f, "y{j}"),
            Variable::Seam => f.write_str("s"),
            Variable::U(r) => write!(f, "u{r}"),
        }
    }
}

/// Variables whose sum must be at least one: the counts of one fault curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageGroup {
    pub vars: Vec<usize>,
}

/// Parity, coverage, capacity and sum constraints for one board.
#[derive(Debug, Clone)]
pub struct ParitySystem {
    pub board: BoardSpec,
    pub variables: Vec<Variable>,
    pub caps: Vec<usize>,
    pub parity: LinearSystem,
    pub coverage: Vec<CoverageGroup>,
    /// Required total, `a·b / 2`.
    pub sum: Option<usize>,
}

impl ParitySystem {
    pub fn index_of(&self, var: Variable) -> Option<usize> {
        self.variables.iter().position(|&v| v == var)
    }

    /// Human-readable listing of the constraints.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (row, rhs) in self.parity.equations() {
            let terms: Vec<String> =
                (0..self.variables.len()).filter(|&i| row.get(i)).map(|i| self.variables[i].to_string()).collect();
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            let _ = writeln!(out, "{lhs} ≡ {} (mod 2)", u8::from(*rhs));
        }
        for group in &self.coverage {
            let terms: Vec<String> = group.vars.iter().map(|&i| self.variables[i].to_string()).collect();
            let _ = writeln!(out, "{} ≥ 1", terms.join(" + "));
        }
        for (v, cap) in self.variables.iter().zip(&self.caps) {
            let _ = writeln!(out, "{v} ≤ {cap}");
        }
        if let Some(sum) = self.sum {
            let _ = writeln!(out, "total = {sum}");
        }
        out
    }
}

fn seam_edges(board: &BoardSpec) -> impl Iterator<Item = CrossingEdge> + '_ {
    (0..board.a).map(|r| CrossingEdge::vertical(0, r)).filter(|&e| board.contains_edge(e))
}

/// Emits the constraint system of a board. Odd-area boards get a system too
/// (its sum is `None`); callers short-circuit them.
pub fn build_parity_system(board: &BoardSpec) -> ParitySystem {
    let (a, b) = (board.a, board.b);
    let mobius = board.topology == Topology::Mobius;
    let mut variables = Vec::new();
    let mut caps = Vec::new();

    for l in board.horizontal_lines() {
        variables.push(Variable::X(l));
        caps.push((0..b).filter(|&c| board.contains_edge(CrossingEdge::horizontal(l, c))).count());
    }
    for j in 1..b {
        variables.push(Variable::Y(j));
        caps.push(a);
    }
    match board.topology {
        Topology::Cylinder | Topology::Torus => {
            variables.push(Variable::Seam);
            caps.push(seam_edges(board).count());
        }
        Topology::Mobius => {
            for r in 0..a.div_ceil(2) {
                variables.push(Variable::U(r));
                let mirror = board.mobius_mirror(r);
                caps.push(seam_edges(board).filter(|e| e.offset == r || e.offset == mirror).count());
            }
        }
        Topology::Rectangle => {}
    }

    let find = |var: Variable| variables.iter().position(|&v| v == var);
    let horizontal = |l: usize| -> Vec<usize> {
        let l = if board.topology.wraps_rows() { l % a } else { l };
        find(Variable::X(l)).into_iter().collect()
    };
    let u_vars: Vec<usize> = (0..a.div_ceil(2)).filter_map(|r| find(Variable::U(r))).collect();
    let vertical = |j: usize| -> Vec<usize> {
        let j = if board.topology.wraps_columns() { j % b } else { j };
        match (j, board.topology) {
            (0, Topology::Cylinder | Topology::Torus) => find(Variable::Seam).into_iter().collect(),
            (0, Topology::Mobius) => u_vars.clone(),
            _ => find(Variable::Y(j)).into_iter().collect(),
        }
    };

    let mut parity = LinearSystem::new(variables.len());
    for r in 0..a {
        let mut vars = horizontal(r);
        vars.extend(horizontal(r + 1));
        if mobius {
            let mirror = board.mobius_mirror(r);
            if mirror != r {
                vars.extend(find(Variable::U(r.min(mirror))));
            }
        }
        parity.push(vars, b % 2 == 1);
    }
    for c in 0..b {
        let mut vars = vertical(c);
        vars.extend(vertical(c + 1));
        parity.push(vars, a % 2 == 1);
    }
    if mobius && a % 2 == 0 && b % 2 == 0 {
        parity.push(u_vars.clone(), false);
    }

    let coverage = board
        .fault_curves()
        .iter()
        .map(|curve| {
            let vars = match curve.axis {
                LineAxis::Horizontal => curve.lines.iter().filter_map(|&l| find(Variable::X(l))).collect(),
                LineAxis::Vertical => vertical(curve.lines[0]),
            };
            CoverageGroup { vars }
        })
        .collect();

    ParitySystem { board: *board, variables, caps, parity, coverage, sum: board.capacity() }
}

/// Attainable totals of one parity class: `min, min + 2, ..., max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassRange {
    pub min: usize,
    pub max: usize,
}

impl ClassRange {
    pub fn reaches(&self, total: usize) -> bool {
        self.min <= total && total <= self.max && (total - self.min).is_multiple_of(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibilityStatus {
    Complete,
    OddArea,
    /// The parity space exceeded [`MAX_PARITY_CLASSES`]; the verdict then
    /// defaults to feasible, which claims nothing.
    ParitySpaceTooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub board: BoardSpec,
    pub status: FeasibilityStatus,
    /// Fewest dominoes that satisfy parity, coverage and capacity, ignoring
    /// the exact sum. `None` when nothing satisfies them.
    pub min_required: Option<usize>,
    pub capacity: Option<usize>,
    pub feasible: bool,
    pub parity_classes_examined: usize,
    /// One entry per parity class that satisfies coverage and capacity.
    pub reachable: Vec<ClassRange>,
}

impl FeasibilityReport {
    pub fn verdict(&self) -> &'static str {
        if self.feasible {
            "feasible"
        } else {
            "infeasible"
        }
    }

    /// One summary line followed by one line per reachable class.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let min = self.min_required.map_or("none".to_string(), |m| m.to_string());
        let cap = self.capacity.map_or("none (odd area)".to_string(), |c| c.to_string());
        let _ = writeln!(out, "{}: min required {min}, capacity {cap}, {}", self.board, self.verdict());
        let _ = writeln!(out, "parity classes examined: {}", self.parity_classes_examined);
        for (i, class) in self.reachable.iter().enumerate() {
            let _ = writeln!(out, "class {i}: totals {}..={} step 2", class.min, class.max);
        }
        if self.status == FeasibilityStatus::ParitySpaceTooLarge {
            let _ = writeln!(out, "parity space too large; verdict not established");
        }
        out
    }
}

/// Min and max of a class's total, or `None` if the class cannot meet
/// coverage within the caps.
fn class_range(system: &ParitySystem, parities: &BitVec) -> Option<ClassRange> {
    let mut min = 0;
    let mut max = 0;
    for group in &system.coverage {
        let mut group_min = 0;
        let mut group_max = 0;
        let mut can_add_pair = false;
        for &v in &group.vars {
            let p = usize::from(parities.get(v));
            let cap = system.caps[v];
            if p > cap {
                return None;
            }
            let top = cap - (cap - p) % 2;
            group_min += p;
            group_max += top;
            can_add_pair |= top >= p + 2;
        }
        if group_min == 0 {
            if !can_add_pair {
                return None;
            }
            group_min = 2;
        }
        min += group_min;
        max += group_max;
    }
    Some(ClassRange { min, max })
}

/// Full counting analysis of a board.
pub fn counting_feasible(board: &BoardSpec) -> FeasibilityReport {
    let capacity = board.capacity();
    let mut report = FeasibilityReport {
        board: *board,
        status: FeasibilityStatus::Complete,
        min_required: None,
        capacity,
        feasible: false,
        parity_classes_examined: 0,
        reachable: Vec::new(),
    };
    let Some(capacity) = capacity else {
        report.status = FeasibilityStatus::OddArea;
        return report;
    };
    let system = build_parity_system(board);
    let Some(space) = system.parity.solve() else {
        return report;
    };
    if space.dimension() > MAX_PARITY_CLASSES.trailing_zeros() as usize {
        report.status = FeasibilityStatus::ParitySpaceTooLarge;
        report.feasible = true;
        return report;
    }
    for parities in space.iter() {
        report.parity_classes_examined += 1;
        if let Some(range) = class_range(&system, &parities) {
            report.reachable.push(range);
        }
    }
    report.min_required = report.reachable.iter().map(|r| r.min).min();
    report.feasible = report.reachable.iter().any(|r| r.reaches(capacity));
    report
}

/// Fewest dominoes needed to cross every fault curve under the parity and
/// capacity constraints. `None` for odd areas or unsatisfiable systems.
pub fn min_required_tiles(board: &BoardSpec) -> Option<usize> {
    counting_feasible(board).min_required
}

/// Per-line crossing counts of a tiling.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossingProfile {
    /// Horizontal line → vertical dominoes crossing it.
    pub x: BTreeMap<usize, usize>,
    /// Interior vertical line → horizontal dominoes crossing it.
    pub y: BTreeMap<usize, usize>,
    /// Möbius row pair (lower row) → wrapping dominoes.
    pub u: BTreeMap<usize, usize>,
    /// Dominoes crossing the seam.
    pub s: usize,
}

impl CrossingProfile {
    pub fn of(tiling: &Tiling) -> Result<Self, TilingError> {
        let board = &tiling.board;
        let mut p = CrossingProfile::default();
        for l in board.horizontal_lines() {
            p.x.insert(l, 0);
        }
        for j in 1..board.b {
            p.y.insert(j, 0);
        }
        if board.topology == Topology::Mobius {
            for r in 0..board.a.div_ceil(2) {
                p.u.insert(r, 0);
            }
        }
        for &e in &tiling.dominoes {
            if !board.contains_edge(e) {
                return Err(TilingError::ForeignPlacement(e));
            }
            match (e.axis, e.line) {
                (LineAxis::Horizontal, l) => *p.x.entry(l).or_default() += 1,
                (LineAxis::Vertical, 0) => {
                    p.s += 1;
                    if board.topology == Topology::Mobius {
                        let pair = e.offset.min(board.mobius_mirror(e.offset));
                        *p.u.entry(pair).or_default() += 1;
                    }
                }
                (LineAxis::Vertical, j) => *p.y.entry(j).or_default() += 1,
            }
        }
        Ok(p)
    }

    pub fn total(&self) -> usize {
        self.x.values().sum::<usize>() + self.y.values().sum::<usize>() + self.s
    }

    fn value(&self, var: Variable) -> usize {
        match var {
            Variable::X(l) => self.x.get(&l).copied().unwrap_or(0),
            Variable::Y(j) => self.y.get(&j).copied().unwrap_or(0),
            Variable::Seam => self.s,
            Variable::U(r) => self.u.get(&r).copied().unwrap_or(0),
        }
    }
}

/// Lists every constraint of the board's system that `profile` violates,
/// exact sum included.
pub fn profile_violations(system: &ParitySystem, profile: &CrossingProfile) -> Vec<String> {
    let values: Vec<usize> = system.variables.iter().map(|&v| profile.value(v)).collect();
    let mut violations = Vec::new();
    let mut parities = BitVec::zeros(values.len());
    for (i, &v) in values.iter().enumerate() {
        parities.set(i, v % 2 == 1);
        if v > system.caps[i] {
            violations.push(format!("{} = {v} exceeds cap {}", system.variables[i], system.caps[i]));
        }
    }
    for (k, (row, rhs)) in system.parity.equations().iter().enumerate() {
        if row.dot(&parities) != *rhs {
            violations.push(format!("parity equation {k} fails"));
        }
    }
    for group in &system.coverage {
        if group.vars.iter().map(|&i| values[i]).sum::<usize>() == 0 {
            let names: Vec<String> = group.vars.iter().map(|&i| system.variables[i].to_string()).collect();
            violations.push(format!("curve {{{}}} uncrossed", names.join(",")));
        }
    }
    if system.board.topology == Topology::Mobius && profile.s != profile.u.values().sum::<usize>() {
        violations.push("seam total differs from wrap-pair total".to_string());
    }
    let total: usize = values.iter().sum();
    match system.sum {
        Some(sum) if sum == total => {}
        Some(sum) => violations.push(format!("total {total} differs from capacity {sum}")),
        None => violations.push("odd area".to_string()),
    }
    violations
}
