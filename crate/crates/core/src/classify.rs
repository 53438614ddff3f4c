//! Closed-form classification of fault-free tileability.
//!
//! Each surface has a list of impossible families and a list of tileable
//! families; a tileable family is a base board grown by even steps in either
//! dimension. Rules are tried in order: odd area, degenerate boards, the
//! impossible families, then the tileable ones, where the base needing the
//! fewest expansions wins. Tori are matched with the longer side first.

use std::fmt;

use crate::topology::{BoardSpec, Topology};

/// Admissible values for one side of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Exact(usize),
    /// `k + n`
    AtLeast(usize),
    /// `k + 2n`
    Step(usize),
    Odd,
    /// `2n`, n ≥ 1
    Even,
    /// `lo..=hi`
    Range(usize, usize),
}

impl Dim {
    pub fn matches(self, v: usize) -> bool {
        match self {
            Dim::Exact(k) => v == k,
            Dim::AtLeast(k) => v >= k,
            Dim::Step(k) => v >= k && (v - k).is_multiple_of(2),
            Dim::Odd => v % 2 == 1,
            Dim::Even => v >= 2 && v.is_multiple_of(2),
            Dim::Range(lo, hi) => (lo..=hi).contains(&v),
        }
    }

    fn label(self, var: char) -> String {
        match self {
            Dim::Exact(k) => k.to_string(),
            Dim::AtLeast(k) => format!("({k}+{var})"),
            Dim::Step(k) => format!("({k}+2{var})"),
            Dim::Odd => "odd".to_string(),
            Dim::Even => format!("(2{var})"),
            Dim::Range(lo, hi) => format!("[{lo}..{hi}]"),
        }
    }

    /// Lower end of the family in this dimension.
    fn base(self) -> Option<usize> {
        match self {
            Dim::Exact(k) | Dim::Step(k) => Some(k),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Family {
    pub id: &'static str,
    pub topology: Topology,
    pub rows: Dim,
    pub cols: Dim,
    pub tileable: bool,
}

impl Family {
    const fn new(id: &'static str, topology: Topology, rows: Dim, cols: Dim, tileable: bool) -> Self {
        Family { id, topology, rows, cols, tileable }
    }

    pub fn matches(&self, a: usize, b: usize) -> bool {
        self.rows.matches(a) && self.cols.matches(b)
    }

    /// The base board a tileable family grows from.
    pub fn base(&self) -> Option<(usize, usize)> {
        if !self.tileable {
            return None;
        }
        Some((self.rows.base()?, self.cols.base()?))
    }

    pub fn label(&self) -> String {
        let (ma, mb) = self.topology.dimension_marks();
        format!("{}{}×{}{}", self.rows.label('n'), ma, self.cols.label('m'), mb)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.id, self.label())
    }
}

use Dim::*;
use Topology::*;

const RECTANGLE: &[Family] = &[
    Family::new("rect-odd", Rectangle, Odd, Odd, false),
    Family::new("rect-short", Rectangle, Range(1, 4), AtLeast(1), false),
    Family::new("rect-narrow", Rectangle, AtLeast(1), Range(1, 4), false),
    Family::new("rect-6x6", Rectangle, Exact(6), Exact(6), false),
    Family::new("rect-a", Rectangle, Step(5), Step(6), true),
    Family::new("rect-b", Rectangle, Step(6), Step(5), true),
    Family::new("rect-c", Rectangle, Exact(6), Step(8), true),
    Family::new("rect-d", Rectangle, Step(8), Step(6), true),
];

const CYLINDER: &[Family] = &[
    Family::new("cyl-odd", Cylinder, Odd, Odd, false),
    Family::new("cyl-even-1", Cylinder, Even, Exact(1), false),
    Family::new("cyl-1-even", Cylinder, Exact(1), Even, false),
    Family::new("cyl-n-2", Cylinder, AtLeast(2), Exact(2), false),
    Family::new("cyl-2-n", Cylinder, Exact(2), AtLeast(2), false),
    Family::new("cyl-n-3", Cylinder, Step(4), Exact(3), false),
    Family::new("cyl-3-n", Cylinder, Exact(3), Step(4), false),
    Family::new("cyl-n-4", Cylinder, AtLeast(4), Exact(4), false),
    Family::new("cyl-4-n", Cylinder, Exact(4), Step(5), false),
    Family::new("cyl-6x5", Cylinder, Exact(6), Exact(5), false),
    Family::new("cyl-5x6", Cylinder, Exact(5), Exact(6), false),
    Family::new("cyl-a", Cylinder, Step(4), Step(6), true),
    Family::new("cyl-b", Cylinder, Step(7), Step(6), true),
    Family::new("cyl-c", Cylinder, Step(6), Step(7), true),
    Family::new("cyl-d", Cylinder, Step(8), Step(5), true),
    Family::new("cyl-e", Cylinder, Step(5), Step(8), true),
];

const TORUS: &[Family] = &[
    Family::new("tor-odd", Torus, Odd, Odd, false),
    Family::new("tor-even-1", Torus, Even, Exact(1), false),
    Family::new("tor-n-2", Torus, AtLeast(2), Exact(2), false),
    Family::new("tor-n-3", Torus, Step(4), Exact(3), false),
    Family::new("tor-n-4", Torus, Step(5), Exact(4), false),
    Family::new("tor-6x5", Torus, Exact(6), Exact(5), false),
    Family::new("tor-8x5", Torus, Exact(8), Exact(5), false),
    Family::new("tor-7x6", Torus, Exact(7), Exact(6), false),
    Family::new("tor-a", Torus, Step(4), Step(4), true),
    Family::new("tor-b", Torus, Step(8), Step(7), true),
    Family::new("tor-c", Torus, Step(9), Step(6), true),
    Family::new("tor-d", Torus, Step(10), Step(5), true),
];

const MOBIUS: &[Family] = &[
    Family::new("mob-odd", Mobius, Odd, Odd, false),
    Family::new("mob-even-1", Mobius, Even, Exact(1), false),
    Family::new("mob-odd-2", Mobius, Step(1), Exact(2), false),
    Family::new("mob-even-2", Mobius, Even, Exact(2), false),
    Family::new("mob-1-even", Mobius, Exact(1), Even, false),
    Family::new("mob-2-n", Mobius, Exact(2), AtLeast(2), false),
    Family::new("mob-3-odd", Mobius, Exact(3), Step(3), false),
    // Closes the gap left by 3″×(3+2n), which only covers odd widths;
    // exhaustive search and the counting argument both rule these out.
    Family::new("mob-3-even", Mobius, Exact(3), Step(4), false),
    Family::new("mob-4-n", Mobius, Exact(4), Step(4), false),
    Family::new("mob-6x4", Mobius, Exact(6), Exact(4), false),
    Family::new("mob-a", Mobius, Step(4), Step(3), true),
    Family::new("mob-b", Mobius, Step(5), Step(4), true),
    Family::new("mob-c", Mobius, Step(4), Step(5), true),
    Family::new("mob-d", Mobius, Step(6), Step(6), true),
    Family::new("mob-e", Mobius, Step(8), Step(4), true),
];

/// Every family of a surface in rule order (impossible before tileable).
pub fn families(topology: Topology) -> &'static [Family] {
    match topology {
        Topology::Rectangle => RECTANGLE,
        Topology::Cylinder => CYLINDER,
        Topology::Torus => TORUS,
        Topology::Mobius => MOBIUS,
    }
}

/// The board the rules are matched against: tori put the longer side first.
pub fn canonical(board: &BoardSpec) -> BoardSpec {
    match board.topology {
        Topology::Torus if board.a < board.b => BoardSpec { a: board.b, b: board.a, ..*board },
        _ => *board,
    }
}

/// All families matching a board after canonicalisation.
pub fn matching_families(board: &BoardSpec) -> Vec<&'static Family> {
    let c = canonical(board);
    families(board.topology).iter().filter(|f| f.matches(c.a, c.b)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    OddArea,
    /// The 1×2 and 2×1 rectangles: a single domino crosses the only fold.
    Degenerate,
    RuleFamily,
    /// Base board grown by `2n` rows and `2m` columns (canonical orientation).
    BaseExpansion {
        base: (usize, usize),
        n: usize,
        m: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub board: BoardSpec,
    /// Orientation the rules were matched in.
    pub canonical: BoardSpec,
    pub tileable: bool,
    pub reason: Reason,
    pub family: Option<&'static Family>,
}

impl Verdict {
    pub fn text(&self) -> &'static str {
        if self.tileable {
            "fault-free tileable"
        } else {
            "not fault-free tileable"
        }
    }

    pub fn family_id(&self) -> &'static str {
        self.family.map_or("-", |f| f.id)
    }

    pub fn describe(&self) -> String {
        let family = self.family.map_or_else(|| "-".to_string(), |f| f.to_string());
        let reason = match self.reason {
            Reason::OddArea => "odd area".to_string(),
            Reason::Degenerate => "single domino".to_string(),
            Reason::RuleFamily => "impossible family".to_string(),
            Reason::BaseExpansion { base: (a, b), n: 0, m: 0 } => format!("base case {a}×{b}"),
            Reason::BaseExpansion { base: (a, b), n, m } => {
                format!("base {a}×{b} expanded by {} rows and {} columns", 2 * n, 2 * m)
            }
        };
        format!("{}: {} [family {family}; {reason}]", self.board, self.text())
    }
}

pub fn classify(board: &BoardSpec) -> Verdict {
    let canonical = canonical(board);
    let (a, b) = (canonical.a, canonical.b);
    let verdict = |tileable, reason, family| Verdict { board: *board, canonical, tileable, reason, family };
    let list = families(board.topology);
    if board.area() % 2 == 1 {
        return verdict(false, Reason::OddArea, list.iter().find(|f| f.rows == Odd));
    }
    if board.topology == Topology::Rectangle && board.area() == 2 {
        return verdict(true, Reason::Degenerate, None);
    }
    if let Some(family) = list.iter().find(|f| !f.tileable && f.matches(a, b)) {
        return verdict(false, Reason::RuleFamily, Some(family));
    }
    // Nearest base wins: fewest expansion steps, then list order.
    let (family, (ba, bb)) = list
        .iter()
        .filter(|f| f.matches(a, b))
        .filter_map(|f| f.base().map(|base| (f, base)))
        .min_by_key(|(_, (ba, bb))| (a - ba) + (b - bb))
        .expect("families cover every even-area board");
    verdict(true, Reason::BaseExpansion { base: (ba, bb), n: (a - ba) / 2, m: (b - bb) / 2 }, Some(family))
}

/// Base boards of a surface's tileable families, in list order.
pub fn base_boards(topology: Topology) -> Vec<BoardSpec> {
    families(topology).iter().filter_map(Family::base).map(|(a, b)| BoardSpec { topology, a, b }).collect()
}
