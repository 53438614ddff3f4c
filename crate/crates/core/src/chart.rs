//! X/O charts of tileability, one row per height.

use crate::classify::classify;
use crate::par::{map_with, Strategy};
use crate::topology::{BoardSpec, Topology};

pub const MAX_CHART_SIDE: usize = 64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("chart side must be between 1 and {MAX_CHART_SIDE}, got {0}")]
    Size(usize),
    #[error("malformed chart: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub topology: Topology,
    pub max_a: usize,
    pub max_b: usize,
    /// `cells[a - 1][b - 1]` is true when the a×b board is fault-free tileable.
    cells: Vec<Vec<bool>>,
}

impl Chart {
    pub fn census(topology: Topology, max_a: usize, max_b: usize) -> Result<Chart, ChartError> {
        Self::census_with(Strategy::default(), topology, max_a, max_b)
    }

    pub fn census_with(
        strategy: Strategy,
        topology: Topology,
        max_a: usize,
        max_b: usize,
    ) -> Result<Chart, ChartError> {
        for side in [max_a, max_b] {
            if side == 0 || side > MAX_CHART_SIDE {
                return Err(ChartError::Size(side));
            }
        }
        let boards = boards(topology, max_a, max_b);
        let marks = map_with(strategy, &boards, |board| classify(board).tileable);
        let cells = marks.chunks(max_b).map(<[bool]>::to_vec).collect();
        Ok(Chart { topology, max_a, max_b, cells })
    }

    pub fn get(&self, a: usize, b: usize) -> Option<bool> {
        self.cells.get(a.checked_sub(1)?)?.get(b.checked_sub(1)?).copied()
    }

    /// Tileable boards, row by row.
    pub fn tileable_boards(&self) -> Vec<BoardSpec> {
        boards(self.topology, self.max_a, self.max_b).into_iter().filter(|b| self.get(b.a, b.b) == Some(true)).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.topology.name(), self.max_a, self.max_b);
        for row in &self.cells {
            for &x in row {
                out.push(if x { 'X' } else { 'O' });
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Chart, ChartError> {
        let bad = |m: &str| ChartError::Parse(m.to_string());
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [topology, max_a, max_b] = fields[..] else {
            return Err(bad("header must be '<topology> <max_a> <max_b>'"));
        };
        let topology: Topology = topology.parse().map_err(|_| bad("unknown topology"))?;
        let max_a: usize = max_a.parse().map_err(|_| bad("bad max_a"))?;
        let max_b: usize = max_b.parse().map_err(|_| bad("bad max_b"))?;
        let mut cells = Vec::with_capacity(max_a);
        for line in lines {
            let row: Vec<bool> = line
                .chars()
                .map(|c| match c {
                    'X' => Ok(true),
                    'O' => Ok(false),
                    _ => Err(bad("cells must be X or O")),
                })
                .collect::<Result<_, _>>()?;
            if row.len() != max_b {
                return Err(bad("row length differs from max_b"));
            }
            cells.push(row);
        }
        if cells.len() != max_a {
            return Err(bad("row count differs from max_a"));
        }
        Ok(Chart { topology, max_a, max_b, cells })
    }
}

/// Boards in row-major order, a then b.
pub fn boards(topology: Topology, max_a: usize, max_b: usize) -> Vec<BoardSpec> {
    (1..=max_a).flat_map(|a| (1..=max_b).map(move |b| BoardSpec { topology, a, b })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        let cyl = Chart::census(Topology::Cylinder, 20, 20).unwrap();
        for b in 1..=20 {
            assert_eq!(cyl.get(4, b), Some(b >= 6 && b % 2 == 0), "cylinder 4×{b}");
        }
        let tor = Chart::census(Topology::Torus, 20, 20).unwrap();
        assert_eq!(tor.get(8, 5), Some(false));
        assert_eq!(tor.get(10, 5), Some(true));
        let mob = Chart::census(Topology::Mobius, 20, 20).unwrap();
        assert_eq!(mob.get(6, 4), Some(false));
        assert_eq!(mob.get(6, 6), Some(true));
        assert_eq!(mob.get(8, 4), Some(true));
    }

    #[test]
    fn torus_chart_is_symmetric() {
        let tor = Chart::census(Topology::Torus, 20, 20).unwrap();
        for a in 1..=20 {
            for b in 1..=20 {
                assert_eq!(tor.get(a, b), tor.get(b, a));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let chart = Chart::census(Topology::Mobius, 9, 7).unwrap();
        let text = chart.to_text();
        assert!(text.starts_with("mobius 9 7\n"));
        assert_eq!(Chart::parse(&text).unwrap(), chart);
    }

    #[test]
    fn strategies_agree() {
        let seq = Chart::census_with(Strategy::Sequential, Topology::Cylinder, 30, 30).unwrap();
        assert_eq!(Chart::census(Topology::Cylinder, 30, 30).unwrap(), seq);
    }

    #[test]
    fn size_guard() {
        assert_eq!(Chart::census(Topology::Torus, 65, 3), Err(ChartError::Size(65)));
        assert_eq!(Chart::census(Topology::Torus, 0, 3), Err(ChartError::Size(0)));
    }
}
