//! Text and SVG pictures of a tiling.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::tiling::Tiling;
use crate::topology::{CrossingEdge, LineAxis, Topology};

/// Box-drawing outline on a (2a+1)×(4b+1) character canvas. A segment is
/// drawn unless a domino crosses it, so wrapping dominoes leave the board
/// edge open on both sides.
pub fn ascii(tiling: &Tiling) -> String {
    let board = tiling.board;
    let (a, b) = (board.a, board.b);
    let joined: HashSet<CrossingEdge> = tiling.dominoes.iter().copied().collect();

    // hseg[l][c]: segment above row l in column c, l in 0..=a.
    let hseg = |l: usize, c: usize| -> bool {
        let line = if l == a { 0 } else { l };
        if line == 0 && board.topology != Topology::Torus {
            return true;
        }
        !joined.contains(&CrossingEdge::horizontal(line, c))
    };
    // vseg[j][r]: segment left of column j in row r, j in 0..=b.
    let vseg = |j: usize, r: usize| -> bool {
        if j > 0 && j < b {
            return !joined.contains(&CrossingEdge::vertical(j, r));
        }
        match board.topology {
            Topology::Rectangle => true,
            Topology::Cylinder | Topology::Torus => !joined.contains(&CrossingEdge::vertical(0, r)),
            Topology::Mobius => {
                // The right edge of row r is glued to the left edge of row a-1-r.
                let seam_row = if j == b { r } else { board.mobius_mirror(r) };
                let edge = CrossingEdge::vertical(0, seam_row);
                let mirrored = CrossingEdge::vertical(0, board.mobius_mirror(seam_row));
                !(joined.contains(&edge) || (b == 1 && joined.contains(&mirrored)))
            }
        }
    };

    let mut out = String::with_capacity((2 * a + 1) * (4 * b + 2) * 3);
    for y in 0..=2 * a {
        for x in 0..=4 * b {
            let ch = match (y % 2, x % 4) {
                (0, 0) => {
                    let (l, j) = (y / 2, x / 4);
                    let up = l > 0 && vseg(j, l - 1);
                    let down = l < a && vseg(j, l);
                    let left = j > 0 && hseg(l, j - 1);
                    let right = j < b && hseg(l, j);
                    junction(up, down, left, right)
                }
                (0, _) => {
                    if hseg(y / 2, x / 4) {
                        '─'
                    } else {
                        ' '
                    }
                }
                (_, 0) if vseg(x / 4, y / 2) => '│',
                _ => ' ',
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

fn junction(up: bool, down: bool, left: bool, right: bool) -> char {
    const TABLE: [char; 16] = [' ', '╵', '╷', '│', '╴', '┘', '┐', '┤', '╶', '└', '┌', '├', '─', '┴', '┬', '┼'];
    TABLE[usize::from(up) | usize::from(down) << 1 | usize::from(left) << 2 | usize::from(right) << 3]
}

const CELL: usize = 32;
const MARGIN: usize = 16;
const FILLS: [&str; 6] = ["#8ecae6", "#ffb703", "#90be6d", "#f28482", "#cdb4db", "#f6bd60"];

/// SVG with one rectangle per domino; wrapping dominoes are drawn at both
/// ends and share a gradient. Fault-line positions are dashed.
pub fn svg(tiling: &Tiling) -> String {
    let board = tiling.board;
    let (w, h) = (board.b * CELL + 2 * MARGIN, board.a * CELL + 2 * MARGIN);
    let mut defs = String::new();
    let mut body = String::new();
    for (i, &edge) in tiling.dominoes.iter().enumerate() {
        let Some([p, q]) = board.endpoints(edge) else { continue };
        let fill = FILLS[i % FILLS.len()];
        if board.is_wrap(edge) {
            let (x2, y2) = match edge.axis {
                LineAxis::Horizontal => (0, 1),
                LineAxis::Vertical => (1, 0),
            };
            let _ = writeln!(
                defs,
                r##"<linearGradient id="wrap-{i}" x1="0" y1="0" x2="{x2}" y2="{y2}"><stop offset="0" stop-color="{fill}"/><stop offset="1" stop-color="#ffffff"/></linearGradient>"##
            );
            for cell in [p, q] {
                let _ = writeln!(
                    body,
                    r#"<rect class="tile wrap" data-edge="{}" x="{}" y="{}" width="{CELL}" height="{CELL}" fill="url(#wrap-{i})"/>"#,
                    edge_label(edge),
                    MARGIN + cell.c * CELL,
                    MARGIN + cell.r * CELL,
                );
            }
        } else {
            let (r, c) = (p.r.min(q.r), p.c.min(q.c));
            let (rw, rh) = match edge.axis {
                LineAxis::Horizontal => (CELL, 2 * CELL),
                LineAxis::Vertical => (2 * CELL, CELL),
            };
            let _ = writeln!(
                body,
                r#"<rect class="tile" data-edge="{}" x="{}" y="{}" width="{rw}" height="{rh}" fill="{fill}"/>"#,
                edge_label(edge),
                MARGIN + c * CELL,
                MARGIN + r * CELL,
            );
        }
    }
    let mut guides = String::new();
    for l in board.horizontal_lines() {
        let ys: Vec<usize> = if l == 0 { vec![0, board.a] } else { vec![l] };
        for y in ys {
            let y = MARGIN + y * CELL;
            let _ = writeln!(guides, r#"<line class="fault" x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}"/>"#, w - MARGIN);
        }
    }
    for j in board.vertical_lines() {
        let xs: Vec<usize> = if j == 0 { vec![0, board.b] } else { vec![j] };
        for x in xs {
            let x = MARGIN + x * CELL;
            let _ = writeln!(guides, r#"<line class="fault" x1="{x}" y1="{MARGIN}" x2="{x}" y2="{}"/>"#, h - MARGIN);
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, "<title>{board}</title>");
    out.push_str(
        "<style>.tile{stroke:#222;stroke-width:2}.fault{stroke:#c00;stroke-width:1;stroke-dasharray:4 3}</style>\n",
    );
    let _ = writeln!(out, "<defs>\n{defs}</defs>");
    out.push_str(&body);
    out.push_str(&guides);
    out.push_str("</svg>\n");
    out
}

fn edge_label(edge: CrossingEdge) -> String {
    format!("{}{}:{}", edge.axis.code(), edge.line, edge.offset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{find_fault_free, SearchBudget};
    use crate::topology::BoardSpec;

    fn witness(t: Topology, a: usize, b: usize) -> Tiling {
        let board = BoardSpec::new(t, a, b).unwrap();
        find_fault_free(&board, SearchBudget::unlimited()).witness.unwrap()
    }

    #[test]
    fn rectangle_has_no_unbroken_fold() {
        let t = witness(Topology::Rectangle, 5, 6);
        let text = ascii(&t);
        let rows: Vec<Vec<char>> = text.lines().map(|l| l.chars().collect()).collect();
        assert_eq!(rows.len(), 11);
        for l in 1..5 {
            let row = &rows[2 * l];
            assert!((0..6).any(|c| row[4 * c + 2] == ' '), "row line {l} unbroken");
        }
        for j in 1..6 {
            assert!((0..5).any(|r| rows[2 * r + 1][4 * j] == ' '), "column line {j} unbroken");
        }
    }

    #[test]
    fn single_domino_outline() {
        let board = BoardSpec::new(Topology::Rectangle, 1, 2).unwrap();
        let t = Tiling::new(board, vec![CrossingEdge::vertical(1, 0)]);
        assert_eq!(ascii(&t), "┌───────┐\n│       │\n└───────┘\n");
    }

    #[test]
    fn cylinder_wrap_tile_drawn_twice() {
        let board = BoardSpec::new(Topology::Cylinder, 1, 2).unwrap();
        let t = Tiling::new(board, vec![CrossingEdge::vertical(0, 0)]);
        let pic = svg(&t);
        assert_eq!(pic.matches(r#"fill="url(#wrap-0)""#).count(), 2);
        assert_eq!(pic.matches("<linearGradient").count(), 1);
        assert!(pic.contains(r#"x="16""#) && pic.contains(r#"x="48""#));
        assert_eq!(ascii(&t), "╶───┬───╴\n    │    \n╶───┴───╴\n");
    }

    #[test]
    fn fault_guides_cover_every_line() {
        let t = witness(Topology::Torus, 4, 4);
        let pic = svg(&t);
        // 4 horizontal and 4 vertical lines, glued ones drawn at both edges.
        assert_eq!(pic.matches(r#"class="fault""#).count(), 10);
    }
}
