#!/usr/bin/env python3
"""Writes the X/O golden charts from the family rules, independently of the Rust tables.

usage: golden_charts.py OUT_DIR [MAX]
"""
import sys
from pathlib import Path


def step(k):
    return lambda v: v >= k and (v - k) % 2 == 0


def exact(k):
    return lambda v: v == k


def at_least(k):
    return lambda v: v >= k


odd = lambda v: v % 2 == 1
even = lambda v: v % 2 == 0
anything = lambda v: True
upto4 = lambda v: v <= 4

TILEABLE = {
    "rectangle": [(step(5), step(6)), (step(6), step(5)), (exact(6), step(8)), (step(8), step(6))],
    "cylinder": [(step(4), step(6)), (step(7), step(6)), (step(6), step(7)), (step(8), step(5)), (step(5), step(8))],
    "torus": [(step(4), step(4)), (step(8), step(7)), (step(9), step(6)), (step(10), step(5))],
    "mobius": [(step(4), step(3)), (step(5), step(4)), (step(4), step(5)), (step(6), step(6)), (step(8), step(4))],
}

IMPOSSIBLE = {
    "rectangle": [(upto4, anything), (anything, upto4), (exact(6), exact(6))],
    "cylinder": [
        (even, exact(1)), (exact(1), even), (at_least(2), exact(2)), (exact(2), at_least(2)),
        (step(4), exact(3)), (exact(3), step(4)), (at_least(4), exact(4)), (exact(4), step(5)),
        (exact(6), exact(5)), (exact(5), exact(6)),
    ],
    "torus": [
        (even, exact(1)), (at_least(2), exact(2)), (step(4), exact(3)), (step(5), exact(4)),
        (exact(6), exact(5)), (exact(8), exact(5)), (exact(7), exact(6)),
    ],
    "mobius": [
        (even, exact(1)), (odd, exact(2)), (even, exact(2)), (exact(1), even), (exact(2), at_least(2)),
        (exact(3), step(4)), (exact(4), step(4)), (exact(6), exact(4)),
    ],
}


def tileable(topology, a, b):
    if a * b % 2:
        return False
    if topology == "rectangle" and a * b == 2:
        return True
    if topology == "torus" and a < b:
        a, b = b, a
    hits = lambda rules: any(r(a) and c(b) for r, c in rules)
    if hits(IMPOSSIBLE[topology]):
        assert not hits(TILEABLE[topology]), (topology, a, b)
        return False
    assert hits(TILEABLE[topology]), (topology, a, b)
    return True


def chart(topology, n):
    lines = [f"{topology} {n} {n}"]
    for a in range(1, n + 1):
        lines.append("".join("X" if tileable(topology, a, b) else "O" for b in range(1, n + 1)))
    return "\n".join(lines) + "\n"


def main():
    out = Path(sys.argv[1])
    n = int(sys.argv[2]) if len(sys.argv) > 2 else 20
    out.mkdir(parents=True, exist_ok=True)
    for topology in TILEABLE:
        (out / f"{topology}_{n}.txt").write_text(chart(topology, n))


if __name__ == "__main__":
    main()
