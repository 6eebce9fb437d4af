#!/usr/bin/env python3
"""Generate the small rational node fixtures.

cayley_bacharach9.csv: the nine points l_i ∩ m_j in the plane x0 = x1 = 0,
where l_1..l_3 and m_1..m_3 are random lines. They are the complete
intersection of the cubics l1*l2*l3 and m1*m2*m3.

general5.csv: five random rational points of P^4.

Usage: python3 scripts/plane_fixtures.py crates/core/fixtures
"""
import random
import sys
from fractions import Fraction
from pathlib import Path


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def random_line(rng):
    while True:
        line = tuple(rng.randint(-9, 9) for _ in range(3))
        if any(line):
            return line


def main(out):
    rng = random.Random(20240517)
    lines = [random_line(rng) for _ in range(6)]
    points = [cross(l, m) for l in lines[:3] for m in lines[3:]]
    assert all(any(p) for p in points)
    with open(out / "cayley_bacharach9.csv", "w") as fh:
        fh.write("# field: rational\n")
        fh.write("# nine points l_i ∩ m_j in the plane x0 = x1 = 0, from scripts/plane_fixtures.py\n")
        for p in points:
            fh.write(",".join(["0", "0"] + [str(c) for c in p]) + "\n")
    with open(out / "general5.csv", "w") as fh:
        fh.write("# field: rational\n")
        fh.write("# five random points of P^4, from scripts/plane_fixtures.py\n")
        for _ in range(5):
            coords = [Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(5)]
            fh.write(",".join(str(c) for c in coords) + "\n")


if __name__ == "__main__":
    main(Path(sys.argv[1]))
