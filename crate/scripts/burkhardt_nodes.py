#!/usr/bin/env python3
"""Generate the Burkhardt quartic's singular points by brute force.

f = x0^4 - x0(x1^3 + x2^3 + x3^3 + x4^3) + 3 x1 x2 x3 x4

Every point (x0:...:x4) with coordinates in {0, ±1, ±w, ±w^2}, w a primitive
cube root of unity, is tested for f = df/dxi = 0 in exact Z[w] arithmetic.
Points are normalised so the first nonzero coordinate is 1. Elements a + b*w
are pairs (a, b) with w^2 = -1 - w.

Usage: python3 scripts/burkhardt_nodes.py > crates/core/fixtures/burkhardt.csv
"""
import itertools


def mul(p, q):
    a, b = p
    c, d = q
    # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2
    return (a * c - b * d, a * d + b * c - b * d)


def add(*xs):
    return (sum(x[0] for x in xs), sum(x[1] for x in xs))


def scale(k, p):
    return (k * p[0], k * p[1])


def power(p, n):
    r = (1, 0)
    for _ in range(n):
        r = mul(r, p)
    return r


def prod(xs):
    r = (1, 0)
    for x in xs:
        r = mul(r, x)
    return r


ZERO = (0, 0)
ONE = (1, 0)
W = (0, 1)
W2 = (-1, -1)
UNITS = [ONE, W, W2, scale(-1, ONE), scale(-1, W), scale(-1, W2)]
VALUES = [ZERO] + UNITS


def f(x):
    x0, x1, x2, x3, x4 = x
    cubes = add(*(power(xi, 3) for xi in (x1, x2, x3, x4)))
    return add(power(x0, 4), scale(-1, mul(x0, cubes)), scale(3, prod([x1, x2, x3, x4])))


def grad(x):
    x0, rest = x[0], x[1:]
    cubes = add(*(power(xi, 3) for xi in rest))
    out = [add(scale(4, power(x0, 3)), scale(-1, cubes))]
    for i, xi in enumerate(rest):
        others = prod([rest[j] for j in range(4) if j != i])
        out.append(add(scale(-3, mul(x0, power(xi, 2))), scale(3, others)))
    return out


def fmt(p):
    a, b = p
    if b == 0:
        return str(a)
    w = {1: "w", -1: "-w"}.get(b, f"{b}*w")
    if a == 0:
        return w
    return f"{a}{w}" if w.startswith("-") else f"{a}+{w}"


def main():
    nodes = []
    for lead in range(5):
        for tail in itertools.product(VALUES, repeat=4 - lead):
            x = [ZERO] * lead + [ONE] + list(tail)
            if f(x) == ZERO and all(g == ZERO for g in grad(x)):
                nodes.append(x)
    print("# field: eisenstein")
    print(f"# Burkhardt quartic singular points ({len(nodes)}), from scripts/burkhardt_nodes.py")
    for x in nodes:
        print(",".join(fmt(c) for c in x))


if __name__ == "__main__":
    main()
