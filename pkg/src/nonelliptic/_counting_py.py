"""Pure-Python point-counting kernels (fallback when the compiled extension
is unavailable). Same algorithms as _counting_fast.pyx, just slower."""

from __future__ import annotations

BACKEND = "pure"


def count_affine(p, a1, a2, a3, a4, a6):
    """Number of affine solutions of y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6
    over F_p, by direct (x, y) enumeration."""
    n = 0
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        c = (a1 * x + a3) % p
        for y in range(p):
            if (y * y + c * y) % p == rhs:
                n += 1
    return n


def trace_set_range(p, cap, a1_lo, a1_hi):
    """Traces p + 1 - #E attained by nonsingular Weierstrass tuples with
    a1 in [a1_lo, a1_hi) and the other coefficients in [0, cap).

    The y-census is hoisted into a table ytab[c][v] = #{y : y^2 + c*y = v},
    itself built by exhaustive enumeration; per curve the count is then a
    sum of table rows over x, which regroups the full (x, y) census without
    changing what is counted.
    """
    ytab = [[0] * p for _ in range(p)]
    for c in range(p):
        row = ytab[c]
        for y in range(p):
            row[(y * y + c * y) % p] += 1

    cube = [x * x * x % p for x in range(p)]
    square = [x * x % p for x in range(p)]
    rng = range(min(cap, p))
    traces = set()

    for a1 in range(a1_lo, a1_hi):
        a1sq = a1 * a1
        for a2 in rng:
            b2 = (a1sq + 4 * a2) % p
            for a3 in rng:
                a1a3 = a1 * a3
                a3sq = a3 * a3
                crow = [ytab[(a1 * x + a3) % p] for x in range(p)]
                for a4 in rng:
                    b4 = (2 * a4 + a1a3) % p
                    mid = [(cube[x] + a2 * square[x] + a4 * x) % p for x in range(p)]
                    for a6 in rng:
                        b6 = (a3sq + 4 * a6) % p
                        b8 = (
                            a1sq * a6
                            + 4 * a2 * a6
                            - a1a3 * a4
                            + a2 * a3sq
                            - a4 * a4
                        ) % p
                        disc = (
                            -b2 * b2 * b8
                            - 8 * b4 * b4 * b4
                            - 27 * b6 * b6
                            + 9 * b2 * b4 * b6
                        ) % p
                        if disc == 0:
                            continue
                        n = 0
                        for x in range(p):
                            n += crow[x][(mid[x] + a6) % p]
                        traces.add(p - n)  # p + 1 - (n + 1)
    return traces
