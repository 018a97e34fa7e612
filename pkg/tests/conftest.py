"""Independent oracles shared by the test modules.

Nothing here calls into the library's own algorithms: determinants by
cofactor expansion, Smith invariants from gcds of minors, and signatures
from the characteristic polynomial.
"""

from __future__ import annotations

import sys
from functools import reduce
from itertools import combinations
from math import gcd

import sympy


def cofactor_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def minors_gcd(rows, k):
    m, n = len(rows), len(rows[0]) if rows else 0
    vals = [
        cofactor_det([[rows[i][j] for j in cs] for i in rs])
        for rs in combinations(range(m), k)
        for cs in combinations(range(n), k)
    ]
    return reduce(gcd, (abs(v) for v in vals), 0)


def smith_invariants(rows):
    """Invariant factors d_k = D_k / D_{k-1} with D_k the gcd of k x k minors."""
    m, n = len(rows), len(rows[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        dk = minors_gcd(rows, k)
        if dk == 0:
            out += [0] * (min(m, n) - k + 1)
            break
        out.append(dk // prev)
        prev = dk
    return out


def charpoly_inertia(rows):
    """(positive, negative) eigenvalue counts of a real symmetric matrix.

    All roots are real, so Descartes' sign rule on p(x) and p(-x) is exact
    once the zero roots are divided out.
    """
    x = sympy.symbols("x")
    p = sympy.Poly(sympy.Matrix(rows).charpoly(x).as_expr(), x)
    coeffs = p.all_coeffs()
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()

    def changes(cs):
        signs = [c > 0 for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    deg = len(coeffs) - 1
    neg_coeffs = [c * (-1) ** (deg - i) for i, c in enumerate(coeffs)]
    return changes(coeffs), changes(neg_coeffs)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
