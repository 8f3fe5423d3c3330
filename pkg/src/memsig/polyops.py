"""Small dense polynomial kernels shared by the integration oracles and the
fast membrane algorithm.

Univariate polynomials are coefficient lists [c0, c1, ...]; bivariate
polynomials are coefficient tables T[p][q] for u^p v^q.  Everything is exact
rational arithmetic; no simplification or trailing-zero trimming is attempted.
"""

from __future__ import annotations

from .rational import ONE, ZERO


def padd(p: list, q: list) -> list:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return out


def pscale(p: list, c) -> list:
    return [c * x for x in p]


def pmul(p: list, q: list) -> list:
    out = [ZERO] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return out


def pint(p: list) -> list:
    """Antiderivative with zero constant term."""
    return [ZERO] + [c / (i + 1) for i, c in enumerate(p)]


def peval(p: list, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def powers(x, top: int) -> list:
    """[x^0, x^1, ..., x^top]."""
    out = [ONE]
    for _ in range(top):
        out.append(out[-1] * x)
    return out


def teval(table: list[list], u, v):
    """Evaluate a bivariate coefficient table at (u, v)."""
    acc = ZERO
    for row in reversed(table):
        acc = acc * u + peval(row, v)
    return acc
