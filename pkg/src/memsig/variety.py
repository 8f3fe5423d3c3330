"""Exact diagnostics for signature-matrix (and level-3 tensor) varieties.

The congruence orbit {A C A^T : A in C^(d x mn)} of a core matrix C has a
Zariski closure whose dimension equals the generic rank of the derivative of
the orbit map; sampling the base point with random integers keeps the rank
computation exact, and the rank-deficient locus is a proper subvariety, so a
handful of trials suffices (max rank over trials is reported).  The same
derivative-rank computation runs at level 3 with the Tucker cube map.

Congruence invariants of the core matrices come from the Jordan structure of
the cosquare M^{-T} M: blocks J_k((-1)^{k+1}) correspond to single blocks
Gamma_k, and the remaining blocks at +-1 pair up into H_{2k}(mu).  Only the
+-1-cosquare case is implemented; that is the case the dictionary cores live
in.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb, lcm

from .linalg import (
    CongruenceInvariants,
    GammaBlock,
    HBlock,
    Matrix,
    cosquare,
    det,
    pfaffian,
    pm1_jordan_structure,
    rank,
    rank_int_rows,
    sym_skew_split,
)
from .membranes import core_matrix, core_tensor
from .rational import ONE, Rat, rat
from .tensor import SigTensor, mode_apply


# --------------------------------------------------------------------------
# rank profiles and congruence invariants


def core_rank_profile(core: Matrix) -> tuple[int, int]:
    """(rank of symmetric part, rank of skew part) of a square matrix."""
    sym, skew = sym_skew_split(core)
    return rank(sym), rank(skew)


def congruence_invariants(m: Matrix) -> CongruenceInvariants:
    """Canonical congruence block multiset of a nonsingular matrix.

    Requires the cosquare spectrum to be contained in {+1, -1}.  Jordan blocks
    J_k(+1) with k odd and J_k(-1) with k even become Gamma_k; the remaining
    blocks (J_k(-1) with k odd, J_k(+1) with k even) must pair up and become
    H_{2k}(-1) resp. H_{2k}(+1).
    """
    if not m.is_square:
        raise ValueError("congruence invariants need a square matrix")
    if det(m) == 0:
        raise ValueError("congruence invariants need a nonsingular matrix")
    jordan = pm1_jordan_structure(cosquare(m))
    blocks: list = []
    for (mu, k), cnt in sorted(jordan.items()):
        if (mu == 1) == (k % 2 == 1):
            blocks.extend([GammaBlock(k)] * cnt)
        else:
            if cnt % 2:
                raise ValueError(
                    f"J_{k}({mu:+d}) occurs {cnt} times but must pair into H-blocks"
                )
            blocks.extend([HBlock(k, mu)] * (cnt // 2))
    return CongruenceInvariants(tuple(blocks))


def congruent_check(m: Matrix, n: Matrix) -> bool:
    """Congruence test via equality of canonical invariants."""
    if m.rows != n.rows:
        return False
    return congruence_invariants(m) == congruence_invariants(n)


def axis_core_det_check(m: int, n: int) -> bool:
    """det of the axis core matrix equals 4^(-mn)."""
    return det(core_matrix("axis", m, n)) == rat(1, 4 ** (m * n))


# --------------------------------------------------------------------------
# dimension via generic Jacobian rank


@dataclass(frozen=True)
class DimReport:
    d: int
    m: int
    n: int
    level: int
    measured_dim: int
    formula_dim: int | None
    ambient: int
    trials: int

    @property
    def agree(self) -> bool | None:
        if self.formula_dim is None:
            return None
        return self.formula_dim == self.measured_dim


def random_integer_matrix(rows: int, cols: int, rng: random.Random, bound: int = 1000) -> Matrix:
    return Matrix(
        rows, cols, tuple(rng.randint(-bound, bound) for _ in range(rows * cols))
    )


def tucker_jacobian_rank(core: SigTensor, base: Matrix) -> int:
    """Exact rank of the derivative of A -> [[core; A, ..., A]] at ``base``.

    The derivative sends E to the sum over slots r of the Tucker product with
    E in slot r and the base point elsewhere; it is materialized as a
    (d * p) x d^k integer matrix after clearing the core's denominators.
    """
    k, p, d = core.level, core.dim, base.rows
    if base.cols != p:
        raise ValueError("base point shape must be d x core.dim")
    if k == 0:
        return 0
    scale = 1
    for e in core.entries:
        scale = lcm(scale, int(e.denominator))
    int_core = [int(e * scale) for e in core.entries]
    # contract the base point into every slot except r
    parts = []
    for r in range(k):
        entries: list = list(int_core)
        dims = [p] * k
        for mode in range(k):
            if mode != r:
                entries, dims = mode_apply(entries, dims, mode, base)
        parts.append([int(x) for x in entries])
    ncols = d**k
    rows = []
    for alpha in range(d):
        for beta in range(p):
            row = [0] * ncols
            for r in range(k):
                post = d ** (k - 1 - r)
                entries = parts[r]
                for u in range(d**r):
                    src = (u * p + beta) * post
                    dst = (u * d + alpha) * post
                    for v in range(post):
                        x = entries[src + v]
                        if x:
                            row[dst + v] += x
            rows.append(row)
    return rank_int_rows(rows)


def image_dimension(
    core: SigTensor,
    d: int,
    trials: int = 3,
    rng: random.Random | None = None,
    bound: int = 1000,
) -> int:
    """Dimension of the Zariski closure of A -> [[core; A..A]] over d x p matrices.

    Measured as the maximal derivative rank over ``trials`` random integer
    base points (entries uniform in [-bound, bound]); an unlucky rank-deficient
    sample only lowers a single trial.  The closure-dimension = generic-rank
    identification is an assumption of the method, not proven here.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = rng if rng is not None else random.Random()
    best = 0
    for _ in range(trials):
        b = random_integer_matrix(d, core.dim, rng, bound)
        best = max(best, tucker_jacobian_rank(core, b))
    return best


def dimension_report(
    d: int,
    m: int,
    n: int,
    level: int = 2,
    trials: int = 3,
    rng: random.Random | None = None,
    kind: str = "axis",
) -> DimReport:
    """Measure dim M_{d,m,n} at the given tensor level and compare to formulas."""
    core = core_tensor(kind, m, n, level)
    measured = image_dimension(core, d, trials, rng)
    formula = dimension_formula(d, m, n) if level == 2 else None
    return DimReport(d, m, n, level, measured, formula, d**level, trials)


# --------------------------------------------------------------------------
# closed-form dimension and degree


def _sym_rank_variety_dim(d: int, a: int) -> int:
    """dim of {symmetric d x d matrices of rank <= a}."""
    a = min(a, d)
    return comb(d + 1, 2) - comb(d - a + 1, 2)


def _skew_rank_variety_dim(d: int, b: int) -> int:
    """dim of {skew d x d matrices of rank <= b} (b effectively even)."""
    b = min(b - b % 2, d - d % 2)
    return comb(d, 2) - comb(d - b, 2)


def dimension_formula(d: int, m: int, n: int) -> int | None:
    """Closed-form dim M_{d,m,n} where available, else None.

    The parity-case polynomials apply for mn <= d.  For m, n both odd the
    variety equals the rank variety S_{(m-1)(n-1)+1, m+n-2} outright, so its
    dimension is also returned when mn > d (computed from the rank-variety
    dimension count, which agrees with the polynomial on mn <= d).
    """
    if m < 1 or n < 1:
        raise ValueError("orders must be >= 1")
    if m % 2 == 1 and n % 2 == 0:
        m, n = n, m
    if m * n <= d:
        dmn = rat(d * m * n)
        common = (
            dmn
            - rat(m * m * n * n, 2)
            + rat(m * m * (n - 1))
            + rat((m - 1) * n * n)
        )
        if m % 2 == 0 and n % 2 == 0:
            value = common - rat(7 * m * n, 2) + rat(4 * (m + n) - 4)
        elif m % 2 == 0:
            value = common - rat(3 * m * n, 2) + rat(m + n)
        else:
            value = common - rat(7 * m * n, 2) + rat(3 * (m + n) - 2)
        assert value.denominator == 1
        return int(value)
    if m % 2 == 1 and n % 2 == 1:
        a = (m - 1) * (n - 1) + 1
        b = m + n - 2
        return _sym_rank_variety_dim(d, a) + _skew_rank_variety_dim(d, b)
    return None


def _harris_tu_sym_degree(d: int, corank: int) -> Rat:
    """Degree of {symmetric d x d matrices of corank >= corank}."""
    deg = ONE
    for alpha in range(corank):
        deg *= rat(comb(d + alpha, corank - alpha), comb(2 * alpha + 1, alpha))
    return deg


def _harris_tu_skew_degree(d: int, corank: int) -> Rat:
    """Degree of {skew d x d matrices of rank <= d - corank} (sub-Pfaffians)."""
    deg = rat(1, 2 ** (corank - 1)) if corank >= 1 else ONE
    for alpha in range(corank - 1):
        deg *= rat(comb(d + alpha, corank - 1 - alpha), comb(2 * alpha + 1, alpha))
    return deg


def degree_formula(d: int, m: int, n: int) -> int:
    """Degree of M_{d,m,n} for odd m, n with m + n <= d.

    There the variety is the transverse intersection of the locus where the
    ((m-1)(n-1)+2)-minors of the symmetric part vanish with the locus where
    the (m+n)-Pfaffians of the skew part vanish, so the degree is the product
    of the two determinantal-variety degrees.  Integrality is asserted.
    """
    if m % 2 == 0 or n % 2 == 0:
        raise ValueError("degree formula needs m and n odd")
    if m + n > d:
        raise ValueError("degree formula needs m + n <= d")
    sym_corank = d - ((m - 1) * (n - 1) + 1)
    skew_corank = d - (m + n) + 2
    deg = _harris_tu_sym_degree(d, max(sym_corank, 0)) * _harris_tu_skew_degree(
        d, skew_corank
    )
    if deg.denominator != 1 or deg <= 0:
        raise AssertionError(f"degree formula produced a non-integer: {deg}")
    return int(deg)


# --------------------------------------------------------------------------
# known polynomial relations


@dataclass(frozen=True)
class RelationReport:
    d: int
    m: int
    n: int
    samples: int
    status: str  # "pass" | "fail" | "no-relations"
    relations: tuple
    counterexample: Matrix | None = None
    detail: str = ""


def relation_checks(
    d: int,
    m: int,
    n: int,
    samples: int = 100,
    rng: random.Random | None = None,
    bound: int = 1000,
) -> RelationReport:
    """Test the built-in relations on random points X = A C A^T of the orbit.

    (2, 2, 1): 4 X11 X22 - X21^2 - 2 X21 X12 - X12^2 = 0 (the determinant of
    the symmetric part).  (4, 2, 2): the Pfaffian of the skew part vanishes
    and det(X) det(C^sym) = det(C) det(X^sym).  Other triples carry no
    built-in relations.
    """
    rng = rng if rng is not None else random.Random()
    if (d, m, n) == (2, 2, 1):
        c = core_matrix("moment", 2, 1)

        def check(x: Matrix) -> tuple[bool, str]:
            lhs = (
                4 * x.at(0, 0) * x.at(1, 1)
                - x.at(1, 0) ** 2
                - 2 * x.at(1, 0) * x.at(0, 1)
                - x.at(0, 1) ** 2
            )
            return lhs == 0, f"4 X11 X22 - X21^2 - 2 X21 X12 - X12^2 = {lhs}"

        relations = ("4 X11 X22 - X21^2 - 2 X21 X12 - X12^2 = 0",)
    elif (d, m, n) == (4, 2, 2):
        c = core_matrix("moment", 2, 2)
        c_sym, _ = sym_skew_split(c)
        det_c, det_c_sym = det(c), det(c_sym)

        def check(x: Matrix) -> tuple[bool, str]:
            x_sym, x_skew = sym_skew_split(x)
            pf = pfaffian(x_skew)
            if pf != 0:
                return False, f"pfaffian(X^sk) = {pf}"
            lhs = det(x) * det_c_sym
            rhs = det_c * det(x_sym)
            if lhs != rhs:
                return False, f"det(X) det(C^sym) = {lhs} != {rhs} = det(C) det(X^sym)"
            return True, ""

        relations = (
            "pfaffian(X^sk) = 0",
            "det(X) det(C^sym) = det(C) det(X^sym)",
        )
    else:
        return RelationReport(
            d, m, n, 0, "no-relations", (), None,
            "no built-in relations for this (d, m, n)",
        )
    for _ in range(samples):
        a = random_integer_matrix(d, m * n, rng, bound)
        x = a @ c @ a.transpose()
        ok, why = check(x)
        if not ok:
            return RelationReport(d, m, n, samples, "fail", relations, a, why)
    return RelationReport(d, m, n, samples, "pass", relations)
