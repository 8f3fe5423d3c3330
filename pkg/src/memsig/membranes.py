"""Membrane specifications, dictionary core tensors and the congruence route.

A two-parameter membrane with polynomial or piecewise-bilinear coordinates is
a linear transform of a dictionary membrane (moment resp. axis), so its
signature tensors are the dictionary core tensors pushed through the Tucker
action.  Core entries factor into products of path-signature entries because
the dictionary membranes are products of paths.

The single flattening convention for pairs (i, j) in [m] x [n] is
nu(i, j) = n (i - 1) + j (1-based); at level 2 this makes the moment and axis
core matrices exactly the Kronecker products of the path core matrices.

The congruence map is standardized as A C A^T with A of shape d x mn (the
transposed parameterization covers the same image set).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from .linalg import Matrix
from .paths import (
    AxisPath,
    MomentPath,
    axis_path_sig_entry,
    moment_path_sig_entry,
)
from .rational import ONE, Rat, ZERO, rat
from .tensor import SigTensor, tucker_apply

log = logging.getLogger(__name__)


# --------------------------------------------------------------------------
# vectorization


def nu(i: int, j: int, n: int) -> int:
    """Flatten (i, j) in [m] x [n] to n (i - 1) + j (all 1-based)."""
    return n * (i - 1) + j


def nu_inv(x: int, n: int) -> tuple[int, int]:
    return (x - 1) // n + 1, (x - 1) % n + 1


# --------------------------------------------------------------------------
# grid data and membrane specs


@dataclass(frozen=True)
class GridData:
    """d x (m+1) x (n+1) rational node values, values[i][a][b] = X_i(a/m, b/n)."""

    d: int
    m: int
    n: int
    values: tuple

    def __post_init__(self):
        if self.d < 1 or self.m < 1 or self.n < 1:
            raise ValueError("need d >= 1 and m, n >= 1")
        vals = tuple(
            tuple(tuple(rat(x) for x in row) for row in comp) for comp in self.values
        )
        if len(vals) != self.d or any(
            len(comp) != self.m + 1 or any(len(row) != self.n + 1 for row in comp)
            for comp in vals
        ):
            raise ValueError(
                f"grid values must have shape {self.d} x {self.m + 1} x {self.n + 1}"
            )
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class ProductMembrane:
    """(s, t) -> X(s) (x) Y(t), flattened by nu."""

    path_x: object
    path_y: object


@dataclass(frozen=True)
class PolynomialMembrane:
    """d-dimensional polynomial membrane A . Mom^{m,n}.

    ``coeffs`` is the d x mn matrix with the coefficient of s^i t^j in column
    nu(i, j); only bidegrees >= (1, 1) are representable, matching the fact
    that pure-s, pure-t and constant terms vanish under the mixed derivative.
    """

    coeffs: Matrix
    m: int
    n: int

    def __post_init__(self):
        if self.coeffs.cols != self.m * self.n:
            raise ValueError(
                f"coefficient matrix needs {self.m * self.n} columns, got {self.coeffs.cols}"
            )

    @classmethod
    def from_terms(cls, d: int, m: int, n: int, terms) -> "PolynomialMembrane":
        """Build from sparse (i, j, dim, coeff) terms (1-based i, j, dim).

        Terms with i = 0 or j = 0 do not affect the signature and are dropped
        with a logged warning.
        """
        rows = [[ZERO] * (m * n) for _ in range(d)]
        for i, j, dim, coeff in terms:
            if i == 0 or j == 0:
                log.warning(
                    "dropping term s^%d t^%d of coordinate %d (invariant under "
                    "addition of such terms)", i, j, dim
                )
                continue
            if not (1 <= i <= m and 1 <= j <= n and 1 <= dim <= d):
                raise ValueError(f"term ({i}, {j}, {dim}) out of range")
            rows[dim - 1][nu(i, j, n) - 1] += rat(coeff)
        return cls(Matrix.from_rows(rows), m, n)

    @property
    def dim(self) -> int:
        return self.coeffs.rows


@dataclass(frozen=True)
class PiecewiseBilinearMembrane:
    grid: GridData


@dataclass(frozen=True)
class TransformedMembrane:
    """A . base for a linear transform A."""

    a: Matrix
    base: object


# --------------------------------------------------------------------------
# grid operations


def reduce_grid(grid: GridData) -> GridData:
    """Subtract the axis restrictions: same signature, zero on row 0 / col 0."""
    vals = []
    for comp in grid.values:
        vals.append(
            tuple(
                tuple(
                    comp[a][b] - comp[0][b] - comp[a][0] + comp[0][0]
                    for b in range(grid.n + 1)
                )
                for a in range(grid.m + 1)
            )
        )
    return GridData(grid.d, grid.m, grid.n, tuple(vals))


def bilinear_decompose(grid: GridData) -> Matrix:
    """Mixed second differences: the d x mn transform onto the axis dictionary.

    Column nu(i, j) holds X(i/m, j/n) - X((i-1)/m, j/n) - X(i/m, (j-1)/n)
    + X((i-1)/m, (j-1)/n).  Cumulative 2-D sums of the columns reproduce the
    reduced grid node values.
    """
    rows = []
    for comp in grid.values:
        row = []
        for i in range(1, grid.m + 1):
            for j in range(1, grid.n + 1):
                row.append(comp[i][j] - comp[i - 1][j] - comp[i][j - 1] + comp[i - 1][j - 1])
        rows.append(row)
    return Matrix.from_rows(rows)


def axis_membrane_eval(m: int, n: int, i: int, j: int, s, t) -> Rat:
    """Coordinate (i, j) of the axis membrane of order (m, n) at (s, t)."""
    if not (1 <= i <= m and 1 <= j <= n):
        raise ValueError(f"coordinate ({i}, {j}) out of range [1,{m}] x [1,{n}]")
    s, t = rat(s), rat(t)
    if not (0 <= s <= 1 and 0 <= t <= 1):
        raise ValueError("(s, t) must lie in the unit square")
    if s <= rat(i - 1, m) or t <= rat(j - 1, n):
        return ZERO
    s_in = s <= rat(i, m)
    t_in = t <= rat(j, n)
    if s_in and t_in:
        return rat(m * n) * s * t + rat(m * (1 - j)) * s + rat(n * (1 - i)) * t + rat((i - 1) * (j - 1))
    if not s_in and t_in:
        return rat(n) * t + rat(1 - j)
    if s_in and not t_in:
        return rat(m) * s + rat(1 - i)
    return ONE


def axis_grid(m: int, n: int, d: int | None = None) -> GridData:
    """Node values of the axis membrane itself: value[nu(i,j)][a][b] = [i<=a][j<=b]."""
    d = m * n if d is None else d
    vals = []
    for x in range(1, d + 1):
        i, j = nu_inv(x, n)
        vals.append(
            tuple(
                tuple(ONE if i <= a and j <= b else ZERO for b in range(n + 1))
                for a in range(m + 1)
            )
        )
    return GridData(d, m, n, tuple(vals))


# --------------------------------------------------------------------------
# core tensors and the product formula


def product_sig_entry(sig_x_entry, sig_y_entry, tupleword) -> Rat:
    """<sigma(X x Y), (i_1,j_1)...(i_k,j_k)> = <sigma(X), i-word> <sigma(Y), j-word>."""
    iword = tuple(ij[0] for ij in tupleword)
    jword = tuple(ij[1] for ij in tupleword)
    return rat(sig_x_entry(iword)) * rat(sig_y_entry(jword))


@lru_cache(maxsize=None)
def core_tensor(kind: str, m: int, n: int, k: int) -> SigTensor:
    """Level-k core tensor (dim mn) of the moment or axis membrane.

    Entries are products of the two path closed forms on the nu-decoded
    letter pairs; at level 2 this equals the Kronecker product of the two
    path signature matrices.
    """
    if kind == "moment":
        ex = moment_path_sig_entry
        ey = moment_path_sig_entry
    elif kind == "axis":
        ex = lambda w: axis_path_sig_entry(w, m)
        ey = lambda w: axis_path_sig_entry(w, n)
    else:
        raise ValueError(f"unknown core kind {kind!r} (expected 'moment' or 'axis')")
    pairs = [nu_inv(x, n) for x in range(1, m * n + 1)]

    def entry(word):
        return product_sig_entry(ex, ey, [pairs[x - 1] for x in word])

    return SigTensor.from_function(k, m * n, entry)


def core_matrix(kind: str, m: int, n: int) -> Matrix:
    return core_tensor(kind, m, n, 2).to_matrix()


def hadamard_sig(sig_x: SigTensor, sig_y: SigTensor) -> SigTensor:
    """Entrywise product; the signature of the Hadamard-product membrane."""
    if (sig_x.level, sig_x.dim) != (sig_y.level, sig_y.dim):
        raise ValueError("tensors must share level and dimension")
    return SigTensor(
        sig_x.level,
        sig_x.dim,
        tuple(a * b for a, b in zip(sig_x.entries, sig_y.entries)),
    )


# --------------------------------------------------------------------------
# equivariance route


class SpecResolutionError(ValueError):
    """Raised for membrane specs outside the dictionary families."""


def resolve_spec(spec) -> tuple[Matrix, str, int, int]:
    """Reduce a membrane spec to (A, core kind, m, n) with sig = [[core; A..A]]."""
    if isinstance(spec, PolynomialMembrane):
        return spec.coeffs, "moment", spec.m, spec.n
    if isinstance(spec, PiecewiseBilinearMembrane):
        g = spec.grid
        return bilinear_decompose(g), "axis", g.m, g.n
    if isinstance(spec, GridData):
        return bilinear_decompose(spec), "axis", spec.m, spec.n
    if isinstance(spec, ProductMembrane):
        px, py = spec.path_x, spec.path_y
        if isinstance(px, MomentPath) and isinstance(py, MomentPath):
            m, n = px.degree, py.degree
            return Matrix.identity(m * n), "moment", m, n
        if isinstance(px, AxisPath) and isinstance(py, AxisPath):
            m, n = px.order, py.order
            return Matrix.identity(m * n), "axis", m, n
        raise SpecResolutionError(
            "only moment x moment and axis x axis products resolve to a core; "
            "use product_sig_entry for mixed products"
        )
    if isinstance(spec, TransformedMembrane):
        a0, kind, m, n = resolve_spec(spec.base)
        return spec.a @ a0, kind, m, n
    raise SpecResolutionError(f"cannot resolve membrane spec {spec!r}")


def sig_via_congruence(spec, k: int) -> SigTensor:
    """Level-k signature tensor through the dictionary + Tucker action."""
    a, kind, m, n = resolve_spec(spec)
    return tucker_apply(core_tensor(kind, m, n, k), a)


def sig_matrix_via_congruence(spec) -> Matrix:
    return sig_via_congruence(spec, 2).to_matrix()
