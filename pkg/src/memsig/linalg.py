"""Exact dense linear algebra over the rationals.

Matrices are small (at most a few hundred rows at desk scale), so everything
here is plain dense code.  Rank and determinant go through fraction-free
Bareiss elimination on denominator-cleared integer rows, which keeps
intermediate entries polynomially sized instead of letting rational
numerators/denominators blow up.  The Pfaffian uses Pfaffian-preserving
congruence pivots (O(n^3), no combinatorial expansion).

``pm1_jordan_structure`` recovers the Jordan block multiset of a matrix whose
only eigenvalues are +1 and -1 from the exact rank sequences rank((M -+ I)^j);
this is all the spectral information the congruence normal forms need.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import lcm

from .rational import ONE, ZERO, rat


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with row-major rational entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        ents = tuple(rat(x) for x in self.entries)
        if len(ents) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(ents)}"
            )
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    def at(self, i: int, j: int):
        """0-based entry access."""
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def scale(self, c) -> "Matrix":
        c = rat(c)
        return Matrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            ai = a[i]
            for j in range(other.cols):
                s = ZERO
                for t in range(self.cols):
                    x = ai[t]
                    if x:
                        s += x * b[t][j]
                out.append(s)
        return Matrix(self.rows, other.cols, tuple(out))

    def _same_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product: block (i, j) equals a[i, j] * b."""
    out = []
    for i in range(a.rows):
        for p in range(b.rows):
            for j in range(a.cols):
                aij = a.at(i, j)
                for q in range(b.cols):
                    out.append(aij * b.at(p, q))
    return Matrix(a.rows * b.rows, a.cols * b.cols, tuple(out))


def sym_skew_split(m: Matrix) -> tuple[Matrix, Matrix]:
    """Split a square matrix into (M + M^T)/2 and (M - M^T)/2."""
    if not m.is_square:
        raise ValueError("sym/skew split needs a square matrix")
    mt = m.transpose()
    half = rat(1, 2)
    sym = (m + mt).scale(half)
    skew = (m - mt).scale(half)
    return sym, skew


def _integer_rows(m: Matrix) -> tuple[list[list[int]], list[int]]:
    """Clear denominators row by row; returns (integer rows, row scales)."""
    out, scales = [], []
    for row in m.to_rows():
        d = 1
        for x in row:
            d = lcm(d, int(x.denominator))
        scales.append(d)
        out.append([int(x * d) for x in row])
    return out, scales


def _bareiss_rank(a: list[list[int]]) -> int:
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        arow = a[r]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            for j in range(c, ncols):
                ai[j] = (p * ai[j] - f * arow[j]) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rank(m: Matrix) -> int:
    """Exact rank over the rationals (fraction-free Bareiss elimination)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a, _ = _integer_rows(m)
    return _bareiss_rank(a)


def rank_int_rows(rows: list[list[int]]) -> int:
    """Rank of an integer matrix given as mutable rows (consumed)."""
    if not rows or not rows[0]:
        return 0
    return _bareiss_rank(rows)


def det(m: Matrix):
    """Exact determinant via Bareiss elimination on denominator-cleared rows."""
    if not m.is_square:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return ONE
    a, scales = _integer_rows(m)
    sign = 1
    prev = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        arow = a[c]
        for i in range(c + 1, n):
            ai = a[i]
            f = ai[c]
            for j in range(c, n):
                ai[j] = (p * ai[j] - f * arow[j]) // prev
        prev = p
    scale = 1
    for s in scales:
        scale *= s
    return rat(sign * a[n - 1][n - 1], scale)


def is_skew(m: Matrix) -> bool:
    if not m.is_square:
        return False
    for i in range(m.rows):
        if m.at(i, i):
            return False
        for j in range(i + 1, m.cols):
            if m.at(i, j) != -m.at(j, i):
                return False
    return True


def pfaffian(m: Matrix):
    """Exact Pfaffian of an even-dimensional skew-symmetric matrix.

    Uses Pfaffian-preserving congruence pivots: pf(M) = M[0][1] * pf(M') with
    M'[i][j] = M[i][j] - (M[0][i] M[1][j] - M[0][j] M[1][i]) / M[0][1].
    Satisfies pfaffian(M)^2 == det(M).
    """
    if not m.is_square:
        raise ValueError("Pfaffian needs a square matrix")
    if m.rows % 2:
        raise ValueError("Pfaffian needs even dimension")
    if not is_skew(m):
        raise ValueError("Pfaffian needs a skew-symmetric matrix")
    n = m.rows
    a = m.to_rows()
    pf = ONE
    for k in range(0, n - 1, 2):
        piv = None
        for j in range(k + 1, n):
            if a[k][j]:
                piv = j
                break
        if piv is None:
            return ZERO
        if piv != k + 1:
            # swap index k+1 <-> piv in rows and columns; flips the sign
            a[k + 1], a[piv] = a[piv], a[k + 1]
            for row in a:
                row[k + 1], row[piv] = row[piv], row[k + 1]
            pf = -pf
        p = a[k][k + 1]
        pf *= p
        rk, rk1 = a[k], a[k + 1]
        for i in range(k + 2, n):
            fi, gi = rk[i], rk1[i]
            if not fi and not gi:
                continue
            ai = a[i]
            for j in range(i + 1, n):
                upd = (fi * rk1[j] - rk[j] * gi) / p
                if upd:
                    ai[j] -= upd
                    a[j][i] += upd
    return pf


def inverse(m: Matrix) -> Matrix:
    """Exact inverse via Gauss-Jordan elimination."""
    if not m.is_square:
        raise ValueError("inverse needs a square matrix")
    n = m.rows
    a = m.to_rows()
    b = Matrix.identity(n).to_rows()
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix is singular")
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            b[c], b[piv] = b[piv], b[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        b[c] = [x / p for x in b[c]]
        for i in range(n):
            if i == c:
                continue
            f = a[i][c]
            if not f:
                continue
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
            b[i] = [x - f * y for x, y in zip(b[i], b[c])]
    return Matrix.from_rows(b)


def cosquare(m: Matrix) -> Matrix:
    """M^{-T} M for nonsingular M; its Jordan form classifies congruence."""
    return inverse(m.transpose()) @ m


class SpectrumError(ValueError):
    """Raised when a matrix has an eigenvalue other than +1 / -1."""


def pm1_jordan_structure(m: Matrix) -> Counter:
    """Jordan block multiset of a matrix with spectrum contained in {+1, -1}.

    Returns a Counter mapping (eigenvalue, block size) -> multiplicity, where
    the size-j block count at mu is r_{j-1} - 2 r_j + r_{j+1} for the rank
    sequence r_j = rank((M - mu I)^j).  Power indices are capped at the matrix
    dimension.  Raises SpectrumError if the generalized eigenspaces of +1 and
    -1 do not fill the whole space, i.e. some other eigenvalue is present.
    """
    if not m.is_square:
        raise ValueError("Jordan structure needs a square matrix")
    n = m.rows
    blocks: Counter = Counter()
    total = 0
    for mu in (1, -1):
        shifted = m - Matrix.identity(n).scale(mu)
        ranks = [n]
        power = Matrix.identity(n)
        for _ in range(n):
            power = power @ shifted
            r = rank(power)
            ranks.append(r)
            if r == ranks[-2]:
                break
        stable = ranks[-1]
        total += n - stable
        ranks.append(stable)  # pad so r_{j+1} exists for the last drop
        for j in range(1, len(ranks) - 1):
            cnt = ranks[j - 1] - 2 * ranks[j] + ranks[j + 1]
            if cnt:
                blocks[(mu, j)] += cnt
    if total != n:
        raise SpectrumError(
            "matrix has an eigenvalue other than +1/-1: rank sequences "
            f"stabilize at combined multiplicity {total} < {n}"
        )
    return blocks


@dataclass(frozen=True, order=True)
class GammaBlock:
    """Canonical congruence block Gamma_k (size k)."""

    size: int

    def __str__(self) -> str:
        return f"Gamma{self.size}"


@dataclass(frozen=True, order=True)
class HBlock:
    """Canonical congruence block H_{2k}(mu) (size 2k, paired eigenvalue mu)."""

    halfsize: int
    mu: int

    @property
    def size(self) -> int:
        return 2 * self.halfsize

    def __str__(self) -> str:
        sign = "1" if self.mu == 1 else "-1"
        return f"H{self.size}({sign})"


@dataclass(frozen=True)
class CongruenceInvariants:
    """Multiset of canonical congruence blocks, stored sorted."""

    blocks: tuple

    def __post_init__(self):
        key = lambda b: (isinstance(b, HBlock), b)
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks, key=key)))

    @property
    def total_size(self) -> int:
        return sum(b.size for b in self.blocks)

    def counts(self) -> Counter:
        return Counter(self.blocks)

    def __str__(self) -> str:
        return " + ".join(str(b) for b in self.blocks) if self.blocks else "(empty)"
