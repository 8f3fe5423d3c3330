"""Dense level-k signature tensors and the Tucker action.

A level-k tensor over dimension d stores its d^k rational entries row-major,
indexed by words (i_1, ..., i_k) with 1-based letters (matching the math;
flat offsets are 0-based internally).  The level-0 tensor is the scalar 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .linalg import Matrix
from .rational import ONE, ZERO, rat


def words_iter(dim: int, level: int):
    """All words (1-based letters) of the given length, row-major order."""
    return product(range(1, dim + 1), repeat=level)


@dataclass(frozen=True)
class SigTensor:
    level: int
    dim: int
    entries: tuple

    def __post_init__(self):
        if self.level < 0 or self.dim < 1:
            raise ValueError("need level >= 0 and dim >= 1")
        ents = tuple(rat(x) for x in self.entries)
        if len(ents) != self.dim**self.level:
            raise ValueError(
                f"expected {self.dim ** self.level} entries, got {len(ents)}"
            )
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_function(cls, level: int, dim: int, entry_fn) -> "SigTensor":
        """Build from a function on words with 1-based letters."""
        return cls(level, dim, tuple(entry_fn(w) for w in words_iter(dim, level)))

    @classmethod
    def level_zero(cls, dim: int) -> "SigTensor":
        return cls(0, dim, (ONE,))

    def get(self, word):
        """Entry at a word of 1-based letters."""
        if len(word) != self.level:
            raise ValueError(f"word length {len(word)} != level {self.level}")
        off = 0
        for letter in word:
            if not 1 <= letter <= self.dim:
                raise ValueError(f"letter {letter} out of range [1, {self.dim}]")
            off = off * self.dim + (letter - 1)
        return self.entries[off]

    def words(self):
        return words_iter(self.dim, self.level)

    def to_matrix(self) -> Matrix:
        if self.level != 2:
            raise ValueError("only level-2 tensors convert to matrices")
        return Matrix(self.dim, self.dim, self.entries)

    @classmethod
    def from_matrix(cls, m: Matrix) -> "SigTensor":
        if not m.is_square:
            raise ValueError("need a square matrix")
        return cls(2, m.rows, m.entries)


def mode_apply(entries: list, dims: list[int], mode: int, a: Matrix) -> tuple[list, list[int]]:
    """Contract one tensor mode with a matrix: new[..., x, ...] = sum_y A[x, y] old[..., y, ...]."""
    p = dims[mode]
    if a.cols != p:
        raise ValueError(f"mode {mode} has size {p}, matrix has {a.cols} columns")
    d = a.rows
    pre = 1
    for s in dims[:mode]:
        pre *= s
    post = 1
    for s in dims[mode + 1 :]:
        post *= s
    arows = a.to_rows()
    new = [ZERO] * (pre * d * post)
    for u in range(pre):
        base_old = u * p * post
        base_new = u * d * post
        for x in range(d):
            row = arows[x]
            off_new = base_new + x * post
            for y in range(p):
                c = row[y]
                if not c:
                    continue
                off_old = base_old + y * post
                for v in range(post):
                    val = entries[off_old + v]
                    if val:
                        new[off_new + v] += c * val
    return new, dims[:mode] + [d] + dims[mode + 1 :]


def tucker_apply(t: SigTensor, a: Matrix) -> SigTensor:
    """Diagonal Tucker action: entry (i_1..i_k) = sum A[i_1,j_1]...A[i_k,j_k] T[j_1..j_k].

    For level 2 this is A T A^T.  Composes contravariantly:
    tucker_apply(tucker_apply(T, A), B) == tucker_apply(T, B @ A).
    """
    if a.cols != t.dim:
        raise ValueError(f"matrix has {a.cols} columns but tensor dimension is {t.dim}")
    entries = list(t.entries)
    dims = [t.dim] * t.level
    for mode in range(t.level):
        entries, dims = mode_apply(entries, dims, mode, a)
    return SigTensor(t.level, a.rows, tuple(entries))


def all_ones(level: int, dim: int) -> SigTensor:
    return SigTensor(level, dim, (ONE,) * dim**level)


def zeros(level: int, dim: int) -> SigTensor:
    return SigTensor(level, dim, (ZERO,) * dim**level)
