"""Dense linear algebra over F2 on int bitsets.

A row (or vector) of length n is a Python int whose bit j is coordinate j.
Python ints give us arbitrary-width XOR for free, which is all elimination
needs.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import NoSolution, Singular


def weight(v: int) -> int:
    """Hamming weight of a bitset vector."""
    return v.bit_count()


def bits_of(v: int) -> Iterable[int]:
    """Indices of the set bits of ``v``, ascending."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def vec_from_list(bits: Sequence[int]) -> int:
    v = 0
    for i, b in enumerate(bits):
        if b & 1:
            v |= 1 << i
    return v


def vec_to_list(v: int, n: int) -> list[int]:
    return [(v >> i) & 1 for i in range(n)]


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


@dataclass(frozen=True)
class BitMatrix:
    """A rows x cols matrix over F2; ``data[r]`` is row r as a bitset."""

    nrows: int
    ncols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.nrows:
            raise ValueError("row count mismatch")

    @classmethod
    def from_rows(cls, rows: Iterable[int], ncols: int) -> "BitMatrix":
        rows = tuple(rows)
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        ncols = len(rows[0]) if rows else 0
        return cls.from_rows((vec_from_list(r) for r in rows), ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, (0,) * nrows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        r, c = idx
        return (self.data[r] >> c) & 1

    def to_lists(self) -> list[list[int]]:
        return [vec_to_list(r, self.ncols) for r in self.data]

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return BitMatrix(self.nrows, self.ncols,
                         tuple(a ^ b for a, b in zip(self.data, other.data)))

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows = other.data
        return BitMatrix(self.nrows, other.ncols,
                         tuple(_combine(r, rows) for r in self.data))

    def vecmul(self, u: int) -> int:
        """Row vector times matrix: u * M."""
        return _combine(u, self.data)

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.ncols
        for r, row in enumerate(self.data):
            bit = 1 << r
            for c in bits_of(row):
                cols[c] |= bit
        return BitMatrix(self.ncols, self.nrows, tuple(cols))

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def rank(self) -> int:
        return rref(self)[1]

    def is_zero(self) -> bool:
        return not any(self.data)

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return BitMatrix(self.nrows + other.nrows, self.ncols, self.data + other.data)

    def select_columns(self, cols: Sequence[int]) -> "BitMatrix":
        """Submatrix on ``cols`` (in the given order), renumbered from 0."""
        out = []
        for row in self.data:
            v = 0
            for j, c in enumerate(cols):
                if (row >> c) & 1:
                    v |= 1 << j
            out.append(v)
        return BitMatrix(self.nrows, len(cols), tuple(out))

    def delete_columns(self, cols: Iterable[int]) -> "BitMatrix":
        drop = set(cols)
        return self.select_columns([c for c in range(self.ncols) if c not in drop])

    def __repr__(self) -> str:
        body = "\n".join(
            "".join(str((r >> c) & 1) for c in range(self.ncols)) for r in self.data
        )
        return f"BitMatrix({self.nrows}x{self.ncols})\n{body}"


def _combine(u: int, rows: Sequence[int]) -> int:
    acc = 0
    i = 0
    while u:
        if u & 1:
            acc ^= rows[i]
        u >>= 1
        i += 1
    return acc


def _eliminate(rows: list[int], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns in order."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        bit = 1 << c
        p = next((i for i in range(r, nrows) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(c)
        r += 1
    return pivots


def rref(M: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    rows = list(M.data)
    pivots = _eliminate(rows, M.ncols)
    return BitMatrix(M.nrows, M.ncols, tuple(rows)), len(pivots), pivots


def row_basis(M: BitMatrix) -> BitMatrix:
    """RREF basis of the row space (zero rows dropped)."""
    rows = list(M.data)
    pivots = _eliminate(rows, M.ncols)
    return BitMatrix(len(pivots), M.ncols, tuple(rows[: len(pivots)]))


def rank_of_rows(rows: Iterable[int], ncols: int) -> int:
    return len(_eliminate(list(rows), ncols))


def same_row_space(M1: BitMatrix, M2: BitMatrix) -> bool:
    return M1.ncols == M2.ncols and row_basis(M1).data == row_basis(M2).data


def inverse(M: BitMatrix) -> BitMatrix:
    """Matrix inverse by Gauss-Jordan on [M | I]."""
    n = M.nrows
    if M.ncols != n:
        raise ValueError("inverse of a non-square matrix")
    rows = [row | (1 << (n + i)) for i, row in enumerate(M.data)]
    pivots = _eliminate(rows, n)
    if len(pivots) < n:
        raise Singular(f"matrix has rank {len(pivots)} < {n}")
    return BitMatrix(n, n, tuple(r >> n for r in rows))


def is_invertible(M: BitMatrix) -> bool:
    return M.nrows == M.ncols and rank_of_rows(M.data, M.ncols) == M.nrows


def nullspace(M: BitMatrix) -> BitMatrix:
    """Basis of {x : M x^T = 0}, as rows; returned in RREF."""
    rows = list(M.data)
    pivots = _eliminate(rows, M.ncols)
    pivset = set(pivots)
    free = [c for c in range(M.ncols) if c not in pivset]
    basis = []
    for f in free:
        v = 1 << f
        for r, p in enumerate(pivots):
            if (rows[r] >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return row_basis(BitMatrix.from_rows(basis, M.ncols)) if basis else BitMatrix(0, M.ncols, ())


class LeftSolver:
    """Precomputed elimination for repeated solves of x * M = y.

    Requires M to have full row rank; then x is unique whenever it exists.
    """

    def __init__(self, M: BitMatrix) -> None:
        k = M.nrows
        # Track row operations in the high bits so each reduced row remembers
        # which combination of original rows produced it.
        rows = [row | (1 << (M.ncols + i)) for i, row in enumerate(M.data)]
        pivots = _eliminate(rows, M.ncols)
        if len(pivots) < k:
            raise Singular(f"matrix rows are dependent (rank {len(pivots)} < {k})")
        self.ncols = M.ncols
        self.k = k
        self.pivots = pivots
        mask = (1 << M.ncols) - 1
        self._reduced = [r & mask for r in rows]
        self._combo = [r >> M.ncols for r in rows]

    def solve(self, y: int) -> int:
        x = 0
        rem = y
        for r, p in enumerate(self.pivots):
            if (rem >> p) & 1:
                rem ^= self._reduced[r]
                x ^= self._combo[r]
        if rem:
            raise NoSolution("vector is outside the row space")
        return x


def solve_left(Y: BitMatrix, M: BitMatrix) -> BitMatrix:
    """The unique X with X @ M = Y, for M of full row rank."""
    if Y.ncols != M.ncols:
        raise ValueError("column count mismatch")
    solver = LeftSolver(M)
    return BitMatrix(Y.nrows, M.nrows, tuple(solver.solve(y) for y in Y.data))


def random_matrix(nrows: int, ncols: int, rng: random.Random) -> BitMatrix:
    return BitMatrix(nrows, ncols, tuple(rng.getrandbits(ncols) for _ in range(nrows)))


def random_invertible(k: int, rng: random.Random, stats: list | None = None) -> BitMatrix:
    """Uniform invertible k x k matrix by rejection; ``stats`` collects draw counts."""
    draws = 0
    while True:
        draws += 1
        M = random_matrix(k, k, rng)
        if is_invertible(M):
            if stats is not None:
                stats.append(draws)
            return M


# -- permutations ---------------------------------------------------------------


@dataclass(frozen=True)
class Perm:
    """Permutation of {0..n-1}; ``mapping[i]`` is the image of coordinate i.

    As a matrix P this has P[i, mapping[i]] = 1, so ``apply(v)`` computes v P.
    """

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError("not a permutation")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.mapping)

    def apply(self, v: int) -> int:
        out = 0
        m = self.mapping
        for i in bits_of(v):
            out |= 1 << m[i]
        return out

    def apply_matrix(self, M: BitMatrix) -> BitMatrix:
        """M P: permute the columns of M."""
        return BitMatrix(M.nrows, M.ncols, tuple(self.apply(r) for r in M.data))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Perm(tuple(inv))

    def compose(self, other: "Perm") -> "Perm":
        """``self`` then ``other``: matrix product P_self @ P_other."""
        return Perm(tuple(other.mapping[j] for j in self.mapping))

    def to_matrix(self) -> BitMatrix:
        return BitMatrix(self.n, self.n, tuple(1 << j for j in self.mapping))

    @classmethod
    def from_matrix(cls, M: BitMatrix) -> "Perm":
        mapping = []
        for row in M.data:
            if row.bit_count() != 1:
                raise ValueError("not a permutation matrix")
            mapping.append(row.bit_length() - 1)
        return cls(tuple(mapping))


def random_perm(n: int, rng: random.Random) -> Perm:
    mapping = list(range(n))
    rng.shuffle(mapping)
    return Perm(tuple(mapping))


def random_weight_vector(n: int, w: int, rng: random.Random) -> int:
    v = 0
    for i in rng.sample(range(n), w):
        v |= 1 << i
    return v
