"""Permutation equivalence of binary codes via support splitting.

Position signatures are built from the hull of the code punctured at a set
of positions (see :class:`_Signer`). They are invariant under coordinate
permutations, so they partition the support into classes that any
equivalence must respect. Refinement pins matched pairs of positions one at
a time (individualise-and-refine), with backtracking when a pin leads to a
contradiction. Every permutation returned has been checked by row-space
equality.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field

from .binmat import BitMatrix, Perm, bits_of, nullspace, row_basis, same_row_space
from .errors import DimensionMismatch, TooLarge

MAX_ENUM_DIM = 20
SIG_ENUM_DIM = 14
DEFAULT_NODE_BUDGET = 10**6


class Verdict:
    """Sentinels for the non-permutation outcomes of :func:`ssa_permutation`."""

    INEQUIVALENT = "inequivalent"
    DEGENERATE = "degenerate"


def weight_enumerator(basis: BitMatrix, mask: int | None = None) -> list[int]:
    """Weight distribution of the span of ``basis`` (optionally restricted to ``mask``)."""
    h = basis.nrows
    if h > MAX_ENUM_DIM:
        raise TooLarge(f"2^{h} words exceed the enumeration budget 2^{MAX_ENUM_DIM}")
    counts = [0] * (basis.ncols + 1)
    counts[0] = 1
    rows = basis.data if mask is None else tuple(r & mask for r in basis.data)
    c = 0
    for i in range(1, 1 << h):
        c ^= rows[(i & -i).bit_length() - 1]
        counts[c.bit_count()] += 1
    return counts


@dataclass
class CodeHandle:
    """A binary code given by a generator matrix, with lazily built caches."""

    G: BitMatrix
    _basis: BitMatrix | None = field(default=None, repr=False)
    _dual: BitMatrix | None = field(default=None, repr=False)
    _hull: BitMatrix | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.G.ncols

    @property
    def basis(self) -> BitMatrix:
        if self._basis is None:
            self._basis = row_basis(self.G)
        return self._basis

    @property
    def k(self) -> int:
        return self.basis.nrows

    @property
    def dual(self) -> BitMatrix:
        if self._dual is None:
            self._dual = nullspace(self.basis)
        return self._dual

    def hull(self) -> BitMatrix:
        if self._hull is None:
            self._hull = hull_basis(self.basis, (1 << self.n) - 1)
        return self._hull

    def permuted(self, perm: Perm) -> "CodeHandle":
        return CodeHandle(perm.apply_matrix(self.G))


def _gram(rows: Sequence[int], mask: int) -> list[int]:
    k = len(rows)
    gram = [0] * k
    for a in range(k):
        ra = rows[a] & mask
        acc = 0
        for b in range(a, k):
            if (ra & rows[b]).bit_count() & 1:
                acc |= 1 << b
                if b != a:
                    gram[b] |= 1 << a
        gram[a] |= acc
    return gram


def _kernel_combos(rows: Sequence[int], gram: list[int]) -> list[int]:
    k = len(rows)
    ker = nullspace(BitMatrix(k, k, tuple(gram)))
    out = []
    for u in ker.data:
        v = 0
        for i in bits_of(u):
            v ^= rows[i]
        out.append(v)
    return out


def hull_basis(basis: BitMatrix, mask: int) -> BitMatrix:
    """Hull of the code spanned by ``basis`` punctured outside ``mask``.

    Puncturing keeps coordinates in ``mask`` (deleted ones are zeroed in
    place, so vectors keep their original indices). A combination uB lies in
    the hull iff it is orthogonal to every row on the kept coordinates,
    i.e. u is in the kernel of the masked Gram matrix.
    """
    rows = basis.data
    vecs = [v & mask for v in _kernel_combos(rows, _gram(rows, mask))]
    return row_basis(BitMatrix.from_rows(vecs, basis.ncols)) if vecs else BitMatrix(0, basis.ncols, ())


def hull(C: CodeHandle) -> BitMatrix:
    return C.hull()


class _Signer:
    """Position signatures of one code, relative to an ordered list of pins.

    For position i the code (and separately its dual) is punctured at the
    pins and at i. The codewords whose restriction lands in the hull of that
    punctured code form a subspace that any pin-respecting equivalence
    preserves; the signature is the multiset over that subspace of
    (restricted weight, bits at the pins in pin order, bit at i).
    """

    def __init__(self, C: CodeHandle) -> None:
        self.n = C.n
        self.full = (1 << C.n) - 1
        self.gens = (C.basis.data, C.dual.data)

    def signature(self, pins: Sequence[int], i: int) -> tuple:
        pm = 0
        for p in pins:
            pm |= 1 << p
        mask = self.full & ~pm & ~(1 << i)
        sig: list = []
        for rows in self.gens:
            if not rows:
                sig.append(0)
                continue
            lifts = _kernel_combos(rows, _gram(rows, mask))
            lifts = row_basis(BitMatrix.from_rows(lifts, self.n)).data if lifts else ()
            dim = len(lifts)
            sig.append(dim)
            if dim > SIG_ENUM_DIM:
                continue
            counts: Counter = Counter()
            c = 0
            counts[(0, 0, 0)] += 1
            for j in range(1, 1 << dim):
                c ^= lifts[(j & -j).bit_length() - 1]
                pinbits = 0
                for r, p in enumerate(pins):
                    if (c >> p) & 1:
                        pinbits |= 1 << r
                counts[((c & mask).bit_count(), pinbits, (c >> i) & 1)] += 1
            sig.append(tuple(sorted(counts.items())))
        return tuple(sig)

    def whole(self) -> tuple:
        return self.signature((), self.n)


def position_signature(C: CodeHandle, i: int, pinned: Sequence[int] = ()) -> tuple[int, ...]:
    """Permutation-invariant signature of position ``i`` given pinned positions."""
    if i in pinned:
        raise ValueError("position is pinned")
    return _Signer(C).signature(list(pinned), i)


def partition(labels: Sequence) -> dict:
    cells: dict = {}
    for i, lab in enumerate(labels):
        cells.setdefault(lab, []).append(i)
    return cells


@dataclass
class SSAStats:
    nodes: int = 0
    leaves: int = 0
    verify_failures: int = 0
    signatures: int = 0


class _Search:
    def __init__(self, C1: CodeHandle, C2: CodeHandle, budget: int) -> None:
        self.C1, self.C2 = C1, C2
        self.s1, self.s2 = _Signer(C1), _Signer(C2)
        self.n = C1.n
        self.budget = budget
        self.stats = SSAStats()
        self.exhausted = False

    def refine(self, signer: _Signer, labels: list[int], pinned: list[int]) -> list[tuple]:
        pin_rank = {p: r for r, p in enumerate(pinned)}
        out = []
        for i in range(self.n):
            if i in pin_rank:
                out.append((labels[i], -1, pin_rank[i]))
            else:
                self.stats.signatures += 1
                out.append((labels[i],) + signer.signature(pinned, i))
        return out

    @staticmethod
    def renumber(raw1: list[tuple], raw2: list[tuple]) -> tuple[list[int], list[int]] | None:
        if Counter(raw1) != Counter(raw2):
            return None
        order = {lab: idx for idx, lab in enumerate(sorted(set(raw1)))}
        return [order[x] for x in raw1], [order[x] for x in raw2]

    def run(self, lab1: list[int], lab2: list[int], pin1: list[int], pin2: list[int]) -> Perm | None:
        self.stats.nodes += 1
        if self.stats.nodes > self.budget:
            self.exhausted = True
            return None
        cells1, cells2 = partition(lab1), partition(lab2)
        if all(len(c) == 1 for c in cells1.values()):
            self.stats.leaves += 1
            mapping = [0] * self.n
            for lab, (i,) in cells1.items():
                mapping[i] = cells2[lab][0]
            perm = Perm(tuple(mapping))
            if same_row_space(perm.apply_matrix(self.C1.basis), self.C2.basis):
                return perm
            self.stats.verify_failures += 1
            return None
        lab = min((lab for lab, c in cells1.items() if len(c) > 1),
                  key=lambda lab: (len(cells1[lab]), lab))
        a = cells1[lab][0]
        new1 = self.refine(self.s1, lab1, pin1 + [a])
        for b in cells2[lab]:
            new2 = self.refine(self.s2, lab2, pin2 + [b])
            ren = self.renumber(new1, new2)
            if ren is None:
                continue
            found = self.run(ren[0], ren[1], pin1 + [a], pin2 + [b])
            if found is not None or self.exhausted:
                return found
        return None


def ssa_permutation(C1: CodeHandle, C2: CodeHandle, budget: int = DEFAULT_NODE_BUDGET,
                    stats: SSAStats | None = None) -> Perm | str:
    """A permutation pi with pi(C1) = C2, or a :class:`Verdict` string.

    Returns ``Verdict.INEQUIVALENT`` when signatures or exhaustive search rule
    out every permutation, and ``Verdict.DEGENERATE`` when the node budget
    runs out first.
    """
    if C1.n != C2.n or C1.k != C2.k:
        raise DimensionMismatch(f"[{C1.n},{C1.k}] vs [{C2.n},{C2.k}]")
    search = _Search(C1, C2, budget)
    if search.s1.whole() != search.s2.whole():
        return Verdict.INEQUIVALENT
    zero = [0] * C1.n
    ren = search.renumber(search.refine(search.s1, zero, []), search.refine(search.s2, zero, []))
    result = None if ren is None else search.run(ren[0], ren[1], [], [])
    if stats is not None:
        for name in ("nodes", "leaves", "verify_failures", "signatures"):
            setattr(stats, name, getattr(search.stats, name))
    if result is not None:
        return result
    return Verdict.DEGENERATE if search.exhausted else Verdict.INEQUIVALENT


def is_equivalence(C1: CodeHandle, C2: CodeHandle, perm: Perm) -> bool:
    return same_row_space(perm.apply_matrix(C1.G), C2.G)


def bruteforce_permutation(C1: CodeHandle, C2: CodeHandle, max_n: int = 10) -> Perm | str:
    """Exhaustive search for pi with pi(C1) = C2 (test oracle only).

    Depth-first over images of positions 0, 1, ...; a partial assignment
    survives only if the restrictions of C1 and of its dual to the assigned
    positions equal those of C2 and its dual on the images. Shares no code
    with the signature search.
    """
    n = C1.n
    if n > max_n:
        raise TooLarge(f"n={n} exceeds brute-force limit {max_n}")
    if C2.n != n or C1.k != C2.k:
        return Verdict.INEQUIVALENT
    w1, w2 = _support_counts(C1), _support_counts(C2)
    if sorted(w1) != sorted(w2):
        return Verdict.INEQUIVALENT
    pairs = [(C1.basis, C2.basis), (C1.dual, C2.dual)]
    image: list[int] = []
    used = [False] * n

    def extend() -> bool:
        d = len(image)
        if d == n:
            return True
        for j in range(n):
            if used[j] or w1[d] != w2[j]:
                continue
            image.append(j)
            if all(same_row_space(A.select_columns(range(d + 1)), B.select_columns(image))
                   for A, B in pairs):
                used[j] = True
                if extend():
                    return True
                used[j] = False
            image.pop()
        return False

    if not extend():
        return Verdict.INEQUIVALENT
    perm = Perm(tuple(image))
    assert is_equivalence(C1, C2, perm)
    return perm


def _support_counts(C: CodeHandle) -> list[int]:
    """Number of codewords with a 1 at each coordinate (permutation-invariant)."""
    k = C.k
    rows = C.basis.data
    counts = [0] * C.n
    c = 0
    for i in range(1, 1 << k):
        c ^= rows[(i & -i).bit_length() - 1]
        for j in bits_of(c):
            counts[j] += 1
    return counts
