"""Binary irreducible Goppa codes and Patterson decoding."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from . import gf2m
from .binmat import BitMatrix, bits_of, nullspace, weight
from .errors import NotDecodable, NotInCode, NotIrreducible, SupportRoot, TooLarge
from .gf2m import GF2m, Poly


@dataclass(frozen=True)
class CodeParams:
    m: int
    n: int
    k: int
    t: int

    @property
    def d_lower(self) -> int:
        return 2 * self.t + 1


def default_support(m: int, g: Poly) -> tuple[int, ...]:
    """Whole field in integer order, minus the roots of ``g``.

    Only degree-1 moduli have roots, so for t >= 2 this is all of GF(2^m) and
    for t = 1 it drops the single root (n = 2^m - 1).
    """
    F = gf2m.field(m)
    return tuple(a for a in F.elements() if gf2m.poly_eval(F, g, a) != 0)


class GoppaCode:
    """The code Gamma(g, L) with its binary parity check, generator and decoder.

    ``G`` is kept in reduced row echelon form, so the message of a codeword is
    read straight off the pivot columns.
    """

    def __init__(self, m: int, g: Poly, support: Sequence[int]) -> None:
        F = gf2m.field(m)
        g = gf2m.trim(g)
        t = gf2m.deg(g)
        if t < 1 or g[-1] != 1:
            raise ValueError("Goppa polynomial must be monic of degree >= 1")
        if not gf2m.is_irreducible(F, g):
            raise NotIrreducible(f"g={g} is reducible over GF(2^{m})")
        if len(set(support)) != len(support):
            raise ValueError("support entries must be distinct")
        for a in support:
            if gf2m.poly_eval(F, g, a) == 0:
                raise SupportRoot(f"support point {a} is a root of g")

        self.field: GF2m = F
        self.m = m
        self.t = t
        self.g: Poly = g
        self.support: tuple[int, ...] = tuple(support)
        self.n = len(support)
        self._pos = {a: i for i, a in enumerate(self.support)}

        # column i of H packs the coefficients of (X - a_i)^-1 mod g, m bits each
        self._cols: list[int] = []
        self._col_polys: list[Poly] = []
        for a in self.support:
            h = gf2m.poly_invmod(F, (a, 1), g)
            self._col_polys.append(h)
            packed = 0
            for j, c in enumerate(h):
                packed |= c << (j * m)
            self._cols.append(packed)

        mt = m * t
        rows = [0] * mt
        for i, col in enumerate(self._cols):
            for b in bits_of(col):
                rows[b] |= 1 << i
        self.H = BitMatrix(mt, self.n, tuple(rows))
        self.G = nullspace(self.H)
        self.k = self.G.nrows
        self._pivots = [(r & -r).bit_length() - 1 for r in self.G.data]
        self._sqrt_x = gf2m.sqrt_x(F, g)

    @property
    def params(self) -> CodeParams:
        return CodeParams(self.m, self.n, self.k, self.t)

    def __repr__(self) -> str:
        return f"GoppaCode(m={self.m}, t={self.t}, n={self.n}, k={self.k}, g={self.g})"

    # -- encoding -------------------------------------------------------------

    def encode(self, u: int) -> int:
        return self.G.vecmul(u)

    def message_of_codeword(self, c: int) -> int:
        u = 0
        for j, p in enumerate(self._pivots):
            if (c >> p) & 1:
                u |= 1 << j
        if self.G.vecmul(u) != c:
            raise NotInCode("vector is not a codeword")
        return u

    # -- decoding -------------------------------------------------------------

    def syndrome_bits(self, y: int) -> int:
        s = 0
        cols = self._cols
        for i in bits_of(y):
            s ^= cols[i]
        return s

    def syndrome_poly(self, y: int) -> Poly:
        """S(X) = sum over set bits i of (X - a_i)^-1 mod g."""
        s = self.syndrome_bits(y)
        mask = (1 << self.m) - 1
        return gf2m.trim([(s >> (j * self.m)) & mask for j in range(self.t)])

    def decode(self, y: int) -> tuple[int, int]:
        """Patterson decoding; returns (codeword, error) or raises NotDecodable."""
        F, g, t = self.field, self.g, self.t
        S = self.syndrome_poly(y)
        if not S:
            return y, 0
        T = gf2m.poly_invmod(F, S, g)
        R = gf2m.poly_sqrtmod(F, gf2m.poly_add(T, (0, 1)), g, self._sqrt_x)
        a, b = _half_euclid(F, g, R, t // 2)
        sigma = gf2m.poly_add(gf2m.poly_sq(F, a), gf2m.poly_shift(gf2m.poly_sq(F, b), 1))
        dsig = gf2m.deg(sigma)
        if dsig < 1 or dsig > t:
            raise NotDecodable("error locator has the wrong degree")
        e = 0
        found = 0
        for i, alpha in enumerate(self.support):
            if gf2m.poly_eval(F, sigma, alpha) == 0:
                e |= 1 << i
                found += 1
                if found > dsig:
                    break
        if found != dsig or self.syndrome_bits(y ^ e) != 0:
            raise NotDecodable("error locator does not split over the support")
        return y ^ e, e

    def is_decodable(self, y: int) -> bool:
        try:
            self.decode(y)
        except NotDecodable:
            return False
        return True


def _half_euclid(F: GF2m, g: Poly, R: Poly, stop: int) -> tuple[Poly, Poly]:
    """Extended Euclid on (g, R) halted once deg(remainder) <= stop.

    Returns (a, b) with a = b * R mod g.
    """
    r0, r1 = g, R
    b0: Poly = ()
    b1: Poly = (1,)
    while gf2m.deg(r1) > stop:
        qt, r = gf2m.poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        b0, b1 = b1, gf2m.poly_add(b0, gf2m.poly_mul(F, qt, b1))
    return r1, b1


def build_goppa(m: int, g: Poly, support: Sequence[int] | None = None) -> GoppaCode:
    if support is None:
        support = default_support(m, g)
    return GoppaCode(m, g, support)


def bruteforce_min_distance(G: BitMatrix, max_dim: int = 16) -> int:
    """Exact minimum distance by walking all nonzero codewords in Gray order."""
    k = G.nrows
    if k > max_dim:
        raise TooLarge(f"2^{k} codewords exceed the enumeration budget 2^{max_dim}")
    if k == 0:
        raise ValueError("zero code has no minimum distance")
    best = G.ncols + 1
    c = 0
    rows = G.data
    for i in range(1, 1 << k):
        c ^= rows[(i & -i).bit_length() - 1]
        w = weight(c)
        if w < best:
            best = w
    return best
