"""Arithmetic in GF(2^m) and in GF(2^m)[X].

Field elements are plain ints in polynomial-basis representation (bit i is
the coefficient of x^i). Polynomials are tuples of field elements, lowest
degree first, with no trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

import functools
import itertools
import random
from collections.abc import Iterator, Sequence

from .errors import NotInvertible, ZeroInverse

Poly = tuple[int, ...]

# Low-weight irreducible moduli, stored as full bit patterns including x^m.
MODULI: dict[int, int] = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}

_TABLE_LIMIT = 8


class GF2m:
    """The field GF(2^m) with a fixed modulus.

    Multiplication goes through log/antilog tables for m <= 8 and through a
    carry-less shift-and-reduce loop above that.
    """

    def __init__(self, m: int, modulus: int | None = None) -> None:
        if m < 1 or m > 16:
            raise ValueError(f"unsupported extension degree m={m}")
        self.m = m
        self.q = 1 << m
        self.modulus = MODULI[m] if modulus is None else modulus
        if m == 1 and modulus is None:
            self.modulus = 0b10
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if m <= _TABLE_LIMIT:
            self._build_tables()

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, modulus={self.modulus:#x})"

    def _build_tables(self) -> None:
        # Find a generator of the multiplicative group; x itself is primitive
        # for most of the table moduli but not guaranteed.
        order = self.q - 1
        for gen in range(2, self.q) if self.q > 2 else [1]:
            exp = [0] * (2 * order)
            x = 1
            seen = set()
            for i in range(order):
                exp[i] = x
                seen.add(x)
                x = self._clmul_reduce(x, gen)
            if len(seen) == order:
                break
        log = [0] * self.q
        for i in range(order):
            exp[i + order] = exp[i]
            log[exp[i]] = i
        self._exp, self._log = exp, log

    def _clmul_reduce(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & self.q:
                a ^= self.modulus
        return r

    def elements(self) -> range:
        return range(self.q)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._clmul_reduce(a, b)

    def sq(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no inverse in GF(2^m)")
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        r = 1
        while e:
            if e & 1:
                r = self._clmul_reduce(r, a)
            a = self._clmul_reduce(a, a)
            e >>= 1
        return r

    def sqrt(self, a: int) -> int:
        # squaring is the Frobenius automorphism; its inverse is a^(2^(m-1))
        for _ in range(self.m - 1):
            a = self.mul(a, a)
        return a


@functools.lru_cache(maxsize=None)
def field(m: int) -> GF2m:
    """Shared field instance for extension degree ``m``."""
    return GF2m(m)


# -- module-level element helpers ---------------------------------------------


def gf_mul(a: int, b: int, m: int) -> int:
    return field(m).mul(a, b)


def gf_inv(a: int, m: int) -> int:
    return field(m).inv(a)


# -- polynomials ---------------------------------------------------------------


def trim(p: Sequence[int]) -> Poly:
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return tuple(p[:n])


def deg(p: Poly) -> int:
    """Degree, with deg(0) = -1."""
    return len(p) - 1


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] ^= c
    return trim(out)


def poly_scale(F: GF2m, a: Poly, c: int) -> Poly:
    if c == 0:
        return ()
    return tuple(F.mul(x, c) for x in a)


def poly_shift(a: Poly, k: int) -> Poly:
    return (0,) * k + a if a else ()


def poly_mul(F: GF2m, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    mul = F.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] ^= mul(x, y)
    return trim(out)


def poly_divmod(F: GF2m, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return (), trim(r)
    lead_inv = F.inv(b[-1])
    qt = [0] * (len(r) - db)
    mul = F.mul
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = mul(c, lead_inv)
        qt[i - db] = c
        for j in range(db + 1):
            if b[j]:
                r[i - db + j] ^= mul(c, b[j])
    return trim(qt), trim(r[:db])


def poly_mod(F: GF2m, a: Poly, g: Poly) -> Poly:
    return poly_divmod(F, a, g)[1]


def poly_eval(F: GF2m, p: Poly, x: int) -> int:
    """Horner evaluation of ``p`` at ``x``."""
    acc = 0
    mul = F.mul
    for c in reversed(p):
        acc = mul(acc, x) ^ c
    return acc


def poly_mulmod(F: GF2m, a: Poly, b: Poly, g: Poly) -> Poly:
    return poly_mod(F, poly_mul(F, a, b), g)


def poly_monic(F: GF2m, a: Poly) -> Poly:
    if not a:
        return a
    return poly_scale(F, a, F.inv(a[-1]))


def poly_gcd(F: GF2m, a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, poly_mod(F, a, b)
    return poly_monic(F, a)


def poly_invmod(F: GF2m, a: Poly, g: Poly) -> Poly:
    """Inverse of ``a`` modulo ``g`` by the extended Euclidean algorithm."""
    r0, r1 = g, poly_mod(F, a, g)
    s0, s1 = (), (1,)
    while r1:
        qt, r = poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_add(s0, poly_mul(F, qt, s1))
    if len(r0) != 1:
        raise NotInvertible("polynomial shares a factor with the modulus")
    return poly_mod(F, poly_scale(F, s0, F.inv(r0[0])), g)


def poly_powmod(F: GF2m, a: Poly, e: int, g: Poly) -> Poly:
    result: Poly = (1,)
    base = poly_mod(F, a, g)
    while e:
        if e & 1:
            result = poly_mulmod(F, result, base, g)
        base = poly_mulmod(F, base, base, g)
        e >>= 1
    return poly_mod(F, result, g)


def poly_sq(F: GF2m, a: Poly) -> Poly:
    # cross terms vanish in characteristic 2
    if not a:
        return ()
    out = [0] * (2 * len(a) - 1)
    for i, c in enumerate(a):
        out[2 * i] = F.mul(c, c)
    return tuple(out)


def sqrt_x(F: GF2m, g: Poly) -> Poly:
    """The square root of X in GF(2^m)[X]/(g), i.e. X^(2^(mt-1)) mod g."""
    r: Poly = poly_mod(F, (0, 1), g)
    for _ in range(F.m * (len(g) - 1) - 1):
        r = poly_mod(F, poly_sq(F, r), g)
    return r


def poly_sqrtmod(F: GF2m, a: Poly, g: Poly, sx: Poly | None = None) -> Poly:
    """Square root of ``a`` modulo irreducible ``g``.

    Splits ``a`` into even and odd parts, a = E(X)^2 + X * O(X)^2, so that
    sqrt(a) = E + sqrt(X) * O. Pass a precomputed ``sx = sqrt_x(F, g)`` when
    calling repeatedly against the same modulus.
    """
    a = poly_mod(F, a, g)
    if not a:
        return ()
    if sx is None:
        sx = sqrt_x(F, g)
    even = trim([F.sqrt(c) for c in a[0::2]])
    odd = trim([F.sqrt(c) for c in a[1::2]])
    return poly_add(poly_mod(F, even, g), poly_mulmod(F, sx, odd, g))


def is_irreducible(F: GF2m, g: Poly) -> bool:
    """Irreducibility of a monic ``g`` over GF(2^m).

    Degree <= 2: irreducible iff no root in the field. Otherwise: Rabin-style
    ladder, gcd(g, X^(q^i) - X) = 1 for all i <= deg/2.
    """
    t = deg(g)
    if t < 1:
        return False
    if t == 1:
        return True
    if t == 2:
        return all(poly_eval(F, g, x) != 0 for x in F.elements())
    x = (0, 1)
    h: Poly = x
    for _ in range(t // 2):
        h = poly_powmod(F, h, F.q, g)
        if len(poly_gcd(F, g, poly_add(h, x))) > 1:
            return False
    return True


def iter_irreducibles(m: int, t: int) -> Iterator[Poly]:
    """Every monic irreducible degree-``t`` polynomial over GF(2^m).

    Order is lexicographic on the coefficient vector read from the X^(t-1)
    coefficient down to the constant term.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    F = field(m)
    for high_first in itertools.product(range(F.q), repeat=t):
        g = tuple(reversed(high_first)) + (1,)
        if is_irreducible(F, g):
            yield g


def random_irreducible(m: int, t: int, rng: random.Random) -> Poly:
    """Uniform monic irreducible degree-``t`` polynomial (rejection sampling)."""
    F = field(m)
    while True:
        g = tuple(rng.randrange(F.q) for _ in range(t)) + (1,)
        if is_irreducible(F, g):
            return g


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def count_irreducibles(m: int, t: int) -> int:
    """Necklace-polynomial count (1/t) * sum_{d | t} mu(d) q^(t/d), q = 2^m."""
    q = 1 << m
    total = sum(_mobius(d) * q ** (t // d) for d in range(1, t + 1) if t % d == 0)
    return total // t
