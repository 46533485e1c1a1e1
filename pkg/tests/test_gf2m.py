import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from codebreak import gf2m
from codebreak.errors import NotInvertible, ZeroInverse
from codebreak.gf2m import (GF2m, field, gf_inv, gf_mul, is_irreducible, iter_irreducibles,
                            poly_eval, poly_invmod, poly_mulmod, poly_sqrtmod, random_irreducible)


def ref_mul(a, b, m):
    """Schoolbook carry-less product, then long division by the modulus."""
    prod = 0
    for i in range(m):
        if (b >> i) & 1:
            prod ^= a << i
    mod = gf2m.MODULI[m]
    for bit in range(2 * m - 2, m - 1, -1):
        if (prod >> bit) & 1:
            prod ^= mod << (bit - m)
    return prod


def gf2_poly_irreducible(p):
    """Trial division over GF(2) for bitmask polynomials."""
    d = p.bit_length() - 1
    for q in range(2, 1 << (d // 2 + 1)):
        r = p
        dq = q.bit_length() - 1
        while r and r.bit_length() - 1 >= dq:
            r ^= q << (r.bit_length() - 1 - dq)
        if r == 0:
            return False
    return True


@pytest.mark.parametrize("m", sorted(gf2m.MODULI))
def test_moduli_irreducible_over_gf2(m):
    assert gf2_poly_irreducible(gf2m.MODULI[m])


def test_spec_modulus_table():
    assert gf2m.MODULI[3] == 0b1011
    assert gf2m.MODULI[4] == 0b10011
    assert gf2m.MODULI[5] == 0b100101
    assert gf2m.MODULI[6] == 0b1000011
    assert gf2m.MODULI[7] == 0b10000011
    assert gf2m.MODULI[8] == 0b100011101
    assert gf2m.MODULI[16] == (1 << 16) | (1 << 12) | 0b1011


def test_mul_examples():
    assert gf_mul(0x2, 0x9, 4) == 0x1
    for m in (4, 8, 12):
        for a in (0, 1, 5, (1 << m) - 1):
            assert gf_mul(a, 1, m) == a
            assert gf_mul(a, 0, m) == 0


def test_inv_examples():
    assert gf_inv(1, 4) == 1
    # exhaustive search oracle
    assert [b for b in range(1, 16) if ref_mul(2, b, 4) == 1] == [9]
    assert gf_inv(2, 4) == 9
    with pytest.raises(ZeroInverse):
        gf_inv(0, 4)


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8])
def test_table_mul_matches_reference_and_inverses(m):
    F = field(m)
    for a in range(F.q):
        for b in range(a, F.q, max(1, F.q // 32)):
            assert F.mul(a, b) == ref_mul(a, b, m)
    assert all(F.mul(a, F.inv(a)) == 1 for a in range(1, F.q))


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_field_axioms_exhaustive(m):
    F = field(m)
    els = range(F.q)
    for a, b in itertools.product(els, repeat=2):
        ab = F.mul(a, b)
        assert ab == F.mul(b, a)
        assert F.sq(a ^ b) == F.sq(a) ^ F.sq(b)
        for c in els:
            assert F.mul(ab, c) == F.mul(a, F.mul(b, c))
            assert F.mul(a, b ^ c) == ab ^ F.mul(a, c)


@given(st.integers(9, 16), st.data())
def test_field_axioms_large_m(m, data):
    F = field(m)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, b) == F.mul(b, a) == ref_mul(a, b, m)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.sq(F.sqrt(a)) == a


def test_poly_eval_examples():
    F = field(4)
    for a in range(16):
        assert poly_eval(F, (0, 1), a) == a
    assert poly_eval(F, (1, 0, 1), 1) == 0
    assert poly_eval(F, (0, 0, 1), 2) == 4


def test_poly_mulmod_invmod_examples():
    F = field(4)
    g = (1, 1, 1)
    assert poly_mulmod(F, (0, 1), (0, 1), g) == (1, 1)
    assert poly_invmod(F, (0, 1), g) == (1, 1)
    assert poly_invmod(F, (1,), g) == (1,)
    b = (3, 7, 5, 1)
    assert poly_mulmod(F, (1,), b, g) == gf2m.poly_mod(F, b, g)
    assert poly_mulmod(F, g, b, g) == ()
    with pytest.raises(NotInvertible):
        poly_invmod(F, g, g)


def test_sqrtmod_examples(code42):
    F, g = code42.field, code42.g
    assert poly_sqrtmod(F, (1,), g) == (1,)
    assert poly_sqrtmod(F, (), g) == ()


def _irreducible_pairs(rng, count):
    for _ in range(count):
        m = rng.choice([3, 4, 5, 6, 8])
        t = rng.choice([1, 2, 3, 4])
        F = field(m)
        g = random_irreducible(m, t, rng)
        a = gf2m.trim([rng.randrange(F.q) for _ in range(t)])
        yield F, g, a


def test_invmod_roundtrip_1000(rng):
    done = 0
    for F, g, a in _irreducible_pairs(rng, 1000):
        if not a:
            continue
        assert poly_mulmod(F, a, poly_invmod(F, a, g), g) == (1,)
        done += 1
    assert done > 900


def test_sqrtmod_roundtrip_1000(rng):
    for F, g, r in _irreducible_pairs(rng, 1000):
        assert poly_sqrtmod(F, poly_mulmod(F, r, r, g), g) == r


def test_sqrt_x_is_power():
    F = field(5)
    g = next(iter_irreducibles(5, 3))
    assert gf2m.sqrt_x(F, g) == gf2m.poly_powmod(F, (0, 1), 2 ** (5 * 3 - 1), g)


def test_is_irreducible_examples():
    F4 = GF2m(2)
    assert not is_irreducible(F4, (1, 1, 1))
    F = field(4)
    assert all(is_irreducible(F, (b, 1)) for b in range(16))


def test_quadratic_count_brute_force():
    F = field(4)
    reducible = {gf2m.poly_mul(F, (a, 1), (b, 1)) for a in range(16) for b in range(16)}
    monic = [(c0, c1, 1) for c0 in range(16) for c1 in range(16)]
    brute = [g for g in monic if g not in reducible]
    assert len(brute) == 120 == (16 * 16 - 16) // 2
    assert sum(is_irreducible(F, g) for g in monic) == 120
    assert set(iter_irreducibles(4, 2)) == set(brute)


def test_cubic_irreducible_agrees_with_root_test():
    F = field(3)
    for c in itertools.product(range(8), repeat=3):
        g = c + (1,)
        no_root = all(poly_eval(F, g, x) for x in range(8))
        assert is_irreducible(F, g) == no_root


@pytest.mark.parametrize("m,t", [(m, t) for m in range(3, 7) for t in (1, 2, 3)])
def test_iter_irreducibles_matches_mobius(m, t):
    polys = list(iter_irreducibles(m, t))
    assert len(polys) == len(set(polys)) == gf2m.count_irreducibles(m, t)
    assert polys == sorted(polys, key=lambda g: g[::-1])


def test_iter_irreducibles_linear():
    assert list(iter_irreducibles(4, 1)) == [(b, 1) for b in range(16)]
    assert len(list(iter_irreducibles(4, 2))) <= 2 ** 8 // 2


def test_random_irreducible_uniform(rng):
    counts = Counter(random_irreducible(4, 2, rng) for _ in range(12000))
    assert len(counts) == 120
    expected = 100.0
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    # 119 degrees of freedom; 99.9th percentile is about 173
    assert chi2 < 173
    assert random_irreducible(4, 1, rng)[1] == 1
