import itertools
import math

import pytest

from codebreak import gf2m
from codebreak.binmat import BitMatrix, weight
from codebreak.errors import NotDecodable, NotInCode, NotIrreducible, SupportRoot, TooLarge
from codebreak.goppa import build_goppa, bruteforce_min_distance, default_support

from conftest import first_code


def test_params_m4(code42, code41):
    assert (code42.n, code42.k, code42.params.d_lower) == (16, 8, 5)
    assert (code41.n, code41.k) == (15, 11)
    assert code41.params.d_lower == 3


def test_support_rule():
    g = (5, 1)
    L = default_support(4, g)
    assert len(L) == 15 and 5 not in L
    assert default_support(4, next(gf2m.iter_irreducibles(4, 2))) == tuple(range(16))


def test_build_errors():
    with pytest.raises(SupportRoot):
        build_goppa(4, (5, 1), list(range(16)))
    with pytest.raises(NotIrreducible):
        build_goppa(4, (0, 0, 1))


@pytest.mark.parametrize("m,t", [(3, 2), (4, 1), (4, 2), (4, 3), (5, 2), (6, 2), (6, 3)])
def test_generator_is_dual_to_parity_check(m, t):
    code = first_code(m, t)
    assert (code.G @ code.H.T).is_zero()
    assert code.G.rank() == code.k
    assert code.k >= code.n - m * t


def test_syndrome_examples(code42, rng):
    assert code42.syndrome_poly(0) == ()
    for _ in range(20):
        assert code42.syndrome_poly(code42.encode(rng.getrandbits(code42.k))) == ()
    F, g = code42.field, code42.g
    for i, a in enumerate(code42.support):
        assert code42.syndrome_poly(1 << i) == gf2m.poly_invmod(F, (a, 1), g)


def test_decode_zero_error(code42, rng):
    c = code42.encode(rng.getrandbits(code42.k))
    assert code42.decode(c) == (c, 0)


def test_decoder_complete_m4_t2(code42):
    cases = 0
    errors = [sum(1 << p for p in pos) for w in range(3)
              for pos in itertools.combinations(range(code42.n), w)]
    for u in range(1 << code42.k):
        c = code42.encode(u)
        for e in errors:
            assert code42.decode(c ^ e) == (c, e)
            cases += 1
    assert cases == 256 * (1 + 16 + 120)


def test_perfect_code_t1_every_word_decodes(code41):
    assert 2 ** 11 * (1 + 15) == 2 ** 15
    for y in range(1 << 15):
        c, e = code41.decode(y)
        assert weight(e) <= 1 and code41.syndrome_bits(c) == 0


def test_decoder_soundness_random_words(rng):
    code = first_code(5, 3)
    for _ in range(2000):
        y = rng.getrandbits(code.n)
        try:
            c, e = code.decode(y)
        except NotDecodable:
            continue
        assert c ^ e == y and weight(e) <= code.t and code.syndrome_bits(c) == 0


def test_decodability_frequency_m6_t2(rng):
    code = first_code(6, 2)
    n, k, t = code.n, code.k, code.t
    p = sum(math.comb(n, i) for i in range(t + 1)) * 2.0 ** (k - n)
    assert abs(p - 0.508) < 1e-3
    N = 10000
    hits = sum(code.is_decodable(rng.getrandbits(n)) for _ in range(N))
    sigma = math.sqrt(N * p * (1 - p))
    assert abs(hits - N * p) < 3 * sigma


def test_message_of_codeword(code42, rng):
    assert code42.message_of_codeword(0) == 0
    for _ in range(50):
        u = rng.getrandbits(code42.k)
        assert code42.message_of_codeword(code42.encode(u)) == u
    c = code42.encode(rng.getrandbits(code42.k) | 1)
    with pytest.raises(NotInCode):
        code42.message_of_codeword(c ^ 1)


def test_min_distance_examples(code41):
    assert bruteforce_min_distance(BitMatrix.from_rows([(1 << 7) - 1], 7)) == 7
    assert bruteforce_min_distance(code41.G) == 3
    with pytest.raises(TooLarge):
        bruteforce_min_distance(BitMatrix.identity(17))


@pytest.mark.parametrize("t", [1, 2])
def test_min_distance_all_m4_codes(t):
    for g in gf2m.iter_irreducibles(4, t):
        code = build_goppa(4, g)
        assert code.k >= code.n - 4 * t
        assert bruteforce_min_distance(code.G) >= 2 * t + 1
