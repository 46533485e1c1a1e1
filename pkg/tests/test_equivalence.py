import pytest
from hypothesis import given, settings, strategies as st

from codebreak.binmat import BitMatrix, Perm, dot, random_matrix, random_perm, same_row_space
from codebreak.errors import DimensionMismatch, TooLarge
from codebreak.equivalence import (
    CodeHandle, SSAStats, Verdict, bruteforce_permutation, hull, is_equivalence,
    partition, position_signature, ssa_permutation, weight_enumerator,
)
from codebreak.rng import ShakeRandom

from conftest import first_code

EXT_HAMMING = BitMatrix.from_lists([
    [1, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 1, 1, 1, 1, 0, 0],
    [0, 0, 0, 0, 1, 1, 1, 1],
    [1, 0, 1, 0, 1, 0, 1, 0],
])


def random_code(n, k, rng):
    while True:
        G = random_matrix(k, n, rng)
        if G.rank() == k:
            return CodeHandle(G)


def test_self_dual_hull():
    C = CodeHandle(EXT_HAMMING)
    H = hull(C)
    assert H.nrows == 4 and same_row_space(H, EXT_HAMMING)
    assert weight_enumerator(H) == [1, 0, 0, 0, 14, 0, 0, 0, 1]


def test_enumerator_small_cases():
    assert weight_enumerator(BitMatrix(0, 5, ())) == [1, 0, 0, 0, 0, 0]
    assert weight_enumerator(BitMatrix.from_rows([0b1011], 5)) == [1, 0, 0, 1, 0, 0]
    with pytest.raises(TooLarge):
        weight_enumerator(BitMatrix.identity(21))


def test_random_hull_trivial_often(rng):
    trivial = 0
    for _ in range(50):
        C = random_code(10, 4, rng)
        H = hull(C)
        for v in H.data:
            assert same_row_space(C.basis.vstack(BitMatrix.from_rows([v], 10)), C.basis)
            assert all(dot(v, r) == 0 for r in C.basis.data)
        trivial += H.nrows == 0
    assert trivial >= 15


def test_hull_invariance_100_codes(rng):
    for _ in range(100):
        n = rng.randint(8, 16)
        C = random_code(n, rng.randint(2, n - 2), rng)
        D = C.permuted(random_perm(n, rng))
        assert hull(C).nrows == hull(D).nrows
        assert weight_enumerator(hull(C)) == weight_enumerator(hull(D))


def test_signature_multiset_invariant(rng):
    for _ in range(20):
        C = random_code(11, 5, rng)
        D = C.permuted(random_perm(11, rng))
        sc = sorted(position_signature(C, i) for i in range(11))
        sd = sorted(position_signature(D, i) for i in range(11))
        assert sc == sd


def test_signature_tracks_positions(rng):
    C = random_code(10, 4, rng)
    pi = random_perm(10, rng)
    D = C.permuted(pi)
    for i in range(10):
        assert position_signature(C, i) == position_signature(D, pi.mapping[i])


def test_repetition_code_flat():
    C = CodeHandle(BitMatrix.from_rows([(1 << 7) - 1], 7))
    assert len({position_signature(C, i) for i in range(7)}) == 1


def test_pinned_position_rejected(rng):
    with pytest.raises(ValueError):
        position_signature(random_code(8, 3, rng), 2, pinned=(2,))


def test_refinement_monotone(rng):
    for _ in range(20):
        C = random_code(12, 5, rng)
        base = [position_signature(C, i) for i in range(12)]
        p = rng.randrange(12)
        pinned = [(base[i], position_signature(C, i, (p,)) if i != p else None) for i in range(12)]
        cells_before = partition(base)
        cells_after = partition(pinned)
        assert len(cells_after) >= len(cells_before)
        for cell in cells_after.values():
            assert len({base[i] for i in cell}) == 1


def test_ssa_self(rng):
    C = random_code(12, 5, rng)
    perm = ssa_permutation(C, C)
    assert isinstance(perm, Perm) and is_equivalence(C, C, perm)


def test_ssa_planted_12_5(rng):
    for _ in range(50):
        C = random_code(12, 5, rng)
        pi = random_perm(12, rng)
        D = C.permuted(pi)
        found = ssa_permutation(C, D)
        assert isinstance(found, Perm)
        assert same_row_space(found.apply_matrix(C.G), D.G)


def test_ssa_goppa_planted(rng):
    for m, t in [(4, 1), (4, 2), (5, 1), (5, 2)]:
        C = CodeHandle(first_code(m, t).G)
        D = C.permuted(random_perm(C.n, rng))
        stats = SSAStats()
        found = ssa_permutation(C, D, stats=stats)
        assert isinstance(found, Perm) and is_equivalence(C, D, found)
        assert stats.verify_failures == 0


def test_ssa_inequivalent_pairs(rng):
    seen = 0
    for _ in range(30):
        C1, C2 = random_code(10, 4, rng), random_code(10, 4, rng)
        verdict = ssa_permutation(C1, C2)
        oracle = bruteforce_permutation(C1, C2)
        if oracle == Verdict.INEQUIVALENT:
            seen += 1
            assert verdict == Verdict.INEQUIVALENT
        else:
            assert isinstance(verdict, Perm) and is_equivalence(C1, C2, verdict)
    assert seen > 20


def test_degenerate_on_tiny_budget(rng):
    C = CodeHandle(BitMatrix.from_rows([(1 << 8) - 1], 8))
    D = C.permuted(random_perm(8, rng))
    assert ssa_permutation(C, D, budget=1) == Verdict.DEGENERATE


def test_dimension_mismatch(rng):
    with pytest.raises(DimensionMismatch):
        ssa_permutation(random_code(8, 3, rng), random_code(8, 4, rng))


def test_bruteforce_examples(rng):
    C = random_code(8, 3, rng)
    assert bruteforce_permutation(C, C) == Perm.identity(8)
    D = C.permuted(random_perm(8, rng))
    found = bruteforce_permutation(C, D)
    assert isinstance(found, Perm) and is_equivalence(C, D, found)
    with pytest.raises(TooLarge):
        bruteforce_permutation(random_code(11, 3, rng), random_code(11, 3, rng))


@settings(max_examples=60)
@given(seed=st.integers(0, 2**32), n=st.integers(4, 9), planted=st.booleans())
def test_ssa_agrees_with_bruteforce(seed, n, planted):
    rng = ShakeRandom(seed)
    k = rng.randint(1, n - 1)
    C1 = random_code(n, k, rng)
    C2 = C1.permuted(random_perm(n, rng)) if planted else random_code(n, k, rng)
    verdict, oracle = ssa_permutation(C1, C2), bruteforce_permutation(C1, C2)
    assert isinstance(verdict, Perm) == isinstance(oracle, Perm)
    if isinstance(verdict, Perm):
        assert is_equivalence(C1, C2, verdict)
