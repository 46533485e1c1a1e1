import pytest

from codebreak.binmat import BitMatrix, Perm, inverse, random_invertible, solve_left, weight
from codebreak.errors import DecryptFail, Singular
from codebreak.mme import assemble_mme, decrypt_mme, derive_rho_gamma, encrypt_mme, keygen_mme

from conftest import first_code


@pytest.mark.parametrize("m", [4, 5, 6])
def test_round_trips(m, rng):
    pk, sk = keygen_mme(m, 2, rng)
    for _ in range(1000):
        msg = rng.getrandbits(pk.k)
        assert decrypt_mme(encrypt_mme(msg, pk, rng), sk) == msg


def test_correctness_identity_100_keys(rng):
    I = BitMatrix.identity(8)
    for _ in range(100):
        _, sk = keygen_mme(4, 2, rng)
        A, B = sk.A, sk.B
        Si = inverse(A + B)
        assert A @ Si @ B + B @ Si @ B == B
        assert (A + B) @ sk.rho == B
        assert sk.gamma @ (A + B @ sk.rho) == I


def test_a_equal_b_rejected(rng):
    code = first_code(4, 2)
    A = random_invertible(code.k, rng)
    with pytest.raises(Singular):
        derive_rho_gamma(A, A)
    with pytest.raises(Singular):
        assemble_mme(A, A, Perm.identity(code.n), code)


def test_zero_message_zero_split(rng):
    pk, _ = keygen_mme(4, 2, rng)
    e1, e2 = 0b11, 0b1100
    assert encrypt_mme(0, pk, rng, m1=0, errors=(e1, e2)) == (e1, e2)


def test_error_weights(rng):
    pk, _ = keygen_mme(5, 2, rng)
    for _ in range(30):
        msg, m1 = rng.getrandbits(pk.k), rng.getrandbits(pk.k)
        c1, c2 = encrypt_mme(msg, pk, rng, m1=m1)
        m2 = msg ^ m1
        assert weight(c1 ^ pk.Gp.vecmul(m1) ^ pk.Gpp.vecmul(m2)) == pk.t
        assert weight(c2 ^ pk.Gp.vecmul(msg) ^ pk.Gpp.vecmul(m1)) == pk.t


def test_zero_error_variant(rng):
    pk, sk = keygen_mme(5, 2, rng)
    for _ in range(20):
        msg = rng.getrandbits(pk.k)
        assert decrypt_mme(encrypt_mme(msg, pk, rng, errors=(0, 0)), sk) == msg


def test_encryption_randomized(rng):
    pk, _ = keygen_mme(4, 2, rng)
    assert len({encrypt_mme(7, pk, rng) for _ in range(20)}) == 20


def test_strict_mode(rng):
    pk, sk = keygen_mme(4, 2, rng)
    msg = rng.getrandbits(pk.k)
    ct = encrypt_mme(msg, pk, rng, errors=(0b1, 0b110))
    assert decrypt_mme(ct, sk) == msg
    with pytest.raises(DecryptFail):
        decrypt_mme(ct, sk, strict=True)
    assert decrypt_mme(encrypt_mme(msg, pk, rng), sk, strict=True) == msg


def test_public_key_redundancy(rng):
    pk, sk = keygen_mme(5, 2, rng)
    Sigma = solve_left(pk.Gpp, pk.Gp)
    assert Sigma @ pk.Gp == pk.Gpp
    assert pk.Gp.rank() == pk.Gpp.rank() == pk.k


def test_undecodable_component(rng):
    pk, sk = keygen_mme(5, 2, rng)
    bad = 0
    for _ in range(50):
        c1 = rng.getrandbits(pk.n)
        try:
            decrypt_mme((c1, 0), sk)
        except DecryptFail:
            bad += 1
    assert bad > 0
