"""Modified McEliece: two public generators of one code and a split message.

Public key (G', G'', t) with G' = A G P and G'' = B G P. A message m is
split as m = m1 + m2 and encrypted as

    c1 = m1 G' + m2 G'' + e1
    c2 = m  G' + m1 G'' + e2

Decryption recovers x1 = m1 A + m2 B and x2 = m A + m1 B and returns
(x2 + x1 rho) gamma with rho = (A+B)^-1 B and gamma = [A + B (A+B)^-1 B]^-1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .binmat import BitMatrix, Perm, inverse, random_invertible, random_perm, random_weight_vector, weight
from .errors import DecryptFail, KeygenExhausted, NotDecodable, NotInCode, Singular
from .goppa import GoppaCode
from .mceliece import random_code

MAX_KEYGEN_ATTEMPTS = 1000


@dataclass(frozen=True)
class MmePublicKey:
    Gp: BitMatrix
    Gpp: BitMatrix
    t: int

    @property
    def k(self) -> int:
        return self.Gp.nrows

    @property
    def n(self) -> int:
        return self.Gp.ncols


@dataclass(frozen=True)
class MmeSecretKey:
    P: Perm
    rho: BitMatrix
    gamma: BitMatrix
    code: GoppaCode
    A: BitMatrix | None = None
    B: BitMatrix | None = None
    P_inv: Perm = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "P_inv", self.P.inverse())


def derive_rho_gamma(A: BitMatrix, B: BitMatrix) -> tuple[BitMatrix, BitMatrix]:
    """rho = (A+B)^-1 B and gamma = [A + B (A+B)^-1 B]^-1; raises Singular."""
    rho = inverse(A + B) @ B
    gamma = inverse(A + B @ rho)
    return rho, gamma


def assemble_mme(A: BitMatrix, B: BitMatrix, P: Perm, code: GoppaCode, t: int | None = None
                 ) -> tuple[MmePublicKey, MmeSecretKey]:
    rho, gamma = derive_rho_gamma(A, B)
    GP = P.apply_matrix(code.G)
    pk = MmePublicKey(A @ GP, B @ GP, code.t if t is None else t)
    return pk, MmeSecretKey(P, rho, gamma, code, A, B)


def keygen_mme(m: int, t: int, rng: random.Random, code: GoppaCode | None = None
               ) -> tuple[MmePublicKey, MmeSecretKey]:
    if code is None:
        code = random_code(m, t, rng)
    P = random_perm(code.n, rng)
    for _ in range(MAX_KEYGEN_ATTEMPTS):
        A = random_invertible(code.k, rng)
        B = random_invertible(code.k, rng)
        try:
            return assemble_mme(A, B, P, code)
        except Singular:
            continue
    raise KeygenExhausted(f"no admissible (A, B) in {MAX_KEYGEN_ATTEMPTS} attempts")


def encrypt_mme(msg: int, pk: MmePublicKey, rng: random.Random, *,
                m1: int | None = None, errors: tuple[int, int] | None = None
                ) -> tuple[int, int]:
    """Encrypt a k-bit message; ``m1`` and ``errors`` pin the coins (testing)."""
    if msg >> pk.k:
        raise ValueError(f"message longer than k={pk.k} bits")
    if m1 is None:
        m1 = rng.getrandbits(pk.k)
    m2 = msg ^ m1
    if errors is None:
        errors = (random_weight_vector(pk.n, pk.t, rng), random_weight_vector(pk.n, pk.t, rng))
    e1, e2 = errors
    c1 = pk.Gp.vecmul(m1) ^ pk.Gpp.vecmul(m2) ^ e1
    c2 = pk.Gp.vecmul(msg) ^ pk.Gpp.vecmul(m1) ^ e2
    return c1, c2


def decrypt_mme(ct: tuple[int, int], sk: MmeSecretKey, strict: bool = False) -> int:
    """Recover the message; ``strict`` also demands both errors have weight exactly t."""
    xs = []
    for c in ct:
        try:
            cw, e = sk.code.decode(sk.P_inv.apply(c))
            xs.append(sk.code.message_of_codeword(cw))
        except (NotDecodable, NotInCode) as exc:
            raise DecryptFail(str(exc)) from exc
        if strict and weight(e) != sk.code.t:
            raise DecryptFail(f"error weight {weight(e)} != t={sk.code.t}")
    x1, x2 = xs
    return sk.gamma.vecmul(x2 ^ sk.rho.vecmul(x1))
