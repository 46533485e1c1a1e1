"""Textbook McEliece encryption over a scrambled binary Goppa code."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .binmat import BitMatrix, Perm, inverse, random_invertible, random_perm, random_weight_vector
from .errors import DecryptFail, NotDecodable, NotInCode
from .gf2m import random_irreducible
from .goppa import GoppaCode, build_goppa


@dataclass(frozen=True)
class MePublicKey:
    G_pub: BitMatrix
    t: int

    @property
    def k(self) -> int:
        return self.G_pub.nrows

    @property
    def n(self) -> int:
        return self.G_pub.ncols


@dataclass(frozen=True)
class MeSecretKey:
    S: BitMatrix
    P: Perm
    code: GoppaCode
    S_inv: BitMatrix = field(init=False, repr=False, compare=False)
    P_inv: Perm = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "S_inv", inverse(self.S))
        object.__setattr__(self, "P_inv", self.P.inverse())

    def public_generator(self) -> BitMatrix:
        return self.P.apply_matrix(self.S @ self.code.G)


def random_code(m: int, t: int, rng: random.Random) -> GoppaCode:
    return build_goppa(m, random_irreducible(m, t, rng))


def keygen_me(m: int, t: int, rng: random.Random) -> tuple[MePublicKey, MeSecretKey]:
    code = random_code(m, t, rng)
    S = random_invertible(code.k, rng)
    P = random_perm(code.n, rng)
    sk = MeSecretKey(S, P, code)
    return MePublicKey(sk.public_generator(), t), sk


def encrypt_me(msg: int, pk: MePublicKey, rng: random.Random, error: int | None = None) -> int:
    """c = msg G_pub + e with w(e) = t; ``error`` overrides e (testing)."""
    if msg >> pk.k:
        raise ValueError(f"message longer than k={pk.k} bits")
    e = random_weight_vector(pk.n, pk.t, rng) if error is None else error
    return pk.G_pub.vecmul(msg) ^ e


def decrypt_me(c: int, sk: MeSecretKey) -> int:
    y = sk.P_inv.apply(c)
    try:
        cw, _ = sk.code.decode(y)
        x = sk.code.message_of_codeword(cw)
    except (NotDecodable, NotInCode) as exc:
        raise DecryptFail(str(exc)) from exc
    return sk.S_inv.vecmul(x)
