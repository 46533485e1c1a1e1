"""The LYHW19 hash-and-sign signature built on the modified McEliece keys.

Signing searches two decodable hash words (one per hash domain), decodes
them to k-bit messages u1, u2, and solves

    m1 A + m2 B         = u1
    (m1 + m2) A + m1 B  = u2

for (m1, m2). Verification checks the matching public equations against
G' = A G P and G'' = B G P together with the weight bound on both errors.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from .binmat import BitMatrix, Perm, inverse, random_invertible, random_perm, weight
from .errors import KeygenExhausted, NonceExhausted, NotDecodable, Singular
from .goppa import GoppaCode
from .mceliece import random_code

HASH_SPEC = "shake256-v1"
MAX_KEYGEN_ATTEMPTS = 1000
MAX_NONCE = 1 << 40
NONCE_BYTES = 8


def hash_to_word(j: int, data: bytes, n: int) -> int:
    """First n bits of SHAKE256(j || data), bit i = bit (i % 8) of byte i // 8."""
    if j not in (1, 2):
        raise ValueError("hash domain index must be 1 or 2")
    raw = hashlib.shake_256(bytes([j]) + data).digest((n + 7) // 8)
    return int.from_bytes(raw, "little") & ((1 << n) - 1)


def word_bytes(w: int, n: int) -> bytes:
    return w.to_bytes((n + 7) // 8, "little")


def message_digest(M: bytes, n: int) -> bytes:
    """d = h1(M), as ceil(n/8) bytes."""
    return word_bytes(hash_to_word(1, M, n), n)


def nonce_bytes(i: int) -> bytes:
    return i.to_bytes(NONCE_BYTES, "big")


@dataclass(frozen=True)
class SigPublicKey:
    Gp: BitMatrix
    Gpp: BitMatrix
    t: int
    hash_spec: str = HASH_SPEC

    @property
    def k(self) -> int:
        return self.Gp.nrows

    @property
    def n(self) -> int:
        return self.Gp.ncols


@dataclass(frozen=True)
class SigSecretKey:
    A: BitMatrix
    B: BitMatrix
    P: Perm
    code: GoppaCode
    P_inv: Perm = field(init=False, repr=False, compare=False)
    B_inv: BitMatrix = field(init=False, repr=False, compare=False)
    gate_inv: BitMatrix = field(init=False, repr=False, compare=False)
    Binv_A: BitMatrix = field(init=False, repr=False, compare=False)
    A_Binv: BitMatrix = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        # raises Singular if B or A + B + A B^-1 A is singular
        B_inv = inverse(self.B)
        A_Binv = self.A @ B_inv
        gate = self.A + self.B + A_Binv @ self.A
        set_ = object.__setattr__
        set_(self, "P_inv", self.P.inverse())
        set_(self, "B_inv", B_inv)
        set_(self, "A_Binv", A_Binv)
        set_(self, "Binv_A", B_inv @ self.A)
        set_(self, "gate_inv", inverse(gate))

    def public_key(self) -> SigPublicKey:
        GP = self.P.apply_matrix(self.code.G)
        return SigPublicKey(self.A @ GP, self.B @ GP, self.code.t)


@dataclass(frozen=True)
class Signature:
    i1: int
    i2: int
    m1: int
    m2: int
    e1: int
    e2: int


def keygen_sig(m: int, t: int, rng: random.Random, code: GoppaCode | None = None
               ) -> tuple[SigPublicKey, SigSecretKey]:
    if code is None:
        code = random_code(m, t, rng)
    P = random_perm(code.n, rng)
    for _ in range(MAX_KEYGEN_ATTEMPTS):
        A = random_invertible(code.k, rng)
        B = random_invertible(code.k, rng)
        try:
            sk = SigSecretKey(A, B, P, code)
        except Singular:
            continue
        return sk.public_key(), sk
    raise KeygenExhausted(f"no admissible (A, B) in {MAX_KEYGEN_ATTEMPTS} attempts")


def find_decodable(code: GoppaCode, P: Perm, j: int, d: bytes, *,
                   P_inv: Perm | None = None, max_nonce: int = MAX_NONCE
                   ) -> tuple[int, int, int, int]:
    """Smallest nonce i whose hash word decodes; returns (i, u, eP, attempts).

    ``u`` is the k-bit message of the decoded codeword and ``eP`` the residual
    mapped back through P, so that u G P + eP equals the hash word.
    """
    if P_inv is None:
        P_inv = P.inverse()
    n = code.n
    for i in range(max_nonce):
        w = hash_to_word(j, d + nonce_bytes(i), n)
        y = P_inv.apply(w)
        try:
            c, e = code.decode(y)
        except NotDecodable:
            continue
        return i, code.message_of_codeword(c), P.apply(e), i + 1
    raise NonceExhausted(f"no decodable hash word in {max_nonce} nonces")


def sign_with_cost(M: bytes, sk: SigSecretKey) -> tuple[Signature, int]:
    """Sign and also report the total number of decoding attempts."""
    n = sk.code.n
    d = message_digest(M, n)
    i1, x0, e1, a1 = find_decodable(sk.code, sk.P, 1, d, P_inv=sk.P_inv)
    i2, x1, e2, a2 = find_decodable(sk.code, sk.P, 2, d, P_inv=sk.P_inv)
    m1 = sk.gate_inv.vecmul(x1 ^ sk.Binv_A.vecmul(x0))
    m2 = sk.B_inv.vecmul(x0) ^ sk.A_Binv.vecmul(m1)
    return Signature(i1, i2, m1, m2, e1, e2), a1 + a2


def sign(M: bytes, sk: SigSecretKey) -> Signature:
    return sign_with_cost(M, sk)[0]


def verify(M: bytes, sig: Signature, pk: SigPublicKey) -> bool:
    k, n = pk.k, pk.n
    for v, bits in ((sig.m1, k), (sig.m2, k), (sig.e1, n), (sig.e2, n),
                    (sig.i1, 64), (sig.i2, 64)):
        if not isinstance(v, int) or v < 0 or v >> bits:
            return False
    if weight(sig.e1) > pk.t or weight(sig.e2) > pk.t:
        return False
    d = message_digest(M, n)
    lhs1 = pk.Gp.vecmul(sig.m1) ^ pk.Gpp.vecmul(sig.m2) ^ sig.e1
    if lhs1 != hash_to_word(1, d + nonce_bytes(sig.i1), n):
        return False
    lhs2 = pk.Gp.vecmul(sig.m1 ^ sig.m2) ^ pk.Gpp.vecmul(sig.m1) ^ sig.e2
    return lhs2 == hash_to_word(2, d + nonce_bytes(sig.i2), n)
