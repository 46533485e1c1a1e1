"""Key recovery against the modified McEliece scheme and the LYHW19 signature.

Two procedures live here:

* :func:`mme_forger` turns any McEliece key-recovery routine into one for the
  modified scheme. G' and G'' generate the same code, so G'' = Sigma G' for a
  k x k matrix Sigma found by elimination; recovering A from G' alone then
  gives B = Sigma A and everything else follows.
* :func:`me_keyrecovery_enum` is such a routine for small t: walk every monic
  irreducible Goppa polynomial of degree t, and test the resulting code for
  permutation equivalence with the public code. :func:`lyhw19_forger` chains
  the two to rebuild a working signing key.
"""

from __future__ import annotations

import hashlib
import math
import random
import time
from collections import Counter
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import gf2m
from .binmat import BitMatrix, Perm, solve_left
from .equivalence import CodeHandle, SSAStats, ssa_permutation
from .errors import (DecryptFail, NoSolution, NotFound, NotSameCode, OracleFailure, Singular,
                     SingularDerived, TooLarge)
from .goppa import GoppaCode, build_goppa
from .lyhw19 import SigPublicKey, SigSecretKey, sign, verify
from .mceliece import MePublicKey, MeSecretKey, decrypt_me, encrypt_me
from .mme import MmePublicKey, MmeSecretKey, decrypt_mme, derive_rho_gamma, encrypt_mme
from .rng import ShakeRandom

MAX_DESK_M = 8

MeOracle = Callable[[MePublicKey], MeSecretKey]


def compute_sigma(Gp: BitMatrix, Gpp: BitMatrix) -> BitMatrix:
    """The unique Sigma with Sigma @ Gp = Gpp."""
    try:
        return solve_left(Gpp, Gp)
    except NoSolution as exc:
        raise NotSameCode("G'' is not in the row space of G'") from exc
    except Singular as exc:
        raise NotSameCode("G' does not have full row rank") from exc


def _check_mme_key(pk: MmePublicKey, sk: MmeSecretKey, trials: int, rng: random.Random) -> None:
    for _ in range(trials):
        msg = rng.getrandbits(pk.k)
        try:
            ok = decrypt_mme(encrypt_mme(msg, pk, rng), sk) == msg
        except DecryptFail:
            ok = False
        if not ok:
            raise OracleFailure("recovered key fails to decrypt")


def mme_forger(pk: MmePublicKey, oracle: MeOracle, *, verify_trials: int = 100,
               rng: random.Random | None = None) -> MmeSecretKey:
    """Recover an MME secret key given a McEliece key-recovery oracle."""
    sigma = compute_sigma(pk.Gp, pk.Gpp)
    try:
        me_sk = oracle(MePublicKey(pk.Gp, pk.t))
    except OracleFailure:
        raise
    except Exception as exc:
        raise OracleFailure(f"oracle raised {exc!r}") from exc
    if me_sk.public_generator() != pk.Gp:
        raise OracleFailure("oracle key does not reproduce G'")
    A = me_sk.S
    B = sigma @ A
    try:
        rho, gamma = derive_rho_gamma(A, B)
    except Singular as exc:
        raise SingularDerived(str(exc)) from exc
    sk = MmeSecretKey(me_sk.P, rho, gamma, me_sk.code, A, B)
    _check_mme_key(pk, sk, verify_trials, rng or ShakeRandom(b"mme-forger-check"))
    return sk


def planted_me_oracle(sk: MmeSecretKey | SigSecretKey) -> MeOracle:
    """An oracle that 'recovers' (A, P, D_C) from ground truth, for wiring tests."""
    if sk.A is None:
        raise ValueError("planted oracle needs A")

    def oracle(pk: MePublicKey) -> MeSecretKey:
        return MeSecretKey(sk.A, sk.P, sk.code)

    return oracle


# -- enumeration + support splitting ------------------------------------------------


def candidate_count(m: int, t: int) -> dict:
    """Exact and estimated sizes of the Goppa-polynomial search space."""
    q = 1 << m
    n = q if t > 1 else q - 1
    exact = gf2m.count_irreducibles(m, t)
    estimate = 2 ** (m * t) / t
    reduced = 2 ** (m * (t - 3)) / (m * t)
    out = {
        "m": m,
        "t": t,
        "n": n,
        "exact": exact,
        "estimate": estimate,
        "log2_estimate": m * t - math.log2(t),
        "reduced_estimate": reduced,
        "work_ops": exact * n**3,
        "log2_work_ops": math.log2(exact) + 3 * math.log2(n),
    }
    if t < 3:
        out["reduced_note"] = "formula degenerates for t < 3"
    return out


def cost_estimate(m: int, t: int, n: int | None = None) -> float:
    """Rough operation count: candidates x n^3 for one equivalence test each."""
    if n is None:
        n = (1 << m) if t > 1 else (1 << m) - 1
    return gf2m.count_irreducibles(m, t) * float(n) ** 3


def describe_cost(m: int, t: int) -> str:
    c = candidate_count(m, t)
    return (f"m={m}, t={t}: {c['exact']} candidate polynomials "
            f"(2^{m * t}/{t} = 2^{c['log2_estimate']:.2f}), "
            f"x n^3 with n={c['n']} -> about 2^{c['log2_work_ops']:.1f} operations")


@dataclass
class AttackReport:
    candidates_tried: int = 0
    outcomes: Counter = field(default_factory=Counter)
    wall_clock: float = 0.0
    success: bool = False
    winning_g: tuple[int, ...] | None = None
    ssa_nodes: int = 0
    fingerprint: str | None = None
    forgery: dict | None = None

    def to_dict(self) -> dict:
        return {
            "candidates_tried": self.candidates_tried,
            "outcomes": dict(self.outcomes),
            "wall_clock": round(self.wall_clock, 4),
            "success": self.success,
            "winning_g": list(self.winning_g) if self.winning_g else None,
            "ssa_nodes": self.ssa_nodes,
            "fingerprint": self.fingerprint,
            "forgery": self.forgery,
        }

    def text(self) -> str:
        lines = [
            f"success: {self.success}",
            f"candidates tried: {self.candidates_tried}",
            "outcomes: " + ", ".join(f"{k}={v}" for k, v in sorted(self.outcomes.items())),
            f"wall clock: {self.wall_clock:.3f}s",
        ]
        if self.winning_g is not None:
            lines.append(f"equivalent Goppa polynomial (low degree first): {list(self.winning_g)}")
        if self.fingerprint:
            lines.append(f"recovered key fingerprint: {self.fingerprint}")
        if self.forgery:
            lines.append(f"forgery accepted by verifier: {self.forgery.get('accepted')}")
        return "\n".join(lines)


def _try_candidate(m: int, g: tuple[int, ...], G_pub: BitMatrix, budget: int
                   ) -> tuple[str, Perm | None, int]:
    code = build_goppa(m, g)
    if code.n != G_pub.ncols or code.k != G_pub.nrows:
        return "dimension", None, 0
    stats = SSAStats()
    res = ssa_permutation(CodeHandle(code.G), CodeHandle(G_pub), budget=budget, stats=stats)
    if isinstance(res, Perm):
        return "equivalent", res, stats.nodes
    return res, None, stats.nodes


def _check_me_key(pk: MePublicKey, sk: MeSecretKey, trials: int, rng: random.Random) -> bool:
    for _ in range(trials):
        msg = rng.getrandbits(pk.k)
        try:
            if decrypt_me(encrypt_me(msg, pk, rng), sk) != msg:
                return False
        except DecryptFail:
            return False
    return True


def field_degree(n: int, t: int) -> int:
    m = (n + (1 if t == 1 else 0)).bit_length() - 1
    if (1 << m) != n + (1 if t == 1 else 0):
        raise ValueError(f"length n={n} does not match a full-support Goppa code with t={t}")
    return m


def me_keyrecovery_enum(pk: MePublicKey, m: int | None = None, t: int | None = None, *,
                        threads: int = 1, budget: int = 10**6, verify_trials: int = 100,
                        report: AttackReport | None = None,
                        rng: random.Random | None = None) -> MeSecretKey:
    """Recover a McEliece key by enumerating Goppa polynomials and running SSA."""
    t = pk.t if t is None else t
    m = field_degree(pk.n, t) if m is None else m
    if m > MAX_DESK_M:
        raise TooLarge("refusing full enumeration: " + describe_cost(m, t))
    report = report if report is not None else AttackReport()
    rng = rng or ShakeRandom(b"me-keyrecovery-check")
    start = time.perf_counter()
    candidates = gf2m.iter_irreducibles(m, t)

    def accept(g, perm: Perm) -> MeSecretKey | None:
        code = build_goppa(m, g)
        S = solve_left(pk.G_pub, perm.apply_matrix(code.G))
        sk = MeSecretKey(S, perm, code)
        if sk.public_generator() != pk.G_pub or not _check_me_key(pk, sk, verify_trials, rng):
            report.outcomes["verify_failed"] += 1
            return None
        return sk

    try:
        if threads <= 1:
            for g in candidates:
                verdict, perm, nodes = _try_candidate(m, g, pk.G_pub, budget)
                report.candidates_tried += 1
                report.outcomes[verdict] += 1
                report.ssa_nodes += nodes
                if perm is not None and (sk := accept(g, perm)) is not None:
                    report.success, report.winning_g = True, g
                    return sk
        else:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                while True:
                    batch = [g for _, g in zip(range(threads), candidates)]
                    if not batch:
                        break
                    futures = [pool.submit(_try_candidate, m, g, pk.G_pub, budget) for g in batch]
                    # scan in candidate order so the winner does not depend on timing
                    for g, fut in zip(batch, futures):
                        verdict, perm, nodes = fut.result()
                        report.candidates_tried += 1
                        report.outcomes[verdict] += 1
                        report.ssa_nodes += nodes
                        if perm is not None and (sk := accept(g, perm)) is not None:
                            for f in futures:
                                f.cancel()
                            report.success, report.winning_g = True, g
                            return sk
    finally:
        report.wall_clock = time.perf_counter() - start
    raise NotFound(f"no equivalent Goppa code among {report.candidates_tried} candidates")


# -- LYHW19 -------------------------------------------------------------------------


@dataclass(frozen=True)
class RecoveredKey:
    """A functionally equivalent secret key rebuilt from public data only."""

    code: GoppaCode
    P: Perm
    A: BitMatrix
    B: BitMatrix
    sigma: BitMatrix

    @property
    def g(self) -> tuple[int, ...]:
        return self.code.g

    @property
    def support(self) -> tuple[int, ...]:
        return self.code.support

    def rho_gamma(self) -> tuple[BitMatrix, BitMatrix]:
        return derive_rho_gamma(self.A, self.B)

    def signing_key(self) -> SigSecretKey:
        return SigSecretKey(self.A, self.B, self.P, self.code)

    def mme_key(self) -> MmeSecretKey:
        rho, gamma = self.rho_gamma()
        return MmeSecretKey(self.P, rho, gamma, self.code, self.A, self.B)

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.code.m, self.code.g, self.code.support, self.P.mapping,
                       self.A.data, self.B.data)).encode())
        return h.hexdigest()[:16]


def lyhw19_forger(pk: SigPublicKey, m: int | None = None, t: int | None = None, *,
                  threads: int = 1, verify_messages: int = 20,
                  report: AttackReport | None = None,
                  rng: random.Random | None = None) -> RecoveredKey:
    """Rebuild a LYHW19 signing key from the public key alone."""
    sigma = compute_sigma(pk.Gp, pk.Gpp)
    report = report if report is not None else AttackReport()
    me_sk = me_keyrecovery_enum(MePublicKey(pk.Gp, pk.t), m, t, threads=threads,
                                report=report, verify_trials=0)
    A = me_sk.S
    key = RecoveredKey(me_sk.code, me_sk.P, A, sigma @ A, sigma)
    try:
        sig_sk = key.signing_key()
    except Singular as exc:
        # A is fixed up to a code automorphism M, and the signing gate becomes
        # gate @ M, so singularity here means the public key is not honest.
        raise SingularDerived(str(exc)) from exc
    rng = rng or ShakeRandom(b"lyhw19-forger-check")
    for _ in range(verify_messages):
        msg = rng.randbytes(16)
        if not verify(msg, sign(msg, sig_sk), pk):
            raise OracleFailure("recovered key produced a rejected signature")
    report.fingerprint = key.fingerprint()
    return key
