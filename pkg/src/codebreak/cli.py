"""Command-line front end.

Exit codes: 0 success (verify: accept), 1 verify reject, 2 malformed input,
3 parameter violation, 4 attack found nothing or exceeded its budget.
"""

from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from . import formats
from .attacks import (AttackReport, candidate_count, describe_cost, lyhw19_forger,
                      me_keyrecovery_enum, mme_forger, planted_me_oracle)
from .errors import CodebreakError, DecryptFail, FormatError, NotFound, TooLarge
from .lyhw19 import SigPublicKey, SigSecretKey, keygen_sig, sign, sign_with_cost, verify
from .mceliece import MePublicKey, MeSecretKey, decrypt_me, encrypt_me, keygen_me
from .mme import MmePublicKey, MmeSecretKey, decrypt_mme, encrypt_mme, keygen_mme
from .rng import make_rng

EXIT_OK, EXIT_REJECT, EXIT_MALFORMED, EXIT_PARAMS, EXIT_ATTACK = 0, 1, 2, 3, 4
MAX_KEYGEN_M = 12


class ParamError(CodebreakError):
    """A parameter outside the supported range."""


@dataclass
class Config:
    scheme: str | None = None
    m: int | None = None
    t: int | None = None
    seed: str | None = None
    threads: int = 1

    def validate(self) -> None:
        if self.m is not None and not 3 <= self.m <= 16:
            raise ParamError(f"m={self.m} outside 3 <= m <= 16")
        if self.t is not None and not 1 <= self.t <= 10:
            raise ParamError(f"t={self.t} outside 1 <= t <= 10")
        if self.threads < 1:
            raise ParamError("threads must be >= 1")

    def rng(self):
        if self.seed is None:
            return make_rng(None)
        try:
            seed: bytes | str = bytes.fromhex(self.seed)
        except ValueError:
            seed = self.seed
        return make_rng(seed)


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc


def _read_obj(path: str) -> dict:
    return formats.loads(_read(path))


def _write(path: str, data: str | bytes) -> None:
    p = Path(path)
    if isinstance(data, str):
        p.write_text(data)
    else:
        p.write_bytes(data)


def _load_key(path: str):
    return formats.key_from_obj(_read_obj(path))


def _message_bits(raw: bytes, k: int) -> int:
    if len(raw) > (k + 7) // 8:
        raise ParamError(f"message has {len(raw)} bytes; at most {k} bits fit")
    v = int.from_bytes(raw, "little")
    if v >> k:
        raise ParamError(f"message does not fit in k={k} bits")
    return v


def _m_of(pk) -> int:
    n = pk.n
    return n.bit_length() if (n + 1) & n == 0 else n.bit_length() - 1


# -- commands ----------------------------------------------------------------------


def cmd_keygen(cfg: Config, args) -> int:
    if cfg.scheme is None or cfg.m is None or cfg.t is None:
        raise ParamError("keygen needs --scheme, --m and --t")
    if cfg.m > MAX_KEYGEN_M:
        raise ParamError(f"m={cfg.m} exceeds the desk-scale key generation limit m <= {MAX_KEYGEN_M}")
    rng = cfg.rng()
    gen = {"ME": keygen_me, "MME": keygen_mme, "LYHW19": keygen_sig}[cfg.scheme]
    pk, sk = gen(cfg.m, cfg.t, rng)
    _write(args.pub, formats.dumps(formats.public_key_to_obj(pk, cfg.m)))
    _write(args.key, formats.dumps(formats.secret_key_to_obj(sk)))
    print(f"{cfg.scheme} keys: n={pk.n} k={pk.k} t={pk.t}")
    return EXIT_OK


def cmd_encrypt(cfg: Config, args) -> int:
    pk = _load_key(args.pub)
    msg = _message_bits(_read(args.inp), pk.k)
    rng = cfg.rng()
    if isinstance(pk, MePublicKey):
        ct, scheme = encrypt_me(msg, pk, rng), "ME"
    elif isinstance(pk, MmePublicKey):
        ct, scheme = encrypt_mme(msg, pk, rng), "MME"
    else:
        raise ParamError("encryption needs an ME or MME public key")
    _write(args.out, formats.dumps(formats.ciphertext_to_obj(scheme, pk.n, ct)))
    return EXIT_OK


def cmd_decrypt(cfg: Config, args) -> int:
    sk = _load_key(args.key)
    ct = formats.ciphertext_from_obj(_read_obj(args.inp))
    try:
        if isinstance(sk, MeSecretKey) and isinstance(ct, int):
            msg = decrypt_me(ct, sk)
        elif isinstance(sk, MmeSecretKey) and isinstance(ct, tuple):
            msg = decrypt_mme(ct, sk)
        else:
            raise ParamError("key and ciphertext schemes do not match")
    except DecryptFail as exc:
        raise FormatError(f"decryption failed: {exc}") from exc
    _write(args.out, msg.to_bytes((sk.code.k + 7) // 8, "little"))
    return EXIT_OK


def cmd_sign(cfg: Config, args) -> int:
    sk = _load_key(args.key)
    if not isinstance(sk, SigSecretKey):
        raise ParamError("signing needs a LYHW19 secret key")
    sig = sign(_read(args.inp), sk)
    _write(args.out, formats.dumps(formats.signature_to_obj(sig, sk.code.k, sk.code.n)))
    return EXIT_OK


def cmd_verify(cfg: Config, args) -> int:
    pk = _load_key(args.pub)
    if not isinstance(pk, SigPublicKey):
        raise ParamError("verification needs a LYHW19 public key")
    sig = formats.signature_from_obj(_read_obj(args.sig))
    ok = verify(_read(args.inp), sig, pk)
    print("accept" if ok else "reject")
    return EXIT_OK if ok else EXIT_REJECT


def cmd_attack(cfg: Config, args) -> int:
    report = AttackReport()
    if args.m is not None and args.m > 8 and args.pub is None:
        # planning only: no victim key needed to print the refusal
        raise TooLarge("refusing full enumeration: " + describe_cost(args.m, args.t or 2))
    pk = _load_key(args.pub)
    m = cfg.m if cfg.m is not None else _m_of(pk)
    result: dict = {"target": args.target, "m": m, "t": pk.t}
    start = time.perf_counter()
    if args.target == "mme-reduction":
        if not isinstance(pk, MmePublicKey):
            raise ParamError("mme-reduction needs an MME public key")
        if args.oracle == "planted":
            if args.key is None:
                raise ParamError("the planted oracle needs the victim secret key (--key)")
            oracle = planted_me_oracle(_load_key(args.key))
        else:
            oracle = lambda p: me_keyrecovery_enum(p, m, pk.t, threads=cfg.threads,  # noqa: E731
                                                   report=report)
        sk = mme_forger(pk, oracle, rng=cfg.rng())
        report.success = True
        if args.out:
            _write(args.out, formats.dumps(formats.secret_key_to_obj(sk)))
        if args.challenge:
            ct = formats.ciphertext_from_obj(_read_obj(args.challenge))
            if not isinstance(ct, tuple):
                raise ParamError("challenge must be an MME ciphertext")
            result["challenge_plaintext_hex"] = formats.bits_to_hex(decrypt_mme(ct, sk), pk.k)
    else:
        if not isinstance(pk, SigPublicKey):
            raise ParamError("lyhw19-keyrecovery needs a LYHW19 public key")
        key = lyhw19_forger(pk, m, pk.t, threads=cfg.threads, report=report, rng=cfg.rng())
        sig_sk = key.signing_key()
        if args.out:
            _write(args.out, formats.dumps(formats.secret_key_to_obj(sig_sk)))
        message = _read(args.inp) if args.inp else b"forged by key recovery"
        sig = sign(message, sig_sk)
        report.forgery = {"message_hex": message.hex(), "accepted": verify(message, sig, pk),
                          "i1": sig.i1, "i2": sig.i2}
        if args.forged:
            _write(args.forged, formats.dumps(formats.signature_to_obj(sig, pk.k, pk.n)))
    report.wall_clock = time.perf_counter() - start
    result |= report.to_dict()
    print(report.text())
    if args.report:
        _write(args.report, json.dumps(result, indent=2) + "\n")
    return EXIT_OK


def run_bench(sk: SigSecretKey, count: int, prefix: bytes = b"bench-") -> dict:
    attempts = []
    start = time.perf_counter()
    for i in range(count):
        _, a = sign_with_cost(prefix + str(i).encode(), sk)
        attempts.append(a)
    elapsed = time.perf_counter() - start
    t = sk.code.t
    return {
        "m": sk.code.m,
        "t": t,
        "signatures": count,
        "mean_attempts": statistics.fmean(attempts),
        "variance": statistics.pvariance(attempts) if count > 1 else 0.0,
        "histogram": dict(sorted(Counter(attempts).items())),
        "predicted": 2 * math.factorial(t),
        "seconds": elapsed,
        "seconds_per_signature": elapsed / count if count else 0.0,
    }


def cmd_bench(cfg: Config, args) -> int:
    if args.key:
        sk = _load_key(args.key)
        if not isinstance(sk, SigSecretKey):
            raise ParamError("bench needs a LYHW19 secret key")
    else:
        if cfg.m is None or cfg.t is None:
            raise ParamError("bench needs --key or both --m and --t")
        _, sk = keygen_sig(cfg.m, cfg.t, cfg.rng())
    res = run_bench(sk, args.signatures)
    print(f"m={res['m']} t={res['t']} signatures={res['signatures']}")
    print(f"mean decode attempts {res['mean_attempts']:.3f} (2*t! = {res['predicted']}), "
          f"variance {res['variance']:.3f}")
    print("attempts histogram: " + " ".join(f"{a}:{c}" for a, c in res["histogram"].items()))
    print(f"wall clock {res['seconds']:.3f}s ({1000 * res['seconds_per_signature']:.2f} ms/signature)")
    if args.out:
        _write(args.out, json.dumps(res, indent=2) + "\n")
    return EXIT_OK


def cmd_estimate(cfg: Config, args) -> int:
    if cfg.m is None or cfg.t is None:
        raise ParamError("estimate needs --m and --t")
    c = candidate_count(cfg.m, cfg.t)
    print(describe_cost(cfg.m, cfg.t))
    print(f"exact irreducible count: {c['exact']}")
    print(f"2^(mt)/t estimate: {c['estimate']:.6g}")
    note = c.get("reduced_note")
    print(f"2^(m(t-3))/(mt) reduced estimate: {c['reduced_estimate']:.6g}"
          + (f" ({note})" if note else ""))
    print(f"signing cost 2*t!: {2 * math.factorial(cfg.t)} decodings")
    if args.out:
        _write(args.out, json.dumps(c, indent=2) + "\n")
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scheme", choices=formats.SCHEMES)
    common.add_argument("--m", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--seed", help="hex or text seed; omit for OS entropy")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--in", dest="inp")
    common.add_argument("--out")
    common.add_argument("--key")
    common.add_argument("--pub")

    p = argparse.ArgumentParser(prog="codebreak", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("keygen", parents=[common], help="generate a key pair (--pub, --key)")
    sub.add_parser("encrypt", parents=[common], help="encrypt --in under --pub into --out")
    sub.add_parser("decrypt", parents=[common], help="decrypt --in with --key into --out")
    sub.add_parser("sign", parents=[common], help="sign --in with --key into --out")
    v = sub.add_parser("verify", parents=[common], help="verify --sig on --in under --pub")
    v.add_argument("--sig", required=True)
    a = sub.add_parser("attack", parents=[common], help="run a key-recovery attack on --pub")
    a.add_argument("target", choices=["mme-reduction", "lyhw19-keyrecovery"])
    a.add_argument("--oracle", choices=["planted", "enum"], default="enum")
    a.add_argument("--report")
    a.add_argument("--forged", help="where to write the forged signature")
    a.add_argument("--challenge", help="MME ciphertext to decrypt with the recovered key")
    b = sub.add_parser("bench", parents=[common], help="measure signing cost")
    b.add_argument("--signatures", type=int, default=100)
    sub.add_parser("estimate", parents=[common], help="print attack cost estimates")
    return p


COMMANDS = {
    "keygen": cmd_keygen, "encrypt": cmd_encrypt, "decrypt": cmd_decrypt,
    "sign": cmd_sign, "verify": cmd_verify, "attack": cmd_attack,
    "bench": cmd_bench, "estimate": cmd_estimate,
}

REQUIRED = {
    "keygen": ("pub", "key"), "encrypt": ("pub", "inp", "out"), "decrypt": ("key", "inp", "out"),
    "sign": ("key", "inp", "out"), "verify": ("pub", "inp"),
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = Config(args.scheme, args.m, args.t, args.seed, args.threads)
    try:
        cfg.validate()
        missing = [f for f in REQUIRED.get(args.command, ()) if getattr(args, f) is None]
        if missing:
            flags = ", ".join("--" + ("in" if f == "inp" else f) for f in missing)
            raise ParamError(f"{args.command} needs {flags}")
        if args.command == "attack" and args.pub is None and not (args.m and args.m > 8):
            raise ParamError("attack needs --pub")
        return COMMANDS[args.command](cfg, args)
    except ParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (NotFound, TooLarge) as exc:
        print(f"attack stopped: {exc}", file=sys.stderr)
        return EXIT_ATTACK


if __name__ == "__main__":
    sys.exit(main())
