"""JSON file formats for keys, ciphertexts and signatures (version "v1").

Bit strings are hex of a little-endian byte string: bit i of a vector is
bit (i % 8) of byte i // 8. Matrices pack their bits row-major into one such
string, so bit r * cols + c holds entry (r, c).
"""

from __future__ import annotations

import json
from typing import Any

from .binmat import BitMatrix, Perm
from .errors import FormatError
from .goppa import GoppaCode, build_goppa
from .lyhw19 import HASH_SPEC, SigPublicKey, SigSecretKey, Signature
from .mceliece import MePublicKey, MeSecretKey
from .mme import MmePublicKey, MmeSecretKey

VERSION = "v1"
SCHEMES = ("ME", "MME", "LYHW19")


def dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def loads(text: str | bytes) -> dict:
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise FormatError("top-level JSON value must be an object")
    if obj.get("version") != VERSION:
        raise FormatError(f"unsupported version {obj.get('version')!r}")
    return obj


# -- primitives ------------------------------------------------------------------


def bits_to_hex(v: int, nbits: int) -> str:
    if v < 0 or v >> nbits:
        raise ValueError(f"value does not fit in {nbits} bits")
    return v.to_bytes((nbits + 7) // 8, "little").hex()


def hex_to_bits(s: Any, nbits: int) -> int:
    if not isinstance(s, str):
        raise FormatError("bit string must be hex text")
    try:
        raw = bytes.fromhex(s)
    except ValueError as exc:
        raise FormatError(f"bad hex: {exc}") from exc
    if len(raw) != (nbits + 7) // 8:
        raise FormatError(f"expected {(nbits + 7) // 8} bytes, got {len(raw)}")
    v = int.from_bytes(raw, "little")
    if v >> nbits:
        raise FormatError("nonzero padding bits")
    return v


def matrix_to_obj(M: BitMatrix) -> dict:
    packed = 0
    for r, row in enumerate(M.data):
        packed |= row << (r * M.ncols)
    return {"rows": M.nrows, "cols": M.ncols, "hex": bits_to_hex(packed, M.nrows * M.ncols)}


def matrix_from_obj(obj: Any) -> BitMatrix:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        packed = hex_to_bits(obj["hex"], rows * cols)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad matrix: {exc}") from exc
    mask = (1 << cols) - 1
    return BitMatrix(rows, cols, tuple((packed >> (r * cols)) & mask for r in range(rows)))


def perm_from_obj(obj: Any) -> Perm:
    try:
        return Perm(tuple(int(x) for x in obj))
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad permutation: {exc}") from exc


def code_to_obj(code: GoppaCode) -> dict:
    return {"m": code.m, "t": code.t, "g": list(code.g), "L": list(code.support)}


def code_from_obj(obj: Any) -> GoppaCode:
    try:
        code = build_goppa(int(obj["m"]), tuple(int(c) for c in obj["g"]),
                           [int(a) for a in obj["L"]])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad code description: {exc}") from exc
    except ValueError as exc:
        raise FormatError(f"invalid code: {exc}") from exc
    if code.t != obj["t"]:
        raise FormatError("t does not match deg g")
    return code


# -- keys --------------------------------------------------------------------------


def _header(scheme: str, kind: str, m: int, t: int) -> dict:
    return {"version": VERSION, "scheme": scheme, "kind": kind, "m": m, "t": t}


def public_key_to_obj(pk, m: int) -> dict:
    if isinstance(pk, MePublicKey):
        return _header("ME", "public", m, pk.t) | {"G_pub": matrix_to_obj(pk.G_pub)}
    if isinstance(pk, SigPublicKey):
        return _header("LYHW19", "public", m, pk.t) | {
            "hash_spec": pk.hash_spec, "Gp": matrix_to_obj(pk.Gp), "Gpp": matrix_to_obj(pk.Gpp)}
    if isinstance(pk, MmePublicKey):
        return _header("MME", "public", m, pk.t) | {
            "Gp": matrix_to_obj(pk.Gp), "Gpp": matrix_to_obj(pk.Gpp)}
    raise TypeError(f"unknown public key type {type(pk).__name__}")


def secret_key_to_obj(sk) -> dict:
    code = sk.code
    head = lambda scheme: _header(scheme, "secret", code.m, code.t)  # noqa: E731
    if isinstance(sk, MeSecretKey):
        return head("ME") | {"S": matrix_to_obj(sk.S), "P": list(sk.P.mapping),
                             "code": code_to_obj(code)}
    if isinstance(sk, SigSecretKey):
        return head("LYHW19") | {"hash_spec": HASH_SPEC, "A": matrix_to_obj(sk.A),
                                 "B": matrix_to_obj(sk.B), "P": list(sk.P.mapping),
                                 "code": code_to_obj(code)}
    if isinstance(sk, MmeSecretKey):
        obj = head("MME") | {"P": list(sk.P.mapping), "rho": matrix_to_obj(sk.rho),
                             "gamma": matrix_to_obj(sk.gamma), "code": code_to_obj(code)}
        if sk.A is not None and sk.B is not None:
            obj |= {"A": matrix_to_obj(sk.A), "B": matrix_to_obj(sk.B)}
        return obj
    raise TypeError(f"unknown secret key type {type(sk).__name__}")


def key_from_obj(obj: dict):
    """Parse any key object; returns a public or secret key of the right scheme."""
    scheme, kind = obj.get("scheme"), obj.get("kind")
    if scheme not in SCHEMES or kind not in ("public", "secret"):
        raise FormatError(f"unknown key type {scheme!r}/{kind!r}")
    try:
        t = int(obj["t"])
        if kind == "public":
            if scheme == "ME":
                return MePublicKey(matrix_from_obj(obj["G_pub"]), t)
            Gp, Gpp = matrix_from_obj(obj["Gp"]), matrix_from_obj(obj["Gpp"])
            if Gp.shape != Gpp.shape:
                raise FormatError("G' and G'' shapes differ")
            if scheme == "MME":
                return MmePublicKey(Gp, Gpp, t)
            if obj.get("hash_spec") != HASH_SPEC:
                raise FormatError(f"unsupported hash_spec {obj.get('hash_spec')!r}")
            return SigPublicKey(Gp, Gpp, t)
        code = code_from_obj(obj["code"])
        P = perm_from_obj(obj["P"])
        if scheme == "ME":
            return MeSecretKey(matrix_from_obj(obj["S"]), P, code)
        if scheme == "LYHW19":
            return SigSecretKey(matrix_from_obj(obj["A"]), matrix_from_obj(obj["B"]), P, code)
        A = matrix_from_obj(obj["A"]) if "A" in obj else None
        B = matrix_from_obj(obj["B"]) if "B" in obj else None
        return MmeSecretKey(P, matrix_from_obj(obj["rho"]), matrix_from_obj(obj["gamma"]),
                            code, A, B)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, ArithmeticError) as exc:
        raise FormatError(f"malformed {scheme} {kind} key: {exc!r}") from exc


# -- ciphertexts and signatures ----------------------------------------------------


def ciphertext_to_obj(scheme: str, n: int, ct) -> dict:
    obj = {"version": VERSION, "scheme": scheme, "kind": "ciphertext", "n": n}
    if scheme == "ME":
        obj["c"] = bits_to_hex(ct, n)
    else:
        obj["c1"], obj["c2"] = bits_to_hex(ct[0], n), bits_to_hex(ct[1], n)
    return obj


def ciphertext_from_obj(obj: dict):
    try:
        n = int(obj["n"])
        if obj.get("scheme") == "ME":
            return hex_to_bits(obj["c"], n)
        if obj.get("scheme") == "MME":
            return hex_to_bits(obj["c1"], n), hex_to_bits(obj["c2"], n)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed ciphertext: {exc!r}") from exc
    raise FormatError(f"unknown ciphertext scheme {obj.get('scheme')!r}")


def signature_to_obj(sig: Signature, k: int, n: int) -> dict:
    return {"version": VERSION, "scheme": "LYHW19", "kind": "signature", "k": k, "n": n,
            "i1": sig.i1, "i2": sig.i2,
            "m1": bits_to_hex(sig.m1, k), "m2": bits_to_hex(sig.m2, k),
            "e1": bits_to_hex(sig.e1, n), "e2": bits_to_hex(sig.e2, n)}


def signature_from_obj(obj: dict) -> Signature:
    if obj.get("scheme") != "LYHW19" or obj.get("kind") != "signature":
        raise FormatError("not a LYHW19 signature")
    try:
        k, n = int(obj["k"]), int(obj["n"])
        i1, i2 = obj["i1"], obj["i2"]
        if not (isinstance(i1, int) and isinstance(i2, int)):
            raise FormatError("nonces must be integers")
        return Signature(i1, i2, hex_to_bits(obj["m1"], k), hex_to_bits(obj["m2"], k),
                         hex_to_bits(obj["e1"], n), hex_to_bits(obj["e2"], n))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed signature: {exc!r}") from exc
