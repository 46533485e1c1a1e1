"""Signing cost versus 2*t! for a sweep of (m, t).

    python scripts/bench_signing.py --m 6 --t 1 2 3 --signatures 300
"""

import argparse
import json

from codebreak.cli import run_bench
from codebreak.lyhw19 import keygen_sig
from codebreak.rng import ShakeRandom


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, nargs="+", default=[6])
    ap.add_argument("--t", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--signatures", type=int, default=200)
    ap.add_argument("--seed", default="bench-signing")
    ap.add_argument("--json", help="also write results here")
    args = ap.parse_args()

    rng = ShakeRandom(args.seed)
    rows = []
    print(f"{'m':>3} {'t':>3} {'N':>6} {'mean':>8} {'2t!':>5} {'var':>8} {'ms/sig':>8}")
    for m in args.m:
        for t in args.t:
            _, sk = keygen_sig(m, t, rng)
            r = run_bench(sk, args.signatures)
            rows.append(r)
            print(f"{m:>3} {t:>3} {r['signatures']:>6} {r['mean_attempts']:>8.3f} "
                  f"{r['predicted']:>5} {r['variance']:>8.2f} "
                  f"{1000 * r['seconds_per_signature']:>8.2f}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
