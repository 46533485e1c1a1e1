"""Key recovery against freshly generated LYHW19 victims.

Each victim key is attacked from its public key alone; success means a
signature made with the recovered key passes the ordinary verifier.

    python scripts/run_attack.py --params 4,2 5,1 6,2 --keys 5
"""

import argparse
import statistics
import time

from codebreak.attacks import AttackReport, describe_cost, lyhw19_forger
from codebreak.lyhw19 import keygen_sig, sign, verify
from codebreak.rng import ShakeRandom


def parse_pair(text: str) -> tuple[int, int]:
    m, t = text.split(",")
    return int(m), int(t)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--params", type=parse_pair, nargs="+",
                    default=[(4, 1), (4, 2), (5, 1), (5, 2), (6, 2)])
    ap.add_argument("--keys", type=int, default=5)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", default="run-attack")
    args = ap.parse_args()

    rng = ShakeRandom(args.seed)
    for m, t in args.params:
        times, tried, wins = [], [], 0
        for _ in range(args.keys):
            pk, _ = keygen_sig(m, t, rng)
            report = AttackReport()
            start = time.perf_counter()
            key = lyhw19_forger(pk, threads=args.threads, report=report, rng=rng)
            times.append(time.perf_counter() - start)
            tried.append(report.candidates_tried)
            msg = rng.randbytes(16)
            wins += verify(msg, sign(msg, key.signing_key()), pk)
        print(f"m={m} t={t}: {wins}/{args.keys} forged, "
              f"candidates tried {statistics.fmean(tried):.1f} on average, "
              f"{statistics.fmean(times):.2f}s per key (max {max(times):.2f}s)")
    print("m=16 not attacked:", describe_cost(16, 2))


if __name__ == "__main__":
    main()
