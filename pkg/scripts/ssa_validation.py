"""Cross-check the support splitting search against exhaustive search.

    python scripts/ssa_validation.py --pairs 200 --max-n 10
"""

import argparse
from collections import Counter

from codebreak.binmat import random_matrix, random_perm
from codebreak.equivalence import CodeHandle, SSAStats, Verdict, bruteforce_permutation, ssa_permutation
from codebreak.rng import ShakeRandom


def random_code(n, k, rng):
    while (G := random_matrix(k, n, rng)).rank() != k:
        pass
    return CodeHandle(G)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=100)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--seed", default="ssa-validation")
    args = ap.parse_args()

    rng = ShakeRandom(args.seed)
    tally: Counter = Counter()
    nodes = []
    for i in range(args.pairs):
        n = rng.randint(4, args.max_n)
        k = rng.randint(1, n - 1)
        C1 = random_code(n, k, rng)
        C2 = C1.permuted(random_perm(n, rng)) if i % 2 == 0 else random_code(n, k, rng)
        stats = SSAStats()
        v = ssa_permutation(C1, C2, stats=stats)
        o = bruteforce_permutation(C1, C2)
        nodes.append(stats.nodes)
        same = (v == Verdict.INEQUIVALENT) == (o == Verdict.INEQUIVALENT)
        tally["agree" if same else "DISAGREE"] += 1
        tally["equivalent" if o != Verdict.INEQUIVALENT else "inequivalent"] += 1
    print(dict(tally))
    print(f"search nodes: mean {sum(nodes) / len(nodes):.1f}, max {max(nodes)}")


if __name__ == "__main__":
    main()
