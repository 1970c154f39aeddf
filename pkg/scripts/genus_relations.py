"""Generate relations from the vanishing (g+1)-st power for a few small cases.

For each genus and each weight vector m with sum(m) = 0 (so n = 0) the power
is expanded on C^r, integrated down to C^s and normalized.  A nonzero result is
a linear relation among contracted graphs.

    python3 scripts/genus_relations.py --g 2 3
"""

import argparse
import time

from tautforms.dsl import render_expr
from tautforms.relations import RWQuery, rw_power, rw_relation

# (m, number of marks kept after integration)
CASES = [
    ((1, -1), 0),
    ((1, -1), 1),
    ((2, -2), 0),
    ((1, 1, -2), 0),
]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--g", type=int, nargs="+", default=[2])
    args = p.parse_args()

    for g in args.g:
        print(f"== genus {g} ==")
        for m, s in CASES:
            q = RWQuery(g, m, 0, forget_to=s)
            start = time.perf_counter()
            terms = len(rw_power(q))
            rel = rw_relation(q)
            elapsed = time.perf_counter() - start
            print(f"m={m} n=0 C^{len(m)} -> C^{s}: {terms} terms before integration ({elapsed:.2f}s)")
            print(f"    {render_expr(rel)} = 0")


if __name__ == "__main__":
    main()
