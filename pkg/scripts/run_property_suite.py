"""Run the randomized property suite over several seeds and summarize.

    python3 scripts/run_property_suite.py --seeds 0 1 2 --cases 1000
"""

import argparse
import time

from tautforms.props import run_all


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--cases", type=int, default=1000)
    args = p.parse_args()

    total_fail = 0
    for seed in args.seeds:
        start = time.perf_counter()
        results = run_all(seed, args.cases)
        elapsed = time.perf_counter() - start
        fails = sum(r.failures for r in results)
        total_fail += fails
        print(f"seed {seed}: {len(results)} properties x {args.cases} cases, {fails} failures ({elapsed:.1f}s)")
        for r in results:
            if not r.passed:
                print(f"    FAIL {r.name}: {r.failures}, e.g. {r.example}")
    raise SystemExit(1 if total_fail else 0)


if __name__ == "__main__":
    main()
