"""Print the table of contracted-graph counts and cross-check degree 2 against
the closed form r(r-1)/2 + r + 2.

    python3 scripts/count_table.py --r-max 6 --d-max 2
"""

import argparse
import time

from tautforms.enumeration import count_table


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--r-max", type=int, default=6)
    p.add_argument("--d-max", type=int, default=2)
    args = p.parse_args()

    start = time.perf_counter()
    table = count_table(args.r_max, args.d_max)
    elapsed = time.perf_counter() - start

    print("r\\d " + "".join(f"{d:>8d}" for d in range(args.d_max + 1)))
    for r, row in enumerate(table):
        print(f"{r:<4d}" + "".join(f"{c:>8d}" for c in row))
    print(f"\n({elapsed:.2f}s)")
    if args.d_max >= 1:
        bad = [r for r, row in enumerate(table) if row[1] != r * (r - 1) // 2 + r + 2]
        print("degree-2 closed form:", "ok" if not bad else f"mismatch at r={bad}")


if __name__ == "__main__":
    main()
