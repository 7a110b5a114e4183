"""Print q(0,0;2n) from the DP next to the ascending-factorial formula.

    python3 scripts/gessel_sequence.py --max 30
"""
import argparse
import time

from quadwalk.cli import gessel_sequence_rows

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--max", type=int, default=20, help="largest n")
    args = ap.parse_args()
    start = time.perf_counter()
    rows = gessel_sequence_rows(range(args.max + 1))
    for n, dp, cf, match in rows:
        print(f"{n:>3} {dp} {'ok' if match else 'MISMATCH ' + str(cf)}")
    print(f"# {sum(m for *_, m in rows)}/{len(rows)} match, {time.perf_counter() - start:.2f}s")
