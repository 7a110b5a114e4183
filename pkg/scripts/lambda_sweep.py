"""Weighted-model identities for a range of lambda, run in parallel.

    python3 scripts/lambda_sweep.py --max-lambda 8 --order 20 --jobs 4
"""
import argparse
import time
from concurrent.futures import ProcessPoolExecutor

from quadwalk.checks import WEIGHTED_CHECKS, run_weighted_check
from quadwalk.walks import DEFAULT_LAMBDA_BOUND


def sweep_one(args):
    lam, order = args
    start = time.perf_counter()
    reports = [run_weighted_check(name, lam, order) for name in WEIGHTED_CHECKS]
    return lam, reports, time.perf_counter() - start


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-lambda", type=int, default=5)
    ap.add_argument("--order", type=int, default=20)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    if not 0 <= args.max_lambda <= DEFAULT_LAMBDA_BOUND:
        ap.error(f"--max-lambda must lie in 0..{DEFAULT_LAMBDA_BOUND}")
    work = [(lam, args.order) for lam in range(args.max_lambda + 1)]
    with ProcessPoolExecutor(args.jobs) as pool:
        results = list(pool.map(sweep_one, work))
    failed = 0
    for lam, reports, secs in results:
        marks = " ".join(f"{r.check.split('[')[0]}={'pass' if r.passed else 'FAIL'}" for r in reports)
        failed += sum(not r.passed for r in reports)
        print(f"lambda={lam:<3} {marks} {secs:.2f}s")
    raise SystemExit(1 if failed else 0)
