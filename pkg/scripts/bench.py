"""Wall-clock timings for the two worked inputs and a batch of random frames.

    python3 scripts/bench.py [--random N]
"""

import argparse
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from examples_data import frame_problem, immersion_problem  # noqa: E402
from instances import random_instances  # noqa: E402
from stiefeldeg.errors import HypothesisFailure  # noqa: E402
from stiefeldeg.immersion import intersection_number  # noqa: E402
from stiefeldeg.stiefel import compute_lambda  # noqa: E402


def timed(fn, repeat=3):
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        runs.append(time.perf_counter() - t0)
    return value, min(runs)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--random", type=int, default=40)
    args = ap.parse_args()

    rep, t = timed(lambda: compute_lambda(frame_problem()))
    print(f"4x2 frame example       lambda = {rep.lambda_value:>3}  dim {rep.algebra_dim:>3}  {t * 1000:8.1f} ms")
    res, t = timed(lambda: intersection_number(immersion_problem()))
    stages = res.lambda_report.prepared.timings
    print(f"immersion example       I(g)   = {res.value:>3}  dim {res.lambda_report.algebra_dim:>3}  {t * 1000:8.1f} ms")
    for name, secs in stages.items():
        print(f"    {name:<12} {secs * 1000:8.1f} ms")

    by_shape = {}
    for P in random_instances(1, args.random):
        t0 = time.perf_counter()
        try:
            compute_lambda(P)
        except HypothesisFailure:
            continue
        by_shape.setdefault((P.n, P.k), []).append(time.perf_counter() - t0)
    for (n, k), ts in sorted(by_shape.items()):
        print(f"random {n}x{k} affine frames  {len(ts):>3} runs  median {statistics.median(ts) * 1000:7.1f} ms  max {max(ts) * 1000:7.1f} ms")


if __name__ == "__main__":
    main()
