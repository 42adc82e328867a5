"""Time the compiled walk kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--workers 1]
"""
import argparse
import time

from sawskel.groups import preset
from sawskel.kernels import BACKEND, MODE_BRIDGE, MODE_SAP, MODE_SAW, run_walk_counts
from sawskel.walks.counts import as_height

CASES = [
    # (label, preset, mode, n, height spec)
    ("z2 saw", "z2", MODE_SAW, 11, None),
    ("z2 sap", "z2", MODE_SAP, 14, None),
    ("z2 bridge", "z2", MODE_BRIDGE, 11, "linear:1,0"),
    ("a2-coxeter saw", "a2-coxeter", MODE_SAW, 13, None),
    ("heisenberg saw", "heisenberg", MODE_SAW, 7, None),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    if BACKEND != "cython":
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")

    print(f"{'case':<16} {'n':>3} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for label, name, mode, n, height in CASES:
        g = preset(name)
        ball = g.ball(n // 2 + 1 if mode == MODE_SAP else n)
        heights = None if height is None else as_height(g, height).on_ball(ball)
        runs = {}
        for backend in ("cython", "python"):
            runs[backend] = best_of(
                lambda: run_walk_counts(ball.neighbors, mode, n, heights, args.workers, backend=backend),
                args.repeat if backend == "cython" else 1,
            )
        (tc, oc), (tp, op) = runs["cython"], runs["python"]
        assert list(oc) == list(op), f"{label}: kernels disagree"
        print(f"{label:<16} {n:>3} {tc:>10.4f} {tp:>10.3f} {tp / tc:>7.0f}x")


if __name__ == "__main__":
    main()
