"""Compare the compiled and pure-Python series kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--json]

Each workload runs under both backends; results are checked for equality
before timings are reported.
"""

import argparse
import json
import random
import time

from fgl import kernels
from fgl.chromatic import height
from fgl.elliptic import WeierstrassCurve, is_smooth, supersingular
from fgl.laws import Honda, Multiplicative, PTypicalAraki, build_law, n_series
from fgl.rings import IntegersMod, Polynomial, PrimeField, build_ring
from fgl.series import TruncatedSeries


def dense_bivariate(R, N, seed):
    rng = random.Random(seed)
    coeffs = {(i, j): rng.randrange(R.m) for i in range(N + 1) for j in range(N + 1 - i)}
    return TruncatedSeries.from_terms(R, ("x", "y"), N, coeffs)


def bivariate_products():
    R = build_ring(PrimeField(101))
    a, b = dense_bivariate(R, 40, 1), dense_bivariate(R, 40, 2)
    out = a
    for _ in range(5):
        out = out * b
    return out


def honda_height():
    law = build_law(Honda(2, 4), build_ring(PrimeField(2)), 17)
    return height(law, 2).verdict


def araki_nseries():
    R = build_ring(Polynomial(IntegersMod(9), ("u1",)))
    law = build_law(PTypicalAraki(3, ("u1", "1")), R, 27)
    return n_series(law, 3)


def multiplicative_nseries():
    law = build_law(Multiplicative(), build_ring(PrimeField(7)), 60)
    return n_series(law, 1000)


def supersingular_sweep():
    F = build_ring(PrimeField(13))
    verdicts = []
    for a4 in range(0, 13, 3):
        for a6 in range(1, 13, 3):
            C = WeierstrassCurve(F, a4=a4, a6=a6)
            if is_smooth(C):
                verdicts.append(supersingular(C, 13))
    return verdicts


WORKLOADS = [
    ("bivariate products, GF(101), N=40", bivariate_products),
    ("Honda(2,4) height, N=17", honda_height),
    ("Araki law + [3], ZZ/9[u1], N=27 (generic path)", araki_nseries),
    ("[1000] of multiplicative, GF(7), N=60", multiplicative_nseries),
    ("supersingular sweep, GF(13)", supersingular_sweep),
]


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true", help="print machine-readable timings")
    args = parser.parse_args()

    try:
        kernels.use("cython")
    except ImportError:
        parser.exit(1, "compiled extension not built; run `pip install -e . --no-build-isolation`\n")

    rows = []
    for label, fn in WORKLOADS:
        timings, results = {}, {}
        for backend in ("cython", "python"):
            kernels.use(backend)
            timings[backend], results[backend] = best_of(fn, args.repeat)
        if results["cython"] != results["python"]:
            raise SystemExit(f"backends disagree on {label!r}")
        rows.append({"workload": label, **timings, "speedup": timings["python"] / timings["cython"]})
    kernels.use("cython")

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    width = max(len(r["workload"]) for r in rows)
    print(f"{'workload':<{width}}  {'cython':>9}  {'python':>9}  speedup")
    for r in rows:
        print(f"{r['workload']:<{width}}  {r['cython']:>8.3f}s  {r['python']:>8.3f}s  {r['speedup']:>6.1f}x")


if __name__ == "__main__":
    main()
