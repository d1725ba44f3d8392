"""Compare the numba and numpy kernel backends on representative workloads.

Each backend runs in its own interpreter (the backend is fixed at import time
by ``KFLAG_BACKEND``). numba compile time is excluded by a warm-up pass.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import textwrap

WORKER = textwrap.dedent(
    """
    import json, time
    import numpy as np
    from kflag import BACKEND
    from kflag.charring import PolyRing, CharPoly
    from kflag.kclasses import flag_variety
    from kflag.motivic import clear_cache, normalization_check
    from kflag.verify import hecke_relation_checks, random_global_class

    ring = PolyRing(("x1", "x2", "x3", "y"))
    rng = np.random.default_rng(0)

    def rand_poly(n, lo=-8, hi=9):
        exps = rng.integers(lo, hi, size=(n, 4))
        return CharPoly.from_arrays(ring, exps, rng.integers(-20, 21, size=n))

    a, b = rand_poly(400), rand_poly(400)
    prod = a.mul_binomial(1, (1, -1, 2, 0)).mul_binomial(-1, (0, 2, 1, 1))

    def poly_mul():
        a * b

    def poly_div():
        prod.div_binomial(-1, (0, 2, 1, 1)).div_binomial(1, (1, -1, 2, 0))

    a3 = flag_variety("A3")
    classes = [random_global_class(a3, np.random.default_rng(k)) for k in range(20)]

    def hecke_a3():
        assert all(c.passed for c in hecke_relation_checks(a3, classes, "bench"))

    b3 = flag_variety("B3")

    def normalization_b3():
        clear_cache()
        assert normalization_check(b3).equal

    work = {"poly_mul_400x400": poly_mul, "poly_div_binomial": poly_div,
            "hecke_relations_A3_20_classes": hecke_a3, "normalization_B3": normalization_b3}
    out = {"backend": BACKEND, "times": {}}
    for name, fn in work.items():
        fn()  # warm-up (numba compilation, caches)
        best = float("inf")
        for _ in range(REPEAT):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        out["times"][name] = best
    print(json.dumps(out))
    """
)


def run(backend: str, repeat: int) -> dict:
    env = dict(os.environ, KFLAG_BACKEND=backend)
    code = f"REPEAT = {repeat}\n" + WORKER
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", default=None, help="write raw timings to this file")
    args = parser.parse_args(argv)
    results = {b: run(b, args.repeat) for b in ("numba", "numpy")}
    names = list(results["numba"]["times"])
    print(f"{'workload':34s} {'numba [s]':>10s} {'numpy [s]':>10s} {'speedup':>8s}")
    for name in names:
        tn, tp = results["numba"]["times"][name], results["numpy"]["times"][name]
        print(f"{name:34s} {tn:10.4f} {tp:10.4f} {tp / tn:7.2f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2, sort_keys=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
