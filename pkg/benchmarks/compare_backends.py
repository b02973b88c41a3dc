"""Time the compiled and pure-numpy kernel backends on identical inputs.

The backend is chosen by the APSCALE_BACKEND environment variable at import
time, so each timing runs in a subprocess. Results must match bitwise; the
script checks that before printing the table.

Usage:
    python3 benchmarks/compare_backends.py [--sizes 200,500,1000] [--repeats 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from apscale import ApConfig, PreferenceSpec, affinity_propagation, \
    install_preferences, neg_sq_euclidean
from apscale.datasets import GenSpec, generate
from apscale.kernels import BACKEND

n, repeats = json.loads(sys.stdin.read())
S = neg_sq_euclidean(generate(GenSpec("random2d", n, seed=0)))
S = install_preferences(S, PreferenceSpec.median())
affinity_propagation(S[:50, :50])  # warm up any compilation
best = float("inf")
for _ in range(repeats):
    t0 = time.perf_counter()
    res = affinity_propagation(S)
    best = min(best, time.perf_counter() - t0)
print(json.dumps({
    "backend": BACKEND,
    "seconds": best,
    "iterations": res.iterations,
    "netsim": res.netsim,
    "exemplars": res.exemplars.tolist(),
}))
"""


def run_backend(backend, n, repeats):
    env = dict(os.environ, APSCALE_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, "-c", WORKER],
        input=json.dumps([n, repeats]),
        capture_output=True, text=True, env=env, check=True,
    )
    return json.loads(proc.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="200,500,1000")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'n':>6} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>8}  iterations")
    for n in sizes:
        fast = run_backend("numba", n, args.repeats)
        slow = run_backend("numpy", n, args.repeats)
        if fast["backend"] != "numba":
            print(f"{n:>6}  numba unavailable, both runs used {fast['backend']}")
        for key in ("iterations", "netsim", "exemplars"):
            if fast[key] != slow[key]:
                raise SystemExit(f"backend results differ at n={n} on {key}")
        ratio = slow["seconds"] / fast["seconds"]
        print(f"{n:>6} {fast['seconds']:>12.3f} {slow['seconds']:>12.3f} "
              f"{ratio:>7.1f}x  {fast['iterations']}")


if __name__ == "__main__":
    main()
