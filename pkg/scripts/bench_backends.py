#!/usr/bin/env python3
"""Benchmark the two exact-rational backends on the hot pipeline pieces.

Runs the same workloads in subprocesses with LOOPINV_RATIONAL=fraction and
=gmpy2 and prints a side-by-side table.  Workloads:

* closure: right-closure images of every level-7 word on two letters and
  the rank of the image (the dominant cost of deep table cells),
* kernel: the bracket-constraint kernel at d=3, level 6,
* fuzz: 30 seeded loop-invariance trials at d=2, level 5.

Usage: python scripts/bench_backends.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
import loopinv._rat as rat
from loopinv.invariants import InvariantSpaces
from loopinv.paths import fuzz_loop
import loopinv.tensor as tensor

out = {"backend": rat.BACKEND}

t0 = time.perf_counter()
spaces = InvariantSpaces(2)
assert spaces.closure_invariants(7).dim == 32
out["closure"] = time.perf_counter() - t0

t0 = time.perf_counter()
spaces3 = InvariantSpaces(3)
assert spaces3.conjugation_invariants(6).dim == 130
out["kernel"] = time.perf_counter() - t0

t0 = time.perf_counter()
assert fuzz_loop(2, 5, 30, seed=1).ok
out["fuzz"] = time.perf_counter() - t0

print(json.dumps(out))
"""


def run_backend(backend: str) -> dict:
    env = dict(os.environ, LOOPINV_RATIONAL=backend)
    env.setdefault("PYTHONPATH", "src")
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True
    )
    if proc.returncode != 0:
        raise RuntimeError("backend %s failed:\n%s" % (backend, proc.stderr))
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=1, help="take the best of N runs")
    args = parser.parse_args()

    backends = ["fraction"]
    try:
        import gmpy2  # noqa: F401

        backends.append("gmpy2")
    except ImportError:
        print("gmpy2 not installed; benchmarking the stdlib backend only")

    results = {}
    for backend in backends:
        best = None
        for _ in range(args.repeat):
            run = run_backend(backend)
            if best is None:
                best = run
            else:
                for key in ("closure", "kernel", "fuzz"):
                    best[key] = min(best[key], run[key])
        results[backend] = best

    names = [("closure", "rcl image, d=2 level 7"),
             ("kernel", "conj kernel, d=3 level 6"),
             ("fuzz", "loop fuzz, d=2 level 5")]
    print("%-28s" % "workload", "  ".join("%12s" % b for b in backends))
    for key, label in names:
        row = ["%11.2fs" % results[b][key] for b in backends]
        print("%-28s" % label, "  ".join("%12s" % c for c in row))
    if len(backends) == 2:
        total_f = sum(results["fraction"][k] for k, _ in names)
        total_g = sum(results["gmpy2"][k] for k, _ in names)
        print("total %.2fs vs %.2fs (gmpy2 speedup x%.1f)" % (total_f, total_g, total_f / total_g))
    return 0


if __name__ == "__main__":
    sys.exit(main())
