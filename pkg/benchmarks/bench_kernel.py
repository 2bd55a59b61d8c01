#!/usr/bin/env python3
"""Compare the compiled and pure-Python kernels on representative workloads.

Usage:
    python benchmarks/bench_kernel.py             # run both kernels, print table
    python benchmarks/bench_kernel.py --repeat 5

Workloads:
  raw       kernel-level normal-form reductions on random dense-ish polys
  groebner  reduced Groebner bases of random ideals (3 vars, degree 4)
  pipeline  certificate transforms on a 5-edge split graph (end to end)

Each workload runs in a subprocess with TAMEMOD_KERNEL forced, so import-time
selection is exercised exactly as in production.
"""

import argparse
import json
import os
import subprocess
import sys
import time


def workload_raw():
    import random

    from tamemod._core import impl as K

    rng = random.Random(7)
    order = ((0, 1), 0, 0)

    def rand_poly(nterms):
        raw = [
            (
                rng.randrange(2),
                tuple(rng.randint(0, 4) for _ in range(4)),
                rng.randint(-9, 9),
                rng.randint(1, 7),
            )
            for _ in range(nterms)
        ]
        return K.canon(raw, *order)

    basis = [p for p in (rand_poly(8) for _ in range(6)) if p]
    t0 = time.time()
    acc = 0
    for _ in range(400):
        f = rand_poly(30)
        rem, _ = K.reduce(f, basis, *order, False)
        acc += len(rem)
    return time.time() - t0, acc


def workload_groebner():
    import random

    from tamemod.exactalg import EdgeRing, groebner

    rng = random.Random(11)
    ring = EdgeRing(("x", "y", "z"))
    t0 = time.time()
    sizes = 0
    for trial in range(60):
        gens = []
        for _ in range(3):
            terms = {}
            for _ in range(4):
                expo = tuple(rng.randint(0, 4) for _ in range(3))
                terms[expo] = rng.randint(-5, 5)
            gens.append(ring.poly(terms))
        gens = [g for g in gens if not g.is_zero()]
        if gens:
            sizes += len(groebner(gens))
    return time.time() - t0, sizes


def workload_pipeline():
    import random

    from tamemod.graphsplit import EdgeGraph, MaxBlockCount, split_edge, tame_partitions
    from tamemod.serre import transform_corpus

    split = split_edge(EdgeGraph(("a", "b", "c", "e")), "e")
    t0 = time.time()
    rows = transform_corpus(split, MaxBlockCount(2), samples=25, seed=99, max_level=3)
    assert all(r["ok"] for r in rows)
    return time.time() - t0, len(rows)


WORKLOADS = {
    "raw": workload_raw,
    "groebner": workload_groebner,
    "pipeline": workload_pipeline,
}


def run_child(workload: str, kernel: str) -> dict:
    env = dict(os.environ, TAMEMOD_KERNEL=kernel)
    code = (
        "import json, sys; sys.path.insert(0, 'benchmarks'); "
        "import bench_kernel as b; "
        "from tamemod._core import kernel_name; "
        f"t, chk = b.WORKLOADS[{workload!r}](); "
        "print(json.dumps({'kernel': kernel_name(), 'seconds': t, 'check': chk}))"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    parser.add_argument("--workloads", default="raw,groebner,pipeline")
    args = parser.parse_args()

    from tamemod._core import implementations

    kernels = list(implementations())
    print(f"kernels available: {', '.join(kernels)}")
    print(f"{'workload':<10} {'kernel':<8} {'best (s)':>9}   speedup")
    for name in args.workloads.split(","):
        results = {}
        checks = set()
        for kernel in kernels:
            best = None
            for _ in range(args.repeat):
                r = run_child(name, kernel)
                assert r["kernel"] == kernel
                checks.add(r["check"])
                best = r["seconds"] if best is None else min(best, r["seconds"])
            results[kernel] = best
        if len(checks) != 1:
            raise SystemExit(f"workload {name}: kernels disagree ({checks})")
        base = results["python"]
        for kernel in kernels:
            rel = base / results[kernel] if results[kernel] else float("inf")
            print(f"{name:<10} {kernel:<8} {results[kernel]:>9.3f}   {rel:>5.2f}x")
    print("checksums agree across kernels")


if __name__ == "__main__":
    main()
