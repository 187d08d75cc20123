"""Compare the compiled sweep kernel, its pure-Python fallback and the
exact library path on the same workload.

    python3 benchmarks/bench_kernels.py [--max-length 4] [--library-sample 300]

The workload certifies every nontrivial element of length <= max-length
over every graph on <= 4 vertices (up to isomorphism). The fallback runs in
a child process with RAAGPL_DISABLE_NUMBA=1, since the flag is read at
import time. Both kernel runs must report the same checksum.
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from oracles import graphs_up_to_isomorphism  # noqa: E402


def kernel_run(max_length):
    from raagpl._accel import HAVE_NUMBA
    from raagpl.kernels import adjacency_masks, sweep_graph

    graphs = [g for n in range(5) for g in graphs_up_to_isomorphism(n)]
    t0 = time.perf_counter()
    # first call compiles (or loads the on-disk cache)
    sweep_graph(adjacency_masks(graphs[-1]), 4, 1)
    warm = time.perf_counter() - t0
    t0 = time.perf_counter()
    elements = failures = checksum = 0
    for g in graphs:
        counts, f, _, s = sweep_graph(adjacency_masks(g), len(g.vertices), max_length)
        elements += int(counts[1:].sum())
        failures += int(f)
        checksum = (checksum * 31 + int(s)) % (1 << 61)
    return {
        "numba": HAVE_NUMBA,
        "warmup_s": warm,
        "seconds": time.perf_counter() - t0,
        "elements": elements,
        "failures": failures,
        "checksum": checksum,
    }


def child(max_length, disable):
    env = dict(os.environ, RAAGPL_DISABLE_NUMBA="1" if disable else "0")
    res = subprocess.run(
        [sys.executable, __file__, "--child", "--max-length", str(max_length)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(res.stdout)


def library_run(max_length, sample, seed=0):
    from raagpl.sweep import random_graph, random_word
    from raagpl.witness import build_witness, verify_witness
    from raagpl.words import reduce

    rng = random.Random(seed)
    cases = []
    while len(cases) < sample:
        g = random_graph(rng, rng.randint(1, 4))
        e = reduce(g, random_word(rng, g, rng.randint(1, 2 * max_length)))
        if 1 <= len(e) <= max_length:
            cases.append((g, e))
    t0 = time.perf_counter()
    for g, e in cases:
        verify_witness(build_witness(g, e))
    return {"seconds": time.perf_counter() - t0, "elements": sample}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-length", type=int, default=4)
    ap.add_argument("--library-sample", type=int, default=300)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        print(json.dumps(kernel_run(args.max_length)))
        return 0

    compiled = child(args.max_length, disable=False)
    fallback = child(args.max_length, disable=True)
    library = library_run(args.max_length, args.library_sample)
    if compiled["checksum"] != fallback["checksum"] or compiled["elements"] != fallback["elements"]:
        print("compiled and fallback kernels disagree", file=sys.stderr)
        return 1

    rows = [
        ("compiled kernel", compiled),
        ("fallback kernel", fallback),
        ("library (sample)", library),
    ]
    print(f"workload: all elements with |w| <= {args.max_length}, graphs on <= 4 vertices")
    print(f"{'path':<18}{'elements':>10}{'seconds':>10}{'us/elem':>10}")
    for name, r in rows:
        per = 1e6 * r["seconds"] / max(r["elements"], 1)
        print(f"{name:<18}{r['elements']:>10}{r['seconds']:>10.3f}{per:>10.1f}")
    if not compiled["numba"]:
        print("note: numba unavailable, both kernel rows ran uncompiled")
    print(f"speedup compiled/fallback: {fallback['seconds'] / compiled['seconds']:.0f}x")
    print(f"failures: {compiled['failures']}, checksum {compiled['checksum']}")
    return 0 if compiled["failures"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
