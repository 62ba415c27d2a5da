"""Compare the compiled and pure-Python kernels on identical inputs.

    python3 benchmarks/bench_kernels.py [--n 12] [--repeat 3]
"""
import argparse
import time

import numpy as np

from htcolor._kernels import _pure, backends
from htcolor.coloring import generate_greedy_random, generate_round_robin
from htcolor.oracle import count_c6


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def c6_search(mod, coloring):
    cyc, words, _ = mod.enumerate_c6(coloring.color_matrix, count_c6(coloring.n))
    order = np.lexsort(words.T[::-1]).astype(np.int64)
    sw = words[order]
    starts = np.concatenate(([0], np.flatnonzero(np.any(sw[1:] != sw[:-1], axis=1)) + 1, [len(cyc)]))
    masks = np.zeros(len(cyc), dtype=np.uint64)
    for col in range(6):
        masks |= np.left_shift(np.uint64(1), cyc[:, col].astype(np.uint64))
    return mod.first_disjoint_pair(masks, order, starts.astype(np.int64))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = backends()
    if "cython" not in mods:
        print("compiled extension not built; only the python backend is available")
    rr = generate_round_robin(args.n if args.n % 2 == 0 else args.n + 1)
    gr = generate_greedy_random(64, 63, 0)
    cases = [
        (f"enumerate_c6 + pair scan, round-robin K_{rr.n}", lambda m: c6_search(m, rr)),
        ("incident_conflicts, greedy K_64", lambda m: m.incident_conflicts(gr.n, gr.edge_color)),
    ]
    for label, job in cases:
        row, ref = [], None
        for name, mod in mods.items():
            reps = 1 if mod is _pure and "enumerate" in label else args.repeat
            secs, out = best_of(lambda: job(mod), reps)
            if ref is None:
                ref = out
            else:
                assert str(out) == str(ref), f"{name} disagrees on {label}"
            row.append((name, secs))
        base = dict(row).get("python")
        cells = "  ".join(f"{name}={secs * 1000:9.1f} ms" for name, secs in row)
        speed = f"  speedup x{base / dict(row)['cython']:.0f}" if base and "cython" in dict(row) else ""
        print(f"{label:48s} {cells}{speed}")


if __name__ == "__main__":
    main()
