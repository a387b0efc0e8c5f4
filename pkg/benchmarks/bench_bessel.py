"""Compare the compiled and pure-Python Bessel kernels.

    python3 benchmarks/bench_bessel.py [--repeat N]
"""
import argparse
import json
import math
import random
import timeit

from l2stokes import bessel
from l2stokes.geometry import circle, sphere
from l2stokes.spectrum import scalar_cone_spectrum


def workloads(kernel):
    rng = random.Random(0)
    grid = [(rng.uniform(0, 40), rng.uniform(0, 120)) for _ in range(2000)]
    return {
        "bessel_j x2000": lambda: [kernel.bessel_j(n, x) for n, x in grid],
        "zeros nu=0..20 x5": lambda: [kernel.bessel_zeros(nu, 5) for nu in range(21)],
        "zeros nu=37.5 x20": lambda: kernel.bessel_zeros(37.5, 20),
    }


def cone_tables():
    return [scalar_cone_spectrum(circle(2 * math.pi), 1.0, 40), scalar_cone_spectrum(sphere(2), 1.0, 40)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help="print a JSON document instead of a table")
    args = ap.parse_args()

    py = bessel.python_backend()
    ext = bessel.compiled_backend()
    rows = []
    for name, fn in workloads(py).items():
        t_py = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        t_ext = min(timeit.repeat(workloads(ext)[name], number=1, repeat=args.repeat)) if ext else None
        rows.append({"workload": name, "python_s": t_py, "cython_s": t_ext,
                     "speedup": t_py / t_ext if t_ext else None})
    t_cone = min(timeit.repeat(cone_tables, number=1, repeat=args.repeat))
    rows.append({"workload": f"cone tables ({bessel.BACKEND})", "python_s": None, "cython_s": None,
                 "speedup": None, "active_s": t_cone})

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    if ext is None:
        print("compiled kernel not built; timing the fallback only")
    print(f"{'workload':28s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for r in rows:
        if "active_s" in r:
            print(f"{r['workload']:28s} {r['active_s'] * 1e3:12.2f}")
            continue
        c = f"{r['cython_s'] * 1e3:12.2f}" if r["cython_s"] else f"{'-':>12s}"
        s = f"{r['speedup']:8.1f}" if r["speedup"] else f"{'-':>8s}"
        print(f"{r['workload']:28s} {r['python_s'] * 1e3:12.2f} {c} {s}")


if __name__ == "__main__":
    main()
