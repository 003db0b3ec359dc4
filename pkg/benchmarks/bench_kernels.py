"""Compare the compiled and pure-Python kernels.

Run with ``python3 benchmarks/bench_kernels.py``.  Each kernel is fed the
same random inputs in Q(zeta_12) by both backends; results are checked for
equality before timings are reported.  The last row times a full catalog
build in a fresh interpreter per backend.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from gradekit import _kernels_py
from gradekit.exactmath import field

try:
    from gradekit import _kernels
except ImportError:
    _kernels = None


def random_raw(fld, rng, bound=5):
    return fld.raw_of(fld.from_coeffs([rng.randint(-bound, bound) for _ in range(fld.degree)]))


def workloads(fld, rng, size):
    elems = [random_raw(fld, rng) for _ in range(200)]
    nz = [e for e in elems if any(e[1:])]
    mat = [[random_raw(fld, rng) for _ in range(size)] for _ in range(size)]
    mat2 = [[random_raw(fld, rng) for _ in range(size)] for _ in range(size)]
    zero = fld.raw_of(0)
    return {
        "add x200": lambda K: [K.add(a, b) for a, b in zip(elems, elems[1:])],
        "mul x200": lambda K: [K.mul(a, b, fld.red) for a, b in zip(elems, elems[1:])],
        "inv x200": lambda K: [K.inv(a, fld.red, fld.gal) for a in nz],
        f"matmul {size}x{size}": lambda K: K.matmul(mat, mat2, fld.red, zero),
        f"rref {size}x{size}": lambda K: K.rref([list(r) for r in mat], fld.red, fld.gal),
    }


CATALOG = (
    "from gradekit.catalog import entry_names, build_entry\n"
    "for n in entry_names():\n"
    "    try: build_entry(n, 12)\n"
    "    except Exception: pass\n"
)


def _run(env):
    best = None
    for _ in range(3):
        t = timeit.default_timer()
        subprocess.run([sys.executable, "-c", CATALOG], env=env, check=True)
        dt = timeit.default_timer() - t
        best = dt if best is None else min(best, dt)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--conductor", type=int, default=12)
    ap.add_argument("--size", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _kernels is None:
        sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    fld = field(args.conductor)
    loads = workloads(fld, random.Random(args.seed), args.size)
    print(f"{'kernel':16} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for name, fn in loads.items():
        assert fn(_kernels_py) == fn(_kernels), name
        tp = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:16} {tp * 1e3:12.3f} {tc * 1e3:12.3f} {tp / tc:8.2f}")
    tp, tc = _run(dict(os.environ, GRADEKIT_PURE="1")), _run(dict(os.environ, GRADEKIT_PURE="0"))
    print(f"{'catalog (s)':16} {tp:12.3f} {tc:12.3f} {tp / tc:8.2f}")


if __name__ == "__main__":
    main()
