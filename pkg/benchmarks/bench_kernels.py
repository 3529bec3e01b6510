"""Compare the pure-Python and compiled kernel backends.

Times the three kernel entry points on representative shapes and one
end-to-end special-value slice, checking along the way that both
backends return bit-identical results.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import random
import sys
import time

from gossval.kernels import reference


def _load_core():
    try:
        from gossval.kernels import _core
    except ImportError:
        return None
    return _core


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def _row(label, ref_t, core_t):
    speedup = ref_t / core_t if core_t > 0 else float("inf")
    print(f"  {label:34s} {ref_t:9.3f}s {core_t:9.3f}s {speedup:7.1f}x")


def _rand_matrix(rng, p, d, r, tdeg):
    return [[[[rng.randrange(p) for _ in range(d)] for _ in range(tdeg)]
             for _ in range(r)] for _ in range(r)]


def bench_kernels(core, quick):
    rng = random.Random(0)
    cases = [
        ("sieve p=2 deg<=16", "monic_irreducibles", (2, 12 if quick else 16)),
        ("sieve p=3 deg<=9", "monic_irreducibles", (3, 7 if quick else 9)),
    ]
    for p, f, steps in ((2, [1, 1, 0, 0, 1], 20), (3, [1, 2, 0, 1], 12)):
        d = len(f) - 1
        C = _rand_matrix(rng, p, d, 3, 4)
        cases.append((f"kt_norm p={p} d={d} r=3 steps={steps}",
                      "kt_norm", (p, f, C, steps // 2 if quick else steps)))
        cases.append((f"kt_local_charpoly p={p} d={d} r=3",
                      "kt_local_charpoly", (p, f, C, steps // 2 if quick else steps)))
    print(f"  {'kernel':34s} {'python':>9s} {'cython':>9s} {'gain':>8s}")
    for label, name, args in cases:
        ref_out, ref_t = _timed(getattr(reference, name), *args)
        core_out, core_t = _timed(getattr(core, name), *args)
        if ref_out != core_out:
            print(f"MISMATCH in {label}", file=sys.stderr)
            return 1
        _row(label, ref_t, core_t)
    return 0


def bench_end_to_end(core, quick):
    from gossval.drinfeld import DrinfeldModule
    from gossval.fields import Fq
    from gossval import kernels
    from gossval.special_values import l_value

    prec = 6 if quick else 8
    m = DrinfeldModule(Fq(2), ["1", "1"])
    saved = kernels._BACKEND
    try:
        kernels._BACKEND = reference
        ref_rep, ref_t = _timed(l_value, m, prec, 1)
        kernels._BACKEND = core
        core_rep, core_t = _timed(l_value, m, prec, 1)
    finally:
        kernels._BACKEND = saved
    if ref_rep.value != core_rep.value:
        print("MISMATCH in rank-2 special value", file=sys.stderr)
        return 1
    print(f"  {'rank-2 special value, prec ' + str(prec):34s} "
          f"{ref_t:9.3f}s {core_t:9.3f}s {ref_t / core_t:7.1f}x")
    return 0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller shapes")
    args = ap.parse_args()
    core = _load_core()
    if core is None:
        print("compiled kernel not built; nothing to compare "
              "(pip install -e . --no-build-isolation)")
        return 0
    print("backend comparison (identical outputs verified per row)")
    rc = bench_kernels(core, args.quick)
    if rc == 0:
        rc = bench_end_to_end(core, args.quick)
    return rc


if __name__ == "__main__":
    sys.exit(main())
