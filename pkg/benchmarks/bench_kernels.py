"""Compare the compiled and pure-Python polynomial kernels.

    python3 benchmarks/bench_kernels.py [--q 3] [--degree 400] [--repeat 5]

Times the low-level kernels on random polynomials and one end-to-end
classification, once per implementation.
"""

import argparse
import random
import time

from tmodpure import _kernels_py
from tmodpure.fields import field_for_q

try:
    from tmodpure import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def rand_dense(rng, q, n):
    a = [rng.randrange(q) for _ in range(n)]
    a[-1] = rng.randrange(1, q)
    return a


def rand_sparse(rng, q, n, terms):
    return {rng.randrange(n): rng.randrange(1, q) for _ in range(terms)}


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def end_to_end(impl_name):
    # run the whole pipeline with the chosen kernels swapped in
    import tmodpure.fields as fields
    from tmodpure.newton import classify_tmodule
    from tmodpure.tmodule import maurischat_M, random_module

    saved = fields._k
    fields._k = _kernels_py if impl_name == "python" else _kernels_c
    try:
        rng = random.Random(3)
        mods = [maurischat_M(2)] + [random_module(field_for_q(3), rng, 3, 2) for _ in range(4)]
        t = time.perf_counter()
        for E in mods:
            classify_tmodule(E)
        return time.perf_counter() - t
    finally:
        fields._k = saved


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--degree", type=int, default=400)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    F = field_for_q(args.q)
    rng = random.Random(0)
    a, b = rand_dense(rng, F.q, args.degree), rand_dense(rng, F.q, args.degree // 2)
    sa, sb = rand_sparse(rng, F.q, 4 * args.degree, 40), rand_sparse(rng, F.q, 4 * args.degree, 40)

    impls = [("python", _kernels_py)]
    if _kernels_c is not None:
        impls.append(("cython", _kernels_c))
    else:
        print("compiled kernels not built; timing the fallback only")

    cases = {
        "dn_mul": lambda k: k.dn_mul(a, b, F),
        "dn_divmod": lambda k: k.dn_divmod(a, b, F),
        "dn_gcd": lambda k: k.dn_gcd(a, b, F),
        "sp_mul": lambda k: k.sp_mul(sa, sb, F),
        "sp_divmod": lambda k: k.sp_divmod(sp_mul_ab, sb, F),
    }
    sp_mul_ab = _kernels_py.sp_mul(sa, sb, F)

    print(f"q={F.q} degree={args.degree} (best of {args.repeat}, ms)")
    print(f"{'kernel':<12}" + "".join(f"{name:>12}" for name, _ in impls) + "     speedup")
    for case, fn in cases.items():
        times = [bench(lambda k=k: fn(k), args.repeat) * 1e3 for _, k in impls]
        speed = f"{times[0] / times[1]:>10.1f}x" if len(times) > 1 else ""
        print(f"{case:<12}" + "".join(f"{t:>12.3f}" for t in times) + speed)
    totals = [end_to_end(name) * 1e3 for name, _ in impls]
    speed = f"{totals[0] / totals[1]:>10.1f}x" if len(totals) > 1 else ""
    print(f"{'classify':<12}" + "".join(f"{t:>12.1f}" for t in totals) + speed)


if __name__ == "__main__":
    main()
