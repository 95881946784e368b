#!/usr/bin/env python3
"""Benchmark the compiled core against the pure-Python fallback.

The hot loops are exponential-polynomial evaluation (every kernel value,
every quadrature node, every norm-scan point) and the series kernel
summation.  Run after building the extension:

    python benchmarks/bench_backends.py
"""

import time

import numpy as np

from quadfact import _purecore

try:
    from quadfact import _fastcore
except ImportError:
    _fastcore = None

CORES = [("python", _purecore)] + ([("cython", _fastcore)] if _fastcore else [])


def bench(label, fn, repeat=5):
    best = min(_timed(fn) for _ in range(repeat))
    print(f"  {label:<28s} {best * 1e3:9.2f} ms")
    return best


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def expoly_workload(core):
    rng = np.random.default_rng(1)
    lam = (rng.uniform(-2, 2, 6) + 1j * rng.uniform(-2, 2, 6)).astype(np.complex128)
    jexp = rng.integers(0, 4, 6).astype(np.intc)
    coef = (rng.uniform(-1, 1, 6) + 1j * rng.uniform(-1, 1, 6)).astype(np.complex128)
    ts = np.linspace(0.0, 1.0, 20000)

    def scalar():
        acc = 0.0
        for t in ts[:4000]:
            acc += core.expoly_eval(lam, jexp, coef, float(t)).real
        return acc

    def vector():
        return core.expoly_eval_many(lam, jexp, coef, ts)

    return scalar, vector


def zeta_workload(core):
    def run():
        acc = 0.0
        for t in np.linspace(0.0, 4.0, 4000):
            acc += core.zeta_series(4, 2, -3.0, float(t))
        return acc

    return run


def end_to_end():
    import quadfact as qf

    rules = qf.verification_matrix(0.0, 1.0, seed=0)[:4]
    funcs = qf.builtin_test_functions(seed=0)[:6]

    def run():
        for rule in rules:
            for f in funcs:
                rule.verify(f, tol=1e-9)

    return run


def main():
    results = {}
    for name, core in CORES:
        print(f"{name} core:")
        scalar, vector = expoly_workload(core)
        results[name, "expoly scalar x4000"] = bench("expoly scalar x4000", scalar)
        results[name, "expoly vector 20k pts"] = bench("expoly vector 20k pts", vector)
        results[name, "zeta series x4000"] = bench("zeta series x4000", zeta_workload(core))
    if _fastcore is not None:
        print("speedups (python / cython):")
        for key in ("expoly scalar x4000", "expoly vector 20k pts", "zeta series x4000"):
            ratio = results["python", key] / results["cython", key]
            print(f"  {key:<28s} {ratio:6.1f}x")
    import quadfact

    print(f"end-to-end (active backend: {quadfact.BACKEND}):")
    bench("verification subset", end_to_end(), repeat=3)


if __name__ == "__main__":
    main()
