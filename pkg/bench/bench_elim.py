"""Time integer elimination with the compiled kernel against the pure-Python one.

    python3 bench/bench_elim.py [--repeat 3]

Workloads: the sigma matrices of the first example (the K_1 computation) and
random dense matrices.  Both backends must produce identical Hermite forms.
"""
from __future__ import annotations

import argparse
import random
import time

from pvk import intlinalg, ktheory


def _workloads():
    for k in (3, 4, 5):
        M = ktheory.sigma_matrix(k)
        yield f"sigma_{k} {len(M)}x{len(M[0])}", intlinalg.transpose(M)
    rng = random.Random(7)
    for m, n in ((20, 30), (40, 60), (50, 80)):
        yield f"random {m}x{n}", [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"]
    try:
        intlinalg.set_backend("cython")
        backends.insert(0, "cython")
    except RuntimeError:
        print("compiled kernel not built; timing the Python backend only")
    print(f"{'workload':<22}" + "".join(f"{b:>12}" for b in backends) + ("   speedup" if len(backends) == 2 else ""))
    for name, M in _workloads():
        times, results = [], []
        for b in backends:
            intlinalg.set_backend(b)
            dt, H = _time(lambda: intlinalg.hnf(M)[0], args.repeat)
            times.append(dt)
            results.append(H)
        if any(r != results[0] for r in results):
            raise SystemExit(f"{name}: backends disagree")
        line = f"{name:<22}" + "".join(f"{t * 1000:>10.1f}ms" for t in times)
        if len(times) == 2:
            line += f"   {times[1] / times[0]:>6.1f}x"
        print(line)
    intlinalg.set_backend(backends[0])


if __name__ == "__main__":
    main()
