"""Compare the compiled and interpreted search kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends get the same encoded problems, so the timings isolate the
kernel itself. Results are checked to agree before anything is reported.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from mvtopo import DigitalImage, MultiFn, _kernels  # noqa: E402
from mvtopo.multifun import search_level  # noqa: E402
from mvtopo.oracle import all_multifns, continuity_by_enumeration  # noqa: E402

from universe import I1, I2, ring_function  # noqa: E402


def cases():
    wns = MultiFn(I1, I2, {0: {0, 1}, 1: {2}})
    ring = ring_function()
    I4 = DigitalImage.interval(0, 4)
    fat = MultiFn(I4, I2, {x: {0, 1, 2} if x % 2 else {min(x, 2)} for x in range(5)})
    yield "witness: [0,1]->[0,2] weak-not-strong, r=2", lambda b: search_level(wns, 2, b)
    yield "witness: ring fixture, r=3", lambda b: search_level(ring, 3, b)
    yield "witness: ring fixture, r=4", lambda b: search_level(ring, 4, b)
    yield "witness: [0,4]->[0,2] wide values, r=3", lambda b: search_level(fat, 3, b)
    fns = list(all_multifns(I1, I2))
    yield "witness: all 49 [0,1]->[0,2], r=1..3", lambda b: [search_level(F, r, b) for F in fns for r in (1, 2, 3)]
    yield "enumeration: all 49 [0,1]->[0,2], r=1..2", lambda b: [
        continuity_by_enumeration(F, r, backend=b) for F in fns for r in (1, 2)
    ]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = sorted(_kernels.BACKENDS)
    if "cython" not in backends:
        print("compiled kernels not built; timing the interpreted backend only")
    print(f"{'case':<45}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, run in cases():
        times, outs = {}, {}
        for b in backends:
            times[b], outs[b] = best_of(lambda: run(b), args.repeat)
        if len(set(map(repr, outs.values()))) != 1:
            raise SystemExit(f"backends disagree on {name!r}")
        row = f"{name:<45}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) > 1:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
