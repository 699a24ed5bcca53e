"""Compare the compiled kernel against the pure-Python one.

Two layers:
  * primitive timings: the same call sequences against both backend
    modules directly, in one process;
  * end-to-end timings: a fixed decision workload run in subprocesses,
    once per backend (the backend is chosen at import time, so a fresh
    process is the only honest way to switch).

Run from the repository root:

    python3 benchmarks/bench_kernel.py
    python3 benchmarks/bench_kernel.py --repeat 5 --json
"""

import argparse
import json
import os
import random
import statistics
import subprocess
import sys
import time

from f2aut import _pure

try:
    from f2aut import _speedups
except ImportError:
    _speedups = None


def random_reduced_bytes(rng, length):
    data = []
    for _ in range(length):
        choices = [c for c in range(4) if not data or data[-1] ^ 1 != c]
        data.append(rng.choice(choices))
    return bytes(data)


def make_workload(seed=97):
    rng = random.Random(seed)
    words = [random_reduced_bytes(rng, rng.randint(1, 400)) for _ in range(300)]
    unreduced = [
        w[: len(w) // 2] + _pure.invert_bytes(w[: len(w) // 2])[::-1] + w
        for w in words
    ]
    sigma_tables = (b"\x00\x02", b"\x03\x01", b"\x02", b"\x03")
    return words, unreduced, sigma_tables


def time_primitives(mod, repeat):
    words, unreduced, tables = make_workload()
    results = {}

    def clock(name, fn):
        runs = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            runs.append(time.perf_counter() - t0)
        results[name] = statistics.median(runs)

    clock("free_reduce", lambda: [mod.free_reduce(w) for w in unreduced])
    clock("concat_reduce", lambda: [mod.concat_reduce(w, mod.invert_bytes(w)) for w in words])
    clock("least_rotation", lambda: [mod.least_rotation(w) for w in words])
    clock("apply_mapped_cyclic", lambda: [mod.apply_mapped_cyclic(w, *tables) for w in words])
    clock("step_power_lengths", lambda: [mod.step_power_lengths(w, mod.STEP_SIGMA, 8) for w in words[:60]])
    return results


END_TO_END = """
import time
from f2aut import kernel
from f2aut.decide import bounded_translation_equivalent, potentially_positive
from f2aut.words import parse_word

t0 = time.perf_counter()
assert potentially_positive(parse_word("abAB")).answer is False
assert bounded_translation_equivalent(parse_word("ab"), parse_word("ba")).answer is True
print(kernel.BACKEND, time.perf_counter() - t0)
"""


def time_end_to_end(force_pure):
    env = dict(os.environ)
    if force_pure:
        env["F2AUT_FORCE_PURE"] = "1"
    else:
        env.pop("F2AUT_FORCE_PURE", None)
    proc = subprocess.run(
        [sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True
    )
    backend, seconds = proc.stdout.split()
    return backend, float(seconds)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="median of this many runs")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args(argv)

    report = {"primitives": {}, "end_to_end": {}}
    pure = time_primitives(_pure, args.repeat)
    report["primitives"]["pure"] = pure
    if _speedups is not None:
        fast = time_primitives(_speedups, args.repeat)
        report["primitives"]["compiled"] = fast
        report["primitives"]["speedup"] = {
            k: round(pure[k] / fast[k], 1) if fast[k] > 0 else None for k in pure
        }

    if not args.skip_end_to_end:
        backend, seconds = time_end_to_end(force_pure=True)
        report["end_to_end"][backend] = seconds
        backend, seconds = time_end_to_end(force_pure=False)
        report["end_to_end"][backend] = seconds

    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return 0

    print("primitive medians over %d runs (seconds)" % args.repeat)
    names = sorted(pure)
    width = max(len(n) for n in names)
    for n in names:
        line = "  %-*s  pure %.4f" % (width, n, pure[n])
        if "compiled" in report["primitives"]:
            fast = report["primitives"]["compiled"][n]
            line += "  compiled %.4f  (%.0fx)" % (fast, pure[n] / fast if fast else float("inf"))
        print(line)
    if _speedups is None:
        print("  compiled backend not built; showing pure only")
    for backend, seconds in report["end_to_end"].items():
        print("end-to-end decision workload, %s backend: %.2fs" % (backend, seconds))
    return 0


if __name__ == "__main__":
    sys.exit(main())
