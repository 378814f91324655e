"""Time the compiled and interpreted kernel paths on the same workloads.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Each backend runs in its own process (the switch is read at import).  The
first call of every workload is reported separately because it includes
compilation (or cache loading) on the numba path.  Memoisation caches are
cleared before every timed call.
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from goodorient import backend, clear_caches
from goodorient.generate import random_4r4c, random_min_degree
from goodorient.orient import orient_4r4c
from goodorient.sparsity import pebble_game
from goodorient.dense import dense_triple

repeat = int(sys.argv[1])
g30 = [random_4r4c(30, s) for s in range(4)]
g50 = random_4r4c(50, 11)
d12 = [random_min_degree(12, s) for s in range(6)]

work = {
    "pebble_game(2,3) n=50": lambda: pebble_game(g50, 2, 3),
    "orient_4r4c n=30 x4": lambda: [orient_4r4c(g, 0, 17) for g in g30],
    "orient_4r4c n=50": lambda: orient_4r4c(g50, 3, 40),
    "dense_triple n=12 x6": lambda: [dense_triple(g, 0, 11) for g in d12],
}
res = {"backend": backend(), "rows": {}}
for name, fn in work.items():
    clear_caches()
    t0 = time.perf_counter()
    fn()
    first = time.perf_counter() - t0
    times = []
    for _ in range(repeat):
        clear_caches()
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    res["rows"][name] = {"first": first, "best": min(times), "mean": sum(times) / len(times)}
print(json.dumps(res))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, GOODORIENT_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'workload':28s} {fast['backend'] + ' first':>12s} {'best':>9s} "
          f"{slow['backend'] + ' first':>13s} {'best':>9s} {'speedup':>8s}")
    for name, f in fast["rows"].items():
        s = slow["rows"][name]
        speed = s["best"] / f["best"] if f["best"] > 0 else float("inf")
        print(f"{name:28s} {f['first']:12.4f} {f['best']:9.4f} {s['first']:13.4f} {s['best']:9.4f} {speed:8.2f}x")


if __name__ == "__main__":
    main()
