"""Time the compiled and pure-Python kernels on the same workloads.

    python benchmarks/bench_backends.py [--repeat 5]

Each backend runs in a fresh interpreter so ``INDEXHYP_PURE`` takes effect
at import.  Prints one row per workload with the speedup.
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, timeit
import numpy as np
from indexhyp import _core

rep = int(sys.argv[1])
xs = np.geomspace(1e-4, 1e3, 2000)
ss = np.linspace(0.0, 20.0, 2000)
w = ss * 1j + 0.75
jobs = {
    "loggamma_vec[2000]": lambda: _core.loggamma_vec(w),
    "hyp2f1_line_vec x-grid[2000]": lambda: _core.hyp2f1_line_vec(1.0, 1.5, 3.0, xs),
    "hyp2f1_line_scalar s-sweep[200]": lambda: [_core.hyp2f1_line_scalar(0.5, 1.0, s, 7.0) for s in ss[::10]],
}
out = {"backend": _core.BACKEND}
for name, fn in jobs.items():
    fn()
    out[name] = min(timeit.repeat(fn, number=1, repeat=rep))
print(json.dumps(out))
"""


def run(pure, repeat):
    env = dict(os.environ)
    env.pop("INDEXHYP_PURE", None)
    if pure:
        env["INDEXHYP_PURE"] = "1"
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["backend"] != "compiled":
        print("compiled core not available; both runs used the pure-Python kernels")
    print("%-34s %12s %12s %9s" % ("workload", "compiled s", "python s", "speedup"))
    for name in fast:
        if name == "backend":
            continue
        print("%-34s %12.5f %12.5f %8.1fx" % (name, fast[name], slow[name], slow[name] / fast[name]))


if __name__ == "__main__":
    main()
