"""Benchmark the residue-histogram kernels: numba backend vs numpy fallback.

The backend is chosen at import time from GJZETA_NO_NUMBA, so each side
runs in a fresh subprocess.  Results must agree exactly; only speed may
differ.

Usage: python benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys

_WORKER = r"""
import json, os, sys, time
import numpy as np
from gjzeta._kernels import backend, gl2_histogram, m2_shell_histogram

cases_gl2 = [(2, 5, 4, 2), (3, 4, 3, 1), (2, 6, 4, 0), (5, 3, 2, 1)]
cases_m2 = [(2, 6, 4, 2), (3, 4, 3, 1)]

# warm-up triggers numba compilation so timings measure steady state
gl2_histogram(2, 2, 1, 1)
m2_shell_histogram(2, 2, 1, 1)

out = {"backend": backend(), "gl2": [], "m2": []}
for args in cases_gl2:
    t0 = time.perf_counter()
    h = gl2_histogram(*args)
    dt = time.perf_counter() - t0
    out["gl2"].append({"args": args, "seconds": dt,
                       "total": int(h.sum()), "checksum": int((h * np.arange(h.size).reshape(h.shape) % 97).sum())})
for args in cases_m2:
    t0 = time.perf_counter()
    h = m2_shell_histogram(*args)
    dt = time.perf_counter() - t0
    out["m2"].append({"args": args, "seconds": dt,
                      "total": int(h.sum()), "checksum": int((h * np.arange(h.size).reshape(h.shape) % 97).sum())})
print(json.dumps(out))
"""


def run_side(no_numba: bool) -> dict:
    env = dict(os.environ)
    if no_numba:
        env["GJZETA_NO_NUMBA"] = "1"
    else:
        env.pop("GJZETA_NO_NUMBA", None)
    proc = subprocess.run([sys.executable, "-c", _WORKER], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main() -> int:
    fast = run_side(no_numba=False)
    slow = run_side(no_numba=True)
    print("backends: %s vs %s" % (fast["backend"], slow["backend"]))
    ok = True
    for kind in ("gl2", "m2"):
        print("\n%s_histogram" % kind)
        print("%-18s %12s %12s %8s  agree" % ("args", fast["backend"], slow["backend"], "speedup"))
        for a, b in zip(fast[kind], slow[kind]):
            same = (a["total"], a["checksum"]) == (b["total"], b["checksum"])
            ok = ok and same
            print("%-18s %10.4fs %10.4fs %7.1fx  %s" % (
                tuple(a["args"]), a["seconds"], b["seconds"],
                b["seconds"] / max(a["seconds"], 1e-9), "yes" if same else "NO"))
    if not ok:
        print("\nERROR: backends disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
