"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each workload is run through every available backend; the report lists the
best wall time per backend and the speed-up of the compiled core.  Outputs
are compared as well so a fast but wrong kernel shows up immediately.
"""

from __future__ import annotations

import argparse
import json
import math
import timeit

import numpy as np

from pseudonull.numerics.frames import AmbientMetric, default_frame
from pseudonull.numerics.kernels import available_backends


def _mol_args(n=256, steps=2000, order=4):
    ds = 2 * math.pi / n
    u0 = np.sin(ds * np.arange(n)) + 2.0
    return (u0, ds, 0.2 * ds**2, steps, steps // 4, 1.0, 2.0, 0.0, 0.0, order)


def _frenet_args(n=20001, h=5e-4):
    tau_half = np.sin(0.5 * h * np.arange(n))
    return (tau_half, h, 0.0, default_frame(AmbientMetric(0.0)).as_array(), 4)


def _filament_args(n=128, steps=400):
    ds = 2 * math.pi / n
    tau0 = 0.5 * np.sin(ds * np.arange(n))
    anchor = default_frame(AmbientMetric(0.0)).as_array()
    return (tau0, ds, 0.2 * ds**2, steps, steps // 4, 0.0, anchor, 4, 0)


WORKLOADS = {
    "mol_rk4 (Burgers, N=256, 2000 steps)": ("mol_rk4", _mol_args),
    "frenet_rk4 (10000 steps)": ("frenet_rk4", _frenet_args),
    "filament_rk4 (N=128, 400 steps)": ("filament_rk4", _filament_args),
}


def _flatten(result):
    if isinstance(result, tuple):
        return np.concatenate([np.ravel(r) for r in result])
    return np.ravel(result)


def run(repeat: int) -> list[dict]:
    backends = available_backends()
    rows = []
    for label, (name, make_args) in WORKLOADS.items():
        args = make_args()
        times, outputs = {}, {}
        for bname, module in backends.items():
            fn = getattr(module, name)
            outputs[bname] = _flatten(fn(*args))
            times[bname] = min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))
        row = {"workload": label, "seconds": times}
        if "cython" in times:
            row["speedup"] = times["python"] / times["cython"]
            row["max_abs_diff"] = float(np.max(np.abs(outputs["python"] - outputs["cython"])))
        rows.append(row)
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", metavar="PATH", help="also write the rows as JSON")
    args = ap.parse_args(argv)
    rows = run(args.repeat)
    if "cython" not in available_backends():
        print("compiled kernels not built; timing the numpy fallback only")
    for row in rows:
        t = row["seconds"]
        line = f"{row['workload']:<40} python {t['python'] * 1e3:9.2f} ms"
        if "cython" in t:
            line += f"   cython {t['cython'] * 1e3:9.2f} ms   x{row['speedup']:6.1f}   diff {row['max_abs_diff']:.1e}"
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
