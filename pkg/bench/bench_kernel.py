"""Compare the pure-Python and compiled interpreter kernels.

    python3 bench/bench_kernel.py [--repeat N]

Workloads: pow on a large exponent, the W interpreter running pow.w, and
mix-in-L specializing pow (a self-application style run).
"""

import argparse
import time
from importlib import resources

from futamix import interp
from futamix.bta import D, S, analyze, encode_division
from futamix.guest import asset_w, load_interp_w
from futamix.lang import encode_program, load_program
from futamix.mix import encode_store
from futamix.mixobj import load_mix_object
from futamix.values import Seq


def _mix_inputs(prog, classes, vs0):
    return [encode_program(prog), encode_division(analyze(prog, classes)), encode_store(vs0)]


def workloads():
    pow_l = load_program(str(resources.files("futamix").joinpath("assets", "pow.fcl")))
    interp_w, mix_l = load_interp_w(), load_mix_object().mix_l
    return [
        ("pow 3^2000", pow_l, [3, 2000]),
        ("interpW pow.w 3^200", interp_w, [asset_w("pow.w"), Seq.of(3, 200)]),
        ("mix-in-L pow, e=2", mix_l, _mix_inputs(pow_l, {"b": D, "e": S}, {"e": 2})),
        ("mix-in-L interpW pow.w", mix_l,
         _mix_inputs(interp_w, {"wprog": S, "input": D}, {"wprog": asset_w("pow.w")})),
    ]


def bench(repeat: int):
    rows = []
    for name, prog, args in workloads():
        times = {}
        for kernel in ("python", "c"):
            try:
                interp.set_kernel(kernel)
            except ImportError:
                times[kernel] = None
                continue
            best = float("inf")
            for _ in range(repeat):
                t = time.perf_counter()
                _, steps = interp.run_counted(prog, args, 10**9)
                best = min(best, time.perf_counter() - t)
            times[kernel] = (best, steps)
        rows.append((name, times))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = bench(args.repeat)
    print(f"{'workload':<24} {'steps':>10} {'python s':>10} {'c s':>10} {'speedup':>8}")
    for name, t in rows:
        py, c = t["python"], t.get("c")
        steps = py[1]
        if c is None:
            print(f"{name:<24} {steps:>10} {py[0]:>10.3f} {'n/a':>10} {'':>8}")
        else:
            print(f"{name:<24} {steps:>10} {py[0]:>10.3f} {c[0]:>10.3f} {py[0] / c[0]:>7.1f}x")


if __name__ == "__main__":
    main()
