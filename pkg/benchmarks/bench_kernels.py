"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

Times each hot kernel on identical inputs, plus an end-to-end rl_integral call
with each backend forced (in a subprocess, since the backend is chosen at
import time).
"""

import argparse
import math
import os
import subprocess
import sys
import timeit

import numpy as np

from fracalc import _pykernels
from fracalc.numeric import jacobi_rule
from fracalc.symbolic import GenExpr, PowerTerm, TrigTerm

try:
    from fracalc import _ckernels
except ImportError:
    _ckernels = None

EXPR = GenExpr.from_terms(
    [PowerTerm(1.5, 0.5), PowerTerm(-2.0, 1.7), PowerTerm(0.25, math.pi)],
    [TrigTerm(1.0, "sin", 0.3), TrigTerm(0.5, "cos")],
)

END_TO_END = (
    "from fracalc import GenExpr, rl_integral, rl_derivative; "
    "f = GenExpr.power(1.0, 2.5) + GenExpr.trig('sin'); "
    "import timeit; "
    "t = min(timeit.repeat(lambda: (rl_integral(f, 0.7, 1.3, 128), rl_derivative(f, 1.5, 1.3)), "
    "number=50, repeat={repeat})); "
    "print(t / 50)"
)


def _cases():
    rule = jacobi_rule(0.7, 128)
    packed = EXPR.packed
    return {
        "lanczos_gamma": lambda k: [k.lanczos_gamma(x) for x in np.linspace(0.5, 150.0, 200)],
        "sinpi": lambda k: [k.sinpi(x) for x in np.linspace(-50.0, 50.0, 200)],
        "expr_value": lambda k: [k.expr_value(x, *packed) for x in np.linspace(0.01, 5.0, 200)],
        "expr_jacobi_sum (n=128)": lambda k: k.expr_jacobi_sum(
            rule.nodes, rule.weights, 1.3, 0.7, *packed
        ),
    }


def _time(fn, repeat):
    fn()
    return min(timeit.repeat(fn, number=20, repeat=repeat)) / 20


def _end_to_end(pure, repeat):
    env = dict(os.environ)
    env.pop("FRACALC_PURE_PYTHON", None)
    if pure:
        env["FRACALC_PURE_PYTHON"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", END_TO_END.format(repeat=repeat)],
        env=env, capture_output=True, text=True, check=True,
    ).stdout
    return float(out)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    if _ckernels is None:
        print("compiled extension not built; only the pure-Python backend is available")
    header = f"{'kernel':<26}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, fn in _cases().items():
        py = _time(lambda: fn(_pykernels), args.repeat) * 1e6
        if _ckernels is None:
            print(f"{name:<26}{py:>14.1f}{'-':>14}{'-':>10}")
            continue
        cy = _time(lambda: fn(_ckernels), args.repeat) * 1e6
        print(f"{name:<26}{py:>14.1f}{cy:>14.1f}{py / cy:>9.1f}x")

    py = _end_to_end(True, args.repeat) * 1e6
    if _ckernels is not None:
        cy = _end_to_end(False, args.repeat) * 1e6
        print(f"{'rl_integral+rl_derivative':<26}{py:>14.1f}{cy:>14.1f}{py / cy:>9.1f}x")
    else:
        print(f"{'rl_integral+rl_derivative':<26}{py:>14.1f}{'-':>14}{'-':>10}")


if __name__ == "__main__":
    main()
