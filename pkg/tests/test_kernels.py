import math
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from fracalc import _kernels, _pykernels
from fracalc.numeric import jacobi_rule
from fracalc.verify import random_genexpr

ckernels = pytest.importorskip("fracalc._ckernels", reason="compiled extension not built")

XS = [0.5, 0.75, 1.0, 1.5, math.e, math.pi, 7.3, 20.5, 100.25, 171.5]


@pytest.mark.parametrize("x", XS)
def test_lanczos_parity(x):
    assert ckernels.lanczos_gamma(x) == _pykernels.lanczos_gamma(x)
    assert ckernels.lanczos_ln_gamma(x) == _pykernels.lanczos_ln_gamma(x)


@pytest.mark.parametrize("x", [-7.25, -0.5, -1e-8, 0.0, 0.3, 1.0, 2.5, 1e6 + 0.25])
def test_sinpi_parity(x):
    assert ckernels.sinpi(x) == _pykernels.sinpi(x)


def test_sinpi_exact_zeros():
    for n in range(-5, 6):
        assert _pykernels.sinpi(float(n)) == 0.0
        assert ckernels.sinpi(float(n)) == 0.0


def test_expression_kernels_parity():
    rng = np.random.default_rng(99)
    for _ in range(200):
        packed = random_genexpr(rng).packed
        x = float(rng.uniform(0.01, 10.0))
        assert ckernels.expr_value(x, *packed) == _pykernels.expr_value(x, *packed)
        s = float(rng.uniform(0.05, 4.0))
        rule = jacobi_rule(s, int(rng.integers(1, 80)))
        args = (rule.nodes, rule.weights, x, s, *packed)
        assert ckernels.expr_jacobi_sum(*args) == _pykernels.expr_jacobi_sum(*args)


def test_default_backend_is_compiled():
    if os.environ.get("FRACALC_PURE_PYTHON"):
        pytest.skip("pure-Python backend forced by the environment")
    assert _kernels.BACKEND == "cython"


def test_environment_forces_pure_python():
    env = dict(os.environ, FRACALC_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import fracalc; print(fracalc.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout
    assert out.strip() == "python"


def test_benchmark_runs():
    bench = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(bench), "--repeat", "1"],
                         capture_output=True, text=True, check=True).stdout
    assert "expr_jacobi_sum" in out and "rl_integral" in out
