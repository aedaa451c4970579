"""Acceptance criteria 1 to 8, each at its stated tolerance and time budget.

Every criterion prints one ``PASS``/``FAIL`` line. Run with ``pytest
tests/test_acceptance.py`` or directly as ``python tests/test_acceptance.py``.
"""

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from fracalc import symbolic
from fracalc.cli import cmd_table
from fracalc.numeric import (
    jacobi_rule,
    k_independence_check,
    nested_integral_oracle,
    rl_derivative,
    rl_integral,
)
from fracalc.parser import format_expr, parse
from fracalc.special_fn import beta
from fracalc.symbolic import GenExpr, apply_expr, check_semigroup, frac_coeff, in_E
from fracalc.verify import random_genexpr, random_semigroup_cases, verify_constants

SQRT_PI = math.sqrt(math.pi)
GOLDEN = Path(__file__).parent / "golden"


def _rel(a, b):
    return abs(a - b) / abs(b)


def _single(expr):
    (t,) = expr.power_terms
    assert not expr.trig_terms
    return t.coeff, t.exponent


def _close(got, want, tol):
    return _rel(got[0], want[0]) <= tol and abs(got[1] - want[1]) <= tol * max(1.0, abs(want[1]))


def criterion_1():
    """Closed-form worked examples."""
    tol = 1e-12
    x, sqrt_x, one = GenExpr.power(1, 1), GenExpr.power(1, 0.5), GenExpr.constant(1.0)
    fails = []

    def check(label, expr, want):
        if not _close(_single(expr), want, tol):
            fails.append(label)

    check("J^1/2 x^1/2", apply_expr(sqrt_x, -0.5), (SQRT_PI / 2, 1.0))
    check("J^1/2 x", apply_expr(x, -0.5), (4 / (3 * SQRT_PI), 1.5))
    twice = apply_expr(apply_expr(sqrt_x, -0.5), -0.5)
    check("J^1/2 J^1/2 x^1/2", twice, (2 / 3, 1.5))
    check("J^1 x^1/2", apply_expr(sqrt_x, -1.0), (2 / 3, 1.5))
    check("J^3/2 x^2", apply_expr(GenExpr.power(1, 2), -1.5), (32 / (105 * SQRT_PI), 3.5))
    for k in (1, 2):
        via_k = apply_expr(apply_expr(x, -(k - 0.5)), float(k))
        check(f"D^1/2 x via k={k}", via_k, (2 / SQRT_PI, 0.5))
    check("D^1/2 D^1/2 x", apply_expr(apply_expr(x, 0.5), 0.5), (1.0, 0.0))
    if frac_coeff(-0.5, 0.5) != 0.0 or not apply_expr(GenExpr.power(1, -0.5), 0.5).is_zero:
        fails.append("D^1/2 x^-1/2")
    numeric = rl_derivative(one, 0.5, 1.0)
    if _rel(numeric, 1 / SQRT_PI) > 1e-5:
        fails.append("numeric D^1/2 1")
    return not fails, f"failed: {fails}" if fails else f"10 checks, numeric D^1/2(1) = {numeric:.12f}"


def criterion_2():
    """Reference constants."""
    report = verify_constants()
    required = {"e!", "pi!", "(pi+e)!", "pi!/(pi-e)!", "e!/(e-pi)!",
                "pi!/(pi-e)! * e!/(e-pi)!", "pi!/(pi+e)!"}
    by_name = {e.name: e for e in report.entries}
    missing = required - by_name.keys()
    low = [e.name for e in report.entries if not e.flagged and e.matching_significant_digits < 12]
    worst = min(e.matching_significant_digits for e in report.entries if not e.flagged)
    flagged = sum(e.flagged for e in report.entries)
    ok = not missing and not low and report.ok
    return ok, f"min unflagged digits {worst}, {flagged} flagged, low={low}, missing={sorted(missing)}"


def criterion_3():
    """Semigroup, symbolic and numeric."""
    rng = np.random.default_rng(20240501)
    worst = 0.0
    count = 0
    for expr, a, b in random_semigroup_cases(rng, 500):
        worst = max(worst, check_semigroup(expr, a, b).deviation)
        count += 1
    num_worst = 0.0
    for k in (0.5, 1.0, 2.0, math.e):
        f = GenExpr.power(1.0, k)
        for a, b in [(0.5, 0.5), (1.0, 1.5)]:
            nested = rl_integral(lambda y: rl_integral(f, a, y), b, 1.0)
            num_worst = max(num_worst, _rel(nested, rl_integral(f, a + b, 1.0)))
    ok = count == 500 and worst <= 1e-12 and num_worst <= 1e-7
    return ok, f"{count} cases, worst {worst:.2e}; numeric worst {num_worst:.2e}"


def criterion_4():
    """Nested-integral oracle vs the kernel form."""
    worst = 0.0
    for f in (GenExpr.power(1, 1), GenExpr.power(1, 2), GenExpr.trig("sin")):
        for m in (2, 3):
            worst = max(worst, _rel(nested_integral_oracle(f, m, 1.0, 48), rl_integral(f, m, 1.0, 64)))
    return worst <= 1e-8, f"worst {worst:.2e}"


def criterion_5():
    """Independence of the integer k in D^k J^(k-s)."""
    worst = 0.0
    for p in (1.0, 2.0, math.pi):
        for s in (0.5, 1.5, math.e):
            worst = max(worst, k_independence_check(GenExpr.power(1, p), s, 1.0).rel_diff)
    return worst <= 1e-5, f"worst {worst:.2e}"


def criterion_6():
    """Gauss-Jacobi exactness on monomials."""
    worst = 0.0
    for s in (0.5, 1.0, 1.5, math.pi):
        for n in (4, 8, 16, 32):
            rule = jacobi_rule(s, n)
            for m in range(2 * n):
                worst = max(worst, _rel(rule.integrate(rule.nodes ** m), beta(m + 1, s)))
    return worst <= 1e-11, f"worst {worst:.2e}"


def criterion_7():
    """Left-inverse failure on constants."""
    one = GenExpr.constant(1.0)
    back = apply_expr(apply_expr(one, 1.0), -1.0)
    ok = back.is_zero and not in_E(one)
    return ok, f"J^1 D^1 (1) = {format_expr(back)}, in_E(1) = {in_E(one)}"


def criterion_8():
    """Parser round trip and golden CSV tables."""
    rng = np.random.default_rng(8)
    bad = sum(parse(format_expr(e)) != e for e in (random_genexpr(rng) for _ in range(1000)))
    tables = {
        "table_J1_sqrt.csv": cmd_table("J", 1.0, "x^0.5", 1.0, 1.0, 1),
        "table_D1_square.csv": cmd_table("D", 1.0, "x^2", 1.0, 3.0, 3),
    }
    mismatched = [n for n, t in tables.items() if t.to_csv().encode() != (GOLDEN / n).read_bytes()]
    return bad == 0 and not mismatched, f"round-trip failures {bad}/1000, golden mismatches {mismatched}"


# (number, function, runtime budget in seconds)
CRITERIA = [
    (1, criterion_1, 1.0),
    (2, criterion_2, 1.0),
    (3, criterion_3, 10.0),
    (4, criterion_4, 5.0),
    (5, criterion_5, 5.0),
    (6, criterion_6, 2.0),
    (7, criterion_7, 1.0),
    (8, criterion_8, 2.0),
]


def run_criterion(number, func, budget):
    start = time.perf_counter()
    try:
        ok, detail = func()
    except Exception as exc:  # report, don't hide
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < budget
    line = (f"criterion {number}: {'PASS' if ok else 'FAIL'}  "
            f"[{elapsed:.3f}s / {budget:g}s]  {func.__doc__.strip()}  {detail}")
    return ok, line


@pytest.mark.parametrize("number,func,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, func, budget, capsys):
    ok, line = run_criterion(number, func, budget)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
