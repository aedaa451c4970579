"""``fracalc`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 domain error,
4 verification or self-check failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from fracalc import numeric, symbolic, verify
from fracalc.errors import DomainError
from fracalc.parser import ParseError, format_expr, parse

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(v: float) -> str:
    return f"{v:.17g}"


@dataclass
class EvalTable:
    rows: List[Tuple[float, float]]
    header: Tuple[str, str] = ("x", "value")

    def __post_init__(self):
        xs = [x for x, _ in self.rows]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("table x values must be strictly increasing")

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        lines += [f"{_num(x)},{_num(v)}" for x, v in self.rows]
        return "\n".join(lines) + "\n"


def _signed(op: str, order: float) -> float:
    if not math.isfinite(order) or order < 0.0:
        raise DomainError(f"order must be a finite real >= 0, got {order}")
    return order if op == "D" else -order


def evaluate_numeric(expr: symbolic.GenExpr, alpha: float, x: float, nodes: int) -> float:
    if x <= 0.0:
        raise DomainError(f"numeric engine requires x > 0, got {x}")
    if alpha == 0.0:
        return float(expr(x))
    if alpha < 0.0:
        return numeric.rl_integral(expr, -alpha, x, nodes)
    return numeric.rl_derivative(expr, alpha, x, nodes)


def cmd_eval(op: str, order: float, expr_text: str, at: Optional[float] = None,
             engine: str = "closed", nodes: int = 64) -> str:
    alpha = _signed(op, order)
    expr = parse(expr_text)
    if engine == "numeric":
        if at is None:
            raise UsageError("--at is required with --engine numeric")
        return _num(evaluate_numeric(expr, alpha, at, nodes)) + "\n"
    result = symbolic.apply_expr(expr, alpha)
    out = format_expr(result) + "\n"
    if at is not None:
        out += f"at x={_num(at)}: {_num(result(at))}\n"
    return out


def grid_points(start: float, stop: float, steps: int) -> List[float]:
    if steps < 1:
        raise UsageError("grid needs at least one step")
    if not (0.0 < start <= stop) or (steps > 1 and start == stop):
        raise UsageError("grid needs 0 < start < stop (or start == stop with one step)")
    if steps == 1:
        return [start]
    width = (stop - start) / (steps - 1)
    pts = [start + i * width for i in range(steps - 1)]
    return pts + [stop]


def cmd_table(op: str, order: float, expr_text: str, x_start: float, x_stop: float,
              steps: int, engine: str = "closed", nodes: int = 64) -> EvalTable:
    alpha = _signed(op, order)
    expr = parse(expr_text)
    xs = grid_points(x_start, x_stop, steps)
    if engine == "numeric":
        rows = [(x, evaluate_numeric(expr, alpha, x, nodes)) for x in xs]
    else:
        result = symbolic.apply_expr(expr, alpha)
        rows = [(x, float(result(x))) for x in xs]
    return EvalTable(rows)


def cmd_verify_constants() -> verify.ConstantsReport:
    return verify.verify_constants()


def cmd_selfcheck(seed: Optional[int] = None) -> Tuple[str, bool]:
    results = verify.selfcheck(seed)
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "pass" if r.ok else "FAIL"
        line = f"{r.name.ljust(width)}  {r.passed}/{r.total}  worst={r.worst:.3e}  {status}"
        if r.error:
            line += f"  ({r.error})"
        lines.append(line)
    ok = all(r.ok for r in results)
    lines.append(f"selfcheck: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n", ok


_NAMED = {"pi": math.pi, "e": math.e}


def _real(text: str) -> float:
    """A float literal, or one of the named constants ``pi`` and ``e``."""
    key = text.strip()
    if key in _NAMED:
        return _NAMED[key]
    try:
        return float(key)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a real number, pi or e, got {text!r}")


def _parse_grid(text: str) -> Tuple[float, float, int]:
    try:
        a, b, n = text.split(":")
        return _real(a), _real(b), int(n)
    except (ValueError, argparse.ArgumentTypeError):
        raise argparse.ArgumentTypeError(f"expected <start>:<stop>:<steps>, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracalc", description="Fractional integrals and derivatives.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def operator_flags(p):
        p.add_argument("--op", choices=["D", "J"], required=True)
        p.add_argument("--order", type=_real, required=True)
        p.add_argument("--expr", required=True)
        p.add_argument("--engine", choices=["closed", "numeric"], default="closed")
        p.add_argument("--nodes", type=int, default=64)

    p_eval = sub.add_parser("eval", help="apply an operator to an expression")
    operator_flags(p_eval)
    p_eval.add_argument("--at", type=_real)

    p_table = sub.add_parser("table", help="CSV table of an operator over an x grid")
    operator_flags(p_table)
    p_table.add_argument("--grid", type=_parse_grid, required=True)

    sub.add_parser("verify-constants", help="recompute the reference constants")

    p_self = sub.add_parser("selfcheck", help="run the built-in property suites")
    p_self.add_argument("--seed", type=int)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error from _Parser.error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    out = sys.stdout
    try:
        if args.command == "eval":
            out.write(cmd_eval(args.op, args.order, args.expr, args.at, args.engine, args.nodes))
        elif args.command == "table":
            start, stop, steps = args.grid
            table = cmd_table(args.op, args.order, args.expr, start, stop, steps,
                              args.engine, args.nodes)
            out.write(table.to_csv())
        elif args.command == "verify-constants":
            report = cmd_verify_constants()
            out.write(report.render())
            if not report.ok:
                return EXIT_VERIFY
        elif args.command == "selfcheck":
            text, ok = cmd_selfcheck(args.seed)
            out.write(text)
            if not ok:
                return EXIT_VERIFY
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fracalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"fracalc: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"fracalc: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
