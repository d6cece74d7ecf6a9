"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 hypothesis or
inconsistency (including failed checks), 3 internal error. Every failure
writes exactly one JSON line to stderr and nothing to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import bott, grid, spectral, toric
from .constructors import blow_up
from .dsl import FORMATS, blowup_nodes, evaluate, hh_text, parse, print_diamond
from .errors import HodgeError, HypothesisError, InconsistencyError

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class CheckFailed(HodgeError):
    code = "check-failed"

    def __init__(self, problems: list[str]):
        super().__init__(f"{len(problems)} invariant(s) violated: " + "; ".join(problems))
        self.problems = problems

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["problems"] = self.problems
        return d


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (HypothesisError, InconsistencyError, CheckFailed)):
        return EXIT_HYPOTHESIS
    if isinstance(exc, (UsageError, HodgeError)):
        return EXIT_USAGE
    return EXIT_INTERNAL


def diagnostic(exc: BaseException) -> str:
    if isinstance(exc, HodgeError):
        d = exc.to_dict()
    elif isinstance(exc, UsageError):
        d = {"error": "usage", "message": str(exc)}
    else:
        d = {"error": "internal", "message": f"{type(exc).__name__}: {exc}"}
    return json.dumps(d)


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def characteristic(text: str) -> int:
    try:
        c = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid characteristic {text!r}") from None
    if not grid.is_characteristic(c):
        raise argparse.ArgumentTypeError(f"characteristic must be 0 or a prime, got {c}")
    return c


# --- subcommands -----------------------------------------------------------

def cmd_eval(args) -> str:
    return print_diamond(evaluate(parse(args.expr), args.char), args.format)


def invariant_problems(g: grid.HodgeGrid) -> list[str]:
    problems = [str(v) for v in grid.validate(g)]
    if problems:
        return problems
    n = g.dim
    tot = grid.total_hodge_vector(g)
    anti = grid.anti_diagonal_vector(g)
    if not sum(tot) == sum(anti) == g.total():
        problems.append("total-Hodge and anti-diagonal sums disagree")
    if not g.twisted:
        for l in range(2 * n + 1):
            if tot[l] != tot[2 * n - l]:
                problems.append(f"total_hodge({l}) != total_hodge({2 * n - l})")
    return problems


def blowup_problems(expr, char: int) -> list[str]:
    """Row/column invariance and total-Hodge additivity at every blow-up node."""
    problems = []
    for node in blowup_nodes(expr):
        x, z = evaluate(node.ambient, char), evaluate(node.center, char)
        b = blow_up(x, z, node.codim)
        n = x.dim
        for i in range(n + 1):
            for p, q in ((0, i), (n, i), (i, 0), (i, n)):
                if b[p, q] != x[p, q]:
                    problems.append(f"{node}: h[{p}][{q}] changed under blow-up")
        for l in range(2 * n + 1):
            rhs = grid.total_hodge(x, l) + sum(
                grid.total_hodge(z, l - 2 * i) for i in range(1, node.codim) if 0 <= l - 2 * i <= 2 * z.dim
            )
            if grid.total_hodge(b, l) != rhs:
                problems.append(f"{node}: total-Hodge additivity fails at l={l}")
    return problems


def cmd_check(args) -> str:
    if (args.expr is None) == (args.grid is None):
        raise UsageError("check needs exactly one of EXPR or --grid FILE")
    if args.grid is not None:
        g = grid.grid_from_dict(_read_json(args.grid))
        problems = invariant_problems(g)
        label = args.grid
    else:
        expr = parse(args.expr)
        g = evaluate(expr, args.char)
        problems = invariant_problems(g) + blowup_problems(expr, args.char)
        label = str(expr)
    if problems:
        raise CheckFailed(problems)
    return f"ok {label}\n"


def cmd_hh(args) -> str:
    hh = spectral.hh_from_grid(evaluate(parse(args.expr), args.char))
    if args.format == "json":
        return json.dumps(hh.to_dict()) + "\n"
    return hh_text(hh)


def cmd_defect(args) -> str:
    g = grid.grid_from_dict(_read_json(args.grid))
    data = _read_json(args.data)
    try:
        if args.kind == "e1":
            d = spectral.e1_defect(g, spectral.DeRhamDims.from_dict(data))
        else:
            d = spectral.e2_defect(g, spectral.HochschildDims.from_dict(data))
    except (KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"malformed data file {args.data}: {exc}") from exc
    return json.dumps(d.report()) + "\n"


def cmd_bott(args) -> str:
    nums = args.numbers
    if args.table:
        if len(nums) != 2:
            raise UsageError("bott --table takes exactly two integers: n m")
        n, m = nums
        if n < 1:
            raise UsageError(f"n must be >= 1, got {n}")
        rows = bott.bott_table(n, m)
        width = max(len(str(v)) for row in rows for v in row)
        head = "p\\q " + " ".join(str(q).rjust(width) for q in range(n + 1))
        body = [f"{p:>3} " + " ".join(str(v).rjust(width) for v in row) for p, row in enumerate(rows)]
        return "\n".join([head] + body) + "\n"
    if len(nums) != 4:
        raise UsageError("bott takes exactly four integers: n p m q")
    return f"{bott.bott_h(bott.BottQuery(*nums))}\n"


def cmd_oracle(args) -> str:
    result = toric.sweep(args.seed, args.depth, maximal_only=args.maximal_only)
    if not result.ok:
        raise InconsistencyError(f"{len(result.mismatches)} oracle mismatch(es): {result.mismatches[:3]}")
    return json.dumps(result.to_dict()) + "\n"


def run_batch(args, out: TextIO, err: TextIO) -> int:
    try:
        with open(args.file) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from exc
    worst = EXIT_OK
    for lineno, line in enumerate(lines, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            g = evaluate(parse(text), args.char)
        except Exception as exc:  # one bad line must not stop the batch
            d = json.loads(diagnostic(exc))
            d["line"] = lineno
            err.write(json.dumps(d) + "\n")
            worst = max(worst, exit_code_for(exc))
            continue
        out.write(print_diamond(g, args.format))
    return worst


# --- wiring ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hodgecalc", description="Hodge grid calculator for blow-ups, bundles and products.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate an expression to its Hodge grid")
    e.add_argument("expr")
    e.add_argument("--format", choices=FORMATS, default="text")
    e.add_argument("--char", type=characteristic, default=0)
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check", help="validate a grid and the blow-up invariants of an expression")
    c.add_argument("expr", nargs="?")
    c.add_argument("--grid", help="check a grid JSON file instead of an expression")
    c.add_argument("--char", type=characteristic, default=0)
    c.set_defaults(func=cmd_check)

    h = sub.add_parser("hh", help="Hochschild dimensions under the strong HKR gate")
    h.add_argument("expr")
    h.add_argument("--char", type=characteristic, default=0)
    h.add_argument("--format", choices=("text", "json"), default="text")
    h.set_defaults(func=cmd_hh)

    d = sub.add_parser("defect", help="E1 or E2 degeneracy defect for supplied data")
    d.add_argument("kind", choices=("e1", "e2"))
    d.add_argument("--grid", required=True)
    d.add_argument("--data", required=True)
    d.set_defaults(func=cmd_defect)

    b = sub.add_parser("bott", help="h^q(P^n, Omega^p(m)); with --table, the whole (p, q) table")
    b.add_argument("--table", action="store_true")
    b.add_argument("numbers", nargs="*", type=int)
    b.set_defaults(func=cmd_bott)

    o = sub.add_parser("oracle", help="toric cross-checks")
    osub = o.add_subparsers(dest="action", required=True)
    v = osub.add_parser("verify", help="compare stellar subdivisions with the blow-up formula")
    v.add_argument("--seed", choices=("P2", "P3", "P1xP1"), default="P2")
    v.add_argument("--depth", type=int, default=3)
    v.add_argument("--maximal-only", action="store_true", help="subdivide maximal cones only")
    v.set_defaults(func=cmd_oracle)

    bt = sub.add_parser("batch", help="evaluate one expression per line")
    bt.add_argument("file")
    bt.add_argument("--format", choices=FORMATS, default="json")
    bt.add_argument("--char", type=characteristic, default=0)
    bt.set_defaults(func=None)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "batch":
            return run_batch(args, out, err)
        text = args.func(args)
    except SystemExit as exc:  # --help
        return exc.code or 0
    except Exception as exc:
        err.write(diagnostic(exc) + "\n")
        return exit_code_for(exc)
    out.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
