"""A small construction language for varieties, and grid rendering.

Grammar (whitespace allowed between tokens)::

    expr := "point"
          | "P(" int ")"
          | "curve(" int ")"
          | "prod(" expr "," expr ")"
          | "projbundle(" expr "," "rank=" int ")"
          | "blowup(" expr "," expr "," "codim=" int ")"

The named arguments are mandatory so the two integers most easily swapped
(rank and codimension) cannot be transposed silently.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Union

from . import constructors
from .errors import ArgumentError, HodgeError
from .grid import HodgeGrid, grid_to_json


# --- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Point:
    def __str__(self):
        return "point"


@dataclass(frozen=True)
class Proj:
    n: int

    def __str__(self):
        return f"P({self.n})"


@dataclass(frozen=True)
class Curve:
    genus: int

    def __str__(self):
        return f"curve({self.genus})"


@dataclass(frozen=True)
class Prod:
    left: "Expr"
    right: "Expr"

    def __str__(self):
        return f"prod({self.left}, {self.right})"


@dataclass(frozen=True)
class ProjBundle:
    base: "Expr"
    rank: int

    def __str__(self):
        return f"projbundle({self.base}, rank={self.rank})"


@dataclass(frozen=True)
class Blowup:
    ambient: "Expr"
    center: "Expr"
    codim: int

    def __str__(self):
        return f"blowup({self.ambient}, {self.center}, codim={self.codim})"


Expr = Union[Point, Proj, Curve, Prod, ProjBundle, Blowup]


def to_text(e: Expr) -> str:
    return str(e)


# --- errors -----------------------------------------------------------------

class DSLError(HodgeError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["position"] = self.position
        return d


class LexError(DSLError):
    code = "lexical"

    def __init__(self, position: int, char: str):
        what = f"character {char!r}" if char else "end of input"
        super().__init__(f"unexpected {what} at position {position}", position)
        self.char = char

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["char"] = self.char
        return d


class ParseError(DSLError):
    code = "syntax"

    def __init__(self, position: int, expected: set[str], found: str):
        exp = sorted(expected)
        super().__init__(f"expected one of {exp} at position {position}, found {found}", position)
        self.expected = exp
        self.found = found

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["expected"] = self.expected
        d["found"] = self.found
        return d


class SemanticError(DSLError):
    code = "semantic"


class EvaluationError(DSLError):
    """Dimension mismatch found while evaluating; carries the offending subexpression."""

    code = "evaluation"

    def __init__(self, message: str, expr: Expr):
        super().__init__(f"{message} in {to_text(expr)}")
        self.expr = expr

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["expr"] = to_text(self.expr)
        return d


# --- lexer ------------------------------------------------------------------

KEYWORDS = ("point", "P", "curve", "prod", "projbundle", "blowup", "rank", "codim")
PUNCT = "(),="


@dataclass(frozen=True)
class Token:
    kind: str  # keyword text, punctuation char, "int" or "eof"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in PUNCT:
            tokens.append(Token(ch, ch, i))
            i += 1
        elif ch.isascii() and ch.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], i))
            i = j
        elif ch.isascii() and ch.isalpha():
            j = i
            while j < n and text[j].isascii() and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word not in KEYWORDS:
                # report the first character that cannot continue any keyword
                k = 0
                while k < len(word) and any(kw.startswith(word[: k + 1]) for kw in KEYWORDS):
                    k += 1
                raise LexError(i + k, text[i + k] if i + k < n else "")
            tokens.append(Token(word, word, i))
            i = j
        else:
            raise LexError(i, ch)
    tokens.append(Token("eof", "", n))
    return tokens


# --- parser -----------------------------------------------------------------

EXPR_START = {"point", "P", "curve", "prod", "projbundle", "blowup"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail({kind})
        self.i += 1
        return tok

    def fail(self, expected: set[str]):
        tok = self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(tok.pos, expected, found)

    def integer(self) -> tuple[int, int]:
        tok = self.expect("int")
        return int(tok.text), tok.pos

    def named(self, name: str) -> tuple[int, int]:
        self.expect(name)
        self.expect("=")
        return self.integer()

    def expr(self) -> Expr:
        tok = self.peek()
        kind = tok.kind
        if kind not in EXPR_START:
            self.fail(EXPR_START)
        self.i += 1
        if kind == "point":
            return Point()
        self.expect("(")
        if kind == "P":
            n, pos = self.integer()
            if n < 1:
                raise SemanticError(f"P(n) needs n >= 1, got {n}", pos)
            node = Proj(n)
        elif kind == "curve":
            node = Curve(self.integer()[0])
        elif kind == "prod":
            left = self.expr()
            self.expect(",")
            node = Prod(left, self.expr())
        elif kind == "projbundle":
            base = self.expr()
            self.expect(",")
            rank, pos = self.named("rank")
            if rank < 1:
                raise SemanticError(f"rank must be >= 1, got {rank}", pos)
            node = ProjBundle(base, rank)
        else:
            ambient = self.expr()
            self.expect(",")
            center = self.expr()
            self.expect(",")
            codim, pos = self.named("codim")
            if codim < 2:
                raise SemanticError(f"blow-up codimension must be >= 2, got {codim}", pos)
            node = Blowup(ambient, center, codim)
        self.expect(")")
        return node


def parse(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    p.expect("eof")
    return e


# --- evaluation -------------------------------------------------------------

def dimension(e: Expr) -> int:
    """Bottom-up dimension; raises EvaluationError at the first inconsistent blow-up."""
    if isinstance(e, Point):
        return 0
    if isinstance(e, Proj):
        return e.n
    if isinstance(e, Curve):
        return 1
    if isinstance(e, Prod):
        return dimension(e.left) + dimension(e.right)
    if isinstance(e, ProjBundle):
        return dimension(e.base) + e.rank - 1
    if isinstance(e, Blowup):
        nx, nz = dimension(e.ambient), dimension(e.center)
        if nz != nx - e.codim:
            raise EvaluationError(
                f"center of dimension {nz} cannot have codimension {e.codim} in a {nx}-fold", e
            )
        return nx
    raise TypeError(f"not a variety expression: {e!r}")


def evaluate(e: Expr, char: int = 0) -> HodgeGrid:
    if isinstance(e, Point):
        return constructors.point(char)
    if isinstance(e, Proj):
        return constructors.projective_space(e.n, char)
    if isinstance(e, Curve):
        return constructors.curve(e.genus, char)
    if isinstance(e, Prod):
        return constructors.product(evaluate(e.left, char), evaluate(e.right, char))
    if isinstance(e, ProjBundle):
        return constructors.projective_bundle(evaluate(e.base, char), e.rank)
    if isinstance(e, Blowup):
        x = evaluate(e.ambient, char)
        z = evaluate(e.center, char)
        if z.dim != x.dim - e.codim:
            raise EvaluationError(
                f"center of dimension {z.dim} cannot have codimension {e.codim} in a {x.dim}-fold", e
            )
        return constructors.blow_up(x, z, e.codim)
    raise TypeError(f"not a variety expression: {e!r}")


def blowup_nodes(e: Expr):
    """Yield every Blowup node of ``e``, children first."""
    if isinstance(e, Prod):
        yield from blowup_nodes(e.left)
        yield from blowup_nodes(e.right)
    elif isinstance(e, ProjBundle):
        yield from blowup_nodes(e.base)
    elif isinstance(e, Blowup):
        yield from blowup_nodes(e.ambient)
        yield from blowup_nodes(e.center)
        yield e


# --- rendering --------------------------------------------------------------

FORMATS = ("text", "json", "csv")


def _diamond_text(g: HodgeGrid) -> str:
    """Row l holds h[p][q] with p + q = l, p decreasing left to right; row 0 first."""
    n = g.dim
    width = max(len(str(v)) for _, _, v in g.entries())
    slot = width + 2
    lines = []
    for l in range(2 * n + 1):
        line = [" "] * (slot * (2 * n + 1))
        for p in range(min(l, n), max(0, l - n) - 1, -1):
            q = l - p
            col = (n - p + q) * slot
            line[col:col + slot] = str(g[p, q]).center(slot)
        lines.append("".join(line).rstrip())
    # strip the common left margin
    margin = min(len(s) - len(s.lstrip()) for s in lines)
    return "\n".join(s[margin:] for s in lines) + "\n"


def _diamond_csv(g: HodgeGrid) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p\\q"] + list(range(g.dim + 1)))
    for p, row in enumerate(g.h):
        w.writerow([p] + list(row))
    return buf.getvalue()


def print_diamond(g: HodgeGrid, fmt: str = "text") -> str:
    if fmt == "text":
        return _diamond_text(g)
    if fmt == "json":
        return grid_to_json(g) + "\n"
    if fmt == "csv":
        return _diamond_csv(g)
    raise ArgumentError(f"unknown format {fmt!r}; choose from {FORMATS}")


def hh_text(hh) -> str:
    return "".join(f"hh_{l} = {hh[l]}\n" for l in hh.degrees())


def to_json_line(obj) -> str:
    return json.dumps(obj)
