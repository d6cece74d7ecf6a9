"""Hodge grids: the (n+1) x (n+1) table h[p][q] = dim H^q(X, Omega^p (x) V).

A grid is a plain dimension table. It carries the dimension, a
characteristic tag, and whether the coefficients V are non-trivial.
Construction never rejects data that breaks the geometric invariants;
:func:`validate` reports those as data instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ArgumentError, RangeError

# Largest integer a JSON reader backed by IEEE doubles keeps exact.
JSON_SAFE_MAX = 2**53 - 1


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def is_characteristic(c: int) -> bool:
    return c == 0 or _is_prime(c)


@dataclass(frozen=True)
class HodgeGrid:
    dim: int
    h: tuple[tuple[int, ...], ...]
    char: int = 0
    twisted: bool = False

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.h)
        object.__setattr__(self, "h", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], char: int = 0, twisted: bool = False) -> HodgeGrid:
        rows = tuple(tuple(r) for r in rows)
        return cls(len(rows) - 1, rows, char=char, twisted=twisted)

    @classmethod
    def zeros(cls, dim: int, char: int = 0, twisted: bool = False) -> HodgeGrid:
        return cls(dim, tuple((0,) * (dim + 1) for _ in range(dim + 1)), char, twisted)

    def __getitem__(self, pq: tuple[int, int]) -> int:
        """``g[p, q]``; indices outside the table read as 0."""
        p, q = pq
        if 0 <= p < len(self.h) and 0 <= q < len(self.h[p]):
            return self.h[p][q]
        return 0

    def entries(self):
        for p, row in enumerate(self.h):
            for q, v in enumerate(row):
                yield p, q, v

    def total(self) -> int:
        return sum(v for _, _, v in self.entries())

    def replace(self, **changes) -> HodgeGrid:
        kw = dict(dim=self.dim, h=self.h, char=self.char, twisted=self.twisted)
        kw.update(changes)
        return HodgeGrid(**kw)

    def __str__(self) -> str:
        from .dsl import print_diamond

        return print_diamond(self, "text")


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple = ()
    message: str = ""

    def __str__(self) -> str:
        return self.message or f"{self.kind} {self.indices}"


def validate(g: HodgeGrid) -> list[Violation]:
    """Return every broken invariant of ``g``; an empty list means the grid is valid.

    Checked: square shape of side dim+1, non-negative entries, a characteristic
    tag that is 0 or prime, and for untwisted grids h[0][0] = h[n][n] = 1 plus
    Serre symmetry h[p][q] = h[n-p][n-q]. Hodge symmetry is deliberately not
    checked since it fails in positive characteristic.
    """
    out: list[Violation] = []
    n = g.dim
    if not isinstance(n, int) or n < 0:
        return [Violation("dim", (n,), f"dimension {n!r} is not a non-negative integer")]
    if not is_characteristic(g.char):
        out.append(Violation("char", (g.char,), f"characteristic {g.char} is neither 0 nor prime"))

    if len(g.h) != n + 1 or any(len(row) != n + 1 for row in g.h):
        shape = [len(row) for row in g.h]
        out.append(Violation("shape", (n,), f"expected {n + 1}x{n + 1} table, got row lengths {shape}"))
        return out

    for p, q, v in g.entries():
        if v < 0:
            out.append(Violation("negative", (p, q), f"h[{p}][{q}] = {v} < 0"))

    if not g.twisted:
        for p, q in {(0, 0), (n, n)}:
            if g.h[p][q] != 1:
                out.append(Violation("unit", (p, q), f"h[{p}][{q}] = {g.h[p][q]} != 1"))
        for p, q, v in g.entries():
            # each unordered pair reported once
            if (p, q) < (n - p, n - q) and v != g.h[n - p][n - q]:
                out.append(Violation(
                    "serre", (p, q),
                    f"h[{p}][{q}] = {v} != h[{n - p}][{n - q}] = {g.h[n - p][n - q]}",
                ))
    return out


def is_valid(g: HodgeGrid) -> bool:
    return not validate(g)


def total_hodge(g: HodgeGrid, l: int) -> int:
    """Sum of h[p][q] over p + q = l."""
    n = g.dim
    if not 0 <= l <= 2 * n:
        raise RangeError(f"degree {l} outside [0, {2 * n}]")
    return sum(g[p, l - p] for p in range(max(0, l - n), min(l, n) + 1))


def anti_diagonal(g: HodgeGrid, l: int) -> int:
    """Sum of h[p][q] over p - q = l (the E2 bound for HH_l)."""
    n = g.dim
    if not -n <= l <= n:
        raise RangeError(f"degree {l} outside [{-n}, {n}]")
    return sum(g[q + l, q] for q in range(max(0, -l), min(n, n - l) + 1))


def total_hodge_vector(g: HodgeGrid) -> tuple[int, ...]:
    return tuple(total_hodge(g, l) for l in range(2 * g.dim + 1))


def anti_diagonal_vector(g: HodgeGrid) -> tuple[int, ...]:
    """Anti-diagonal sums for l = -n..n, stored at offset l + n."""
    return tuple(anti_diagonal(g, l) for l in range(-g.dim, g.dim + 1))


def serre_dual(g: HodgeGrid) -> HodgeGrid:
    """Grid of the dual coefficients: h'[p][q] = h[n-p][n-q]."""
    n = g.dim
    rows = tuple(tuple(g[n - p, n - q] for q in range(n + 1)) for p in range(n + 1))
    return g.replace(h=rows)


@dataclass(frozen=True)
class GridPair:
    """Grids for coefficients V (forward) and V-dual (backward), Serre-paired."""

    forward: HodgeGrid
    backward: HodgeGrid = field(default=None)

    def __post_init__(self):
        if self.backward is None:
            object.__setattr__(self, "backward", serre_dual(self.forward))
        f, b = self.forward, self.backward
        if f.dim != b.dim:
            raise ArgumentError(f"paired grids have dimensions {f.dim} and {b.dim}")
        n = f.dim
        for p in range(n + 1):
            for q in range(n + 1):
                if f[p, q] != b[n - p, n - q]:
                    raise ArgumentError(
                        f"grids are not Serre dual at (p, q) = ({p}, {q}): "
                        f"{f[p, q]} != {b[n - p, n - q]}"
                    )

    @property
    def dim(self) -> int:
        return self.forward.dim


# --- JSON ---------------------------------------------------------------

def encode_int(v: int) -> int | str:
    return str(v) if abs(v) > JSON_SAFE_MAX else v


def decode_int(v) -> int:
    if isinstance(v, bool):
        raise ArgumentError(f"expected an integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str) and v.lstrip("-").isdigit():
        return int(v)
    raise ArgumentError(f"expected an integer or decimal string, got {v!r}")


def grid_to_dict(g: HodgeGrid) -> dict:
    return {
        "dim": g.dim,
        "char": g.char,
        "twisted": g.twisted,
        "h": [[encode_int(v) for v in row] for row in g.h],
    }


def grid_from_dict(d: dict) -> HodgeGrid:
    try:
        rows = [[decode_int(v) for v in row] for row in d["h"]]
        return HodgeGrid(
            decode_int(d["dim"]),
            tuple(tuple(r) for r in rows),
            char=decode_int(d.get("char", 0)),
            twisted=bool(d.get("twisted", False)),
        )
    except (KeyError, TypeError) as exc:
        raise ArgumentError(f"malformed grid JSON: {exc}") from exc


def grid_to_json(g: HodgeGrid) -> str:
    return json.dumps(grid_to_dict(g))


def grid_from_json(text: str) -> HodgeGrid:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArgumentError(f"invalid JSON: {exc}") from exc
    return grid_from_dict(data)


def diagonal(values: Sequence[int], char: int = 0) -> HodgeGrid:
    n = len(values) - 1
    return HodgeGrid(n, tuple(tuple(values[p] if p == q else 0 for q in range(n + 1)) for p in range(n + 1)), char)
