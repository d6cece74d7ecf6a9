"""Grids of atomic varieties and the grid-transforming formulas.

All three transforms (product, projective bundle, blow-up) work on
dimension tables only. Nothing here can certify that a claimed blow-up
center really embeds in the ambient variety with the stated codimension;
that is the caller's obligation, and only the dimension arithmetic
``z.dim == x.dim - c`` is checked.

Curve grids use (1, g; g, 1) in every characteristic: Hodge-de Rham
degenerates for smooth projective curves, so h^{1,0} = h^{0,1} = g holds
over any algebraically closed field.
"""

from __future__ import annotations

from .errors import ArgumentError, CodimensionError, UnsupportedError
from .grid import GridPair, HodgeGrid, diagonal


def _same_char(*grids: HodgeGrid) -> int:
    chars = {g.char for g in grids}
    if len(chars) != 1:
        raise ArgumentError(f"grids tagged with different characteristics {sorted(chars)}")
    return chars.pop()


def point(char: int = 0) -> HodgeGrid:
    return HodgeGrid(0, ((1,),), char)


def projective_space(n: int, char: int = 0) -> HodgeGrid:
    if n < 1:
        raise ArgumentError(f"projective space needs n >= 1, got {n}")
    return diagonal([1] * (n + 1), char)


def curve(genus: int, char: int = 0) -> HodgeGrid:
    if genus < 0:
        raise ArgumentError(f"genus must be >= 0, got {genus}")
    return HodgeGrid(1, ((1, genus), (genus, 1)), char)


def product(a: HodgeGrid, b: HodgeGrid) -> HodgeGrid:
    """Kunneth: h[p][q] = sum over r, s of a[r][s] * b[p-r][q-s]."""
    if a.twisted or b.twisted:
        raise UnsupportedError("Kunneth product of twisted grids is not supported")
    char = _same_char(a, b)
    n = a.dim + b.dim
    rows = [[0] * (n + 1) for _ in range(n + 1)]
    for r, s, av in a.entries():
        if not av:
            continue
        for t, u, bv in b.entries():
            rows[r + t][s + u] += av * bv
    return HodgeGrid(n, tuple(map(tuple, rows)), char)


def projective_bundle(base: HodgeGrid, rank: int) -> HodgeGrid:
    """Grid of P(E) for a rank-``rank`` bundle E: sum of diagonal shifts by 0..rank-1."""
    if rank < 1:
        raise ArgumentError(f"bundle rank must be >= 1, got {rank}")
    if base.twisted:
        raise UnsupportedError("projective bundle formula is implemented for untwisted bases only")
    n = base.dim + rank - 1
    rows = tuple(
        tuple(sum(base[p - i, q - i] for i in range(rank)) for q in range(n + 1))
        for p in range(n + 1)
    )
    return HodgeGrid(n, rows, base.char)


def blow_up(x: HodgeGrid, z: HodgeGrid, c: int) -> HodgeGrid:
    """Blow up ``x`` along a smooth center with grid ``z`` of codimension ``c``.

    h~[p][q] = x[p][q] + sum_{i=1}^{c-1} z[p-i][q-i].

    For twisted grids, ``z`` must already carry the restricted coefficients;
    the formula offers no way to derive them from ``x``.
    """
    if c < 2:
        raise CodimensionError(f"blow-up center must have codimension >= 2, got {c}")
    if z.dim != x.dim - c:
        raise ArgumentError(
            f"center of dimension {z.dim} cannot have codimension {c} in a {x.dim}-fold"
        )
    if x.twisted != z.twisted:
        raise ArgumentError("ambient and center grids must both be twisted or both untwisted")
    char = _same_char(x, z)
    n = x.dim
    rows = tuple(
        tuple(x[p, q] + sum(z[p - i, q - i] for i in range(1, c)) for q in range(n + 1))
        for p in range(n + 1)
    )
    return HodgeGrid(n, rows, char, x.twisted)


def blow_up_pair(x: GridPair, z: GridPair, c: int) -> GridPair:
    """Blow up a Serre-paired (V, V-dual) grid; the result is again a pair."""
    return GridPair(blow_up(x.forward, z.forward, c), blow_up(x.backward, z.backward, c))
