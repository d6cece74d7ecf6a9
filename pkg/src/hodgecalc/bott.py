"""Cohomology of twisted differentials on projective space.

:func:`bott_h` is the closed-form Bott formula. :func:`bott_oracle`
recomputes the same numbers without it. It walks the long exact sequences
of the twisted Euler sequences

    0 -> Omega^p(m) -> O(m-p)^{C(n+1,p)} -> Omega^{p-1}(m) -> 0

upward from Omega^0(m) = O(m). The only rank the walk cannot read off from
vanishing is that of H^0(O(m-p)^N) -> H^0(Omega^{p-1}(m)). That rank comes
from the Koszul complex on k[x_0..x_n], which is exact in every positive
internal degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import ArgumentError, RangeError

ORACLE_MAX_N = 5
ORACLE_MAX_TWIST = 8


def binom(a: int, b: int) -> int:
    """C(a, b), taken as 0 whenever a < b or b < 0."""
    if b < 0 or a < b:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class BottQuery:
    n: int
    p: int
    m: int
    q: int

    def __post_init__(self):
        if self.n < 1:
            raise ArgumentError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.p <= self.n or not 0 <= self.q <= self.n:
            raise ArgumentError(f"p and q must lie in [0, {self.n}], got p={self.p}, q={self.q}")


def bott_h(query: BottQuery) -> int:
    """h^q(P^n, Omega^p(m)) by the closed form."""
    n, p, m, q = query.n, query.p, query.m, query.q
    if q == 0 and m > p:
        return binom(m + n - p, m) * binom(m - 1, p)
    if m == 0 and q == p:
        return 1
    if q == n and m < p - n:
        return binom(-m + p, -m) * binom(-m - 1, n - p)
    return 0


def bott_table(n: int, m: int) -> list[list[int]]:
    """rows p, columns q of h^q(P^n, Omega^p(m))."""
    return [[bott_h(BottQuery(n, p, m, q)) for q in range(n + 1)] for p in range(n + 1)]


# --- oracle ----------------------------------------------------------------

def line_bundle_h(n: int, d: int, q: int) -> int:
    """h^q(P^n, O(d)); nonzero only for q = 0 (d >= 0) or q = n (d <= -n-1)."""
    if q == 0:
        return binom(d + n, n) if d >= 0 else 0
    if q == n:
        return binom(-d - 1, n) if d <= -n - 1 else 0
    return 0


def _koszul_term(n: int, j: int, degree: int) -> int:
    # Lambda^j V (x) S_{degree - j}, V = k^{n+1}
    return binom(n + 1, j) * (binom(degree - j + n, n) if degree - j >= 0 else 0)


def _global_sections(n: int, p: int, m: int) -> int:
    """h^0(Omega^p(m)) = dim ker(K_p -> K_{p-1}) in the degree-m Koszul complex."""
    if m <= 0:
        # degree-0 strand is k in homological degree 0; negative strands vanish
        return 1 if (m == 0 and p == 0) else 0
    # exact strand: ker d_p = im d_{p+1}, rank by alternating sum from the top
    return sum((-1) ** (j - p - 1) * _koszul_term(n, j, m) for j in range(p + 1, n + 2))


@lru_cache(maxsize=None)
def _oracle_column(n: int, p: int, m: int) -> tuple[int, ...]:
    """(h^0, ..., h^n) of Omega^p(m) by the Euler-sequence chase."""
    if p == 0:
        return tuple(line_bundle_h(n, m, q) for q in range(n + 1))
    g = _oracle_column(n, p - 1, m)
    N = binom(n + 1, p)
    a = [N * line_bundle_h(n, m - p, q) for q in range(n + 1)]

    f = [0] * (n + 1)
    f[0] = _global_sections(n, p, m)
    rank_in = 0  # rank of the connecting map H^{q-1}(G) -> H^q(F)
    for q in range(n + 1):
        if q > 0:
            if q < n:
                rank_out = 0  # H^q(A) = 0 strictly between 0 and n
            else:
                # H^n(F) -> H^n(A) -> H^n(G) -> 0, so H^n(A) -> H^n(G) is onto
                rank_out = a[n] - g[n]
            f[q] = rank_in + rank_out
        rank_fa = f[q] - rank_in
        rank_ag = a[q] - rank_fa
        rank_in = g[q] - rank_ag
        if min(rank_fa, rank_ag, rank_in) < 0:
            raise AssertionError(f"inconsistent chase at n={n}, p={p}, m={m}, q={q}")
    if rank_in != 0:
        raise AssertionError(f"long exact sequence does not close at n={n}, p={p}, m={m}")
    return tuple(f)


def bott_oracle(query: BottQuery) -> int:
    """Independent recomputation of :func:`bott_h` for n <= 5, |m| <= 8."""
    if query.n > ORACLE_MAX_N or abs(query.m) > ORACLE_MAX_TWIST:
        raise RangeError(
            f"oracle limited to n <= {ORACLE_MAX_N}, |m| <= {ORACLE_MAX_TWIST}; got n={query.n}, m={query.m}"
        )
    return _oracle_column(query.n, query.p, query.m)[query.q]


def oracle_euler_characteristic(n: int, p: int, m: int) -> int:
    """chi(Omega^p(m)) from line-bundle Euler characteristics alone."""
    chi = 0
    for j in range(p + 1):
        chi_line = sum((-1) ** q * line_bundle_h(n, m - j, q) for q in range(n + 1))
        chi += (-1) ** (p - j) * binom(n + 1, j) * chi_line
    return chi


def bott_vanishing_check(n: int, bound_m: int) -> list[BottQuery]:
    """Queries with 1 <= q <= n, 1 <= m <= bound_m where bott_h is nonzero. Empty means ok."""
    return [
        query
        for m in range(1, bound_m + 1)
        for p in range(n + 1)
        for q in range(1, n + 1)
        if bott_h(query := BottQuery(n, p, m, q)) != 0
    ]
