"""Smooth complete toric varieties as an independent check on the grid formulas.

For a smooth complete fan the Hodge numbers are h^{p,p} = h_p and zero off the
diagonal, where h_p comes from the cone counts. Stellar subdivision of a
cone is the blow-up along the orbit closure of that cone, so comparing
``hodge_from_fan(stellar_subdivision(F, s))`` with the grid blow-up formula
is a check that shares no code path with :mod:`hodgecalc.constructors`.

Completeness is checked by ridge pairing plus connectivity of the cone
adjacency graph, not by a support-covering test. The criterion is sound for
fans grown from the seed fans by subdivision and products; for arbitrary
user fans it is a necessary condition only.

Toric Hodge numbers do not depend on the characteristic; grids built here
carry the characteristic tag passed in (default 0).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from . import constructors, spectral
from .bott import binom
from .errors import ArgumentError, CodimensionError, InvalidFanError, RangeError
from .grid import HodgeGrid, diagonal
from .spectral import DeRhamDims

MAX_DIM = 3

Ray = tuple[int, ...]
Cone = tuple[int, ...]


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[Ray, ...]
    max_cones: tuple[Cone, ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "max_cones", tuple(sorted(tuple(sorted(c)) for c in self.max_cones)))

    def key(self) -> frozenset:
        """Identity of the fan independent of ray numbering."""
        return frozenset(frozenset(self.rays[i] for i in c) for c in self.max_cones)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "rays": [list(r) for r in self.rays], "max_cones": [list(c) for c in self.max_cones]}

    @classmethod
    def from_dict(cls, d: dict) -> Fan:
        try:
            return cls(int(d["dim"]), tuple(map(tuple, d["rays"])), tuple(map(tuple, d["max_cones"])))
        except (KeyError, TypeError) as exc:
            raise ArgumentError(f"malformed fan JSON: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> Fan:
        return cls.from_dict(json.loads(text))


def det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by cofactor expansion (fine for the n <= 3 fans used here)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    return sum(
        (-1) ** j * rows[0][j] * det([r[:j] + r[j + 1:] for r in rows[1:]])
        for j in range(n)
        if rows[0][j]
    )


def _solve(basis: Sequence[Ray], v: Ray) -> list[Fraction]:
    """Coordinates of v in ``basis`` (columns), by Gaussian elimination over Q."""
    n = len(basis)
    a = [[Fraction(basis[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def fan_problems(f: Fan) -> list[str]:
    return list(_fan_problems(f))


@lru_cache(maxsize=4096)
def _fan_problems(f: Fan) -> tuple[str, ...]:
    # fans are immutable, and a sweep revisits the same fan many times
    return tuple(_find_problems(f))


def _find_problems(f: Fan) -> list[str]:
    problems = []
    n = f.dim
    if not 0 <= n <= MAX_DIM:
        return [f"fan dimension {n} outside [0, {MAX_DIM}]"]
    for i, r in enumerate(f.rays):
        if len(r) != n:
            problems.append(f"ray {i} has {len(r)} coordinates, expected {n}")
        elif reduce(gcd, r, 0) != 1:
            problems.append(f"ray {i} = {r} is not primitive")
    if problems:
        return problems
    if not f.max_cones:
        return ["fan has no maximal cones"]
    for c in f.max_cones:
        if len(set(c)) != n or any(not 0 <= i < len(f.rays) for i in c):
            problems.append(f"maximal cone {c} is not a set of {n} ray indices")
        elif abs(det([f.rays[i] for i in c])) != 1:
            problems.append(f"maximal cone {c} is not unimodular")
    if problems:
        return problems
    if len(set(f.max_cones)) != len(f.max_cones):
        return ["repeated maximal cone"]
    if n == 0:
        return [] if f.max_cones == ((),) else ["0-dimensional fan must be the single empty cone"]

    ridges: dict[Cone, list[int]] = {}
    for k, c in enumerate(f.max_cones):
        for r in combinations(c, n - 1):
            ridges.setdefault(r, []).append(k)
    for r, owners in ridges.items():
        if len(owners) != 2:
            problems.append(f"ridge {r} lies in {len(owners)} maximal cones, expected 2")
    if problems:
        return problems
    adj: dict[int, set[int]] = {k: set() for k in range(len(f.max_cones))}
    for a, b in ridges.values():
        adj[a].add(b)
        adj[b].add(a)
    seen, todo = {0}, deque([0])
    while todo:
        for nb in adj[todo.popleft()] - seen:
            seen.add(nb)
            todo.append(nb)
    if len(seen) != len(f.max_cones):
        problems.append("cone adjacency graph is disconnected")
    return problems


def check_fan(f: Fan) -> None:
    problems = fan_problems(f)
    if problems:
        raise InvalidFanError("; ".join(problems))


def cones(f: Fan) -> set[Cone]:
    out = set()
    for c in f.max_cones:
        for k in range(len(c) + 1):
            out.update(combinations(c, k))
    return out


@lru_cache(maxsize=4096)
def f_vector(f: Fan) -> tuple[int, ...]:
    """(d_0, ..., d_n): number of cones of each dimension, d_0 = 1 for the origin."""
    check_fan(f)
    counts = [0] * (f.dim + 1)
    for c in cones(f):
        counts[len(c)] += 1
    return tuple(counts)


def h_numbers(f: Fan) -> tuple[int, ...]:
    d = f_vector(f)
    n = f.dim
    return tuple(
        sum((-1) ** (i - p) * binom(i, p) * d[n - i] for i in range(p, n + 1))
        for p in range(n + 1)
    )


def hodge_from_fan(f: Fan, char: int = 0) -> HodgeGrid:
    return diagonal(list(h_numbers(f)), char)


def betti_from_fan(f: Fan) -> DeRhamDims:
    h = h_numbers(f)
    b = [0] * (2 * f.dim + 1)
    for p, v in enumerate(h):
        b[2 * p] = v
    return DeRhamDims(f.dim, tuple(b))


def stellar_subdivision(f: Fan, cone: Iterable[int]) -> Fan:
    """Star-subdivide at ``cone``; models blowing up its orbit closure."""
    check_fan(f)
    tau = tuple(sorted(set(cone)))
    if len(tau) < 2:
        raise CodimensionError(f"subdivided cone must have at least 2 rays, got {len(tau)}")
    containing = [c for c in f.max_cones if set(tau) <= set(c)]
    if not containing:
        raise ArgumentError(f"{tau} is not a face of any maximal cone")
    s = [sum(f.rays[i][k] for i in tau) for k in range(f.dim)]
    g = reduce(gcd, s, 0)
    new_ray = tuple(x // g for x in s)
    new_idx = len(f.rays)
    new_cones = [c for c in f.max_cones if c not in containing]
    for c in containing:
        for r in tau:
            new_cones.append(tuple(i for i in c if i != r) + (new_idx,))
    return Fan(f.dim, f.rays + (new_ray,), tuple(new_cones))


def product_fan(a: Fan, b: Fan) -> Fan:
    if a.dim + b.dim > MAX_DIM:
        raise RangeError(f"product dimension {a.dim + b.dim} exceeds {MAX_DIM}")
    check_fan(a)
    check_fan(b)
    rays = tuple(r + (0,) * b.dim for r in a.rays) + tuple((0,) * a.dim + r for r in b.rays)
    off = len(a.rays)
    return Fan(a.dim + b.dim, rays, tuple(ca + tuple(i + off for i in cb) for ca in a.max_cones for cb in b.max_cones))


def star_quotient_fan(f: Fan, cone: Iterable[int]) -> Fan:
    """Fan of the orbit closure V(cone): the star of ``cone`` projected to N / span(cone)."""
    check_fan(f)
    tau = tuple(sorted(set(cone)))
    containing = [c for c in f.max_cones if set(tau) <= set(c)]
    if not containing:
        raise ArgumentError(f"{tau} is not a face of any maximal cone")
    # a unimodular maximal cone through tau is a lattice basis extending tau's rays
    basis_idx = list(tau) + [i for i in containing[0] if i not in tau]
    basis = [f.rays[i] for i in basis_idx]
    k = len(tau)

    def project(v: Ray) -> Ray:
        coords = _solve(basis, v)
        assert all(x.denominator == 1 for x in coords)
        return tuple(int(x) for x in coords[k:])

    new_rays: list[Ray] = []
    index: dict[Ray, int] = {}
    new_cones = []
    for c in containing:
        idx = []
        for i in c:
            if i in tau:
                continue
            r = project(f.rays[i])
            if r not in index:
                index[r] = len(new_rays)
                new_rays.append(r)
            idx.append(index[r])
        new_cones.append(tuple(idx))
    return Fan(f.dim - k, tuple(new_rays), tuple(new_cones))


def center_grid(f: Fan, cone: Iterable[int], char: int = 0) -> HodgeGrid:
    return hodge_from_fan(star_quotient_fan(f, cone), char)


# --- seeds -----------------------------------------------------------------

def projective_space_fan(n: int) -> Fan:
    rays = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)] + [(-1,) * n]
    return Fan(n, tuple(rays), tuple(combinations(range(n + 1), n)))


POINT_FAN = Fan(0, (), ((),))


def seed_fan(name: str) -> Fan:
    seeds = {
        "point": lambda: POINT_FAN,
        "P1": lambda: projective_space_fan(1),
        "P2": lambda: projective_space_fan(2),
        "P3": lambda: projective_space_fan(3),
        "P1xP1": lambda: product_fan(projective_space_fan(1), projective_space_fan(1)),
        "P1xP2": lambda: product_fan(projective_space_fan(1), projective_space_fan(2)),
        "P1xP1xP1": lambda: product_fan(
            product_fan(projective_space_fan(1), projective_space_fan(1)), projective_space_fan(1)
        ),
    }
    if name not in seeds:
        raise ArgumentError(f"unknown seed {name!r}; choose from {sorted(seeds)}")
    return seeds[name]()


# --- equivalence sweep -----------------------------------------------------

@dataclass
class SweepResult:
    seed: str
    depth: int
    fans: int = 0
    checks: int = 0
    mismatches: list = None

    def __post_init__(self):
        if self.mismatches is None:
            self.mismatches = []

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "depth": self.depth,
            "fans": self.fans,
            "checks": self.checks,
            "mismatches": self.mismatches,
            "ok": self.ok,
        }


def admissible_cones(f: Fan, maximal_only: bool = False) -> list[Cone]:
    if maximal_only:
        return list(f.max_cones)
    return sorted((c for c in cones(f) if len(c) >= 2), key=lambda c: (len(c), c))


def verify_blowup(f: Fan, cone: Cone) -> list[str]:
    """Compare toric and formula-side blow-ups of ``f`` at ``cone``; returns mismatch descriptions."""
    k = len(cone)
    sub = stellar_subdivision(f, cone)
    z_fan = star_quotient_fan(f, cone)
    problems = []
    expected = constructors.blow_up(hodge_from_fan(f), hodge_from_fan(z_fan), k)
    if hodge_from_fan(sub) != expected:
        problems.append(f"hodge: cone {cone}: toric {hodge_from_fan(sub).h} != formula {expected.h}")
    expected_b = spectral.de_rham_blowup(betti_from_fan(f), betti_from_fan(z_fan), k)
    if betti_from_fan(sub) != expected_b:
        problems.append(f"betti: cone {cone}: toric {betti_from_fan(sub).b} != formula {expected_b.b}")
    return problems


def reachable_fans(seed: Fan, depth: int, maximal_only: bool = False) -> list[tuple[int, Fan]]:
    """Distinct fans (up to ray numbering) within ``depth`` subdivisions of ``seed``, with their level."""
    seen = {seed.key()}
    level = [seed]
    out = [(0, seed)]
    for d in range(1, depth + 1):
        nxt = []
        for f in level:
            for c in admissible_cones(f, maximal_only):
                g = stellar_subdivision(f, c)
                key = g.key()
                if key not in seen:
                    seen.add(key)
                    nxt.append(g)
                    out.append((d, g))
        level = nxt
    return out


def sweep(seed: str, depth: int, maximal_only: bool = False) -> SweepResult:
    """Check the blow-up formula on every subdivision step reachable within ``depth`` steps."""
    if depth < 1:
        raise ArgumentError(f"depth must be >= 1, got {depth}")
    result = SweepResult(seed, depth)
    fans = reachable_fans(seed_fan(seed), depth - 1, maximal_only)
    result.fans = len(fans)
    for _, f in fans:
        for c in admissible_cones(f, maximal_only):
            result.checks += 1
            result.mismatches.extend(verify_blowup(f, c))
    return result
