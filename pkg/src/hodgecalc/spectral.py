"""De Rham and Hochschild dimension vectors and spectral-sequence defects.

A defect is the per-degree gap between the E1 (Hodge-de Rham) or E2 (HKR)
upper bound and the supplied limit dimension. All-zero means the
spectral sequence degenerates for that data. Blow-ups act on defects by
the same additive template as on the dimensions themselves, which turns
the "degenerates for X~ iff for X and Z" statements into exact
identities.

De Rham and Hochschild dimensions are inputs. The only place one is
computed from a grid is :func:`hh_from_grid`, behind the strong-HKR
characteristic gate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .errors import ArgumentError, CodimensionError, HypothesisError, InconsistencyError, UnsupportedError
from .grid import HodgeGrid, anti_diagonal, decode_int, encode_int, total_hodge


def _check_blowup_dims(n_x: int, n_z: int, c: int) -> None:
    if c < 2:
        raise CodimensionError(f"blow-up center must have codimension >= 2, got {c}")
    if n_z != n_x - c:
        raise ArgumentError(f"center of dimension {n_z} cannot have codimension {c} in dimension {n_x}")


@dataclass(frozen=True)
class DeRhamDims:
    """b[l] = dim H^l_dR for l = 0..2n. ``twisted`` drops the b[0] >= 1 requirement."""

    dim: int
    b: tuple[int, ...]
    twisted: bool = False

    def __post_init__(self):
        b = tuple(int(v) for v in self.b)
        object.__setattr__(self, "b", b)
        if len(b) != 2 * self.dim + 1:
            raise ArgumentError(f"de Rham vector of a {self.dim}-fold needs {2 * self.dim + 1} entries, got {len(b)}")
        if any(v < 0 for v in b):
            raise ArgumentError(f"negative de Rham dimension in {b}")
        if not self.twisted and b[0] < 1:
            raise ArgumentError("b[0] must be >= 1 for a connected variety")

    def __getitem__(self, l: int) -> int:
        return self.b[l] if 0 <= l < len(self.b) else 0

    def to_dict(self) -> dict:
        return {"dim": self.dim, "b": [encode_int(v) for v in self.b]}

    @classmethod
    def from_dict(cls, d: dict) -> DeRhamDims:
        return cls(decode_int(d["dim"]), tuple(decode_int(v) for v in d["b"]), bool(d.get("twisted", False)))


@dataclass(frozen=True)
class HochschildDims:
    """hh[l] = dim HH_l for l = -n..n, stored at offset l + n."""

    dim: int
    hh: tuple[int, ...]

    def __post_init__(self):
        hh = tuple(int(v) for v in self.hh)
        object.__setattr__(self, "hh", hh)
        if len(hh) != 2 * self.dim + 1:
            raise ArgumentError(f"Hochschild vector of a {self.dim}-fold needs {2 * self.dim + 1} entries, got {len(hh)}")
        if any(v < 0 for v in hh):
            raise ArgumentError(f"negative Hochschild dimension in {hh}")

    @classmethod
    def from_degrees(cls, dim: int, values: dict[int, int]) -> HochschildDims:
        bad = [l for l in values if not -dim <= l <= dim]
        if bad:
            raise ArgumentError(f"Hochschild degrees {bad} outside [{-dim}, {dim}]")
        return cls(dim, tuple(values.get(l, 0) for l in range(-dim, dim + 1)))

    def __getitem__(self, l: int) -> int:
        """Value at degree l (not storage index); 0 outside [-n, n]."""
        return self.hh[l + self.dim] if -self.dim <= l <= self.dim else 0

    def degrees(self) -> range:
        return range(-self.dim, self.dim + 1)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "hh": {str(l): encode_int(self[l]) for l in self.degrees()}}

    @classmethod
    def from_dict(cls, d: dict) -> HochschildDims:
        n = decode_int(d["dim"])
        return cls.from_degrees(n, {int(k): decode_int(v) for k, v in d["hh"].items()})


@dataclass(frozen=True)
class DefectVector:
    """Per-degree defects. ``kind`` is "e1" (degrees 0..2n) or "e2" (degrees -n..n)."""

    dim: int
    d: tuple[int, ...]
    kind: str = "e1"

    def __post_init__(self):
        d = tuple(int(v) for v in self.d)
        object.__setattr__(self, "d", d)
        if self.kind not in ("e1", "e2"):
            raise ArgumentError(f"unknown defect kind {self.kind!r}")
        if len(d) != 2 * self.dim + 1:
            raise ArgumentError(f"defect vector of a {self.dim}-fold needs {2 * self.dim + 1} entries")
        neg = [l for l, v in zip(self.degrees(), d) if v < 0]
        if neg:
            raise InconsistencyError(
                f"{self.kind} defect negative at degrees {neg}: limit dimension exceeds its spectral-sequence bound"
            )

    @property
    def offset(self) -> int:
        return self.dim if self.kind == "e2" else 0

    def degrees(self) -> range:
        return range(-self.offset, len(self.d) - self.offset)

    def __getitem__(self, l: int) -> int:
        i = l + self.offset
        return self.d[i] if 0 <= i < len(self.d) else 0

    def is_zero(self) -> bool:
        return not any(self.d)

    def report(self) -> list[dict]:
        return [{"degree": l, "defect": encode_int(self[l])} for l in self.degrees()]


# --- transformation laws --------------------------------------------------

def de_rham_blowup(bx: DeRhamDims, bz: DeRhamDims, c: int) -> DeRhamDims:
    """b~[l] = bx[l] + sum_{i=1}^{c-1} bz[l - 2i]."""
    _check_blowup_dims(bx.dim, bz.dim, c)
    n = bx.dim
    b = tuple(bx[l] + sum(bz[l - 2 * i] for i in range(1, c)) for l in range(2 * n + 1))
    return DeRhamDims(n, b, bx.twisted)


def de_rham_blowup_twisted(bx: DeRhamDims, bz: DeRhamDims, c: int, *, assuming_q59: bool = False) -> DeRhamDims:
    """Twisted de Rham blow-up, available only under an explicit hypothesis.

    Whether twisted algebraic de Rham cohomology obeys the blow-up formula in
    positive characteristic is open. Callers who want to explore its
    consequences must pass ``assuming_q59=True``; the result is then
    conditional on that assumption.
    """
    if not assuming_q59:
        raise HypothesisError(
            "twisted de Rham blow-up formula is an open question; pass assuming_q59=True to assume it"
        )
    _check_blowup_dims(bx.dim, bz.dim, c)
    n = bx.dim
    b = tuple(bx[l] + sum(bz[l - 2 * i] for i in range(1, c)) for l in range(2 * n + 1))
    return DeRhamDims(n, b, twisted=True)


def e1_defect(g: HodgeGrid, b: DeRhamDims) -> DefectVector:
    if g.dim != b.dim:
        raise ArgumentError(f"grid dimension {g.dim} != de Rham dimension {b.dim}")
    return DefectVector(g.dim, tuple(total_hodge(g, l) - b[l] for l in range(2 * g.dim + 1)), "e1")


def _defect_blowup(dx: DefectVector, dz: DefectVector, c: int, kind: str) -> DefectVector:
    if dx.kind != kind or dz.kind != kind:
        raise ArgumentError(f"expected {kind} defects, got {dx.kind} and {dz.kind}")
    _check_blowup_dims(dx.dim, dz.dim, c)
    if kind == "e1":
        d = tuple(dx[l] + sum(dz[l - 2 * i] for i in range(1, c)) for l in dx.degrees())
    else:
        d = tuple(dx[l] + (c - 1) * dz[l] for l in dx.degrees())
    return DefectVector(dx.dim, d, kind)


def e1_defect_blowup(dx: DefectVector, dz: DefectVector, c: int) -> DefectVector:
    """E1 defect of the blow-up: dx[l] + sum_{i=1}^{c-1} dz[l - 2i]."""
    return _defect_blowup(dx, dz, c, "e1")


def e2_defect_blowup(dx: DefectVector, dz: DefectVector, c: int) -> DefectVector:
    """E2 defect of the blow-up: dx[l] + (c-1) dz[l]."""
    return _defect_blowup(dx, dz, c, "e2")


def hh_blowup(hx: HochschildDims, hz: HochschildDims, c: int) -> HochschildDims:
    """HH_l of the blow-up = HH_l(X) + (c-1) HH_l(Z)."""
    _check_blowup_dims(hx.dim, hz.dim, c)
    return HochschildDims(hx.dim, tuple(hx[l] + (c - 1) * hz[l] for l in hx.degrees()))


def hh_projbundle(hx: HochschildDims, c: int) -> HochschildDims:
    """HH_l of a rank-c projective bundle = c copies of HH_l(base), re-indexed to the larger range."""
    if c < 1:
        raise ArgumentError(f"bundle rank must be >= 1, got {c}")
    n = hx.dim + c - 1
    return HochschildDims(n, tuple(c * hx[l] for l in range(-n, n + 1)))


def strong_hkr_holds(char: int, dim: int) -> bool:
    return char == 0 or char >= dim


def hh_from_grid(g: HodgeGrid) -> HochschildDims:
    """Hochschild dimensions as anti-diagonal sums, valid when char = 0 or char >= dim."""
    if g.twisted:
        raise UnsupportedError("hh_from_grid needs an untwisted grid")
    if not strong_hkr_holds(g.char, g.dim):
        raise HypothesisError(
            f"strong HKR needs char 0 or char >= dim; got char {g.char}, dim {g.dim}"
        )
    return HochschildDims(g.dim, tuple(anti_diagonal(g, l) for l in range(-g.dim, g.dim + 1)))


def e2_defect(g: HodgeGrid, hh: HochschildDims) -> DefectVector:
    if g.dim != hh.dim:
        raise ArgumentError(f"grid dimension {g.dim} != Hochschild dimension {hh.dim}")
    return DefectVector(g.dim, tuple(anti_diagonal(g, l) - hh[l] for l in hh.degrees()), "e2")


def eo_check(grids: Sequence[HodgeGrid], m: int, exponents: Sequence[int]) -> tuple[bool, ...]:
    """Compare total Hodge dimensions of the grids for L^j against the grid for L.

    ``grids[k]`` is the grid with coefficients L^{exponents[k]}, where L^m is
    trivial. Returns one flag per degree l = 0..2n, true when every supplied
    exponent gives the same total dimension as exponent 1.
    """
    if m < 1:
        raise ArgumentError(f"order m must be positive, got {m}")
    if len(grids) != len(exponents):
        raise ArgumentError(f"{len(grids)} grids but {len(exponents)} exponents")
    bad = [j for j in exponents if gcd(j, m) != 1]
    if bad:
        raise ArgumentError(f"exponents {bad} are not coprime to {m}")
    if 1 not in exponents:
        raise ArgumentError("the exponent 1 (the sheaf L itself) must be supplied")
    dims = {g.dim for g in grids}
    if len(dims) != 1:
        raise ArgumentError(f"grids have different dimensions {sorted(dims)}")
    n = dims.pop()
    ref = grids[list(exponents).index(1)]
    return tuple(
        all(total_hodge(g, l) == total_hodge(ref, l) for g in grids)
        for l in range(2 * n + 1)
    )
