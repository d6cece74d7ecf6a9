import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgecalc import toric
from hodgecalc.constructors import blow_up, curve, point, projective_bundle, projective_space
from hodgecalc.errors import ArgumentError, CodimensionError, HypothesisError, InconsistencyError, UnsupportedError
from hodgecalc.grid import HodgeGrid, anti_diagonal, total_hodge
from hodgecalc.spectral import (
    DefectVector,
    DeRhamDims,
    HochschildDims,
    de_rham_blowup,
    de_rham_blowup_twisted,
    e1_defect,
    e1_defect_blowup,
    e2_defect,
    e2_defect_blowup,
    eo_check,
    hh_blowup,
    hh_from_grid,
    hh_projbundle,
    strong_hkr_holds,
)

from randgen import (
    blowup_instances,
    consistent_de_rham,
    consistent_hochschild,
    grids,
    random_twisted_grid,
    rngs,
)

P2_BETTI = DeRhamDims(2, (1, 0, 1, 0, 1))
POINT_BETTI = DeRhamDims(0, (1,))


class TestDeRham:
    def test_surface_point(self):
        assert de_rham_blowup(P2_BETTI, POINT_BETTI, 2).b == (1, 0, 2, 0, 1)

    def test_p3_along_line(self):
        p3 = DeRhamDims(3, (1, 0, 1, 0, 1, 0, 1))
        p1 = DeRhamDims(1, (1, 0, 1))
        assert de_rham_blowup(p3, p1, 2).b == (1, 0, 2, 0, 2, 0, 1)

    def test_matches_toric_betti(self):
        fan = toric.stellar_subdivision(toric.seed_fan("P2"), (0, 1))
        assert toric.betti_from_fan(fan) == de_rham_blowup(toric.betti_from_fan(toric.seed_fan("P2")), POINT_BETTI, 2)

    def test_errors(self):
        with pytest.raises(ArgumentError):
            de_rham_blowup(P2_BETTI, DeRhamDims(1, (1, 0, 1)), 2)
        with pytest.raises(CodimensionError):
            de_rham_blowup(P2_BETTI, DeRhamDims(1, (1, 0, 1)), 1)

    def test_invariants(self):
        with pytest.raises(ArgumentError):
            DeRhamDims(1, (1, 0))
        with pytest.raises(ArgumentError):
            DeRhamDims(1, (0, 0, 1))
        with pytest.raises(ArgumentError):
            DeRhamDims(1, (1, -1, 1))
        assert DeRhamDims(1, (0, 0, 1), twisted=True)[0] == 0

    def test_json(self):
        assert DeRhamDims.from_dict(P2_BETTI.to_dict()) == P2_BETTI

    def test_twisted_needs_flag(self):
        bx = DeRhamDims(2, (0, 1, 2, 1, 0), twisted=True)
        bz = DeRhamDims(0, (1,), twisted=True)
        with pytest.raises(HypothesisError):
            de_rham_blowup_twisted(bx, bz, 2)
        out = de_rham_blowup_twisted(bx, bz, 2, assuming_q59=True)
        assert out.b == (0, 1, 3, 1, 0)
        assert out.twisted


class TestE1:
    def test_projective_spaces_degenerate(self):
        for name in ("P2", "P3", "P1xP1", "P1xP2"):
            fan = toric.seed_fan(name)
            assert e1_defect(toric.hodge_from_fan(fan), toric.betti_from_fan(fan)).is_zero()

    def test_synthetic_non_degenerate_surface(self):
        # a surface with one more global 1-form than de Rham classes in degree 1
        g = HodgeGrid.from_rows([[1, 2, 1], [1, 8, 1], [1, 2, 1]])
        assert total_hodge(g, 1) == 3
        d = e1_defect(g, DeRhamDims(2, (1, 2, 10, 2, 1)))
        assert d.d == (0, 1, 0, 1, 0)
        assert d.report()[1] == {"degree": 1, "defect": 1}

    def test_bound_exceeded(self):
        with pytest.raises(InconsistencyError):
            e1_defect(curve(0), DeRhamDims(1, (1, 2, 1)))

    def test_dimension_mismatch(self):
        with pytest.raises(ArgumentError):
            e1_defect(curve(0), P2_BETTI)

    def test_blowup_of_zero_is_zero(self):
        zero2 = DefectVector(2, (0,) * 5)
        assert e1_defect_blowup(zero2, DefectVector(0, (0,)), 2).is_zero()

    def test_point_center_keeps_defect(self):
        dx = DefectVector(2, (0, 1, 0, 1, 0))
        assert e1_defect_blowup(dx, DefectVector(0, (0,)), 2) == dx

    def test_kind_mismatch(self):
        with pytest.raises(ArgumentError):
            e1_defect_blowup(DefectVector(2, (0,) * 5, "e2"), DefectVector(0, (0,), "e2"), 2)

    @given(blowup_instances(), rngs)
    def test_defect_of_blowup_is_blowup_of_defects(self, inst, rng):
        x, z, c = inst
        bx, bz = consistent_de_rham(rng, x), consistent_de_rham(rng, z)
        lhs = e1_defect(blow_up(x, z, c), de_rham_blowup(bx, bz, c))
        dx, dz = e1_defect(x, bx), e1_defect(z, bz)
        assert lhs == e1_defect_blowup(dx, dz, c)
        assert lhs.is_zero() == (dx.is_zero() and dz.is_zero())

    @given(grids(min_dim=2, max_dim=2), rngs, st.integers(1, 6))
    def test_iterated_point_blowups_of_surface(self, x, rng, k):
        bx = consistent_de_rham(rng, x)
        g, b = x, bx
        for _ in range(k):
            g, b = blow_up(g, point(), 2), de_rham_blowup(b, POINT_BETTI, 2)
        assert e1_defect(g, b) == e1_defect(x, bx)


class TestHochschild:
    def test_offset_indexing(self):
        h = HochschildDims.from_degrees(1, {-1: 2, 0: 4, 1: 2})
        assert h.hh == (2, 4, 2)
        assert h[-1] == 2 and h[5] == 0
        assert h.to_dict() == {"dim": 1, "hh": {"-1": 2, "0": 4, "1": 2}}
        assert HochschildDims.from_dict(h.to_dict()) == h

    def test_from_degrees_out_of_range(self):
        with pytest.raises(ArgumentError):
            HochschildDims.from_degrees(1, {2: 1})

    def test_blowup_surface_point(self):
        hx = HochschildDims.from_degrees(2, {0: 3})
        assert hh_blowup(hx, HochschildDims(0, (1,)), 2)[0] == 4

    def test_blowup_p3_line(self):
        hx = HochschildDims.from_degrees(3, {0: 4})
        hz = HochschildDims.from_degrees(1, {0: 2})
        out = hh_blowup(hx, hz, 2)
        assert out[0] == 6
        assert out[0] == anti_diagonal(blow_up(projective_space(3), curve(0), 2), 0)

    def test_projbundle_over_point(self):
        assert hh_projbundle(HochschildDims(0, (1,)), 3) == hh_from_grid(projective_space(2))

    def test_projbundle_rank_one(self):
        h = HochschildDims.from_degrees(1, {-1: 3, 0: 2, 1: 3})
        assert hh_projbundle(h, 1) == h

    @pytest.mark.parametrize("g", [0, 1, 5])
    def test_projbundle_over_curve(self, g):
        h = HochschildDims.from_degrees(1, {-1: g, 0: 2, 1: g})
        out = hh_projbundle(h, 2)
        assert (out[-1], out[0], out[1]) == (2 * g, 4, 2 * g)
        assert out == hh_from_grid(projective_bundle(curve(g), 2))

    def test_projbundle_bad_rank(self):
        with pytest.raises(ArgumentError):
            hh_projbundle(HochschildDims(0, (1,)), 0)

    def test_iterated_projbundle_over_point(self):
        # rank-2 bundles stacked k times over a point: (P^1)^k, hh_0 = 2^k
        h, g = HochschildDims(0, (1,)), point()
        for k in range(1, 5):
            h, g = hh_projbundle(h, 2), projective_bundle(g, 2)
            assert h[0] == 2**k and all(h[l] == 0 for l in h.degrees() if l)
            assert h == hh_from_grid(g)
        assert hh_projbundle(HochschildDims(0, (1,)), 5) == hh_from_grid(projective_space(4))


class TestHKRGate:
    def test_gate(self):
        assert strong_hkr_holds(0, 9)
        assert strong_hkr_holds(2, 2)
        assert strong_hkr_holds(7, 3)
        assert not strong_hkr_holds(2, 5)

    def test_p2(self):
        assert hh_from_grid(projective_space(2)).hh == (0, 0, 3, 0, 0)
        assert hh_from_grid(projective_space(2, char=2))[0] == 3

    def test_refuses_small_char(self):
        with pytest.raises(HypothesisError):
            hh_from_grid(projective_space(5, char=2))

    def test_twisted(self):
        with pytest.raises(UnsupportedError):
            hh_from_grid(HodgeGrid.from_rows([[0, 1], [1, 0]], twisted=True))

    @given(grids())
    def test_sum_matches_grid_total(self, g):
        assert sum(hh_from_grid(g).hh) == g.total()

    @given(blowup_instances())
    def test_blowup_commutes(self, inst):
        x, z, c = inst
        assert hh_from_grid(blow_up(x, z, c)) == hh_blowup(hh_from_grid(x), hh_from_grid(z), c)

    @given(grids(max_dim=4), st.integers(1, 4))
    def test_projbundle_commutes(self, x, c):
        assert hh_from_grid(projective_bundle(x, c)) == hh_projbundle(hh_from_grid(x), c)


class TestE2:
    def test_own_hh_is_zero(self):
        g = blow_up(projective_space(3), curve(0), 2)
        assert e2_defect(g, hh_from_grid(g)).is_zero()

    def test_synthetic_fourfold(self):
        g = HodgeGrid.from_rows([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 2, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
        assert anti_diagonal(g, 0) == 6
        d = e2_defect(g, HochschildDims.from_degrees(4, {0: 5}))
        assert d[0] == 1 and d.kind == "e2"
        assert sum(d.d) == 1
        assert {"degree": 0, "defect": 1} in d.report()
        assert d.report()[0]["degree"] == -4

    def test_bound_exceeded(self):
        with pytest.raises(InconsistencyError):
            e2_defect(projective_space(2), HochschildDims.from_degrees(2, {0: 4}))

    @given(blowup_instances(), rngs)
    def test_defect_of_blowup_is_blowup_of_defects(self, inst, rng):
        x, z, c = inst
        hx, hz = consistent_hochschild(rng, x), consistent_hochschild(rng, z)
        lhs = e2_defect(blow_up(x, z, c), hh_blowup(hx, hz, c))
        dx, dz = e2_defect(x, hx), e2_defect(z, hz)
        assert lhs == e2_defect_blowup(dx, dz, c)
        assert lhs.is_zero() == (dx.is_zero() and dz.is_zero())


@given(grids(min_dim=1, max_dim=4), rngs)
def test_defects_are_monotone(g, rng):
    b = consistent_de_rham(rng, g)
    hh = consistent_hochschild(rng, g)
    n = g.dim
    p, q = rng.randint(0, n), rng.randint(0, n)
    rows = [list(r) for r in g.h]
    rows[p][q] += 1
    bumped = HodgeGrid.from_rows(rows)
    d1 = [a - b_ for a, b_ in zip(e1_defect(bumped, b).d, e1_defect(g, b).d)]
    d2 = [a - b_ for a, b_ in zip(e2_defect(bumped, hh).d, e2_defect(g, hh).d)]
    assert sorted(d1) == [0] * (2 * n) + [1] and d1[p + q] == 1
    assert sorted(d2) == [0] * (2 * n) + [1] and d2[p - q + n] == 1


# --- eo_check ---------------------------------------------------------------

def shuffle_diagonals(rng: random.Random, g: HodgeGrid) -> HodgeGrid:
    """Permute entries within each p + q = l line: same total dims, different grid."""
    n = g.dim
    rows = [list(r) for r in g.h]
    for l in range(2 * n + 1):
        cells = [(p, l - p) for p in range(max(0, l - n), min(l, n) + 1)]
        vals = [rows[p][q] for p, q in cells]
        rng.shuffle(vals)
        for (p, q), v in zip(cells, vals):
            rows[p][q] = v
    return HodgeGrid.from_rows(rows, twisted=True)


class TestEoCheck:
    def test_identical(self):
        g = random_twisted_grid(random.Random(1), 3)
        assert eo_check([g, g, g], 4, [1, 3, 5]) == (True,) * 7

    def test_one_entry_differs(self):
        g = random_twisted_grid(random.Random(2), 2)
        rows = [list(r) for r in g.h]
        rows[1][1] += 1
        other = HodgeGrid.from_rows(rows, twisted=True)
        assert eo_check([g, other], 3, [1, 2]) == (True, True, False, True, True)

    def test_not_coprime(self):
        g = random_twisted_grid(random.Random(3), 2)
        with pytest.raises(ArgumentError):
            eo_check([g, g], 4, [1, 2])

    def test_exponent_one_required(self):
        g = random_twisted_grid(random.Random(4), 2)
        with pytest.raises(ArgumentError):
            eo_check([g, g], 5, [2, 3])

    def test_mixed_dimensions(self):
        r = random.Random(5)
        with pytest.raises(ArgumentError):
            eo_check([random_twisted_grid(r, 2), random_twisted_grid(r, 3)], 5, [1, 2])

    @given(rngs, st.integers(2, 5))
    def test_blowup_propagation(self, rng, n):
        c = rng.randint(2, n)
        m = 7
        exps = [1, 2, 3, 6]
        x = random_twisted_grid(rng, n)
        z = random_twisted_grid(rng, n - c)
        xs = [x] + [shuffle_diagonals(rng, x) for _ in exps[1:]]
        zs = [z] + [shuffle_diagonals(rng, z) for _ in exps[1:]]
        assert all(eo_check(xs, m, exps)) and all(eo_check(zs, m, exps))
        blown = [blow_up(a, b, c) for a, b in zip(xs, zs)]
        assert all(eo_check(blown, m, exps))

