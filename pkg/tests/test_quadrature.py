import math

import numpy as np
import pytest

from hilbert_decision.errors import DomainError
from hilbert_decision.quadrature import (
    GRID,
    MONTE_CARLO,
    GridSpec,
    RegionEstimate,
    area_ratio_fixed_d,
    monte_carlo_ratio,
    sweep_d,
    volume_ratio,
    volume_slices,
)

PAPER_D = [0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi]


def always(x, y, d):
    return np.ones(np.broadcast(x, y, d).shape, dtype=bool)


def left_half(x, y, d):
    return np.broadcast_to(x < 0.5, np.broadcast(x, y, d).shape)


def brute_force_hits(d, n):
    # independent scalar loop over cell centres
    hits = 0
    for i in range(n):
        x = (i + 0.5) / n
        for j in range(n):
            y = (j + 0.5) / n
            c2 = (1 - x * x - y * y + 2 * x * x * y * y
                  + 2 * x * y * math.sqrt((1 - x * x) * (1 - y * y)) * math.cos(d))
            if 0.5 > c2 * y * y and 0.5 > c2 * (1 - y * y):
                hits += 1
    return hits


class TestGridSpec:
    @pytest.mark.parametrize("n", [1, 0, 2.5])
    def test_invalid(self, n):
        with pytest.raises(DomainError):
            GridSpec(n)

    def test_halved(self):
        assert GridSpec(3).halved() is None
        assert GridSpec(1000).halved() == GridSpec(500)


class TestAreaRatio:
    @pytest.mark.parametrize("d", PAPER_D + [0.3, 2.0])
    def test_matches_brute_force(self, d):
        n = 60
        est = area_ratio_fixed_d(d, GridSpec(n))
        assert abs(est.hits - brute_force_hits(d, n)) <= 1
        assert est.evaluations == n * n
        assert est.method == GRID

    @pytest.mark.parametrize("d,expected", list(zip(PAPER_D, [0.30, 0.41, 0.63, 0.74, 0.76])))
    def test_coarse_grid_near_reference(self, d, expected):
        assert area_ratio_fixed_d(d, GridSpec(200)).ratio == pytest.approx(expected, abs=0.01)

    def test_constant_predicate(self):
        assert area_ratio_fixed_d(1.0, GridSpec(10), predicate=always).ratio == 1.0
        assert area_ratio_fixed_d(1.0, GridSpec(10), predicate=left_half).ratio == 0.5

    def test_domain(self):
        with pytest.raises(DomainError):
            area_ratio_fixed_d(-0.5, GridSpec(10))

    def test_error_is_refinement_change(self):
        fine = area_ratio_fixed_d(1.0, GridSpec(200))
        coarse = area_ratio_fixed_d(1.0, GridSpec(100))
        assert fine.error_estimate == abs(fine.ratio - coarse.ratio)

    @pytest.mark.parametrize("d", PAPER_D)
    def test_refinement_stability(self, d):
        a = area_ratio_fixed_d(d, GridSpec(500)).ratio
        b = area_ratio_fixed_d(d, GridSpec(1000)).ratio
        assert abs(a - b) <= 0.01

    def test_workers_bit_identical(self):
        one = area_ratio_fixed_d(2.0, GridSpec(300), workers=1)
        many = area_ratio_fixed_d(2.0, GridSpec(300), workers=4)
        assert one.ratio == many.ratio and one.hits == many.hits

    def test_discrete_urn(self):
        est = area_ratio_fixed_d(math.pi / 2, GridSpec(200), discrete_urn=100)
        assert est.evaluations == 101 * 200
        assert 0.0 <= est.ratio <= 1.0
        # with fine composition steps the discrete and continuous modes differ only in x measure
        assert est.ratio != area_ratio_fixed_d(math.pi / 2, GridSpec(200)).ratio

    def test_payoffs_change_region(self):
        base = area_ratio_fixed_d(1.0, GridSpec(100)).ratio
        shifted = area_ratio_fixed_d(1.0, GridSpec(100), u0=0.5, u100=1.5).ratio
        assert base != shifted
        assert 0 <= shifted <= 1


class TestVolume:
    def test_constant_predicates(self):
        assert volume_ratio(GridSpec(10), predicate=always).ratio == 1.0
        assert volume_ratio(GridSpec(10), predicate=left_half).ratio == 0.5

    def test_coarse(self):
        est = volume_ratio(GridSpec(2))
        assert 0.0 <= est.ratio <= 1.0
        assert est.error_estimate == 1.0
        assert est.evaluations == 8

    def test_workers_bit_identical(self):
        assert volume_ratio(GridSpec(60), workers=1) == volume_ratio(GridSpec(60), workers=3)

    def test_slices_average_to_volume(self):
        grid = GridSpec(60)
        slices = volume_slices(grid)
        assert len(slices) == 60
        assert np.mean([r for _, r in slices]) == pytest.approx(volume_ratio(grid).ratio, abs=1e-12)


class TestSweep:
    def test_order_and_monotone(self):
        out = sweep_d(PAPER_D, GridSpec(200))
        assert [d for d, _ in out] == PAPER_D
        ratios = [e.ratio for _, e in out]
        assert ratios == sorted(ratios) and len(set(ratios)) == 5

    def test_single(self):
        (d, est), = sweep_d([math.pi / 2], GridSpec(200))
        assert est.ratio == pytest.approx(0.63, abs=0.01)

    def test_empty(self):
        assert sweep_d([], GridSpec(10)) == []

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            sweep_d([0.0, 4.0], GridSpec(10))


class TestMonteCarlo:
    def test_reproducible(self):
        a = monte_carlo_ratio(50_000, 123, math.pi / 2)
        b = monte_carlo_ratio(50_000, 123, math.pi / 2, workers=4)
        assert a == b
        assert a.seed == 123 and a.method == MONTE_CARLO
        assert monte_carlo_ratio(50_000, 124, math.pi / 2).hits != a.hits

    def test_constant_true(self):
        est = monte_carlo_ratio(5000, 1, predicate=always)
        assert est.ratio == 1.0 and est.error_estimate == 0.0

    def test_half(self):
        est = monte_carlo_ratio(200_000, 9, predicate=left_half)
        assert abs(est.ratio - 0.5) <= 4 * est.error_estimate

    def test_error_formula(self):
        est = monte_carlo_ratio(10_000, 3, 1.0)
        assert est.error_estimate == pytest.approx(math.sqrt(est.ratio * (1 - est.ratio) / 10_000))

    @pytest.mark.parametrize("samples,seed", [(999, 1), (1000, -1), (1000, 2**64)])
    def test_invalid(self, samples, seed):
        with pytest.raises(DomainError):
            monte_carlo_ratio(samples, seed)

    def test_agrees_with_grid_3d_large(self):
        mc = monte_carlo_ratio(10_000_000, 2026, workers=4)
        grid = volume_ratio(GridSpec(300), workers=4)
        assert abs(mc.ratio - grid.ratio) <= 3 * mc.error_estimate

    @pytest.mark.xfail(strict=True, reason="converged volume is 0.5775; 0.581 lies ~20 standard errors away at 1e7 samples")
    def test_3d_near_reported_value(self):
        mc = monte_carlo_ratio(10_000_000, 2026, workers=4)
        assert abs(mc.ratio - 0.581) <= 3 * mc.error_estimate


def test_region_estimate_invariants():
    with pytest.raises(ValueError):
        RegionEstimate(1.5, 0.0, GRID, 1)
    with pytest.raises(ValueError):
        RegionEstimate(0.5, 0.0, MONTE_CARLO, 1)
