import math

import numpy as np
import pytest

from riggedframes import (
    DimensionMismatchError,
    InvalidConfigError,
    build_grid,
    bulk_half_width,
    default_ladder,
    default_stage,
    hermite_eval,
    l2x_inner,
    l2x_norm,
    stage_grid,
)
from riggedframes.quadrature import LadderStage, RefinementLadder


class TestBuildGrid:
    def test_polynomial_exactness(self):
        grid = build_grid(1.0, 1, 2)
        assert np.sum(grid.weights * grid.nodes**2) == pytest.approx(2.0 / 3.0, abs=1e-14)

    def test_total_weight_is_interval_length(self):
        grid = build_grid(5.0, 10, 8)
        assert np.sum(grid.weights) == pytest.approx(10.0, rel=1e-12)

    def test_gaussian_normalization(self):
        grid = build_grid(16.0, 60, 10)
        values = hermite_eval(0, grid.nodes)
        assert np.sum(grid.weights * values**2) == pytest.approx(1.0, abs=1e-12)

    def test_nodes_sorted_inside_interval_weights_positive(self):
        grid = build_grid(3.0, 7, 4)
        assert np.all(np.diff(grid.nodes) > 0)
        assert grid.nodes[0] > -3.0 and grid.nodes[-1] < 3.0
        assert np.all(grid.weights > 0)

    def test_symmetry(self):
        grid = build_grid(4.0, 9, 6)
        assert grid.nodes == pytest.approx(-grid.nodes[::-1], abs=1e-14)
        assert grid.weights == pytest.approx(grid.weights[::-1], abs=1e-14)

    def test_refinement_keeps_polynomial_integrals(self):
        poly = lambda x: 3 * x**4 - x**2 + 0.5
        coarse = build_grid(2.0, 3, 5)
        fine = build_grid(2.0, 12, 8)
        a = np.sum(coarse.weights * poly(coarse.nodes))
        b = np.sum(fine.weights * poly(fine.nodes))
        assert a == pytest.approx(b, rel=1e-13)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"half_width": -1.0, "panels": 2, "order": 4},
            {"half_width": 0.0, "panels": 2, "order": 4},
            {"half_width": 1.0, "panels": 0, "order": 4},
            {"half_width": 1.0, "panels": 2, "order": 1},
        ],
    )
    def test_invalid_config(self, kwargs):
        with pytest.raises(InvalidConfigError):
            build_grid(**kwargs)


class TestL2X:
    def test_constant_functions(self):
        grid = build_grid(3.0, 5, 4)
        ones = np.ones(grid.node_count)
        assert l2x_inner(ones, ones, grid) == pytest.approx(6.0, rel=1e-13)

    def test_sampled_hermites_orthogonal(self):
        grid = build_grid(12.0, 40, 8)
        h0 = hermite_eval(0, grid.nodes)
        h1 = hermite_eval(1, grid.nodes)
        assert abs(l2x_inner(h0, h1, grid)) <= 1e-12

    def test_cauchy_schwarz(self):
        grid = build_grid(2.0, 4, 5)
        rng = np.random.default_rng(0)
        for _ in range(25):
            xi = rng.standard_normal(grid.node_count) + 1j * rng.standard_normal(grid.node_count)
            eta = rng.standard_normal(grid.node_count) + 1j * rng.standard_normal(grid.node_count)
            bound = l2x_norm(xi, grid) * l2x_norm(eta, grid)
            assert abs(l2x_inner(xi, eta, grid)) <= bound * (1 + 1e-12)

    def test_length_mismatch(self):
        grid = build_grid(2.0, 4, 5)
        with pytest.raises(DimensionMismatchError):
            l2x_norm(np.ones(grid.node_count + 1), grid)


class TestLadder:
    def test_single_stage(self):
        ladder = default_ladder(8)
        assert len(ladder.stages) == 1
        stage = ladder.stages[0]
        assert stage.truncation == 8
        assert stage.half_width == pytest.approx(math.sqrt(17) + 8, rel=1e-12)
        assert stage.node_count >= 80

    def test_three_stages_widths_increase(self):
        ladder = default_ladder(32)
        assert [s.truncation for s in ladder.stages] == [8, 16, 32]
        widths = [s.half_width for s in ladder.stages]
        assert all(a < b for a, b in zip(widths, widths[1:]))
        assert all(s.node_count >= 10 * s.truncation for s in ladder.stages)

    def test_every_stage_normalizes_top_mode(self):
        for stage in default_ladder(32).stages:
            grid = stage_grid(stage)
            values = hermite_eval(stage.truncation - 1, grid.nodes)
            assert np.sum(grid.weights * values**2) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("bad", [7, 12, 24, 0])
    def test_rejects_non_doubling_sizes(self, bad):
        with pytest.raises(InvalidConfigError):
            default_ladder(bad)

    def test_rejects_nonincreasing_stages(self):
        stages = (default_stage(16), default_stage(8))
        with pytest.raises(InvalidConfigError):
            RefinementLadder(stages)

    def test_rejects_half_width_inside_bulk(self):
        with pytest.raises(InvalidConfigError):
            LadderStage(truncation=32, half_width=bulk_half_width(32), panels=48, order=10)
