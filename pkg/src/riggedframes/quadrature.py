"""Composite Gauss-Legendre discretization of the measure space.

The measure space is the interval [-L, L] with Lebesgue measure.  L is tied
to the Hermite turning point sqrt(2N+1) plus a fixed margin: past the
turning point the basis functions decay super-exponentially, so the
truncated interval carries the whole computation to working precision.

The refinement ladder pairs growing truncations N with widening intervals
and denser grids; classification of continuum properties (bounded versus
growing frame bounds, totality) is read off trends along the ladder, never
off a single stage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvalidConfigError

__all__ = [
    "QuadratureGrid",
    "LadderStage",
    "RefinementLadder",
    "build_grid",
    "l2x_inner",
    "l2x_norm",
    "bulk_half_width",
    "default_half_width",
    "default_panels",
    "default_stage",
    "stage_grid",
    "default_ladder",
]

TURNING_MARGIN = 8.0
DEFAULT_ORDER = 10
MIN_STAGE_MARGIN = 4.0


@dataclass(frozen=True)
class QuadratureGrid:
    """Nodes and weights of a composite Gauss-Legendre rule on [-L, L]."""

    nodes: np.ndarray
    weights: np.ndarray
    half_width: float
    panels: int
    order: int

    def __post_init__(self):
        for name in ("nodes", "weights"):
            arr = np.array(getattr(self, name), dtype=float, copy=True)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def node_count(self):
        return self.nodes.size


def build_grid(half_width, panels, order):
    """Composite Gauss-Legendre grid: ``panels`` panels of ``order`` points
    each on [-half_width, half_width].

    Exact for polynomials of degree <= 2*order - 1 on each panel.
    """
    if not (half_width > 0 and math.isfinite(half_width)):
        raise InvalidConfigError(f"half_width must be positive, got {half_width}")
    if panels < 1:
        raise InvalidConfigError(f"panels must be >= 1, got {panels}")
    if order < 2:
        raise InvalidConfigError(f"order must be >= 2, got {order}")
    ref_nodes, ref_weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(-half_width, half_width, panels + 1)
    half = 0.5 * (edges[1] - edges[0])
    centers = 0.5 * (edges[:-1] + edges[1:])
    nodes = (centers[:, None] + half * ref_nodes[None, :]).ravel()
    weights = np.tile(half * ref_weights, panels)
    return QuadratureGrid(nodes, weights, float(half_width), int(panels), int(order))


def _check_grid_length(values, grid):
    arr = np.asarray(values)
    if arr.shape != (grid.node_count,):
        raise DimensionMismatchError(
            f"grid function has shape {arr.shape}, expected ({grid.node_count},)"
        )
    return arr


def l2x_inner(xi, eta, grid):
    """L2(X, mu) inner product of two grid functions: sum w_j xi_j conj(eta_j)."""
    xi = _check_grid_length(xi, grid)
    eta = _check_grid_length(eta, grid)
    return complex(np.sum(grid.weights * xi * np.conj(eta)))


def l2x_norm(xi, grid):
    xi = _check_grid_length(xi, grid)
    return float(np.sqrt(np.sum(grid.weights * np.abs(xi) ** 2)))


def bulk_half_width(truncation):
    """Hermite turning point sqrt(2N+1): the half-width of the region where
    the first N basis functions carry their mass."""
    return math.sqrt(2.0 * truncation + 1.0)


def default_half_width(truncation):
    return bulk_half_width(truncation) + TURNING_MARGIN


def default_panels(truncation, half_width):
    """Panel count keeping each panel under ~1.3 oscillation wavelengths of
    h_{N-1}, so order-10 panels resolve all integrands to ~1e-14."""
    return int(math.ceil(max(1.5 * truncation, half_width * bulk_half_width(truncation) / 2.0)))


@dataclass(frozen=True)
class LadderStage:
    """One refinement stage: truncation N with its grid parameters."""

    truncation: int
    half_width: float
    panels: int
    order: int

    def __post_init__(self):
        if self.truncation < 1:
            raise InvalidConfigError(f"stage truncation must be >= 1, got {self.truncation}")
        if self.half_width < bulk_half_width(self.truncation) + MIN_STAGE_MARGIN:
            raise InvalidConfigError(
                f"stage half_width {self.half_width:.3f} is below the Hermite bulk "
                f"{bulk_half_width(self.truncation):.3f} plus margin {MIN_STAGE_MARGIN}"
            )

    @property
    def node_count(self):
        return self.panels * self.order


def default_stage(truncation):
    half_width = default_half_width(truncation)
    return LadderStage(
        truncation=int(truncation),
        half_width=half_width,
        panels=default_panels(truncation, half_width),
        order=DEFAULT_ORDER,
    )


def stage_grid(stage):
    return build_grid(stage.half_width, stage.panels, stage.order)


@dataclass(frozen=True)
class RefinementLadder:
    stages: tuple

    def __post_init__(self):
        stages = tuple(self.stages)
        if not stages:
            raise InvalidConfigError("ladder must have at least one stage")
        truncations = [s.truncation for s in stages]
        if any(b <= a for a, b in zip(truncations, truncations[1:])):
            raise InvalidConfigError(f"stage truncations must increase, got {truncations}")
        object.__setattr__(self, "stages", stages)

    @property
    def final_stage(self):
        return self.stages[-1]


def default_ladder(n_max):
    """Stages N = 8, 16, ..., n_max with default grids (>= 10N nodes each).

    ``n_max`` must be 8 times a power of two so the ladder is a clean
    doubling sequence.
    """
    n = n_max
    while n > 8 and n % 2 == 0:
        n //= 2
    if n != 8:
        raise InvalidConfigError(f"n_max must be 8 * 2^k, got {n_max}")
    stages = []
    size = 8
    while size <= n_max:
        stages.append(default_stage(size))
        size *= 2
    return RefinementLadder(tuple(stages))
