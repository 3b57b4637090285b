"""Moment problems <f, omega_x> = h(x): solvers and solvability diagnostics.

The discrete moment problem asks for coefficients matching prescribed
analysis values on the grid.  Solutions form a coset f + null(analysis);
the least-norm representative is the canonical computable element, and all
residuals are measured in the weighted grid norm, relative to |h| when h is
nonzero.

The solvability envelope realizes the necessary condition for the
continuum problem: a target h reachable from the p_k unit ball must satisfy
|h(x)| <= r * e_k(x) pointwise, where e_k is the dual-seminorm profile of
the kernel rows.  Only necessity is constructive; the sufficiency direction
of the continuum statement has no algorithm, so it is reported, never
asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidConfigError
from .hermite import TestFunction
from .kernels import sample_kernel
from .operators import (
    bessel_seminorm_constant,
    coarse_synthesis_grid,
    weighted_analysis_matrix,
)
from .quadrature import l2x_norm, stage_grid

__all__ = [
    "MomentSolution",
    "DualBesselResult",
    "weighted_least_squares",
    "solve_moment",
    "rf_diagnostic",
    "continuity_constant",
    "envelope",
    "envelope_condition_check",
    "dual_bessel_check",
]

NULL_SPACE_CUTOFF = 1e-10


def weighted_least_squares(matrix, rhs, weights):
    """Minimum-norm minimizer of sum_j w_j |(A x - b)_j|^2.

    Returns (x, attained weighted residual norm).
    """
    matrix = np.asarray(matrix)
    rhs = np.asarray(rhs)
    weights = np.asarray(weights, dtype=float)
    for name, arr in (("matrix", matrix), ("rhs", rhs), ("weights", weights)):
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"{name} contains non-finite entries")
    scale = np.sqrt(weights)
    solution, _, _, _ = np.linalg.lstsq(scale[:, None] * matrix, scale * rhs, rcond=None)
    residual = float(np.linalg.norm(scale * (matrix @ solution - rhs)))
    return solution, residual


@dataclass(frozen=True)
class MomentSolution:
    """Least-norm solution of a discrete moment problem.

    ``residual`` is relative to the weighted norm of the target (absolute
    when the target vanishes); ``null_dim`` counts the numerical dimension
    of the solution coset's direction space.
    """

    f: TestFunction
    residual: float
    least_norm: bool
    null_dim: int


def solve_moment(kernel, h):
    """Solve <f, omega_{x_j}> = h_j in the weighted least-squares sense.

    Inconsistent targets yield a positive residual, never an error; the
    returned representative is orthogonal to the numerical null space.
    """
    h = np.asarray(h)
    if h.shape != (kernel.node_count,):
        raise InvalidConfigError(
            f"target has shape {h.shape}, expected ({kernel.node_count},)"
        )
    weighted = weighted_analysis_matrix(kernel)
    scaled_target = np.sqrt(kernel.grid.weights) * h
    u, svals, vh = np.linalg.svd(weighted, full_matrices=False)
    cutoff = NULL_SPACE_CUTOFF * (svals[0] if svals.size else 0.0)
    keep = svals > cutoff
    rank = int(np.count_nonzero(keep))
    coeffs = np.zeros(kernel.truncation, dtype=complex)
    if rank:
        projected = u[:, keep].conj().T @ scaled_target
        coeffs = vh[keep].conj().T @ (projected / svals[keep])
    residual_abs = float(np.linalg.norm(weighted @ coeffs - scaled_target))
    target_norm = l2x_norm(h, kernel.grid)
    residual = residual_abs / target_norm if target_norm > 0 else residual_abs
    return MomentSolution(
        f=TestFunction(coeffs),
        residual=residual,
        least_norm=True,
        null_dim=kernel.truncation - rank,
    )


def rf_diagnostic(kernel, probes):
    """Moment-solvability score over panel-indicator probes.

    The probes are normalized indicators of distinct quadrature panels
    (orthonormal by disjoint support); the score is the fraction solved to
    residual <= 1e-6 and the worst residual is reported alongside.
    """
    if probes < 1:
        raise InvalidConfigError(f"probes must be >= 1, got {probes}")
    grid = kernel.grid
    panel_count = grid.panels
    used = min(probes, panel_count)
    picks = sorted(set(np.linspace(0, panel_count - 1, used).round().astype(int)))
    residuals = []
    for panel in picks:
        target = np.zeros(grid.node_count)
        target[panel * grid.order : (panel + 1) * grid.order] = 1.0
        target = target / l2x_norm(target, grid)
        residuals.append(solve_moment(kernel, target).residual)
    score = sum(1 for r in residuals if r <= 1e-6) / len(residuals)
    return float(score), float(max(residuals))


def continuity_constant(kernel, k):
    """Smallest C with p_k(least-norm solution) <= C * |h| over all targets.

    Computed as the top singular value of the seminorm-weighted coefficient
    map composed with the pseudo-inverse of the weighted analysis matrix.
    For total maps this realizes the solution bound p_k(f) <= C |<f, omega>|;
    in general it bounds the least-norm coset representative.  A zero kernel
    has no finite constant and returns inf.
    """
    if k < 0:
        raise ValueError(f"seminorm index must be nonnegative, got {k}")
    weighted = weighted_analysis_matrix(kernel)
    u, svals, vh = np.linalg.svd(weighted, full_matrices=False)
    if svals.size == 0 or svals[0] == 0.0:
        return math.inf
    keep = svals > NULL_SPACE_CUTOFF * svals[0]
    growth = (1.0 + np.arange(kernel.truncation)) ** (k / 2.0)
    # P_k @ pinv(A_w) = (growth * V_r) diag(1/s_r) U_r^H, same top singular value
    scaled = (growth[:, None] * vh[keep].conj().T) / svals[keep][None, :]
    return float(np.linalg.svd(scaled, compute_uv=False)[0])


def envelope(kernel, k):
    """Reachability profile e_k(x_j) = sup { |<f, omega_{x_j}>| : p_k(f) <= 1 }.

    Closed form: the (1+n)^(-k)-weighted Euclidean norm of each kernel row.
    """
    if k < 0:
        raise ValueError(f"seminorm index must be nonnegative, got {k}")
    damping = (1.0 + np.arange(kernel.truncation)) ** (-float(k))
    return np.sqrt(np.abs(kernel.entries) ** 2 @ damping)


def envelope_condition_check(kernel, h, k):
    """Necessary solvability condition: |h_j| <= r * e_k(x_j) for finite r.

    Returns (satisfied, r) with r = max_j |h_j| / e_k(x_j), infinite when h
    is nonzero where the envelope vanishes.  Whenever a moment problem is
    solved to negligible residual by some f, the condition holds with
    r <= p_k(f) up to roundoff.
    """
    h = np.asarray(h)
    if h.shape != (kernel.node_count,):
        raise InvalidConfigError(
            f"target has shape {h.shape}, expected ({kernel.node_count},)"
        )
    profile = envelope(kernel, k)
    ratio = 0.0
    for hj, ej in zip(np.abs(h), profile):
        if ej == 0.0:
            if hj != 0.0:
                return False, math.inf
        else:
            ratio = max(ratio, hj / ej)
    return True, float(ratio)


@dataclass(frozen=True)
class DualBesselResult:
    bessel: bool
    seminorm_index: int
    constant: float

    def __bool__(self):
        return self.bessel


def dual_bessel_check(pair, ladder=None, k_max=6, stability=0.05):
    """A dual of a moment-solvable map is itself norm-bounded by a seminorm.

    Precondition (config error if unmet): the original map solves every
    coarse-grid panel probe, rf score 1.  The check then walks the ladder,
    builds canonical duals per stage, and certifies the smallest seminorm
    index whose analysis constant stabilizes.
    """
    from .duality import canonical_dual, _ladder_up_to

    kernel = pair.omega
    if kernel.map_spec is None or kernel.map_spec.kind == "custom":
        raise InvalidConfigError("dual_bessel_check needs a resamplable map spec")
    coarse = sample_kernel(
        kernel.map_spec, coarse_synthesis_grid(kernel.truncation), kernel.truncation
    )
    score, worst = rf_diagnostic(coarse, coarse.grid.panels)
    if score < 1.0:
        raise InvalidConfigError(
            f"moment-solvability precondition unmet: rf score {score:.3f}, "
            f"worst residual {worst:.3e}"
        )
    if ladder is None:
        ladder = _ladder_up_to(kernel.truncation)
    constants = {k: [] for k in range(k_max + 1)}
    for stage in ladder.stages:
        stage_kernel = sample_kernel(kernel.map_spec, stage_grid(stage), stage.truncation)
        stage_pair = canonical_dual(stage_kernel)
        for k in constants:
            constants[k].append(bessel_seminorm_constant(stage_pair.theta, k))
    for k in sorted(constants):
        series = constants[k]
        if len(series) == 1 or abs(series[-1] - series[-2]) <= stability * abs(series[-2]):
            return DualBesselResult(True, k, float(series[-1]))
    return DualBesselResult(False, -1, math.inf)
