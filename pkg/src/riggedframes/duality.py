"""Canonical dual frames, reconstruction, and the basis characterizations.

For a frame the canonical dual kernel is Theta = Omega S^{-1}, so that
analysis through theta equals analysis through omega of S^{-1} f, the dual
frame operator is S^{-1} exactly at matrix level, and both reconstruction
orders

    f = synthesis_theta(analysis_omega(f)) = synthesis_omega(analysis_theta(f))

recover f up to conditioning.  Inversion goes through the
eigendecomposition with a relative cutoff so that near-singular frame
operators surface as NotAFrameError instead of amplified noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidConfigError, NotAFrameError, NumericError
from .hermite import as_test_function, inner_product, random_test_function
from .kernels import KernelMatrix, sample_kernel
from .operators import (
    ClassifyThresholds,
    analysis,
    classify,
    coarse_synthesis_grid,
    frame_bounds,
    frame_operator,
    hermitian_eigenpairs,
    mu_independence_test,
    synthesis,
    weighted_analysis_matrix,
)
from .quadrature import l2x_inner, l2x_norm, stage_grid

__all__ = [
    "INVERSION_CUTOFF",
    "DEFAULT_SEED",
    "DualPair",
    "GelfandResult",
    "RieszResult",
    "DualSemiframeResult",
    "canonical_dual",
    "verify_duality",
    "dual_bounds",
    "reconstruct",
    "parseval_check",
    "gelfand_check",
    "riesz_check",
    "dual_semiframe_check",
]

INVERSION_CUTOFF = 1e-12
DEFAULT_SEED = 20240409


@dataclass(frozen=True)
class DualPair:
    """A map and its candidate dual on the same grid and truncation."""

    omega: KernelMatrix
    theta: KernelMatrix
    duality_defect: float


def canonical_dual(kernel, trials=20, seed=DEFAULT_SEED):
    """Canonical dual pair (omega, Omega S^{-1}) with its measured defect.

    Raises NotAFrameError when the frame operator is singular at the
    relative cutoff, carrying the offending smallest eigenvalue.
    """
    op = frame_operator(kernel)
    values, vectors = hermitian_eigenpairs(op)
    lam_min, lam_max = float(values[0]), float(values[-1])
    if lam_max <= 0.0 or lam_min <= INVERSION_CUTOFF * lam_max:
        raise NotAFrameError(
            f"frame operator singular at cutoff {INVERSION_CUTOFF:g}: "
            f"lambda_min={lam_min:.3e}, lambda_max={lam_max:.3e}",
            lam_min,
        )
    inverse = (vectors / values[None, :]) @ vectors.conj().T
    theta = KernelMatrix(kernel.entries @ inverse, kernel.grid, None)
    pair = DualPair(kernel, theta, 0.0)
    defect = verify_duality(pair, trials, seed)
    return DualPair(kernel, theta, defect)


def verify_duality(pair, trials, seed=DEFAULT_SEED):
    """Worst normalized defect of <f, g> = int <f, theta_x><omega_x, g> dmu
    over seeded random pairs."""
    if trials < 1:
        raise InvalidConfigError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    grid = pair.omega.grid
    worst = 0.0
    for _ in range(trials):
        f = random_test_function(pair.omega.truncation, rng)
        g = random_test_function(pair.omega.truncation, rng)
        direct = inner_product(f, g)
        through = l2x_inner(analysis(pair.theta, f), analysis(pair.omega, g), grid)
        worst = max(worst, abs(direct - through) / (f.norm() * g.norm()))
    return float(worst)


def dual_bounds(pair):
    """Frame bounds of the dual map; for the canonical dual they sit inside
    [1/B, 1/A] of the original, which is checked here as a postcondition."""
    lower_o, upper_o = frame_bounds(frame_operator(pair.omega))
    lower_t, upper_t = frame_bounds(frame_operator(pair.theta))
    if lower_o > 0 and upper_o > 0:
        tol = 1e-8 / lower_o
        if lower_t < 1.0 / upper_o - tol or upper_t > 1.0 / lower_o + tol:
            raise NumericError(
                f"dual bounds ({lower_t:.6e}, {upper_t:.6e}) escaped "
                f"[1/B, 1/A] = ({1.0 / upper_o:.6e}, {1.0 / lower_o:.6e})"
            )
    return lower_t, upper_t


def reconstruct(pair, f, swap_roles=False):
    """Round-trip f through analysis and the dual synthesis.

    ``swap_roles`` uses the other displayed order (analyze through theta,
    synthesize through omega).  Returns (reconstruction, relative error).
    """
    if swap_roles:
        sample = synthesis(pair.omega, analysis(pair.theta, f))
    else:
        sample = synthesis(pair.theta, analysis(pair.omega, f))
    rebuilt = as_test_function(sample)
    scale = f.norm()
    err = float(np.linalg.norm(rebuilt.coeffs - f.coeffs))
    return rebuilt, err / scale if scale > 0 else err


def parseval_check(kernel, trials=20, seed=DEFAULT_SEED, tolerance=1e-6):
    """(flag, defect) with defect = max |S - I|.

    Cross-checks the equivalent random-pair identity
    <f, g> = sum_j w_j xi_f conj(xi_g); a disagreement between the two
    routes is a numerical fault and raises.
    """
    op = frame_operator(kernel)
    n = op.truncation
    defect = float(np.abs(op.matrix - np.eye(n)).max())
    flag = defect <= tolerance
    rng = np.random.default_rng(seed)
    worst_pair = 0.0
    for _ in range(trials):
        f = random_test_function(n, rng)
        g = random_test_function(n, rng)
        direct = inner_product(f, g)
        through = l2x_inner(analysis(kernel, f), analysis(kernel, g), kernel.grid)
        worst_pair = max(worst_pair, abs(direct - through) / (f.norm() * g.norm()))
    # worst_pair <= n * defect always holds; a gross mismatch between the two
    # routes signals a wiring bug (e.g. mismatched grids), not a borderline map
    inconsistent = (flag and worst_pair > n * tolerance) or (
        not flag and defect > 10 * n * tolerance and worst_pair < tolerance
    )
    if inconsistent:
        raise NumericError(
            f"Parseval routes disagree: |S-I|={defect:.3e} but random-pair "
            f"defect is {worst_pair:.3e}"
        )
    return flag, defect


@dataclass(frozen=True)
class GelfandResult:
    gelfand: bool
    parseval: bool
    mu_independent: bool
    parseval_defect: float
    isometry_defect: float

    def __bool__(self):
        return self.gelfand


def _coarse_resample(kernel):
    """Kernel on the coarse bulk grid (node count <= truncation)."""
    if kernel.map_spec is not None and kernel.map_spec.kind != "custom":
        return sample_kernel(
            kernel.map_spec, coarse_synthesis_grid(kernel.truncation), kernel.truncation
        )
    if kernel.node_count <= kernel.truncation:
        return kernel
    raise InvalidConfigError(
        "kernel has more nodes than coefficients and no resamplable map spec; "
        "supply a coarse kernel for the synthesis-side diagnostics"
    )


def gelfand_check(kernel, threshold=1e-6):
    """Gel'fand basis test: Parseval and mu-independent.

    Also reports how far the weighted synthesis map on the coarse grid is
    from an isometry (its column Gram against the identity).  That defect is
    a rough diagnostic: it measures the quadrature's ability to resolve
    products of distribution rows, not the continuum isometry itself.
    """
    parseval, parseval_defect = parseval_check(kernel)
    coarse = _coarse_resample(kernel)
    mu = mu_independence_test(coarse, threshold)
    weighted = weighted_analysis_matrix(coarse)
    gram = weighted @ weighted.conj().T
    isometry_defect = float(np.abs(gram - np.eye(coarse.node_count)).max())
    return GelfandResult(
        gelfand=bool(parseval and mu),
        parseval=parseval,
        mu_independent=bool(mu),
        parseval_defect=parseval_defect,
        isometry_defect=isometry_defect,
    )


@dataclass(frozen=True)
class RieszResult:
    riesz: bool
    sigma_min: float
    sigma_max: float
    report: object

    def __bool__(self):
        return self.riesz


def riesz_check(kernel, ladder=None, thresholds=ClassifyThresholds()):
    """Riesz basis test: frame classification plus mu-independence.

    The singular-value interval of the weighted kernel certifies the
    synthesis map as bounded with bounded inverse at the truncated level.
    """
    if kernel.map_spec is None or kernel.map_spec.kind == "custom":
        raise InvalidConfigError(
            "riesz_check classifies along a ladder and needs a resamplable map spec"
        )
    if ladder is None:
        ladder = _ladder_up_to(kernel.truncation)
    report = classify(kernel.map_spec, ladder, thresholds)
    lower, upper = frame_bounds(frame_operator(kernel))
    flag = report.has("frame") and report.has("mu_independent")
    return RieszResult(
        riesz=bool(flag),
        sigma_min=float(np.sqrt(max(lower, 0.0))),
        sigma_max=float(np.sqrt(max(upper, 0.0))),
        report=report,
    )


def _ladder_up_to(truncation):
    from .quadrature import default_ladder

    n_max = 8
    while n_max * 2 <= max(truncation, 8):
        n_max *= 2
    return default_ladder(n_max)


@dataclass(frozen=True)
class DualSemiframeResult:
    holds: bool
    margins: tuple

    def __bool__(self):
        return self.holds


def dual_semiframe_check(pair, ladder=None, thresholds=ClassifyThresholds()):
    """Dual of an upper semi-frame is a lower semi-frame with bound 1/B.

    Requires omega to classify as an upper semi-frame (or better, a frame)
    with a stable upper bound; verifies lower_theta >= 1/upper_omega - tol
    at every ladder stage.
    """
    kernel = pair.omega
    if kernel.map_spec is None or kernel.map_spec.kind == "custom":
        raise InvalidConfigError(
            "dual_semiframe_check needs a resamplable map spec to walk the ladder"
        )
    if ladder is None:
        ladder = _ladder_up_to(kernel.truncation)
    report = classify(kernel.map_spec, ladder, thresholds)
    if report.upper_trend != "bounded" or not report.has("total"):
        raise InvalidConfigError(
            f"map is not an upper semi-frame: upper trend {report.upper_trend!r}, "
            f"total={report.has('total')}"
        )
    margins = []
    holds = True
    for stage in ladder.stages:
        stage_kernel = sample_kernel(kernel.map_spec, stage_grid(stage), stage.truncation)
        upper_o = frame_bounds(frame_operator(stage_kernel))[1]
        stage_pair = canonical_dual(stage_kernel)
        lower_t = frame_bounds(frame_operator(stage_pair.theta))[0]
        tol = 1e-8 / upper_o
        margin = lower_t - 1.0 / upper_o
        margins.append(margin)
        if margin < -tol:
            holds = False
    return DualSemiframeResult(holds, tuple(margins))
