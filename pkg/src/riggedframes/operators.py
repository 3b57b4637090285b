"""Analysis, synthesis, and frame operators, plus the ladder classifier.

All operators come from one sampled kernel.  With W = diag(quadrature
weights) and Omega the kernel matrix:

  analysis(f)     = Omega @ c_f                      (grid samples of <f, omega_x>)
  synthesis(xi)   = Omega^H @ (W xi)                 (distribution pairings)
  frame operator  S = Omega^H W Omega, so S = T T^x  holds at matrix level

Frame bounds at truncation N are the extreme eigenvalues of S, equivalently
the squared extreme singular values of the weighted kernel sqrt(W) Omega.
Continuum statements (bounded versus growing bounds, totality) are read off
trends along a refinement ladder; a single stage can never decide them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, InvalidConfigError, NumericError
from .hermite import DistributionSample, TestFunction
from .kernels import sample_kernel
from .quadrature import build_grid, bulk_half_width, stage_grid

__all__ = [
    "FrameOperatorMatrix",
    "TotalityResult",
    "MuIndependenceResult",
    "ClassifyThresholds",
    "StageDiagnostics",
    "FrameReport",
    "LABEL_ORDER",
    "analysis",
    "synthesis",
    "weighted_analysis_matrix",
    "frame_operator",
    "hermitian_eigenpairs",
    "frame_bounds",
    "totality_test",
    "coarse_synthesis_grid",
    "mu_independence_test",
    "bessel_seminorm_constant",
    "classify",
]


def analysis(kernel, f):
    """Grid samples of <f, omega_x_j>; for the dirac map these are f(x_j)."""
    if f.truncation != kernel.truncation:
        raise DimensionMismatchError(
            f"function truncation {f.truncation} != kernel truncation {kernel.truncation}"
        )
    return kernel.entries @ f.coeffs


def synthesis(kernel, xi):
    """Weak integral of xi(x) omega_x d(mu) as a distribution sample.

    Adjoint to analysis by construction: the pairing of the result with any
    g equals l2x_inner(xi, analysis(kernel, g)).
    """
    xi = np.asarray(xi)
    if xi.shape != (kernel.node_count,):
        raise DimensionMismatchError(
            f"grid function has shape {xi.shape}, expected ({kernel.node_count},)"
        )
    return DistributionSample(kernel.entries.conj().T @ (kernel.grid.weights * xi))


def weighted_analysis_matrix(kernel):
    """sqrt(W) Omega: the analysis operator as an isometry into plain l2."""
    return np.sqrt(kernel.grid.weights)[:, None] * kernel.entries


@dataclass(frozen=True)
class FrameOperatorMatrix:
    """S[m][n] = sum_j w_j conj(Omega[j][m]) Omega[j][n]; Hermitian PSD."""

    matrix: np.ndarray
    provenance: str

    def __post_init__(self):
        arr = np.array(self.matrix, dtype=complex, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def truncation(self):
        return self.matrix.shape[0]


def frame_operator(kernel):
    weights = kernel.grid.weights
    s = kernel.entries.conj().T @ (weights[:, None] * kernel.entries)
    return FrameOperatorMatrix(s, kernel.fingerprint)


def hermitian_eigenpairs(op):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian
    operator matrix.

    Rejects visibly non-Hermitian input rather than silently symmetrizing;
    failure to converge surfaces as NumericError.
    """
    matrix = op.matrix if isinstance(op, FrameOperatorMatrix) else np.asarray(op)
    scale = np.abs(matrix).max()
    if scale > 0 and np.abs(matrix - matrix.conj().T).max() > 1e-12 * scale:
        raise NumericError(
            f"matrix is not Hermitian: deviation {np.abs(matrix - matrix.conj().T).max():.3e} "
            f"against scale {scale:.3e}"
        )
    try:
        values, vectors = np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    return values, vectors


def frame_bounds(op):
    """(lower, upper) = extreme eigenvalues of the frame operator.

    Inner approximations: the lower bound is nonincreasing and the upper
    nondecreasing as the truncation grows over a fixed map.
    """
    values, _ = hermitian_eigenpairs(op)
    return float(values[0]), float(values[-1])


@dataclass(frozen=True)
class TotalityResult:
    total: bool
    sigma_min: float
    sigma_max: float
    witness: TestFunction = None

    def __bool__(self):
        return self.total


def totality_test(kernel, threshold=1e-6):
    """Total iff analysis is injective at the truncation: smallest singular
    value of the weighted kernel above threshold * largest.

    When not total, the witness is the near-annihilated coefficient
    direction.
    """
    if threshold <= 0:
        raise InvalidConfigError(f"threshold must be positive, got {threshold}")
    weighted = weighted_analysis_matrix(kernel)
    _, svals, vh = np.linalg.svd(weighted, full_matrices=False)
    sigma_max = float(svals[0])
    sigma_min = float(svals[-1]) if kernel.node_count >= kernel.truncation else 0.0
    if sigma_max == 0.0:
        return TotalityResult(False, 0.0, 0.0, TestFunction.basis(0, kernel.truncation))
    if sigma_min > threshold * sigma_max:
        return TotalityResult(True, sigma_min, sigma_max)
    witness = TestFunction(vh[-1].conj()) if kernel.node_count >= kernel.truncation else (
        TestFunction(_null_direction(weighted))
    )
    return TotalityResult(False, sigma_min, sigma_max, witness)


def _null_direction(weighted):
    # underdetermined case: any unit vector in the null space of sqrt(W) Omega
    _, _, vh = np.linalg.svd(weighted, full_matrices=True)
    return vh[-1].conj()


@dataclass(frozen=True)
class MuIndependenceResult:
    mu_independent: bool
    sigma_min: float
    sigma_max: float
    witness: np.ndarray = None

    def __bool__(self):
        return self.mu_independent


def coarse_synthesis_grid(truncation, order=4):
    """Grid with ~N/2 nodes covering only the Hermite bulk [-sqrt(2N+1), ...].

    Nodes past the turning point pair to numerically zero with every basis
    function, which would fake a synthesis kernel; restricting the test grid
    to the bulk removes that discretization artifact.
    """
    panels = max(1, truncation // (2 * order))
    return build_grid(bulk_half_width(truncation), panels, order)


def mu_independence_test(kernel, threshold=1e-6):
    """Mu-independent iff synthesis is injective on grid functions.

    Requires node count <= truncation: with more nodes than coefficients the
    discretized synthesis map always has a null space, which is an artifact
    of discretization rather than a property of the map.  The witness, when
    dependence is found, is a near-null grid function of unit L2(X) norm.
    """
    if threshold <= 0:
        raise InvalidConfigError(f"threshold must be positive, got {threshold}")
    if kernel.node_count > kernel.truncation:
        raise InvalidConfigError(
            f"mu-independence test needs node count <= truncation, got "
            f"{kernel.node_count} nodes > {kernel.truncation}; sample the map "
            f"on coarse_synthesis_grid(truncation) instead"
        )
    weighted = weighted_analysis_matrix(kernel)
    u, svals, _ = np.linalg.svd(weighted, full_matrices=False)
    sigma_max = float(svals[0])
    sigma_min = float(svals[-1])
    if sigma_max > 0.0 and sigma_min > threshold * sigma_max:
        return MuIndependenceResult(True, sigma_min, sigma_max)
    scaled = u[:, -1] / np.sqrt(kernel.grid.weights)
    return MuIndependenceResult(False, sigma_min, sigma_max, scaled)


def bessel_seminorm_constant(kernel, k):
    """Smallest C with l2x_norm(analysis(f)) <= C * p_k(f) at this truncation."""
    if k < 0:
        raise ValueError(f"seminorm index must be nonnegative, got {k}")
    damping = (1.0 + np.arange(kernel.truncation)) ** (-k / 2.0)
    svals = np.linalg.svd(weighted_analysis_matrix(kernel) * damping[None, :], compute_uv=False)
    return float(svals[0])


@dataclass(frozen=True)
class ClassifyThresholds:
    """Classifier knobs; the defaults match the reporting conventions.

    stability: last-two relative change below which a bound series counts as
    bounded.  growth: per-stage ratio at or above which it counts as
    growing.  rank: relative singular-value cutoff for totality and
    mu-independence.  tight/parseval: relative windows on |A - B| and
    |B - 1|.  bessel_k_max: largest seminorm index tried for the Bessel
    witness.
    """

    stability: float = 0.05
    growth: float = 1.3
    rank: float = 1e-6
    tight: float = 1e-6
    parseval: float = 1e-6
    bessel_k_max: int = 6


@dataclass(frozen=True)
class StageDiagnostics:
    truncation: int
    half_width: float
    node_count: int
    lower: float
    upper: float
    sigma_min: float
    sigma_max: float
    total: bool
    mu_independent: bool


LABEL_ORDER = (
    "bessel",
    "bounded_bessel",
    "total",
    "mu_independent",
    "upper_semi_frame",
    "lower_semi_frame",
    "frame",
    "tight",
    "parseval",
    "gelfand_basis",
    "riesz_basis",
)


@dataclass(frozen=True)
class FrameReport:
    """Per-stage spectra, ladder trends, and the final taxonomy labels."""

    stages: tuple
    lower_trend: str
    upper_trend: str
    lower_ratios: tuple
    upper_ratios: tuple
    labels: tuple
    bessel_index: int = None
    bessel_constant: float = None
    bessel_constants: dict = field(default_factory=dict)

    def has(self, label):
        return label in self.labels


def _series_trend(values, thresholds, vanish_floor):
    """Classify a positive series observed along the ladder.

    "growing" needs every consecutive ratio at or above the growth factor;
    "bounded" needs the last step to move by at most the stability
    tolerance; "vanishing" is a decreasing series that has dropped below the
    floor; anything else is still "drifting" at this ladder depth.
    """
    if len(values) < 2:
        return "bounded"
    ratios = []
    for prev, curr in zip(values, values[1:]):
        if prev == 0.0:
            ratios.append(1.0 if curr == 0.0 else math.inf)
        else:
            ratios.append(curr / prev)
    if all(r >= thresholds.growth for r in ratios):
        return "growing"
    prev, last = values[-2], values[-1]
    change = abs(last - prev) / prev if prev > 0 else (0.0 if last == 0.0 else math.inf)
    if change <= thresholds.stability:
        return "bounded"
    if all(r <= 1.0 for r in ratios) and last <= vanish_floor:
        return "vanishing"
    return "drifting"


def _consecutive_ratios(values):
    out = []
    for prev, curr in zip(values, values[1:]):
        if prev == 0.0:
            out.append(1.0 if curr == 0.0 else math.inf)
        else:
            out.append(curr / prev)
    return tuple(out)


def classify(map_spec, ladder, thresholds=ClassifyThresholds()):
    """Run the full diagnostic ladder and assemble taxonomy labels.

    Labels follow the sharpest-class convention: the semi-frame labels are
    reported only when the map is not a frame outright.
    """
    if map_spec.kind == "custom":
        raise InvalidConfigError(
            "classification needs per-stage resampling; custom kernels support "
            "the stage-level diagnostics directly"
        )
    stages = []
    bessel_series = {k: [] for k in range(thresholds.bessel_k_max + 1)}
    for stage in ladder.stages:
        kernel = sample_kernel(map_spec, stage_grid(stage), stage.truncation)
        weighted = weighted_analysis_matrix(kernel)
        svals = np.linalg.svd(weighted, compute_uv=False)
        sigma_max = float(svals[0])
        sigma_min = float(svals[-1]) if kernel.node_count >= kernel.truncation else 0.0
        total = bool(sigma_max > 0.0 and sigma_min > thresholds.rank * sigma_max)
        coarse = sample_kernel(
            map_spec, coarse_synthesis_grid(stage.truncation), stage.truncation
        )
        mu = bool(mu_independence_test(coarse, thresholds.rank))
        stages.append(
            StageDiagnostics(
                truncation=stage.truncation,
                half_width=stage.half_width,
                node_count=kernel.node_count,
                lower=sigma_min**2,
                upper=sigma_max**2,
                sigma_min=sigma_min,
                sigma_max=sigma_max,
                total=total,
                mu_independent=mu,
            )
        )
        damping_base = 1.0 + np.arange(stage.truncation)
        for k in bessel_series:
            damped = weighted * (damping_base ** (-k / 2.0))[None, :]
            bessel_series[k].append(float(np.linalg.svd(damped, compute_uv=False)[0]))

    lowers = [s.lower for s in stages]
    uppers = [s.upper for s in stages]
    vanish_floor = thresholds.rank**2 * max(uppers[-1], 0.0)
    lower_trend = _series_trend(lowers, thresholds, vanish_floor)
    upper_trend = _series_trend(uppers, thresholds, vanish_floor)

    bessel_index = None
    bessel_constant = None
    for k in sorted(bessel_series):
        if _series_trend(bessel_series[k], thresholds, 0.0) == "bounded":
            bessel_index = k
            bessel_constant = bessel_series[k][-1]
            break

    final = stages[-1]
    bounded_upper = upper_trend == "bounded"
    lower_positive = final.lower > 0.0 and final.lower > thresholds.rank**2 * final.upper
    stable_lower = lower_trend == "bounded" and lower_positive
    is_frame = bounded_upper and stable_lower
    labels = []
    if bessel_index is not None:
        labels.append("bessel")
    if bounded_upper:
        labels.append("bounded_bessel")
    if final.total:
        labels.append("total")
    if final.mu_independent:
        labels.append("mu_independent")
    if bounded_upper and final.total and not is_frame:
        labels.append("upper_semi_frame")
    if stable_lower and not is_frame:
        labels.append("lower_semi_frame")
    if is_frame:
        labels.append("frame")
        if abs(final.lower - final.upper) <= thresholds.tight * final.upper:
            labels.append("tight")
            if abs(final.upper - 1.0) <= thresholds.parseval:
                labels.append("parseval")
                if final.mu_independent:
                    labels.append("gelfand_basis")
        if final.mu_independent:
            labels.append("riesz_basis")

    return FrameReport(
        stages=tuple(stages),
        lower_trend=lower_trend,
        upper_trend=upper_trend,
        lower_ratios=_consecutive_ratios(lowers),
        upper_ratios=_consecutive_ratios(uppers),
        labels=tuple(label for label in LABEL_ORDER if label in labels),
        bessel_index=bessel_index,
        bessel_constant=bessel_constant,
        bessel_constants={k: tuple(v) for k, v in bessel_series.items()},
    )
