"""Samplers for the built-in distribution-valued maps.

A weakly measurable map assigns to each grid node x_j a distribution row;
the sampled kernel Omega[j][n] = <h_n, omega_{x_j}> is the single matrix
from which analysis, synthesis, and frame operators are all assembled.

Built-in kinds:

  dirac             point evaluations, Omega[j][n] = h_n(x_j)
  fourier           analysis returns Fourier-transform samples,
                    Omega[j][n] = (-i)^n h_n(x_j)
  dirac_derivative  <f, delta'_x> = -f'(x), Omega[j][n] = -h_n'(x_j)
  weighted_dirac    w(x) delta_x for a real weight expression
  bump_dirac        eta(x) delta_x with a smooth compactly supported bump,
                    normalized to peak value 1 at the midpoint
  custom            an arbitrary kernel matrix loaded from CSV
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import InvalidConfigError
from .hermite import hermite_derivative_table, hermite_table
from .quadrature import QuadratureGrid
from .weights import eval_weight, expr_to_string, parse_weight

__all__ = [
    "MAP_KINDS",
    "MapSpec",
    "KernelMatrix",
    "dirac_map",
    "fourier_map",
    "dirac_derivative_map",
    "weighted_dirac_map",
    "bump_dirac_map",
    "custom_map",
    "bump_profile",
    "sample_kernel",
    "load_custom_kernel",
    "save_kernel_csv",
]

MAP_KINDS = ("dirac", "fourier", "dirac_derivative", "weighted_dirac", "bump_dirac", "custom")


@dataclass(frozen=True)
class MapSpec:
    """Recipe for a weakly measurable map."""

    kind: str
    weight: object = None
    bump_support: tuple = None
    custom_kernel: str = None

    def __post_init__(self):
        if self.kind not in MAP_KINDS:
            raise InvalidConfigError(f"unknown map kind {self.kind!r}; expected one of {MAP_KINDS}")
        if self.kind == "weighted_dirac" and self.weight is None:
            raise InvalidConfigError("weighted_dirac requires a weight expression")
        if self.kind == "bump_dirac":
            if self.bump_support is None:
                raise InvalidConfigError("bump_dirac requires a support interval")
            a, b = self.bump_support
            if not a < b:
                raise InvalidConfigError(f"bump support must satisfy a < b, got ({a}, {b})")
            object.__setattr__(self, "bump_support", (float(a), float(b)))
        if self.kind == "custom" and self.custom_kernel is None:
            raise InvalidConfigError("custom maps require a kernel file path")

    def describe(self):
        if self.kind == "weighted_dirac":
            return f"weighted_dirac[{expr_to_string(self.weight)}]"
        if self.kind == "bump_dirac":
            a, b = self.bump_support
            return f"bump_dirac[{a:g},{b:g}]"
        if self.kind == "custom":
            return f"custom[{self.custom_kernel}]"
        return self.kind


def dirac_map():
    return MapSpec("dirac")


def fourier_map():
    return MapSpec("fourier")


def dirac_derivative_map():
    return MapSpec("dirac_derivative")


def weighted_dirac_map(weight):
    if isinstance(weight, str):
        weight = parse_weight(weight)
    return MapSpec("weighted_dirac", weight=weight)


def bump_dirac_map(a, b):
    return MapSpec("bump_dirac", bump_support=(a, b))


def custom_map(path):
    return MapSpec("custom", custom_kernel=str(path))


def bump_profile(a, b, x):
    """The smooth bump exp(1 - 1/(1 - t^2)) on (a, b), zero outside.

    t is the affine image of x onto (-1, 1); the peak value at the midpoint
    is exactly 1, so max |eta| = 1 for bound checks.
    """
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    t = (2.0 * xa - a - b) / (b - a)
    out = np.zeros_like(xa)
    inside = np.abs(t) < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
    return float(out[0]) if np.ndim(x) == 0 else out


@dataclass(frozen=True)
class KernelMatrix:
    """Sampled kernel Omega[j][n] = <h_n, omega_{x_j}>, rows over grid nodes."""

    entries: np.ndarray
    grid: QuadratureGrid
    map_spec: MapSpec = None

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex, copy=True)
        if arr.ndim != 2:
            raise InvalidConfigError(f"kernel entries must be 2-d, got shape {arr.shape}")
        if arr.shape[0] != self.grid.node_count:
            raise InvalidConfigError(
                f"kernel has {arr.shape[0]} rows but the grid has {self.grid.node_count} nodes"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def node_count(self):
        return self.entries.shape[0]

    @property
    def truncation(self):
        return self.entries.shape[1]

    @property
    def fingerprint(self):
        label = self.map_spec.describe() if self.map_spec is not None else "unspecified"
        return (
            f"{label}|N={self.truncation}|L={self.grid.half_width:.12g}"
            f"|panels={self.grid.panels}|order={self.grid.order}"
        )


def sample_kernel(spec, grid, truncation):
    """Sample a built-in map on a grid at the given truncation."""
    if truncation < 1:
        raise InvalidConfigError(f"truncation must be >= 1, got {truncation}")
    if spec.kind == "custom":
        return load_custom_kernel(spec.custom_kernel, grid, truncation)
    table = hermite_table(truncation, grid.nodes)
    if spec.kind == "dirac":
        entries = table.astype(complex)
    elif spec.kind == "fourier":
        entries = table * ((-1j) ** np.arange(truncation))[None, :]
    elif spec.kind == "dirac_derivative":
        entries = (-hermite_derivative_table(truncation, grid.nodes)).astype(complex)
    elif spec.kind == "weighted_dirac":
        # real weights throughout; complex weights go through custom kernels
        values = eval_weight(spec.weight, grid.nodes)
        entries = (values[:, None] * table).astype(complex)
    else:
        a, b = spec.bump_support
        entries = (bump_profile(a, b, grid.nodes)[:, None] * table).astype(complex)
    return KernelMatrix(entries, grid, spec)


def save_kernel_csv(kernel, path):
    """Write kernel entries in the interchange schema: header re0,im0,...,
    one row per grid node."""
    entries = kernel.entries if isinstance(kernel, KernelMatrix) else np.asarray(kernel)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"{part}{n}" for n in range(entries.shape[1]) for part in ("re", "im")])
        for row in entries:
            writer.writerow(
                [f"{v:.17g}" for pair in zip(row.real, row.imag) for v in pair]
            )


def load_custom_kernel(path, grid, truncation):
    """Load an M x N complex kernel from CSV and validate it against the grid."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidConfigError(f"{path}: empty kernel file") from None
        expected = [f"{part}{n}" for n in range(truncation) for part in ("re", "im")]
        if [h.strip() for h in header] != expected:
            raise InvalidConfigError(
                f"{path}: header does not match {truncation} re/im column pairs"
            )
        rows = []
        for i, row in enumerate(reader):
            if len(row) != 2 * truncation:
                raise InvalidConfigError(
                    f"{path}: row {i + 1} has {len(row)} cells, expected {2 * truncation}"
                )
            try:
                values = [float(cell) for cell in row]
            except ValueError:
                bad = next(j for j, cell in enumerate(row) if not _is_float(cell))
                raise InvalidConfigError(
                    f"{path}: non-numeric cell at row {i + 1}, column {bad + 1}"
                ) from None
            rows.append(values)
    if len(rows) != grid.node_count:
        raise InvalidConfigError(
            f"{path}: {len(rows)} data rows but the grid has {grid.node_count} nodes"
        )
    flat = np.asarray(rows)
    entries = flat[:, 0::2] + 1j * flat[:, 1::2]
    return KernelMatrix(entries, grid, custom_map(path))


def _is_float(cell):
    try:
        float(cell)
        return True
    except ValueError:
        return False
