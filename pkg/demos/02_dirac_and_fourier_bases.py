"""Two Gel'fand distribution bases: point masses and the Fourier kernel.

Both families satisfy the Parseval identity (frame operator == identity),
are total and mu-independent, and therefore classify as Gel'fand bases --
the rigged-space replacement for an orthonormal basis.
"""

import numpy as np

from riggedframes import (
    TestFunction,
    analysis,
    classify,
    default_ladder,
    default_stage,
    dirac_map,
    fourier_map,
    frame_operator,
    gelfand_check,
    hermite_eval,
    sample_kernel,
    stage_grid,
    synthesis,
)

N = 32
grid = stage_grid(default_stage(N))

# ---------------------------------------------------------------------------
# Point evaluations: analysis samples the function, synthesis embeds back.
delta = sample_kernel(dirac_map(), grid, N)
S = frame_operator(delta).matrix
print("dirac |S - I|max:", np.abs(S - np.eye(N)).max())

f = TestFunction.basis(2, N)
samples = analysis(delta, f)                       # f(x_j)
print("analysis(h_2) equals h_2 on the grid:",
      np.allclose(samples, hermite_eval(2, grid.nodes)))

back = synthesis(delta, samples)                   # integrate back
print("synthesis round trip recovers h_2:",
      np.abs(back.pairings - f.coeffs).max() < 1e-10)

# ---------------------------------------------------------------------------
# The Fourier kernel: analysis returns Fourier-transform samples, and the
# Hermite functions are its eigenvectors with unimodular eigenvalues.
fourier = sample_kernel(fourier_map(), grid, N)
print("\nfourier |S - I|max:", np.abs(frame_operator(fourier).matrix - np.eye(N)).max())
h3_hat = analysis(fourier, TestFunction.basis(3, N))
print("analysis(h_3) == i * h_3 samples:",
      np.allclose(h3_hat, 1j * hermite_eval(3, grid.nodes)))

# ---------------------------------------------------------------------------
# Classification over the refinement ladder confirms the full taxonomy.
for name, spec in (("dirac", dirac_map()), ("fourier", fourier_map())):
    report = classify(spec, default_ladder(32))
    print(f"\n{name} labels: {report.labels}")
    result = gelfand_check(sample_kernel(spec, grid, N))
    print(f"{name} gelfand_check: {result.gelfand} "
          f"(parseval defect {result.parseval_defect:.2e})")
