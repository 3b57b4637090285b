"""Maps that are not frames: derivative deltas and polynomially weighted deltas.

Derivative point masses are Bessel (bounded by the p_1 seminorm) and total,
but their upper frame bound grows without limit -- the derivative is
unbounded on L2.  The weight 1 + x^2 pins the lower bound at 1 while the
upper bound explodes: a lower semi-frame.  Both verdicts are read off
refinement-ladder trends, never a single truncation.
"""

from riggedframes import (
    classify,
    default_ladder,
    dirac_derivative_map,
    weighted_dirac_map,
)

ladder = default_ladder(64)


def show(name, report):
    print(f"--- {name} ---")
    print(f"{'N':>4} {'A_N':>12} {'B_N':>12} {'total':>6} {'mu_indep':>9}")
    for s in report.stages:
        print(f"{s.truncation:>4} {s.lower:>12.5f} {s.upper:>12.3f} "
              f"{str(s.total):>6} {str(s.mu_independent):>9}")
    print(f"trends: lower={report.lower_trend}, upper={report.upper_trend}")
    print(f"upper ratios per doubling: {[f'{r:.2f}' for r in report.upper_ratios]}")
    print(f"bessel seminorm witness: k={report.bessel_index} "
          f"(constant {report.bessel_constant:.3f})")
    print(f"labels: {report.labels}\n")


# ---------------------------------------------------------------------------
# Derivative deltas: the upper bound roughly doubles per stage (it tracks
# the top momentum eigenvalue ~2N), so no upper semi-frame.  The p_1 bound
# certifies Bessel: |f'| <= sqrt(2) p_1(f).
show("derivative deltas", classify(dirac_derivative_map(), ladder))

# ---------------------------------------------------------------------------
# Weight 1 + x^2: the lower bound converges to ess-inf (1+x^2)^2 = 1 while
# the upper bound tracks (1 + 2N)^2.  The Bessel witness needs k = 2: the
# multiplier grows like the number operator itself.
show("weight 1+x^2", classify(weighted_dirac_map("1+x^2"), ladder))
