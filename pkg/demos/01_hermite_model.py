"""A walk through the finite model of S(R) < L2(R) < S'(R).

Test functions live as truncated Hermite coefficient vectors, tempered
distributions as their pairings with the same basis, and the Schwartz
topology as the number-operator seminorm family p_k.
"""

import numpy as np

from riggedframes import (
    TestFunction,
    derivative_coeffs,
    dirac_sample,
    embed,
    fourier_coeffs,
    hermite_eval,
    inner_product,
    pair,
    seminorm,
)

# ---------------------------------------------------------------------------
# The basis: orthonormal Hermite functions, stable up to high order.
print("h_0(0)   =", hermite_eval(0, 0.0), "(= pi^-1/4)")
print("h_5(1.3) =", hermite_eval(5, 1.3))
print("h_64(20) =", hermite_eval(64, 20.0), "(no overflow at the far tail)")

# A test function is just coefficients; the L2 norm is Parseval-exact.
rng = np.random.default_rng(0)
f = TestFunction(rng.standard_normal(16) + 1j * rng.standard_normal(16))
print("\n|f| from coefficients:", f.norm())

# The seminorm ladder p_0 <= p_1 <= ... models the Schwartz topology.
print("seminorms p_0..p_4:", [round(seminorm(f, k), 3) for k in range(5)])

# ---------------------------------------------------------------------------
# The Fourier transform is diagonal here: h_n -> (-i)^n h_n.
h3 = TestFunction.basis(3, 16)
print("\nfourier(h_3) coefficient at 3:", fourier_coeffs(h3).coeffs[3], "(= i)")
print("norm preserved:", np.isclose(fourier_coeffs(f).norm(), f.norm()))

# Differentiation is a ladder operation; the spilled top coefficient is
# reported so truncation error stays visible.
df, spill = derivative_coeffs(f)
print("\n|f'| =", round(df.norm(), 4), " spill at index 16:", round(spill, 4))

# ---------------------------------------------------------------------------
# Distributions pair against test functions; embedding a function and
# pairing reproduces the inner product exactly.
g = TestFunction(rng.standard_normal(16) + 1j * rng.standard_normal(16))
print("\npair(f, embed(g)) == <f, g>:", np.isclose(pair(f, embed(g)), inner_product(f, g)))

# The point mass at x acts by evaluation.
delta = dirac_sample(0.7, 16)
print("pair(h_2, delta_0.7) =", pair(TestFunction.basis(2, 16), delta).real)
print("h_2(0.7)             =", hermite_eval(2, 0.7))
