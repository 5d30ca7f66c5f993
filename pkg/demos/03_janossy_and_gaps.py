# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Janossy densities and gap probabilities
#
# For a set `I` of points, the Janossy density `J_k` is the density of the
# event "exactly k particles in I, at these points".  Its kernel `L_I` can be
# obtained by a resolvent of `K` on `I`, or in closed form from moment
# matrices restricted to the complement of `I`.  Both are computed below.

# %%
from itertools import product
import math

import numpy as np

from pfjanossy import (beta1_spec, correlation_kernel, gap_expansion, gap_probability,
                       interval_matrices, janossy_density, janossy_kernel_direct,
                       janossy_kernel_resolvent, oracle, orthonormalize)

spec = orthonormalize(beta1_spec(np.linspace(-1, 1, 6), None, 2))
K = correlation_kernel(spec)
I = [2, 3]

L_res = janossy_kernel_resolvent(K, I)
L_dir = janossy_kernel_direct(spec, interval_matrices(spec, I))
print("max |L_direct - L_resolvent| on I:",
      max(np.abs(L_dir.block(x, y) - L_res.block(x, y)).max() for x in I for y in I))

# %% [markdown]
# The gap probability `const(I)` three ways: a square root of a determinant,
# the alternating correlation expansion, and direct enumeration.

# %%
print(gap_probability(K, I), gap_expansion(K, I).real, oracle.brute_gap(spec, I))

# %% [markdown]
# Janossy densities against enumeration, and the total mass over particle
# counts in `I`.

# %%
g = gap_probability(K, I)
for pts in [(2,), (3,), (2, 3)]:
    print(pts, janossy_density(L_res, g, pts), oracle.brute_janossy(spec, I, pts))

total = g + sum(
    math.fsum(janossy_density(L_res, g, p) * np.prod(spec.lam[list(p)]) for p in product(I, repeat=k))
    / math.factorial(k) for k in range(1, 5))
print("total mass:", total)
