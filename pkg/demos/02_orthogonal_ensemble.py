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
# # A discrete orthogonal ensemble
#
# Four particles on six equispaced points with density proportional to
# `prod |x_i - x_j|`.  The moment matrix `M` gives the normalization
# `Z = 4! pf(M)`, and the matrix kernel `K` gives every correlation function
# as a Pfaffian.  `Z` depends on the basis (orthonormalizing may flip its
# sign); densities and kernels do not.

# %%
import numpy as np

from pfjanossy import (beta1_spec, correlation_function, correlation_kernel, density,
                       moment_matrix, oracle, orthonormalize)

spec = orthonormalize(beta1_spec(np.linspace(-1, 1, 6), None, 2))
mom = moment_matrix(spec)
print("Z =", mom.Z.real)
print("brute Z =", oracle.brute_partition(spec).real)

# %% [markdown]
# One-point densities, compared against summing the density over the other
# three particles.  They add up to the particle count.

# %%
K = correlation_kernel(spec)
rho1 = np.array([correlation_function(K, [x]).real for x in range(spec.m)])
brute = np.array([oracle.brute_correlation(spec, [x]) for x in range(spec.m)])
print(np.round(rho1, 6))
print("max |pf - brute| =", np.abs(rho1 - brute).max())
print("sum rho1 lambda =", rho1 @ spec.lam)

# %% [markdown]
# The top correlation function is the density itself, up to `4!`.

# %%
pts = [0, 2, 3, 5]
print(correlation_function(K, pts).real, 24 * density(spec, pts))
