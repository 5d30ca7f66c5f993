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
# # Unitary, symplectic and quadrature-discretized ensembles
#
# The unitary and symplectic ensembles live on two copies of the base points,
# coupled pointwise.  Each base point then carries one particle per copy,
# and the induced density on the base matches `prod |x_i - x_j|^beta`.

# %%
from itertools import combinations

import numpy as np

from pfjanossy import (WeightSpec, beta1_spec, beta2_spec, beta4_spec, correlation_function,
                       correlation_kernel, discretize, induced_density, orthonormalize,
                       product_density)

omega = WeightSpec("gaussian", mean=0.0, std=1.0)
x = np.linspace(-1, 1, 5)
for beta, ctor in [(2, beta2_spec), (4, beta4_spec)]:
    spec = ctor(x, omega, 2)
    w = spec.space.base.weights
    r = [induced_density(spec, c) * np.prod(w[list(c)])
         / product_density(beta, x[list(c)], omega(x[list(c)])) for c in combinations(range(5), 2)]
    print(f"beta={beta}: ratio spread {np.ptp(r) / np.mean(r):.1e}")

# %% [markdown]
# With one particle the symplectic density is just the weight.  Starting the
# symplectic basis at `y^0` is what makes this hold.

# %%
spec = beta4_spec(x, omega, 1)
w = spec.space.base.weights
p = np.array([induced_density(spec, [i]) * w[i] for i in range(5)])
print(p / omega(x))

# %% [markdown]
# Continuous weights are discretized with Gauss rules.  On 64 Legendre nodes
# the mean particle count of the orthogonal ensemble is 4 to rounding.

# %%
space = discretize(WeightSpec("uniform", a=-1.0, b=1.0), "gauss-legendre", 64)
spec = orthonormalize(beta1_spec(space, None, 2))
K = correlation_kernel(spec)
rho1 = np.array([correlation_function(K, [i]).real for i in range(64)])
print("sum rho1 lambda =", rho1 @ spec.lam)
