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
# # Pfaffians
#
# The Pfaffian of an even skew matrix is a signed sum over perfect pairings,
# and squares to the determinant. `pfaffian` uses skew Gaussian elimination
# with pivoting; `pfaffian_oracle` sums the pairings literally.

# %%
import numpy as np

from pfjanossy import pfaffian, pfaffian_oracle

rng = np.random.default_rng(0)
A = rng.standard_normal((6, 6))
A = A - A.T
print("elimination:", pfaffian(A))
print("pairing sum:", pfaffian_oracle(A))
print("pf^2 - det :", pfaffian(A) ** 2 - np.linalg.det(A))

# %% [markdown]
# Congruence: `pf(B A B^T) = det(B) pf(A)`.

# %%
B = rng.standard_normal((6, 6))
print(pfaffian(B @ A @ B.T), np.linalg.det(B) * pfaffian(A))

# %% [markdown]
# The pairing sum costs `(2k - 1)!!` terms, so the oracle stops at 12 x 12.

# %%
from pfjanossy.skewlinalg import pairing_table

for dim in (2, 4, 6, 8, 10):
    print(dim, pairing_table(dim)[0].size)
