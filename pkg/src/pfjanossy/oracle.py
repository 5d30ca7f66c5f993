"""Brute-force references built only from the density definition.

Nothing here touches the moment matrix, the correlation kernel or a fast
Pfaffian: densities are ``det(phi) * (pairing-sum pfaffian of eps)`` and
the normalization is the exhaustive sum over ``X^{2n}``.  Sums use
:func:`math.fsum` so results do not depend on summation order.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
import math

import numpy as np

from .errors import BudgetExceeded, OracleMismatch, PointOutsideInterval, Singular
from .skewlinalg import pairing_table

CHUNK = 1 << 16
GAP_AGREEMENT_ATOL = 1e-9


@dataclass(frozen=True)
class EnumerationBudget:
    max_terms: int = 10 ** 7

    def check(self, terms, what):
        if terms > self.max_terms:
            raise BudgetExceeded(f"{what} needs {terms} terms, budget is {self.max_terms}")


DEFAULT_BUDGET = EnumerationBudget()


def _fsum(values):
    values = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(values.real), math.fsum(values.imag))


def _weights(spec, configs):
    """``det(phi[:, c]) * pf(eps[c, c])`` for each row ``c`` of ``configs``."""
    D = np.linalg.det(np.moveaxis(spec.phi[:, configs], 1, 0))
    signs, left, right = pairing_table(configs.shape[1])
    entries = spec.epsilon[configs[:, left], configs[:, right]]
    P = np.prod(entries, axis=2) @ signs
    return D * P


def _completion_sum(spec, fixed, region):
    """``sum over (x_{k+1}..x_{2n}) in region^{2n-k}`` of weight * prod lam."""
    fixed = np.asarray(fixed, dtype=int)
    region = np.asarray(region, dtype=int)
    free = 2 * spec.n - fixed.size
    if free == 0:
        return _fsum(_weights(spec, fixed[None, :]))
    if region.size == 0:
        return 0j
    lam = spec.lam
    partials = []
    tails = product(region, repeat=free)
    while True:
        block = np.array(list(_take(tails, CHUNK)), dtype=int).reshape(-1, free)
        if block.size == 0:
            break
        configs = np.hstack([np.broadcast_to(fixed, (block.shape[0], fixed.size)), block])
        partials.append(_weights(spec, configs) * np.prod(lam[block], axis=1))
    return _fsum(np.concatenate(partials))


def _take(it, k):
    for _, item in zip(range(k), it):
        yield item


@lru_cache(maxsize=64)
def _partition_cached(spec, max_terms):
    EnumerationBudget(max_terms).check(spec.m ** (2 * spec.n), "brute partition function")
    return _completion_sum(spec, [], np.arange(spec.m))


def brute_partition(spec, budget=DEFAULT_BUDGET):
    """``Z = sum_{X^{2n}} det(phi) pf(eps) prod lam`` by exhaustive enumeration."""
    return _partition_cached(spec, budget.max_terms)


def brute_density(spec, config, budget=DEFAULT_BUDGET):
    Z = brute_partition(spec, budget)
    if Z == 0:
        raise Singular("brute partition function is zero", 0.0)
    return _weights(spec, np.asarray(config, dtype=int)[None, :])[0] / Z


def _real(z):
    return float(z.real) if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)) else z


def brute_correlation(spec, pts, budget=DEFAULT_BUDGET):
    """``(2n)!/(2n-k)! * sum over the other 2n-k particles in X`` of density."""
    k = len(pts)
    if not 1 <= k <= 2 * spec.n:
        raise ValueError(f"k must lie in [1, {2 * spec.n}], got {k}")
    budget.check(spec.m ** (2 * spec.n - k), "brute correlation")
    Z = brute_partition(spec, budget)
    s = _completion_sum(spec, pts, np.arange(spec.m))
    return _real(math.perm(2 * spec.n, k) * s / Z)


def brute_janossy(spec, I, pts, budget=DEFAULT_BUDGET):
    """Janossy density: particles at ``pts`` and the rest outside ``I``."""
    I = sorted(set(int(i) for i in I))
    pts = [int(p) for p in pts]
    outside = sorted(set(pts) - set(I))
    if outside:
        raise PointOutsideInterval(f"points {outside} are not in the interval {I}")
    k = len(pts)
    if k > 2 * spec.n:
        return 0.0
    comp = np.setdiff1d(np.arange(spec.m), I)
    budget.check(comp.size ** (2 * spec.n - k), "brute janossy")
    Z = brute_partition(spec, budget)
    s = _completion_sum(spec, pts, comp)
    return _real(math.perm(2 * spec.n, k) * s / Z)


def brute_gap_expansion(spec, I, budget=DEFAULT_BUDGET):
    """``sum_k (-1)^k/k! sum_{x in I^k} rho_k(x) prod lam`` with brute ``rho_k``."""
    I = sorted(set(int(i) for i in I))
    lam = spec.lam
    terms = [1.0 + 0j]
    for k in range(1, 2 * spec.n + 1):
        budget.check(len(I) ** k * spec.m ** (2 * spec.n - k), "brute gap expansion")
        acc = []
        for pts in product(I, repeat=k):
            acc.append(brute_correlation(spec, pts, budget) * np.prod(lam[list(pts)]))
        terms.append((-1) ** k * _fsum(acc) / math.factorial(k))
    return _real(_fsum(terms))


def brute_gap(spec, I, budget=DEFAULT_BUDGET):
    """Probability that no particle lies in ``I``.

    Sums the density over ``(X\\I)^{2n}`` and checks the result against the
    alternating correlation expansion.

    Raises
    ------
    OracleMismatch
        If the two brute routes differ by more than 1e-9.
    """
    I = sorted(set(int(i) for i in I))
    comp = np.setdiff1d(np.arange(spec.m), I)
    budget.check(comp.size ** (2 * spec.n), "brute gap")
    Z = brute_partition(spec, budget)
    direct = _real(_completion_sum(spec, [], comp) / Z)
    expansion = brute_gap_expansion(spec, I, budget)
    if abs(direct - expansion) > GAP_AGREEMENT_ATOL:
        raise OracleMismatch(f"gap by enumeration {direct!r} vs expansion {expansion!r}")
    return direct


def block_resolvent_closed_form(A, B, C):
    """Closed-form blocks of ``calM (Id - calM)^{-1}``.

    With ``R = (Id - A + C)^{-1}``::

        [[R - Id,  (B - C) R,        C R],
         [0,       0,                0  ],
         [-R,      -Id - (B - C) R,  -C R]]
    """
    d = A.shape[0]
    eye = np.eye(d)
    R = np.linalg.inv(eye - A + C)
    BC = (B - C) @ R
    CR = C @ R
    Z = np.zeros((d, d))
    return np.block([[R - eye, BC, CR],
                     [Z, Z, Z],
                     [-R, -eye - BC, -CR]])


def _blockwise_transpose(X, d):
    return X.reshape(3, d, 3, d).transpose(0, 3, 2, 1).reshape(3 * d, 3 * d)


def verify_block_resolvent(A, B, C, convention="coefficient"):
    """Max deviation between direct inversion and the closed block form.

    ``calM = [[A, B, C], [0, 0, 0], [-Id, -Id, 0]]`` is the matrix of an
    operator on a basis split into three groups of ``d`` vectors.  Under
    ``convention="coefficient"`` a block ``X`` lists expansion coefficients
    ``X[s, j]`` (image of basis vector ``s`` on basis vector ``j``), so it
    acts on the right; the operator's ordinary matrix then carries ``X.T``
    in each block, and the closed form holds exactly.  ``convention="matrix"``
    reads the blocks as ordinary left-acting matrices; the closed form then
    only holds when ``B - C`` and ``C`` commute with ``R``.

    Raises
    ------
    Singular
        If ``Id - A + C`` is numerically singular.
    """
    if convention not in ("coefficient", "matrix"):
        raise ValueError(f"unknown convention {convention!r}")
    A, B, C = (np.asarray(X, dtype=complex) for X in (A, B, C))
    d = A.shape[0]
    eye = np.eye(d)
    Z = np.zeros((d, d))
    s = np.linalg.svd(eye - A + C, compute_uv=False)
    if not s[-1] > 1e-12 * s[0]:
        raise Singular("Id - A + C is numerically singular", float(s[-1] / s[0]) if s[0] else 0.0)
    if convention == "coefficient":
        op = np.block([[A.T, B.T, C.T], [Z, Z, Z], [-eye, -eye, Z]])
    else:
        op = np.block([[A, B, C], [Z, Z, Z], [-eye, -eye, Z]])
    direct = op @ np.linalg.inv(np.eye(3 * d) - op)
    if convention == "coefficient":
        direct = _blockwise_transpose(direct, d)
    closed = block_resolvent_closed_form(A, B, C)
    return float(np.max(np.abs(direct - closed)))
