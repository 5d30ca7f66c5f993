"""Finite discrete pfaffian ensembles.

A configuration of ``2n`` particles on a weighted finite space ``(X, lam)``
has density (w.r.t. ``lam^{2n}``)

    p(x_1..x_2n) = det(phi_j(x_k)) * pf(eps(x_j, x_k)) / Z,
    Z = (2n)! * pf(M),   M_jk = sum_{x,y} phi_j(x) eps(x,y) phi_k(y) lam(x) lam(y).
"""
from dataclasses import dataclass, field
import math
import warnings

import numpy as np

from . import skewlinalg
from .errors import Singular

Z_ATOL = 1e-300


@dataclass(frozen=True, eq=False)
class PointSpace:
    """Finite measure space: ``m`` labelled points with positive weights.

    ``coords`` are real coordinates (used by sign-kernels and polynomial
    bases); they need not be distinct.  Point identity is the index.
    """

    coords: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float).reshape(-1)
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if coords.shape != weights.shape:
            raise ValueError(f"{coords.size} coordinates but {weights.size} weights")
        if not np.all(weights > 0):
            raise ValueError("point weights must be strictly positive")
        coords.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, coords):
        coords = np.asarray(coords, dtype=float)
        return cls(coords, np.ones_like(coords))

    @property
    def m(self):
        return self.coords.size

    def __len__(self):
        return self.m

    def indicator(self, subset):
        """0/1 float mask of ``subset`` (an iterable of indices)."""
        mask = np.zeros(self.m)
        idx = np.asarray(list(subset), dtype=int)
        if idx.size and (idx.min() < 0 or idx.max() >= self.m):
            raise IndexError(f"interval indices must lie in [0, {self.m})")
        mask[idx] = 1.0
        return mask


@dataclass(frozen=True, eq=False)
class EnsembleSpec:
    """Data ``(space, n, phi, epsilon)`` defining a ``2n``-particle ensemble.

    Attributes
    ----------
    space : PointSpace
        ``m`` points.
    n : int
        Half the particle number.
    phi : ndarray, shape (2n, m)
        ``phi[j, x]`` is the j-th basis function at point ``x``.
    epsilon : ndarray, shape (m, m)
        Antisymmetric kernel ``epsilon[x, y]``.
    """

    space: PointSpace
    n: int
    phi: np.ndarray
    epsilon: np.ndarray
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        m = self.space.m
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        phi = np.array(self.phi, dtype=complex)
        if phi.shape != (2 * self.n, m):
            raise ValueError(f"phi must have shape {(2 * self.n, m)}, got {phi.shape}")
        eps = skewlinalg.as_skew(self.epsilon)
        if eps.shape != (m, m):
            raise ValueError(f"epsilon must have shape {(m, m)}, got {eps.shape}")
        if 2 * self.n > m:
            warnings.warn(f"{2 * self.n} particles on only {m} points", stacklevel=3)
        elif np.linalg.matrix_rank(phi) < 2 * self.n:
            warnings.warn("phi is rank deficient; the moment matrix will be singular",
                          stacklevel=3)
        phi.flags.writeable = False
        eps.flags.writeable = False
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "epsilon", eps)

    @property
    def m(self):
        return self.space.m

    @property
    def lam(self):
        return self.space.weights

    def eps_phi(self, mask=None):
        """``(eps_S phi_k)(x) = sum_{y in S} eps(x, y) phi_k(y) lam(y)``.

        ``mask`` selects ``S`` (default: all of ``X``).  Shape ``(m, 2n)``.
        """
        w = self.lam if mask is None else self.lam * mask
        return (self.epsilon * w[None, :]) @ self.phi.T

    def restricted_moment(self, mask_left, mask_right=None):
        """``sum_{x in S1, y in S2} phi_j(x) eps(x,y) phi_k(y) lam(x) lam(y)``."""
        if mask_right is None:
            mask_right = mask_left
        wl = self.lam * mask_left
        wr = self.lam * mask_right
        return (self.phi * wl[None, :]) @ self.epsilon @ (self.phi * wr[None, :]).T

    def with_phi(self, phi):
        return EnsembleSpec(self.space, self.n, phi, self.epsilon)


@dataclass(frozen=True, eq=False)
class MomentSet:
    M: np.ndarray
    M_inv_t: np.ndarray
    Z: complex

    @property
    def pf_M(self):
        return self.Z / math.factorial(self.M.shape[0])


def moment_matrix(spec):
    """Moment matrix ``M``, its inverse transpose and the partition function.

    Raises
    ------
    Singular
        If ``M`` fails the reciprocal-condition check.
    """
    cached = spec._cache.get("moments")
    if cached is not None:
        return cached
    M = skewlinalg.as_skew(spec.restricted_moment(np.ones(spec.m)), atol=np.inf)
    M_inv = skewlinalg.invert(M, what="moment matrix M")
    Z = math.factorial(2 * spec.n) * skewlinalg.pfaffian(M)
    mom = MomentSet(M=M, M_inv_t=M_inv.T, Z=Z)
    spec._cache["moments"] = mom
    return mom


def _realify(value, rtol=1e-12):
    value = complex(value)
    if abs(value.imag) <= rtol * max(1.0, abs(value.real)):
        return value.real
    return value


def unnormalized_density(spec, config):
    """``det(phi_j(x_k)) * pf(eps(x_j, x_k))`` at a configuration of indices."""
    config = np.asarray(config, dtype=int)
    if config.size != 2 * spec.n:
        raise ValueError(f"configuration needs {2 * spec.n} points, got {config.size}")
    D = np.linalg.det(spec.phi[:, config])
    P = skewlinalg.pfaffian(spec.epsilon[np.ix_(config, config)])
    return complex(D * P)


def density(spec, config):
    """Normalized density (w.r.t. ``lam^{2n}``) at ``config``.

    Returns a float whenever the imaginary part is at rounding level, which
    is always the case for real ``phi`` and ``epsilon``.

    Raises
    ------
    Singular
        If the partition function vanishes.
    """
    Z = moment_matrix(spec).Z
    if abs(Z) <= Z_ATOL:
        raise Singular("partition function is zero", 0.0)
    return _realify(unnormalized_density(spec, config) / Z)


def orthonormalize(spec):
    """Equivalent spec whose ``phi`` rows are orthonormal in ``l2(lam)``.

    Replacing ``phi`` by ``B @ phi`` rescales ``Z`` by ``det(B)`` and leaves
    the density, the correlation kernel and every Janossy kernel unchanged;
    this only improves the conditioning of ``M``.
    """
    A = spec.phi * np.sqrt(spec.lam)[None, :]
    _, R = np.linalg.qr(A.T)
    phi = np.linalg.solve(R.T, spec.phi)
    return spec.with_phi(phi)
