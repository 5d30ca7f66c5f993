"""Correlation and Janossy matrix kernels of a discrete pfaffian ensemble.

Layout conventions
------------------
A :class:`MatrixKernel` stores the four scalar kernels ``K11, K12, K21, K22``
as ``m x m`` arrays.  Assembled matrices interleave the two components of
each point: row ``2*i + a`` belongs to point ``i``, component ``a``.  The
same layout is used for operator matrices on ``l2(X, lam) (+) l2(X, lam)``,
where an operator with kernel ``A`` has matrix entries ``A(x_i, x_j) lam(x_j)``.
The 2x2 unit ``J = [[0, 1], [-1, 0]]`` acts pointwise (no weight).
"""
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import skewlinalg
from .ensemble import moment_matrix, _realify
from .errors import (NegativeDeterminant, PointOutsideInterval,
                     ResolventSingular, SingularComplementMoment)

JUNIT = np.array([[0.0, 1.0], [-1.0, 0.0]])
KERNEL_ATOL = 1e-10
NEGATIVE_DET_ATOL = 1e-10


def _interval(I, m):
    idx = tuple(sorted(set(int(i) for i in I)))
    if idx and (idx[0] < 0 or idx[-1] >= m):
        raise IndexError(f"interval indices must lie in [0, {m})")
    return idx


def junit_blocks(k):
    """Block-diagonal ``diag(J, ..., J)`` of size ``2k``."""
    return np.kron(np.eye(k), JUNIT)


@dataclass(frozen=True, eq=False)
class MatrixKernel:
    """2x2 matrix kernel on a finite space.

    ``support`` is the set of indices on which the kernel is meaningful;
    ``None`` means the whole space.
    """

    space: object
    k11: np.ndarray
    k12: np.ndarray
    k21: np.ndarray
    k22: np.ndarray
    support: tuple = None

    @classmethod
    def from_full(cls, space, A, support=None):
        m = space.m
        A = np.asarray(A, dtype=complex).reshape(m, 2, m, 2)
        return cls(space, A[:, 0, :, 0].copy(), A[:, 0, :, 1].copy(),
                   A[:, 1, :, 0].copy(), A[:, 1, :, 1].copy(), support)

    @classmethod
    def zeros(cls, space, support=None):
        z = np.zeros((space.m, space.m), dtype=complex)
        return cls(space, z, z.copy(), z.copy(), z.copy(), support)

    def full(self):
        """Assembled ``2m x 2m`` matrix with interleaved layout."""
        m = self.space.m
        A = np.empty((m, 2, m, 2), dtype=complex)
        A[:, 0, :, 0] = self.k11
        A[:, 0, :, 1] = self.k12
        A[:, 1, :, 0] = self.k21
        A[:, 1, :, 1] = self.k22
        return A.reshape(2 * m, 2 * m)

    def block(self, x, y):
        return np.array([[self.k11[x, y], self.k12[x, y]],
                         [self.k21[x, y], self.k22[x, y]]])

    def blocks(self, pts):
        """``2k x 2k`` matrix whose ``(i, j)`` block is ``K(pts[i], pts[j])``."""
        pts = np.asarray(pts, dtype=int)
        idx = np.stack([2 * pts, 2 * pts + 1], axis=1).reshape(-1)
        return self.full()[np.ix_(idx, idx)]

    def antisymmetry_deviation(self):
        A = self.full()
        return float(np.max(np.abs(A + A.T))) if A.size else 0.0

    def antisymmetrized(self):
        A = self.full()
        return MatrixKernel.from_full(self.space, (A - A.T) / 2, self.support)

    def __sub__(self, other):
        return MatrixKernel.from_full(self.space, self.full() - other.full(), self.support)


def _kernel_from_moments(spec, M_inv_t, eps_phi, support=None):
    phi = spec.phi
    k11 = phi.T @ M_inv_t @ phi
    k12 = phi.T @ M_inv_t @ eps_phi.T
    k21 = eps_phi @ M_inv_t @ phi
    k22 = -spec.epsilon + eps_phi @ M_inv_t @ eps_phi.T
    return MatrixKernel(spec.space, k11, k12, k21, k22, support)


def correlation_kernel(spec, mom=None):
    """Correlation kernel ``K`` of the ensemble.

    ``K11 = phi^T M^{-t} phi``, ``K12 = phi^T M^{-t} (eps phi)``,
    ``K21 = (eps phi)^T M^{-t} phi``,
    ``K22 = -eps + (eps phi)^T M^{-t} (eps phi)``.
    """
    if mom is None:
        mom = moment_matrix(spec)
    return _kernel_from_moments(spec, mom.M_inv_t, spec.eps_phi())


def correlation_function(K, pts):
    """k-point correlation ``rho_k = pf[K(x_i, x_j)]``; complex scalar."""
    if len(pts) < 1:
        raise ValueError("need at least one point")
    return skewlinalg.pfaffian(K.blocks(pts), atol=KERNEL_ATOL)


@dataclass(frozen=True, eq=False)
class IntervalMatrices:
    """Moment-type matrices attached to a subset ``I`` of the points.

    ``G_I`` pairs ``I`` against ``X``, ``M_I`` is ``I x I``, ``M_comp`` is
    ``(X\\I) x (X\\I)`` and ``T`` pairs ``I`` against ``X\\I``.
    """

    I: tuple
    G_I: np.ndarray
    M_I: np.ndarray
    M_comp: np.ndarray
    T: np.ndarray
    eps_phi: np.ndarray
    eps_comp_phi: np.ndarray


def interval_matrices(spec, I):
    I = _interval(I, spec.m)
    inside = spec.space.indicator(I)
    outside = 1.0 - inside
    everywhere = np.ones(spec.m)
    return IntervalMatrices(
        I=I,
        G_I=spec.restricted_moment(inside, everywhere),
        M_I=spec.restricted_moment(inside),
        M_comp=spec.restricted_moment(outside),
        T=spec.restricted_moment(inside, outside),
        eps_phi=spec.eps_phi(),
        eps_comp_phi=spec.eps_phi(outside),
    )


def janossy_kernel_direct(spec, im):
    """Janossy kernel ``L_I`` in closed form from the complement moments.

    Same recipe as :func:`correlation_kernel` with ``M`` replaced by
    ``M^{X\\I}`` and ``eps phi`` by ``eps_{X\\I} phi``; the ``-eps`` term in
    ``L22`` keeps the full ``eps``.  Evaluated on all of ``X`` but only
    meaningful on ``I x I``.

    Raises
    ------
    SingularComplementMoment
        If ``M^{X\\I}`` fails the condition check (for instance ``I = X``).
    """
    Mc_inv = skewlinalg.invert(im.M_comp, error=SingularComplementMoment,
                               what="complement moment matrix M^{X\\I}")
    return _kernel_from_moments(spec, Mc_inv.T, im.eps_comp_phi, support=im.I)


def _weighted_blocks(K, I):
    w = np.repeat(K.space.weights[list(I)], 2)
    return K.blocks(I) * w[None, :], w


def operator_matrix(K, I):
    """λ-weighted ``2m x 2m`` matrix of ``K`` restricted to ``I``.

    Rows and columns outside ``I`` are zero.
    """
    m = K.space.m
    I = _interval(I, m)
    mask = np.repeat(K.space.indicator(I), 2)
    w = np.repeat(K.space.weights, 2)
    return K.full() * (mask * w)[None, :] * mask[:, None]


def kernel_from_operator(op, space, support=None):
    """Inverse of :func:`operator_matrix` (divides the column weights out)."""
    w = np.repeat(space.weights, 2)
    return MatrixKernel.from_full(space, np.asarray(op) / w[None, :], support)


def _embed(space, I, block_matrix, support):
    m = space.m
    full = np.zeros((2 * m, 2 * m), dtype=complex)
    idx = np.stack([2 * np.asarray(I), 2 * np.asarray(I) + 1], axis=1).reshape(-1)
    full[np.ix_(idx, idx)] = block_matrix
    return MatrixKernel.from_full(space, full, support)


def janossy_kernel_resolvent(K, I):
    """Janossy kernel ``L_I = K_I (Id + J K_I)^{-1}``.

    The resolvent is taken on ``l2(I)`` with λ-weighting; the result is
    projected onto exactly antisymmetric kernels and is zero outside ``I``.

    Raises
    ------
    ResolventSingular
        If ``Id + J K_I`` fails the condition check.
    """
    I = _interval(I, K.space.m)
    if not I:
        return MatrixKernel.zeros(K.space, support=I)
    op, w = _weighted_blocks(K, I)
    R = np.eye(op.shape[0]) + junit_blocks(len(I)) @ op
    R_inv = skewlinalg.invert(R, error=ResolventSingular, what="Id + J K_I")
    L = (op @ R_inv) / w[None, :]
    return _embed(K.space, I, (L - L.T) / 2, I)


def transform_calK(K, I):
    """Operator matrix of ``-J K_I`` (``-J`` left-multiplies every block)."""
    return -junit_blocks(K.space.m) @ operator_matrix(K, I)


def transform_calL(L, I):
    """Operator matrix of ``-J L_I``."""
    return transform_calK(L, I)


def resolvent_determinant(K, I):
    """``det(Id + J K_I)`` on ``l2(I)``; 1 for the empty interval."""
    I = _interval(I, K.space.m)
    if not I:
        return 1.0 + 0j
    op, _ = _weighted_blocks(K, I)
    return skewlinalg.det(np.eye(op.shape[0]) + junit_blocks(len(I)) @ op)


def gap_probability(K, I):
    """Probability that ``I`` holds no particle: ``det(Id + J K_I)^{1/2}``.

    The nonnegative root is returned.

    Raises
    ------
    NegativeDeterminant
        If the determinant is below ``-1e-10``.
    """
    d = resolvent_determinant(K, I)
    if d.real < -NEGATIVE_DET_ATOL:
        raise NegativeDeterminant(f"det(Id + J K_I) = {d.real:.3e} < 0")
    return float(np.sqrt(max(d.real, 0.0)))


def _sqrt_weighted_blocks(K, I):
    s = np.sqrt(np.repeat(K.space.weights[list(I)], 2))
    return K.blocks(I) * s[:, None] * s[None, :]


def fredholm_pfaffian(K, I):
    """Signed Fredholm pfaffian ``pf(J - K_I)`` as a finite pfaffian.

    On a discrete space this is ``pf(diag(J) - W^{1/2} K_I W^{1/2})``, whose
    expansion in principal minors is the alternating series of
    :func:`gap_expansion`.
    """
    I = _interval(I, K.space.m)
    if not I:
        return 1.0 + 0j
    A = junit_blocks(len(I)) - _sqrt_weighted_blocks(K, I)
    return skewlinalg.pfaffian(A, atol=KERNEL_ATOL)


def gap_expansion(K, I, kmax=None):
    """``sum_k (-1)^k / k! sum_{I^k} rho_k lam^k`` via kernel pfaffians.

    ``rho_k`` vanishes when two arguments coincide and is symmetric, so the
    sum runs over subsets of ``I``.  Cost ``2^|I|`` pfaffians.
    """
    I = _interval(I, K.space.m)
    if len(I) > 20:
        raise ValueError("gap_expansion enumerates subsets; |I| > 20 refused")
    kmax = len(I) if kmax is None else min(kmax, len(I))
    lam = K.space.weights
    total = 1.0 + 0j
    for k in range(1, kmax + 1):
        for S in combinations(I, k):
            total += (-1) ** k * correlation_function(K, S) * np.prod(lam[list(S)])
    return total


def _check_inside(pts, support):
    if support is None:
        return
    outside = sorted(set(pts) - set(support))
    if outside:
        raise PointOutsideInterval(f"points {outside} are not in the interval {list(support)}")


def janossy_density(L, constI, pts):
    """``J_{k,I}(pts) = const(I) * pf[L_I(x_i, x_j)]``; ``const(I)`` for ``k = 0``.

    Raises
    ------
    PointOutsideInterval
        If a point is outside ``L.support``.
    """
    pts = [int(p) for p in pts]
    _check_inside(pts, L.support)
    if not pts:
        return _realify(constI)
    return _realify(constI * skewlinalg.pfaffian(L.blocks(pts), atol=KERNEL_ATOL))


def janossy_density_from_correlation(K, I, pts):
    """Janossy density computed without inverting ``Id + J K_I``.

    Uses ``Pr(exactly the points S in I) = (-1)^|S| pf(D_S - W^{1/2} K_I W^{1/2})``
    where ``D_S`` carries ``J`` on the diagonal blocks of ``I \\ S`` and zero
    on those of ``S``.  Stays finite when ``const(I) = 0`` (e.g. ``I = X``).
    """
    I = _interval(I, K.space.m)
    pts = [int(p) for p in pts]
    _check_inside(pts, I)
    if len(set(pts)) < len(pts):
        return 0.0
    if not I:
        return 1.0
    pos = {x: i for i, x in enumerate(I)}
    D = junit_blocks(len(I))
    for x in pts:
        p = 2 * pos[x]
        D[p:p + 2, p:p + 2] = 0.0
    A = D - _sqrt_weighted_blocks(K, I)
    prob = (-1) ** len(pts) * skewlinalg.pfaffian(A, atol=KERNEL_ATOL)
    return _realify(prob / np.prod(K.space.weights[pts]))
