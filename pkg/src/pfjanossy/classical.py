"""Polynomial (beta = 1, 2, 4) and biorthogonal ensembles, plus quadrature.

beta = 2 and beta = 4 live on a doubled space: two identical copies of a
base space, ordered ``(v_1, w_1, v_2, w_2, ...)``, with ``eps`` coupling
each point only to its twin.  The coupling is the delta kernel of the
base measure, ``eps(v, w) = delta_vw / mu(v)``, so that ``eps`` acts as the
identity between copies: ``(eps f)(v) = f(w_v)``.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .ensemble import EnsembleSpec, PointSpace, density
from .errors import UnknownRule

WEIGHT_KINDS = ("explicit", "uniform", "gaussian")
RULES = ("gauss-legendre", "gauss-hermite")


@dataclass(frozen=True)
class WeightSpec:
    """Density ``omega`` of the particle measure w.r.t. the reference measure.

    ``kind="explicit"`` takes one value per point; ``"uniform"`` is 1 on
    ``[a, b]``; ``"gaussian"`` is ``exp(-(x - mean)^2 / (2 std^2))``.
    """

    kind: str = "uniform"
    values: tuple = None
    a: float = -1.0
    b: float = 1.0
    mean: float = 0.0
    std: float = 1.0

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}; expected one of {WEIGHT_KINDS}")
        if self.kind == "explicit" and self.values is None:
            raise ValueError("explicit weights need values")
        if self.kind == "uniform" and not self.b > self.a:
            raise ValueError("uniform weight needs a < b")
        if self.kind == "gaussian" and not self.std > 0:
            raise ValueError("gaussian weight needs std > 0")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "explicit":
            vals = np.asarray(self.values, dtype=float)
            if vals.shape != x.shape:
                raise ValueError(f"{vals.size} explicit weights for {x.size} points")
            out = vals
        elif self.kind == "uniform":
            out = np.where((x >= self.a) & (x <= self.b), 1.0, 0.0)
        else:
            out = np.exp(-0.5 * ((x - self.mean) / self.std) ** 2)
        if not np.all(out > 0):
            raise ValueError("weight must be strictly positive on every node")
        return out


def _space(points, weight):
    """Base space with ``lam = omega * reference``.

    ``points`` is either coordinates (reference = counting measure) or a
    :class:`PointSpace` whose weights serve as the reference measure.
    """
    if isinstance(points, PointSpace):
        coords, ref = points.coords, points.weights
    else:
        coords = np.asarray(points, dtype=float)
        ref = np.ones_like(coords)
    omega = np.ones_like(coords) if weight is None else weight(coords)
    return PointSpace(coords, omega * ref)


@dataclass(frozen=True, eq=False)
class DoubledSpace(PointSpace):
    """Two interleaved copies of ``base``: index ``2i`` (first copy) and
    ``2i + 1`` (second copy) both sit over base point ``i``."""

    base: PointSpace = field(default=None)

    @classmethod
    def of(cls, base):
        return cls(np.repeat(base.coords, 2), np.repeat(base.weights, 2), base)

    def first(self, i):
        return 2 * i

    def second(self, i):
        return 2 * i + 1

    def base_index(self, x):
        return x // 2

    def twin(self, x):
        return x ^ 1

    def lift(self, base_subset):
        """Copy-consistent subset of the doubled space over ``base_subset``."""
        out = []
        for i in sorted(set(int(i) for i in base_subset)):
            if not 0 <= i < self.base.m:
                raise IndexError(f"base index {i} out of range")
            out += [2 * i, 2 * i + 1]
        return out

    def is_copy_consistent(self, subset):
        s = set(int(x) for x in subset)
        return all((x ^ 1) in s for x in s)


def _delta_coupling(space):
    """``eps(first_i, second_i) = 1 / mu_i`` and its negative transpose."""
    m = space.base.m
    eps = np.zeros((2 * m, 2 * m))
    i = np.arange(m)
    eps[2 * i, 2 * i + 1] = 1.0 / space.base.weights
    eps[2 * i + 1, 2 * i] = -1.0 / space.base.weights
    return eps


def sign_kernel(coords):
    """``eps(x, y) = sgn(y - x) / 2`` with ``sgn(0) = 0``."""
    coords = np.asarray(coords, dtype=float)
    return 0.5 * np.sign(coords[None, :] - coords[:, None])


def monomials(coords, count):
    coords = np.asarray(coords, dtype=float)
    return np.vander(coords, count, increasing=True).T


def beta1_spec(points, weight, n):
    """Orthogonal ensemble: ``phi_j = x^{j-1}``, ``eps = sgn(y - x) / 2``.

    Density w.r.t. the reference measure ``prod|x_i - x_j| prod omega(x_j)``.
    """
    space = _space(points, weight)
    return EnsembleSpec(space, n, monomials(space.coords, 2 * n), sign_kernel(space.coords))


def biorthogonal_spec(xi, psi, base):
    """Biorthogonal ensemble on the doubled space over ``base``.

    ``xi`` and ``psi`` have shape ``(n, m)``.  ``phi_j`` is ``xi_j`` on the
    second copy (``j <= n``) and ``psi_{j-n}`` on the first copy
    (``j > n``).  The induced n-point density is proportional to
    ``det(xi_j(v_i)) det(psi_j(v_i))``.
    """
    xi = np.asarray(xi, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if xi.ndim != 2 or xi.shape != psi.shape or xi.shape[1] != base.m:
        raise ValueError(f"xi and psi must both have shape (n, {base.m})")
    n, m = xi.shape
    space = DoubledSpace.of(base)
    phi = np.zeros((2 * n, 2 * m), dtype=complex)
    phi[:n, 1::2] = xi
    phi[n:, 0::2] = psi
    return EnsembleSpec(space, n, phi, _delta_coupling(space))


def beta2_spec(points, weight, n):
    """Unitary ensemble: biorthogonal with ``xi_j = psi_j = y^{j-1}``."""
    base = _space(points, weight)
    mono = monomials(base.coords, n)
    return biorthogonal_spec(mono, mono, base)


def beta4_spec(points, weight, n):
    """Symplectic ensemble on the doubled space ``Y, Z`` over ``points``.

    ``phi_j(y) = y^{j-1}`` on the first copy and ``phi_j(z) = (j-1) z^{j-2}``
    on the second, ``j = 1..2n``; induced n-point density proportional to
    ``prod (y_i - y_j)^4 prod omega(y_j)``.
    """
    base = _space(points, weight)
    space = DoubledSpace.of(base)
    y = base.coords
    phi = np.zeros((2 * n, 2 * base.m))
    phi[:, 0::2] = monomials(y, 2 * n)
    for j in range(1, 2 * n):
        phi[j, 1::2] = j * y ** (j - 1)
    return EnsembleSpec(space, n, phi, _delta_coupling(space))


def induced_density(spec, base_config):
    """n-point density on the base space (w.r.t. ``mu^n``) of a doubled spec.

    Each base point carries one particle in each copy, so
    ``p_base(v) = (2n)!/n! * p(v_1, w_1, ..., v_n, w_n) * prod mu(v_i)``.
    """
    space = spec.space
    if not isinstance(space, DoubledSpace):
        raise TypeError("induced_density needs a spec on a DoubledSpace")
    base_config = [int(i) for i in base_config]
    if len(base_config) != spec.n:
        raise ValueError(f"need {spec.n} base points, got {len(base_config)}")
    config = [x for i in base_config for x in (2 * i, 2 * i + 1)]
    p = density(spec, config)
    factor = math.factorial(2 * spec.n) / math.factorial(spec.n)
    return factor * p * np.prod(space.base.weights[base_config])


def product_density(beta, coords, omega):
    """Unnormalized ``prod_{i<j} |x_i - x_j|^beta prod omega(x_j)``."""
    coords = np.asarray(coords, dtype=float)
    diffs = np.abs(coords[:, None] - coords[None, :])[np.triu_indices(coords.size, 1)]
    return float(np.prod(diffs ** beta) * np.prod(omega))


def discretize(family, rule, N):
    """Quadrature nodes for ``family`` with ``omega`` folded into the weights.

    ``"gauss-legendre"`` pairs with a uniform family on ``[a, b]``;
    ``"gauss-hermite"`` with a gaussian family (probabilists' Hermite rule,
    weight ``exp(-(x - mean)^2 / (2 std^2))``).  Exact for polynomial
    integrands of degree ``<= 2N - 1``.

    Raises
    ------
    UnknownRule
        For an unknown rule name or a rule/family mismatch.
    """
    if N < 1:
        raise ValueError("need at least one node")
    if rule == "gauss-legendre":
        if family.kind != "uniform":
            raise UnknownRule(f"gauss-legendre needs a uniform family, got {family.kind!r}")
        t, w = np.polynomial.legendre.leggauss(N)
        half = 0.5 * (family.b - family.a)
        return PointSpace(family.a + half * (t + 1.0), half * w)
    if rule == "gauss-hermite":
        if family.kind != "gaussian":
            raise UnknownRule(f"gauss-hermite needs a gaussian family, got {family.kind!r}")
        t, w = np.polynomial.hermite_e.hermegauss(N)
        return PointSpace(family.mean + family.std * t, family.std * w)
    raise UnknownRule(f"unknown quadrature rule {rule!r}; expected one of {RULES}")
