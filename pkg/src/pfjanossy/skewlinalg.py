"""Dense skew-symmetric linear algebra over complex scalars.

All routines accept anything :func:`numpy.asarray` understands and work in
``complex128``; real input embeds with zero imaginary part.  A "skew matrix"
here is simply a square complex ndarray that passed :func:`as_skew`.
"""
from functools import lru_cache
import math

import numpy as np

from .errors import NotSkew, OddDimension, Singular, TooLarge

SKEW_ATOL = 1e-12
RCOND_MIN = 1e-12
ORACLE_MAX_DIM = 12


def as_skew(A, atol=SKEW_ATOL):
    """Validate antisymmetry and return the canonical form ``(A - A.T) / 2``.

    Raises
    ------
    NotSkew
        If ``A`` is not square or ``max|A + A.T| > atol``.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSkew(f"expected a square matrix, got shape {A.shape}")
    if A.size:
        dev = np.max(np.abs(A + A.T))
        if dev > atol:
            raise NotSkew(f"antisymmetry violated by {dev:.3e} (tolerance {atol:.1e})")
    return (A - A.T) / 2


def _even_skew(A, atol):
    A = as_skew(A, atol)
    if A.shape[0] % 2:
        raise OddDimension(f"Pfaffian needs an even dimension, got {A.shape[0]}")
    return A


def pfaffian(A, atol=SKEW_ATOL):
    """Pfaffian of an even-dimensional skew matrix.

    Skew Gaussian elimination in the style of Parlett and Reid: at each step
    the largest entry of the current column below the diagonal is pivoted
    into the ``(k+1, k)`` position, the 2x2 pivot block contributes one factor
    and the trailing block receives a rank-2 skew update.  O(dim^3).

    Parameters
    ----------
    A : array_like, shape (2m, 2m)
    atol : float
        Antisymmetry tolerance passed to :func:`as_skew`.

    Returns
    -------
    complex
    """
    A = _even_skew(A, atol).copy()
    dim = A.shape[0]
    result = 1.0 + 0j
    for k in range(0, dim - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
        if kp != k + 1:
            A[[k + 1, kp], :] = A[[kp, k + 1], :]
            A[:, [k + 1, kp]] = A[:, [kp, k + 1]]
            result = -result
        pivot = A[k, k + 1]
        if pivot == 0:
            return 0j
        result *= pivot
        if k + 2 < dim:
            tau = A[k, k + 2:] / pivot
            col = A[k + 2:, k + 1]
            A[k + 2:, k + 2:] += np.outer(tau, col) - np.outer(col, tau)
    return complex(result)


def _pairings(elems):
    if not elems:
        yield 1, ()
        return
    first, rest = elems[0], elems[1:]
    for pos, partner in enumerate(rest):
        remaining = rest[:pos] + rest[pos + 1:]
        # moving `partner` next to `first` crosses `pos` elements
        sign = -1 if pos % 2 else 1
        for sub_sign, sub in _pairings(remaining):
            yield sign * sub_sign, ((first, partner),) + sub


@lru_cache(maxsize=None)
def pairing_table(dim):
    """All perfect pairings of ``range(dim)`` with their permutation signs.

    Returns
    -------
    signs : ndarray, shape (P,)
    left, right : ndarray, shape (P, dim // 2)
        ``left[p, q] < right[p, q]`` is the q-th pair of pairing ``p``.
        ``P = (dim - 1)!!``.
    """
    if dim % 2:
        raise OddDimension(f"no perfect pairings of {dim} elements")
    signs, left, right = [], [], []
    for sign, pairs in _pairings(tuple(range(dim))):
        signs.append(sign)
        left.append([p[0] for p in pairs])
        right.append([p[1] for p in pairs])
    half = dim // 2
    return (np.array(signs, dtype=float),
            np.array(left, dtype=int).reshape(len(signs), half),
            np.array(right, dtype=int).reshape(len(signs), half))


def pfaffian_oracle(A, atol=SKEW_ATOL):
    """Pfaffian as the signed sum over all perfect pairings.

    Reference implementation with factorial cost; limited to dimension 12.
    """
    A = _even_skew(A, atol)
    dim = A.shape[0]
    if dim > ORACLE_MAX_DIM:
        raise TooLarge(f"pairing sum limited to dim <= {ORACLE_MAX_DIM}, got {dim}")
    signs, left, right = pairing_table(dim)
    terms = signs * np.prod(A[left, right], axis=1)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def reciprocal_condition(M):
    """Smallest over largest singular value; 0 for the zero matrix."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return 1.0
    s = np.linalg.svd(M, compute_uv=False)
    return float(s[-1] / s[0]) if s[0] > 0 else 0.0


def invert(M, rcond_min=RCOND_MIN, error=Singular, what="matrix"):
    """Inverse of a square complex matrix guarded by a condition check.

    Raises
    ------
    Singular
        (or the subclass passed as ``error``) when the reciprocal condition
        number is not above ``rcond_min``.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    rc = reciprocal_condition(M)
    if not rc > rcond_min:
        raise error(f"{what} is numerically singular (rcond={rc:.3e})", rc)
    return np.linalg.solve(M, np.eye(M.shape[0], dtype=complex))


def det(M):
    return complex(np.linalg.det(np.asarray(M, dtype=complex)))
