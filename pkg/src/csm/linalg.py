"""Small dense complex linear algebra on top of numpy.

Vectors are 1-d ``complex128`` arrays and matrices are 2-d ``complex128``
arrays. Every constructor path goes through :func:`as_vector` or
:func:`as_matrix`, which reject non-finite entries.
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-10


class LinalgError(ValueError):
    pass


class DimensionMismatch(LinalgError):
    pass


class NotNormalized(LinalgError):
    pass


class NotHermitian(LinalgError):
    pass


def as_vector(a) -> np.ndarray:
    v = np.asarray(a, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatch(f"expected a non-empty 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise LinalgError("vector has non-finite entries")
    return v


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise DimensionMismatch(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise LinalgError("matrix has non-finite entries")
    return m


def _square(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def inner(a, b) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    a, b = as_vector(a), as_vector(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"inner: dims {a.size} and {b.size}")
    return complex(np.vdot(a, b))


def outer(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Rank-one projector |a><a| for a unit vector ``a``."""
    a = as_vector(a)
    norm2 = inner(a, a).real
    if abs(norm2 - 1.0) > tol:
        raise NotNormalized(f"outer: <a|a> = {norm2!r}, expected 1")
    return np.outer(a, a.conj())


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"matmul: {a.shape} @ {b.shape}")
    return a @ b


def trace(a) -> complex:
    return complex(np.trace(_square(as_matrix(a))))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def is_unitary(u, tol: float = DEFAULT_TOL) -> bool:
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    dev = u.conj().T @ u - np.eye(u.shape[0])
    return bool(np.max(np.abs(dev)) <= tol)


def fix_phase(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate ``v`` so that its first non-negligible component is real-positive."""
    idx = np.flatnonzero(np.abs(v) > tol)
    if idx.size == 0:
        return v
    c = v[idx[0]]
    return v * (abs(c) / c)


def hermitian_eigensystem(a, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, list[np.ndarray]]:
    """Eigenvalues (descending) and gauge-fixed orthonormal eigenvectors.

    Each eigenvector has its first non-negligible component made
    real-positive, so results are reproducible across calls.
    """
    a = _square(as_matrix(a))
    if not is_hermitian(a, tol):
        raise NotHermitian("hermitian_eigensystem: input is not Hermitian")
    # symmetrize so eigh sees exactly Hermitian input
    vals, vecs = np.linalg.eigh(0.5 * (a + a.conj().T))
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vectors = [fix_phase(vecs[:, k]) for k in order]
    return vals, vectors


def spectral_function(a, fn, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Apply ``fn`` to a Hermitian matrix through its eigendecomposition."""
    vals, vecs = hermitian_eigensystem(a, tol)
    v = np.column_stack(vecs)
    return (v * fn(vals)) @ v.conj().T
