"""Dense complex matrix helpers and bipartite index reshuffles.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Bipartite
matrices use the system-1-major convention: the row of basis vector
``|i>|j>`` is ``i * n2 + j``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimMismatch, NotFinite, NotHermitian, NotSquare

HERMITIAN_TOL = 1e-10


class Dims(NamedTuple):
    """Local dimensions ``(n1, n2)`` of a bipartite system."""

    n1: int
    n2: int

    @property
    def total(self) -> int:
        return self.n1 * self.n2


def as_dims(dims) -> Dims:
    n1, n2 = (int(d) for d in dims)
    if n1 < 1 or n2 < 1:
        raise DimMismatch(f"dimensions must be positive, got {(n1, n2)}")
    return Dims(n1, n2)


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite, non-empty 2-D complex array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimMismatch(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.shape[0] == 0 or m.shape[1] == 0:
        raise DimMismatch("zero-dimension matrices are not allowed")
    if not np.all(np.isfinite(m)):
        raise NotFinite("matrix has NaN or Inf entries")
    return m


def _square(m: np.ndarray) -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {m.shape}")
    return m


def _bipartite(m, dims) -> tuple[np.ndarray, Dims]:
    m = _square(m)
    dims = as_dims(dims)
    if m.shape[0] != dims.total:
        raise DimMismatch(f"side {m.shape[0]} does not match dims {tuple(dims)}")
    return m, dims


def hermitian_deviation(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and hermitian_deviation(m) <= tol


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def hermitian_eigenvalues(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in ascending order.

    Raises
    ------
    NotSquare
        If ``h`` is not square.
    NotHermitian
        If some entry of ``h - h^dagger`` exceeds ``tol`` in modulus.
    """
    h = _square(h)
    dev = hermitian_deviation(h)
    if dev > tol:
        raise NotHermitian(f"max |h - h^dagger| = {dev:.3e} exceeds {tol:.1e}")
    return np.linalg.eigvalsh(h)


def singular_values(m) -> np.ndarray:
    """Singular values in descending order."""
    return np.linalg.svd(as_matrix(m), compute_uv=False)


def trace_norm(m) -> float:
    """Sum of singular values.

    Hermitian input (within ``HERMITIAN_TOL``) takes the eigenvalue route,
    which is cheaper and agrees with the SVD route to rounding.
    """
    m = as_matrix(m)
    if m.shape[0] == m.shape[1] and hermitian_deviation(m) <= HERMITIAN_TOL:
        return float(np.sum(np.abs(np.linalg.eigvalsh(m))))
    return float(np.sum(singular_values(m)))


def partial_transpose(m, dims, sys: int = 1) -> np.ndarray:
    """Transpose the indices of subsystem ``sys`` (1 or 2)."""
    m, (n1, n2) = _bipartite(m, dims)
    t = m.reshape(n1, n2, n1, n2)
    if sys == 1:
        t = t.transpose(2, 1, 0, 3)
    elif sys == 2:
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"sys must be 1 or 2, got {sys}")
    return t.reshape(n1 * n2, n1 * n2)


def realign(m, dims) -> np.ndarray:
    """Realigned matrix: ``out[i*n1 + k, j*n2 + l] = m[i*n2 + j, k*n2 + l]``.

    The result has shape ``(n1**2, n2**2)``.
    """
    m, (n1, n2) = _bipartite(m, dims)
    return m.reshape(n1, n2, n1, n2).transpose(0, 2, 1, 3).reshape(n1 * n1, n2 * n2)


def partial_trace(m, dims, sys: int = 2) -> np.ndarray:
    """Trace out subsystem ``sys`` (1 or 2)."""
    m, (n1, n2) = _bipartite(m, dims)
    t = m.reshape(n1, n2, n1, n2)
    if sys == 2:
        return np.einsum("ijkj->ik", t)
    if sys == 1:
        return np.einsum("ijil->jl", t)
    raise ValueError(f"sys must be 1 or 2, got {sys}")
