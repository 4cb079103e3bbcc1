"""Bipartite states, Schmidt decomposition and pure-state concurrence."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DimMismatch,
    NotHermitian,
    NotPSD,
    NotUnitTrace,
    StateFormatError,
)
from .linalg import Dims, as_dims, as_matrix, hermitian_deviation, partial_trace

TRACE_TOL = 1e-10
PSD_TOL = 1e-9
NORM_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated bipartite density matrix. Build it with :func:`validate_density`."""

    mat: np.ndarray
    dims: Dims

    @property
    def n(self) -> int:
        """Common local dimension; only meaningful for ``n1 == n2``."""
        return self.dims.n1

    @property
    def is_square_dims(self) -> bool:
        return self.dims.n1 == self.dims.n2


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    dims: Dims

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        dims = as_dims(self.dims)
        if amps.size != dims.total:
            raise DimMismatch(f"{amps.size} amplitudes do not match dims {tuple(dims)}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: |psi| = {norm!r}")
        object.__setattr__(self, "amplitudes", _frozen(amps))
        object.__setattr__(self, "dims", dims)

    @classmethod
    def normalized(cls, amplitudes, dims) -> "PureState":
        amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
        return cls(amps / np.linalg.norm(amps), dims)


@dataclass(frozen=True, eq=False)
class SchmidtCoefficients:
    """Schmidt coefficients, nonnegative and sorted descending."""

    alphas: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alphas, dtype=float).ravel()
        if np.any(a < 0):
            raise ValueError("Schmidt coefficients must be nonnegative")
        if abs(np.sum(a * a) - 1.0) > 1e-10:
            raise ValueError(f"sum of squared coefficients is {np.sum(a * a)!r}, not 1")
        object.__setattr__(self, "alphas", _frozen(np.sort(a)[::-1]))

    def __len__(self) -> int:
        return self.alphas.size


def as_alphas(alphas) -> np.ndarray:
    if isinstance(alphas, SchmidtCoefficients):
        return alphas.alphas
    return np.asarray(alphas, dtype=float).ravel()


def validate_density(m, dims, tol: float = TRACE_TOL) -> DensityMatrix:
    """Check ``m`` is a density matrix on ``dims`` and wrap it.

    Nothing is repaired: a slightly negative spectrum is accepted down to
    ``-PSD_TOL`` and rejected below it.
    """
    m = as_matrix(m)
    dims = as_dims(dims)
    if m.shape != (dims.total, dims.total):
        raise DimMismatch(f"matrix shape {m.shape} does not match dims {tuple(dims)}")
    dev = hermitian_deviation(m)
    if dev > tol:
        raise NotHermitian(f"max |m - m^dagger| = {dev:.3e}")
    tr = np.trace(m)
    if abs(tr - 1.0) > tol:
        raise NotUnitTrace(f"trace = {tr.real:.12g}{tr.imag:+.3g}j")
    min_eig = float(np.linalg.eigvalsh(m)[0])
    if min_eig < -PSD_TOL:
        raise NotPSD(min_eig)
    return DensityMatrix(_frozen(m), dims)


def pure_to_density(psi: PureState) -> DensityMatrix:
    v = psi.amplitudes
    return DensityMatrix(_frozen(np.outer(v, v.conj())), psi.dims)


def schmidt_coefficients(psi: PureState) -> SchmidtCoefficients:
    n1, n2 = psi.dims
    s = np.linalg.svd(psi.amplitudes.reshape(n1, n2), compute_uv=False)
    # SVD output is already descending; renormalize away rounding drift
    return SchmidtCoefficients(s / np.linalg.norm(s))


def pure_concurrence(psi: PureState) -> float:
    """Concurrence of a pure state.

    Evaluates both ``sqrt(2 (1 - Tr rho_1^2))`` and
    ``2 sqrt(sum_{i<j} a_i^2 a_j^2)`` and checks they agree to 1e-9.
    """
    rho = np.outer(psi.amplitudes, psi.amplitudes.conj())
    rho1 = partial_trace(rho, psi.dims, sys=2)
    purity = float(np.real(np.trace(rho1 @ rho1)))
    via_purity = np.sqrt(max(0.0, 2.0 * (1.0 - purity)))

    p = schmidt_coefficients(psi).alphas ** 2
    # sum_{i<j} p_i p_j = ((sum p)^2 - sum p^2) / 2
    pair_sum = 0.5 * (np.sum(p) ** 2 - np.sum(p * p))
    via_schmidt = 2.0 * np.sqrt(max(0.0, pair_sum))
    if abs(via_purity - via_schmidt) > 1e-9:
        raise ArithmeticError(
            f"concurrence expressions disagree: {via_purity!r} vs {via_schmidt!r}"
        )
    return float(via_schmidt)


def schmidt_canonical_vector(alphas, n: int) -> PureState:
    """``sum_i a_i |i>|i>`` in an ``n x n`` system."""
    a = as_alphas(alphas)
    if a.size != n:
        raise DimMismatch(f"{a.size} coefficients for n={n}")
    amps = np.zeros(n * n, dtype=np.complex128)
    amps[np.arange(n) * (n + 1)] = a
    return PureState(amps, Dims(n, n))


def _gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_pure(dims, seed: int) -> PureState:
    dims = as_dims(dims)
    rng = np.random.default_rng(seed)
    return PureState.normalized(_gaussian(rng, dims.total), dims)


def random_density(dims, rank: int, seed: int) -> DensityMatrix:
    """Random mixed state ``G G^dagger / Tr`` with ``G`` a ``d x rank`` Gaussian."""
    dims = as_dims(dims)
    if not 1 <= rank <= dims.total:
        raise ValueError(f"rank must lie in [1, {dims.total}], got {rank}")
    rng = np.random.default_rng(seed)
    g = _gaussian(rng, (dims.total, rank))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return validate_density(m / np.trace(m).real, dims)


# --- state file format -------------------------------------------------------
# {"dims": [n1, n2], "matrix": [[[re, im], ...], ...]}, row-major.


def state_to_dict(rho: DensityMatrix) -> dict:
    return {
        "dims": [int(rho.dims.n1), int(rho.dims.n2)],
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in rho.mat],
    }


def state_from_dict(doc: dict) -> DensityMatrix:
    try:
        dims = doc["dims"]
        rows = doc["matrix"]
    except (KeyError, TypeError) as exc:
        raise StateFormatError(f"missing field: {exc}") from None
    if not (isinstance(dims, list) and len(dims) == 2):
        raise StateFormatError("'dims' must be a list [n1, n2]")
    if not all(isinstance(d, int) and not isinstance(d, bool) for d in dims):
        raise StateFormatError("'dims' entries must be integers")
    if not isinstance(rows, list) or not rows:
        raise StateFormatError("'matrix' must be a non-empty list of rows")
    side = len(rows)
    try:
        data = np.array(rows, dtype=float)
    except (ValueError, TypeError):
        raise StateFormatError("'matrix' rows are ragged or non-numeric") from None
    if data.ndim != 3 or data.shape[2] != 2:
        raise StateFormatError("matrix entries must be [re, im] pairs")
    if data.shape[1] != side:
        raise DimMismatch(f"matrix is {side}x{data.shape[1]}, not square")
    if side != dims[0] * dims[1]:
        raise DimMismatch(f"matrix side {side} does not match dims {dims}")
    return validate_density(data[..., 0] + 1j * data[..., 1], dims)


def dumps_state(rho: DensityMatrix) -> str:
    return json.dumps(state_to_dict(rho))


def loads_state(text: str) -> DensityMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"invalid JSON: {exc}") from None
    return state_from_dict(doc)


def read_state(path) -> DensityMatrix:
    return loads_state(Path(path).read_text(encoding="utf-8"))


def write_state(rho: DensityMatrix, path) -> None:
    Path(path).write_text(dumps_state(rho) + "\n", encoding="utf-8")
