"""The positive maps Phi_{t,pi} and their extension I (x) Phi.

``Phi_{t,pi}`` negates every off-diagonal entry of an ``n x n`` matrix and
replaces diagonal entry ``i`` by ``(n-1-t) x_ii + t x_{pi(i),pi(i)}``. It is
positive exactly for ``0 <= t <= n / l(pi)`` where ``l(pi)`` is the longest
cycle of ``pi``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, NotBijection
from .linalg import as_matrix
from .states import DensityMatrix

POSITIVITY_SLACK = 1e-12


@dataclass(frozen=True)
class Permutation:
    """0-indexed permutation given by its image list ``i -> mapping[i]``."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(i) for i in self.mapping)
        if not mapping or sorted(mapping) != list(range(len(mapping))):
            raise NotBijection(f"{list(mapping)} is not a permutation of 0..{len(mapping) - 1}")
        object.__setattr__(self, "mapping", mapping)

    @property
    def n(self) -> int:
        return len(self.mapping)

    @classmethod
    def cyclic(cls, n: int) -> "Permutation":
        """The shift ``i -> i + 1 mod n``."""
        return cls(tuple((i + 1) % n for i in range(n)))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __str__(self) -> str:
        return ",".join(map(str, self.mapping))


def parse_permutation(spec: str, n: int) -> Permutation:
    """Parse ``"cyclic"`` or a comma-separated image list such as ``"1,2,0"``."""
    spec = spec.strip()
    if spec == "cyclic":
        return Permutation.cyclic(n)
    try:
        images = [int(s) for s in spec.split(",")]
    except ValueError:
        raise NotBijection(f"cannot parse permutation {spec!r}") from None
    perm = Permutation(tuple(images))
    if perm.n != n:
        raise DimMismatch(f"permutation has length {perm.n}, expected {n}")
    return perm


def cycle_analysis(perm: Permutation) -> tuple[list[int], int, bool]:
    """Cycle lengths (in order of smallest element), longest cycle, full-cycle flag."""
    if not isinstance(perm, Permutation):
        perm = Permutation(tuple(perm))
    seen = [False] * perm.n
    lengths = []
    for start in range(perm.n):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = perm.mapping[i]
            length += 1
        lengths.append(length)
    longest = max(lengths)
    return lengths, longest, longest == perm.n


def max_positive_t(perm: Permutation, n: int | None = None) -> float:
    if n is not None and n != perm.n:
        raise DimMismatch(f"permutation has length {perm.n}, expected {n}")
    _, longest, _ = cycle_analysis(perm)
    return perm.n / longest


@dataclass(frozen=True)
class GeneralizedMap:
    n: int
    t: float
    perm: Permutation

    def __post_init__(self):
        if self.n < 1:
            raise DimMismatch(f"n must be positive, got {self.n}")
        if self.perm.n != self.n:
            raise DimMismatch(f"permutation has length {self.perm.n}, map acts on n={self.n}")
        if not np.isfinite(self.t) or self.t < 0:
            raise ValueError(f"t must be a finite nonnegative number, got {self.t!r}")
        object.__setattr__(self, "t", float(self.t))

    @classmethod
    def cyclic(cls, n: int, t: float) -> "GeneralizedMap":
        return cls(n, t, Permutation.cyclic(n))

    @property
    def is_positive(self) -> bool:
        return self.t <= max_positive_t(self.perm) + POSITIVITY_SLACK

    @property
    def is_full_cycle(self) -> bool:
        return cycle_analysis(self.perm)[2]


def _apply_blocks(m: GeneralizedMap, blocks: np.ndarray) -> np.ndarray:
    """Apply ``m`` to every ``n x n`` matrix in the trailing two axes."""
    n = m.n
    idx = np.arange(n)
    diag = blocks[..., idx, idx]
    out = -blocks
    out[..., idx, idx] = (n - 1 - m.t) * diag + m.t * diag[..., list(m.perm.mapping)]
    return out


def apply_map(m: GeneralizedMap, x) -> np.ndarray:
    x = as_matrix(x)
    if x.shape != (m.n, m.n):
        raise DimMismatch(f"map acts on {m.n}x{m.n} matrices, got {x.shape}")
    return _apply_blocks(m, x)


def apply_kraus_t1(x, n: int) -> np.ndarray:
    """The t=1 cyclic map written as a sum of ``E x E^dagger`` terms.

    ``(n-1) sum_i E_ii x E_ii + sum_i E_{i,i+1} x E_{i,i+1}^dagger - x``
    with indices mod n. Kept deliberately literal so it can cross-check
    :func:`apply_map`.
    """
    x = as_matrix(x)
    if x.shape != (n, n):
        raise DimMismatch(f"expected {n}x{n}, got {x.shape}")

    def unit(i, j):
        e = np.zeros((n, n), dtype=np.complex128)
        e[i, j] = 1.0
        return e

    out = -x.copy()
    for i in range(n):
        e_ii = unit(i, i)
        e_shift = unit(i, (i + 1) % n)
        out += (n - 1) * (e_ii @ x @ e_ii) + e_shift @ x @ e_shift.conj().T
    return out


def extend_second(m: GeneralizedMap, rho) -> np.ndarray:
    """``(I (x) Phi) rho``: the map applied to each ``n2 x n2`` block of ``rho``.

    ``rho`` is a :class:`DensityMatrix` or a square array whose side is a
    multiple of ``m.n``.
    """
    if isinstance(rho, DensityMatrix):
        mat, (n1, n2) = rho.mat, rho.dims
    else:
        mat = as_matrix(rho)
        n2 = m.n
        n1, rem = divmod(mat.shape[0], n2)
        if rem or mat.shape[0] != mat.shape[1] or n1 == 0:
            raise DimMismatch(f"shape {mat.shape} is not (n1*{n2}) square")
    if n2 != m.n:
        raise DimMismatch(f"second subsystem has dimension {n2}, map acts on n={m.n}")
    blocks = mat.reshape(n1, n2, n1, n2).transpose(0, 2, 1, 3)
    out = _apply_blocks(m, blocks)
    return out.transpose(0, 2, 1, 3).reshape(n1 * n2, n1 * n2)
