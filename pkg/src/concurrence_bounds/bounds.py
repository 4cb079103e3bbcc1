"""Concurrence lower bounds of the form ``sqrt(2 / (n (n-1))) * f(rho)``.

Four choices of ``f`` are provided:

* PPT: ``||rho^{T1}|| - 1``
* realignment: ``||R(rho)|| - 1``
* Li: ``||(I (x) Phi_1) rho|| - (n-1)`` with the cyclic t=1 map
* generalized: ``||(I (x) Phi_{t,pi}) rho|| - (n-1)`` for a full cycle ``pi``
  and ``0 <= t <= 1``

Every function returns the raw ``f`` together with the scaled bound.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import NotFullCycle, NotSquareDims, TOutsideProvenDomain
from .linalg import partial_transpose, realign, trace_norm
from .maps import GeneralizedMap, Permutation, cycle_analysis, extend_second
from .states import DensityMatrix

DETECTION_TOL = 1e-9
DEFAULT_GRID = 101
# grid values closer than this to the maximum count as ties
TIE_TOL = 1e-12

CRITERIA = ("ppt", "realignment", "li", "map")


def scale_factor(n: int) -> float:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    return math.sqrt(2.0 / (n * (n - 1)))


def _square_n(rho: DensityMatrix) -> int:
    n1, n2 = rho.dims
    if n1 != n2:
        raise NotSquareDims(f"bounds need equal local dimensions, got {(n1, n2)}")
    return n1


def ppt_bound(rho: DensityMatrix) -> tuple[float, float]:
    n = _square_n(rho)
    f = trace_norm(partial_transpose(rho.mat, rho.dims, sys=1)) - 1.0
    return f, scale_factor(n) * f


def realignment_bound(rho: DensityMatrix) -> tuple[float, float]:
    n = _square_n(rho)
    f = trace_norm(realign(rho.mat, rho.dims)) - 1.0
    return f, scale_factor(n) * f


def map_bound(rho: DensityMatrix, t: float, perm: Permutation | None = None) -> tuple[float, float]:
    """Bound from ``Phi_{t,pi}``; ``perm`` defaults to ``i -> i+1 mod n``.

    Raises
    ------
    TOutsideProvenDomain
        If ``t`` is outside ``[0, 1]``.
    NotFullCycle
        If ``perm`` is not a single n-cycle.
    """
    n = _square_n(rho)
    if not 0.0 <= t <= 1.0:
        raise TOutsideProvenDomain(f"t={t!r} outside [0, 1]")
    perm = Permutation.cyclic(n) if perm is None else perm
    if perm.n != n or not cycle_analysis(perm)[2]:
        raise NotFullCycle(f"permutation {perm} is not a full {n}-cycle")
    out = extend_second(GeneralizedMap(n, t, perm), rho)
    f = trace_norm(out) - (n - 1)
    return f, scale_factor(n) * f


def li_bound(rho: DensityMatrix) -> tuple[float, float]:
    return map_bound(rho, 1.0)


def t_grid(grid_points: int) -> np.ndarray:
    if grid_points < 2:
        raise ValueError(f"grid needs at least 2 points, got {grid_points}")
    return np.linspace(0.0, 1.0, grid_points)


def best_map_bound(
    rho: DensityMatrix, grid_points: int = DEFAULT_GRID, perm: Permutation | None = None
) -> tuple[float, float, float]:
    """Maximize the generalized bound over a uniform grid on ``t in [0, 1]``.

    Returns ``(best_t, f, bound)``; ties go to the smallest ``t``.
    """
    ts = t_grid(grid_points)
    fs = np.array([map_bound(rho, float(t), perm)[0] for t in ts])
    best = int(np.flatnonzero(fs >= fs.max() - TIE_TOL)[0])
    f = float(fs[best])
    return float(ts[best]), f, scale_factor(_square_n(rho)) * f


@dataclass
class BoundReport:
    n: int
    ppt_f: float
    realign_f: float
    li_f: float
    map_f: float
    t_used: float
    perm: str
    best_t: float
    best_map_f: float
    grid: int
    scale: float
    bounds: dict = field(default_factory=dict)
    detected: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "BoundReport":
        return cls(**doc)

    def csv_row(self) -> dict:
        row = {
            "n": self.n,
            "t_used": self.t_used,
            "perm": self.perm,
            "grid": self.grid,
            "scale": self.scale,
            "ppt_f": self.ppt_f,
            "realign_f": self.realign_f,
            "li_f": self.li_f,
            "map_f": self.map_f,
            "best_t": self.best_t,
            "best_map_f": self.best_map_f,
        }
        for k in CRITERIA + ("best_map",):
            row[f"{k}_bound"] = self.bounds[k]
        for k in CRITERIA + ("best_map",):
            row[f"{k}_detected"] = str(self.detected[k]).lower()
        return row

    def to_csv(self) -> str:
        row = self.csv_row()
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
        writer.writeheader()
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"n = {self.n}   scale = {self.scale:.10g}"]
        labels = {
            "ppt": ("PPT", self.ppt_f),
            "realignment": ("realignment", self.realign_f),
            "li": ("Li (t=1)", self.li_f),
            "map": (f"map (t={self.t_used:g}, perm={self.perm})", self.map_f),
            "best_map": (f"best map (t={self.best_t:g}, grid={self.grid})", self.best_map_f),
        }
        for key, (label, f) in labels.items():
            flag = "detected" if self.detected[key] else "not detected"
            lines.append(f"{label:<34} f = {f:+.10f}   bound = {self.bounds[key]:+.10f}   {flag}")
        return "\n".join(lines) + "\n"


def bound_report(
    rho: DensityMatrix,
    t: float = 1.0,
    perm: Permutation | None = None,
    grid: int = DEFAULT_GRID,
    detection_tol: float = DETECTION_TOL,
) -> BoundReport:
    n = _square_n(rho)
    perm = Permutation.cyclic(n) if perm is None else perm
    scale = scale_factor(n)
    ppt_f, _ = ppt_bound(rho)
    realign_f, _ = realignment_bound(rho)
    li_f, _ = li_bound(rho)
    map_f, _ = map_bound(rho, t, perm)
    best_t, best_f, _ = best_map_bound(rho, grid, perm)
    fs = {"ppt": ppt_f, "realignment": realign_f, "li": li_f, "map": map_f, "best_map": best_f}
    bounds = {k: scale * v for k, v in fs.items()}
    return BoundReport(
        n=n,
        ppt_f=ppt_f,
        realign_f=realign_f,
        li_f=li_f,
        map_f=map_f,
        t_used=float(t),
        perm=str(perm),
        best_t=best_t,
        best_map_f=best_f,
        grid=grid,
        scale=scale,
        bounds=bounds,
        detected={k: bool(v > detection_tol) for k, v in bounds.items()},
    )
