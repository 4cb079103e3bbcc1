"""The two-parameter 3x3 example family rho(x, y) and its closed-form bound curves.

``rho(x, y)`` has ``y`` on diagonal positions 0, 2, 4, 6, 8 and an all-``x``
4x4 block on rows/columns 1, 3, 5, 7, normalized by ``4x + 5y``.

Two kinds of quantity live here and must not be confused:

* closed forms (``printed_mapped_matrix``,
  ``mapped_closed_form_eigs``, ``printed_bound_curves``) -- these describe
  the closed-form mapped matrix, which treats the entry coupling ``|01>`` and
  ``|21>`` as off-diagonal in its block;
* numerics of the actual ``(I (x) Phi_{t,pi}) rho(x, y)``
  (``mapped_spectrum``, ``numeric_bound_curves``), where that entry lies on
  the diagonal of block (0, 2) and is transformed accordingly.

The PPT and realignment closed forms agree with the numerics; the map
curves do not.
"""

from __future__ import annotations

import csv
import io
import math

import numpy as np

from .bounds import map_bound, ppt_bound, realignment_bound
from .errors import NonpositiveParameter
from .linalg import hermitian_eigenvalues
from .maps import GeneralizedMap, extend_second
from .states import DensityMatrix, validate_density

N = 3
Y_POSITIONS = (0, 2, 4, 6, 8)
X_POSITIONS = (1, 3, 5, 7)
DEFAULT_RESOLUTION = 201


def _check_xy(x: float, y: float) -> None:
    if not (x > 0 and y > 0):
        raise NonpositiveParameter(f"need x > 0 and y > 0, got x={x!r}, y={y!r}")


def _check_t(t: float) -> None:
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t!r} outside [0, 1]")


def family_matrix(x: float, y: float) -> np.ndarray:
    m = np.zeros((9, 9))
    m[Y_POSITIONS, Y_POSITIONS] = y
    m[np.ix_(X_POSITIONS, X_POSITIONS)] = x
    return m / (4 * x + 5 * y)


def family_state(x: float, y: float) -> DensityMatrix:
    _check_xy(x, y)
    return validate_density(family_matrix(x, y), (N, N))


def printed_mapped_matrix(x: float, y: float, t: float) -> np.ndarray:
    """The mapped matrix behind the closed-form curves of this family."""
    _check_xy(x, y)
    _check_t(t)
    a = (2 - t) * y + t * x
    b = (2 - t) * x + t * y
    m = np.diag([a, b, 2 * y, b, a, 2 * x, a, b, 2 * y]).astype(float)
    for p in X_POSITIONS:
        for q in X_POSITIONS:
            if p != q:
                m[p, q] = -x
    return m / (4 * x + 5 * y)


def _lambda_pm(x: float, y: float, t: float) -> tuple[float, float]:
    b = (2 - t) * x + t * y
    root = math.sqrt(b * b + 4 * ((3 + 2 * t) * x * x - 2 * t * x * y))
    return (b + root) / 2, (b - root) / 2


def mapped_closed_form_eigs(x: float, y: float, t: float) -> np.ndarray:
    """Closed-form spectrum of :func:`printed_mapped_matrix`, ascending.

    The quadratic pair carries the 1/2 of the quadratic formula; with it
    the nine values sum to 2.
    """
    _check_xy(x, y)
    _check_t(t)
    a = (2 - t) * y + t * x
    c = (3 - t) * x + t * y
    plus, minus = _lambda_pm(x, y, t)
    vals = np.array([2 * y, 2 * y, a, a, a, c, c, plus, minus]) / (4 * x + 5 * y)
    return np.sort(vals)


def mapped_matrix(x: float, y: float, t: float) -> np.ndarray:
    """``(I (x) Phi_{t,cyclic}) rho(x, y)`` computed from its definition."""
    _check_t(t)
    return extend_second(GeneralizedMap.cyclic(N, t), family_state(x, y))


def mapped_spectrum(x: float, y: float, t: float) -> np.ndarray:
    return hermitian_eigenvalues(mapped_matrix(x, y, t))


def _curves(x: float, y: float, t: float) -> tuple[float, float, float, float]:
    norm = 4 * x + 5 * y

    def h_at(tt):
        b = (2 - tt) * x + tt * y
        return (-b + math.sqrt(b * b + 4 * ((3 + 2 * tt) * x * x - 2 * tt * x * y))) / norm

    h = h_at(t)
    i = h_at(1.0)
    j = 2 * (2 * x - y) / norm
    k = (2 * math.sqrt(4 * x * x + y * y) - 4 * y) / norm
    return h, i, j, k


def printed_bound_curves(x: float, y: float, t: float) -> tuple[float, float, float, float]:
    """Closed-form curves ``(h, i, j, k)``: map at ``t``, Li, PPT, realignment.

    These are unscaled ``f`` values; values are returned raw even where the
    formula's validity condition fails.
    """
    _check_xy(x, y)
    _check_t(t)
    return _curves(x, y, t)


def numeric_bound_curves(x: float, y: float, t: float) -> tuple[float, float, float, float]:
    """Same four ``f`` values computed from ``rho(x, y)`` directly."""
    rho = family_state(x, y)
    return (
        map_bound(rho, t)[0],
        map_bound(rho, 1.0)[0],
        ppt_bound(rho)[0],
        realignment_bound(rho)[0],
    )


def detection_threshold(t: float, y: float) -> float:
    """``x`` above which the closed-form map curve is positive: ``2ty / (3 + 2t)``."""
    _check_t(t)
    if not y > 0:
        raise NonpositiveParameter(f"need y > 0, got {y!r}")
    return 2 * t * y / (3 + 2 * t)


def figure_rows(which: int, resolution: int = DEFAULT_RESOLUTION, numeric: bool = False):
    """Header and rows for one of the three figures (``y = 1``, ``x in [0, 1]``).

    ``numeric=True`` appends the directly computed ``f`` values next to the
    closed-form curves; those require ``x > 0`` and are blank at ``x = 0``.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be at least 2, got {resolution}")
    y = 1.0
    xs = np.linspace(0.0, 1.0, resolution)
    rows = []
    if which == 1:
        header = ["x", "h", "i", "j", "k"]
        if numeric:
            header += ["h_numeric", "i_numeric", "j_numeric", "k_numeric"]
        for x in xs:
            row = [x, *_curves(x, y, 0.5)]
            if numeric:
                row += list(numeric_bound_curves(x, y, 0.5)) if x > 0 else [None] * 4
            rows.append(row)
    elif which == 2:
        header = ["x", "t", "h"]
        if numeric:
            header.append("h_numeric")
        for x in xs:
            for t in np.linspace(0.0, 1.0, resolution):
                row = [x, t, _curves(x, y, t)[0]]
                if numeric:
                    row.append(numeric_bound_curves(x, y, t)[0] if x > 0 else None)
                rows.append(row)
    elif which == 3:
        ts = (0.0, 0.5, 1.0)
        header = ["x", "h_t0", "h_t0.5", "h_t1"]
        if numeric:
            header += ["h_t0_numeric", "h_t0.5_numeric", "h_t1_numeric"]
        for x in xs:
            row = [x, *(_curves(x, y, t)[0] for t in ts)]
            if numeric:
                row += [numeric_bound_curves(x, y, t)[0] if x > 0 else None for t in ts]
            rows.append(row)
    else:
        raise ValueError(f"figure must be 1, 2 or 3, got {which!r}")
    return header, rows


def _fmt(v) -> str:
    return "" if v is None else f"{float(v):.17g}"


def figure_data(which: int, resolution: int = DEFAULT_RESOLUTION, numeric: bool = False) -> str:
    """Figure data as CSV text (header row, LF line endings)."""
    header, rows = figure_rows(which, resolution, numeric)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()
