"""Numerical checks of the theorem's proof and independent concurrence oracles.

The proof reduces the bound for a pure state ``sum_i a_i |ii>`` to facts
about the spectrum of ``(I (x) Phi_{t,pi}) |phi><phi|``: ``n^2 - 2n`` zeros,
the values ``t a_i^2``, and the eigenvalues of the matrix ``B`` with
diagonal ``(n-1-t) a_i^2`` and off-diagonal ``-a_i a_j``. The ``verify_*``
functions check each of those facts for one ``(a, t)`` instance;
:func:`run_theorem_suite` runs them in bulk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimMismatch
from .linalg import hermitian_eigenvalues
from .maps import GeneralizedMap, _apply_blocks, extend_second
from .states import DensityMatrix, as_alphas, pure_to_density, schmidt_canonical_vector

SPECTRUM_TOL = 1e-8
LINEAR_TOL = 1e-9
PRODUCT_RTOL = 1e-8
PRODUCT_ATOL = 1e-12


@dataclass
class ProofCheckResult:
    """Outcome of one check.

    ``parts`` maps each sub-check to ``(deviation, tolerance)``; the headline
    ``max_deviation``/``tolerance`` pair is the part closest to failing.
    """

    label: str
    max_deviation: float
    tolerance: float
    passed: bool
    payload: dict = field(default_factory=dict)
    parts: dict = field(default_factory=dict)

    @classmethod
    def from_parts(cls, label: str, parts: dict, payload: dict) -> "ProofCheckResult":
        worst = max(parts, key=lambda k: parts[k][0] / parts[k][1])
        dev, tol = parts[worst]
        return cls(label, float(dev), float(tol), bool(dev <= tol), payload, parts)


def _payload(a: np.ndarray, t: float) -> dict:
    return {"alphas": a.tolist(), "t": float(t), "n": int(a.size)}


def _check_domain(a: np.ndarray, t: float) -> None:
    if a.size < 2:
        raise DimMismatch("need at least two Schmidt coefficients")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t!r} outside [0, 1]")


def b_matrix(alphas, t: float) -> np.ndarray:
    a = as_alphas(alphas)
    _check_domain(a, t)
    n = a.size
    b = -np.outer(a, a)
    b[np.diag_indices(n)] = (n - 1 - t) * a * a
    return b


def elementary_symmetric(values) -> np.ndarray:
    """``e_0 .. e_n`` via the coefficients of ``prod_i (1 + v_i z)``."""
    e = np.zeros(len(values) + 1)
    e[0] = 1.0
    for k, v in enumerate(values, start=1):
        e[1 : k + 1] = e[1 : k + 1] + v * e[0:k]
    return e


def char_poly_coeffs(alphas, t: float) -> np.ndarray:
    """Coefficients of ``det(lambda I - B)`` from ``lambda^n`` down to ``lambda^0``.

    The ``lambda^{n-k}`` coefficient is
    ``(-1)^k (n-t)^{k-1} (n-k-t) e_k(a_1^2, ..., a_n^2)``.
    """
    a = as_alphas(alphas)
    _check_domain(a, t)
    n = a.size
    e = elementary_symmetric(a * a)
    coeffs = np.empty(n + 1)
    coeffs[0] = 1.0
    for k in range(1, n + 1):
        coeffs[k] = (-1) ** k * (n - t) ** (k - 1) * (n - k - t) * e[k]
    return coeffs


def mapped_pure_state(alphas, t: float) -> np.ndarray:
    """``(I (x) Phi_{t,cyclic}) |phi><phi|`` for the canonical Schmidt vector."""
    a = as_alphas(alphas)
    n = a.size
    psi = schmidt_canonical_vector(a, n)
    return extend_second(GeneralizedMap.cyclic(n, t), pure_to_density(psi))


def predicted_spectrum(alphas, t: float) -> np.ndarray:
    a = as_alphas(alphas)
    n = a.size
    parts = [np.zeros(n * n - 2 * n), t * a * a, hermitian_eigenvalues(b_matrix(a, t))]
    return np.sort(np.concatenate(parts))


def verify_spectrum_structure(alphas, t: float) -> ProofCheckResult:
    a = as_alphas(alphas)
    _check_domain(a, t)
    numeric = hermitian_eigenvalues(mapped_pure_state(a, t))
    dev = float(np.max(np.abs(numeric - predicted_spectrum(a, t))))
    return ProofCheckResult.from_parts(
        "spectrum_structure", {"spectrum": (dev, SPECTRUM_TOL)}, _payload(a, t)
    )


def verify_root_identities(alphas, t: float) -> ProofCheckResult:
    a = as_alphas(alphas)
    _check_domain(a, t)
    n = a.size
    lam = hermitian_eigenvalues(b_matrix(a, t))
    sum_dev = abs(lam.sum() - (n - 1 - t))
    target = -t * (n - t) ** (n - 1) * np.prod(a * a)
    # |d| <= rtol |target| + atol  <=>  |d| / (|target| + atol/rtol) <= rtol
    prod_dev = abs(np.prod(lam) - target) / (abs(target) + PRODUCT_ATOL / PRODUCT_RTOL)
    parts = {"sum": (sum_dev, LINEAR_TOL), "product": (prod_dev, PRODUCT_RTOL)}
    return ProofCheckResult.from_parts("root_identities", parts, _payload(a, t))


def pair_sum(a: np.ndarray) -> float:
    """``sum_{i<j} a_i a_j``."""
    return 0.5 * (a.sum() ** 2 - np.sum(a * a))


def verify_key_inequality(alphas, t: float) -> ProofCheckResult:
    """``sum |lambda_i| + t - (n-1) <= 2 sum_{i<j} a_i a_j`` and the negative-root bound."""
    a = as_alphas(alphas)
    _check_domain(a, t)
    n = a.size
    lam = hermitian_eigenvalues(b_matrix(a, t))
    s = pair_sum(a)
    excess = np.abs(lam).sum() + t - (n - 1) - 2 * s
    root_excess = -s - lam[0]
    parts = {"inequality": (excess, LINEAR_TOL), "negative_root": (root_excess, LINEAR_TOL)}
    return ProofCheckResult.from_parts("key_inequality", parts, _payload(a, t))


def negative_root_count(alphas, t: float, tol: float = LINEAR_TOL) -> int:
    return int(np.sum(hermitian_eigenvalues(b_matrix(alphas, t)) < -tol))


def random_alphas(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random Schmidt vector; about one draw in five has some zero entries."""
    a = np.abs(rng.standard_normal(n))
    if rng.random() < 0.2:
        a[rng.choice(n, size=rng.integers(1, n), replace=False)] = 0.0
    if not a.any():
        a[0] = 1.0
    return np.sort(a / np.linalg.norm(a))[::-1]


def random_t(rng: np.random.Generator) -> float:
    u = rng.random()
    if u < 0.05:
        return 0.0
    if u < 0.10:
        return 1.0
    return float(rng.random())


@dataclass
class SuiteReport:
    worst: dict
    failures: list
    instances: int

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_text(self) -> str:
        lines = [f"instances checked: {self.instances}"]
        for label, res in self.worst.items():
            status = "PASS" if res.passed else "FAIL"
            detail = ", ".join(f"{k}={v[0]:.3e}/{v[1]:.0e}" for k, v in res.parts.items())
            lines.append(f"{status} {label:<20} worst {res.max_deviation:.3e} <= {res.tolerance:.0e}  [{detail}]")
        for res in self.failures[:10]:
            lines.append(f"  counterexample {res.label}: {res.payload}")
        return "\n".join(lines) + "\n"


def _merge(worst: dict, res: ProofCheckResult) -> None:
    best = worst.get(res.label)
    if best is None:
        worst[res.label] = res
        return
    merged = {k: max(best.parts[k], res.parts[k]) for k in res.parts}
    headline = res if res.max_deviation / res.tolerance > best.max_deviation / best.tolerance else best
    worst[res.label] = ProofCheckResult(
        res.label, headline.max_deviation, headline.tolerance,
        best.passed and res.passed, headline.payload, merged,
    )


CHECKS = (verify_spectrum_structure, verify_root_identities, verify_key_inequality)


def run_theorem_suite(ns=(2, 3, 4, 5, 6), trials: int = 1000, seed: int = 0) -> SuiteReport:
    """Run every proof check on ``trials`` random ``(a, t)`` per ``n``.

    Aggregation is a max over instances, so the outcome does not depend on
    the order instances are visited.
    """
    rng = np.random.default_rng(seed)
    worst: dict = {}
    failures = []
    count = 0
    for n in ns:
        for _ in range(trials):
            a, t = random_alphas(rng, n), random_t(rng)
            for check in CHECKS:
                res = check(a, t)
                _merge(worst, res)
                if not res.passed:
                    failures.append(res)
            count += 1
    return SuiteReport(worst, failures, count)


# --- positivity probe --------------------------------------------------------


def _min_eigs(m: GeneralizedMap, psis: np.ndarray) -> np.ndarray:
    projectors = psis[:, :, None] * psis[:, None, :].conj()
    return np.linalg.eigvalsh(_apply_blocks(m, projectors))[:, 0]


def positivity_probe(
    m: GeneralizedMap, trials: int = 1000, seed: int = 0, refine_steps: int = 200
) -> tuple[float, np.ndarray]:
    """Search for a pure state ``psi`` with ``Phi(|psi><psi|)`` not PSD.

    Samples ``trials`` Gaussian vectors, then runs ``refine_steps`` of
    random-direction descent from the worst sample. A negative result
    certifies non-positivity; a nonnegative one proves nothing.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    n = m.n
    psis = rng.standard_normal((trials, n)) + 1j * rng.standard_normal((trials, n))
    psis /= np.linalg.norm(psis, axis=1, keepdims=True)
    vals = _min_eigs(m, psis)
    k = int(np.argmin(vals))
    best, best_val = psis[k], float(vals[k])
    step = 0.3
    for _ in range(refine_steps):
        d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        cand = best + step * d / np.linalg.norm(d)
        cand /= np.linalg.norm(cand)
        val = float(_min_eigs(m, cand[None, :])[0])
        if val < best_val:
            best, best_val = cand, val
        else:
            step = max(step * 0.9, 1e-4)
    return best_val, best


# --- concurrence oracles -----------------------------------------------------


def _batch_pure_concurrence(vecs: np.ndarray, n1: int, n2: int) -> np.ndarray:
    """Concurrence of each (normalized) row of ``vecs``."""
    mats = vecs.reshape(-1, n1, n2)
    rho1 = mats @ mats.conj().transpose(0, 2, 1)
    purity = np.sum(np.abs(rho1) ** 2, axis=(1, 2))
    return np.sqrt(np.clip(2.0 * (1.0 - purity), 0.0, None))


def _ensemble_value(u: np.ndarray, weighted: np.ndarray, n1: int, n2: int) -> float:
    """Average concurrence of the ensemble ``psi_i = sum_k u_ik sqrt(l_k) v_k``."""
    unnorm = u @ weighted
    p = np.sum(np.abs(unnorm) ** 2, axis=1)
    keep = p > 1e-15
    vecs = unnorm[keep] / np.sqrt(p[keep])[:, None]
    return float(np.sum(p[keep] * _batch_pure_concurrence(vecs, n1, n2)))


def _random_unitary(rng: np.random.Generator, r: int) -> np.ndarray:
    z = (rng.standard_normal((r, r)) + 1j * rng.standard_normal((r, r))) / math.sqrt(2)
    q, rr = np.linalg.qr(z)
    return q * (np.diag(rr) / np.abs(np.diag(rr)))


def convex_roof_upper(rho: DensityMatrix, samples: int = 200, seed: int = 0) -> float:
    """Smallest ensemble-average concurrence found over sampled decompositions.

    Every pure-state decomposition of ``rho`` is ``sqrt(L) V^T`` mixed by a
    unitary, so each candidate is a valid decomposition and the result is
    an upper bound on the convex roof. The eigen-ensemble is always tried;
    half the remaining budget goes to Haar-random unitaries and the rest to
    a local random walk around the best one.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    n1, n2 = rho.dims
    lam, vecs = np.linalg.eigh(rho.mat)
    support = lam > 1e-12
    lam, vecs = lam[support], vecs[:, support]
    r = lam.size
    weighted = np.sqrt(lam)[:, None] * vecs.T
    best_u = np.eye(r, dtype=np.complex128)
    best = _ensemble_value(best_u, weighted, n1, n2)
    if r == 1:
        return best
    rng = np.random.default_rng(seed)
    n_random = (samples - 1) // 2
    for _ in range(n_random):
        u = _random_unitary(rng, r)
        val = _ensemble_value(u, weighted, n1, n2)
        if val < best:
            best, best_u = val, u
    eps = 0.3
    for _ in range(samples - 1 - n_random):
        h = rng.standard_normal((r, r)) + 1j * rng.standard_normal((r, r))
        h = 0.5 * (h + h.conj().T)
        w, v = np.linalg.eigh(h)
        step = (v * np.exp(1j * eps * w)) @ v.conj().T
        u = step @ best_u
        val = _ensemble_value(u, weighted, n1, n2)
        if val < best:
            best, best_u = val, u
        else:
            eps = max(eps * 0.97, 1e-3)
    return best


# eigenvalues at or below this are rounding noise of a unit-trace 4x4
WOOTTERS_SUPPORT_TOL = 1e-13
_SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def wootters_concurrence(rho: DensityMatrix) -> float:
    """Exact two-qubit concurrence ``max(0, mu_1 - mu_2 - mu_3 - mu_4)``.

    With ``rho = W W^dagger`` over its support, the ``mu_i`` are the singular
    values of ``W^T (sigma_y x sigma_y) W``. Working on the support keeps
    rounding-level eigenvalues out of the square roots.
    """
    if tuple(rho.dims) != (2, 2):
        raise DimMismatch(f"two-qubit formula needs dims (2, 2), got {tuple(rho.dims)}")
    w, v = np.linalg.eigh(rho.mat)
    keep = w > WOOTTERS_SUPPORT_TOL
    factor = v[:, keep] * np.sqrt(w[keep])
    mu = np.zeros(4)
    sv = np.linalg.svd(factor.T @ _SIGMA_YY @ factor, compute_uv=False)
    mu[: sv.size] = sv
    return float(max(0.0, mu[0] - mu[1:].sum()))
