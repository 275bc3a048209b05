"""Monte Carlo layer for ``X = H W`` with ``H = diag(d, 1, ..., 1)`` and ``W`` Wigner.

Outliers are located through the Schur complement of the ``(0, 0)`` corner:
with ``a = W[0, 0]``, ``b = W[1:, 0]`` and ``C = W[1:, 1:] = U diag(lam) U^T``,

    Q_N(z) = z/d - a + sum_j w_j / (lam_j - z),   w_j = (U^T b)_j ** 2,

and zeros of ``Q_N`` are eigenvalues of ``X``. Only those zeros are computed;
the bulk is represented by the eigenvalues of ``C``.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np
import scipy.linalg

from dyckweyl.weyl import limit_outliers

log = logging.getLogger(__name__)

DISTRIBUTIONS = ("rademacher", "gaussian", "uniform")
POLE_DISTANCE = 1e-13
ROOT_RESIDUAL = 1e-10

T = TypeVar("T")


class NumericError(RuntimeError):
    pass


@dataclass(frozen=True)
class EnsembleConfig:
    N: int
    d: float
    dist: str = "gaussian"
    seed: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.d == 0 or not math.isfinite(self.d):
            raise ValueError(f"d must be a finite nonzero real, got {self.d}")
        if self.dist not in DISTRIBUTIONS:
            raise ValueError(f"dist must be one of {DISTRIBUTIONS}, got {self.dist!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    # SeedSequence hashes (seed, spawn_key) into independent per-trial streams
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def _draw(rng: np.random.Generator, dist: str, size) -> np.ndarray:
    if dist == "gaussian":
        return rng.standard_normal(size)
    if dist == "rademacher":
        return rng.integers(0, 2, size=size).astype(float) * 2.0 - 1.0
    s3 = math.sqrt(3.0)
    return rng.uniform(-s3, s3, size)


@dataclass(frozen=True)
class WignerSample:
    entries: np.ndarray  # (N+1, N+1), already scaled by 1/sqrt(N)

    @property
    def N(self) -> int:
        return self.entries.shape[0] - 1


def sample_wigner(cfg: EnsembleConfig, trial: int = 0) -> WignerSample:
    """Symmetric ``(N+1) x (N+1)`` Wigner matrix, a pure function of ``(cfg.seed, trial)``.

    Diagonal and off-diagonal entries come from the same unit-variance law.
    """
    n1 = cfg.N + 1
    x = _draw(trial_rng(cfg.seed, trial), cfg.dist, (n1, n1))
    upper = np.triu(x)
    w = upper + np.triu(x, 1).T
    w /= math.sqrt(cfg.N)
    w.setflags(write=False)
    return WignerSample(w)


def apply_x(W: WignerSample, d: float, v: np.ndarray) -> np.ndarray:
    out = W.entries @ v
    out[0] *= d
    return out


def moment_e0(W: WignerSample, d: float, n: int) -> float:
    """``e_0^T X^n e_0`` by ``n`` matrix-vector products."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    v = np.zeros(W.N + 1)
    v[0] = 1.0
    for _ in range(n):
        v = apply_x(W, d, v)
    return float(v[0])


def moments_e0(W: WignerSample, d: float, n_max: int) -> np.ndarray:
    """``e_0^T X^n e_0`` for ``n = 0..n_max`` sharing one Krylov sequence."""
    out = np.empty(n_max + 1)
    v = np.zeros(W.N + 1)
    v[0] = 1.0
    out[0] = 1.0
    for n in range(1, n_max + 1):
        v = apply_x(W, d, v)
        out[n] = v[0]
    return out


def map_trials(fn: Callable[[int], T], trials: Iterable[int], workers: int = 1) -> list[T]:
    """Run ``fn`` per trial; results always come back in trial order."""
    trials = list(trials)
    if workers <= 1:
        return [fn(t) for t in trials]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, trials))


@dataclass(frozen=True)
class MomentRow:
    n: int
    mean: float
    stderr: float


def monte_carlo_moments(cfg: EnsembleConfig, n_max: int, trials: int,
                        workers: int = 1) -> list[MomentRow]:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if trials < 2:
        raise ValueError("need at least 2 trials for a standard error")
    samples = map_trials(
        lambda t: moments_e0(sample_wigner(cfg, t), cfg.d, n_max), range(trials), workers)
    table = np.vstack(samples)  # rows in trial order
    mean = table.mean(axis=0)
    stderr = table.std(axis=0, ddof=1) / math.sqrt(trials)
    return [MomentRow(n, float(mean[n]), float(stderr[n])) for n in range(1, n_max + 1)]


@dataclass(frozen=True)
class SecularModel:
    a: float
    lambdas: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if lam.shape != w.shape or lam.ndim != 1:
            raise ValueError("lambdas and weights must be 1-d arrays of equal length")
        if np.any(np.diff(lam) < 0):
            raise ValueError("lambdas must be sorted")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        lam.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "weights", w)

    @property
    def N(self) -> int:
        return len(self.lambdas)


def bulk_eigh(C: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors of a symmetric matrix (LAPACK ``syevd``)."""
    try:
        return scipy.linalg.eigh(C, driver="evd", check_finite=False)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise NumericError(f"symmetric eigendecomposition failed: {exc}") from exc


def build_secular(W: WignerSample, d: float | None = None) -> SecularModel:
    """Eigendecompose the bulk block and project the coupling column onto it.

    ``d`` does not enter the model itself (it only scales row 0 of ``X``) and
    is accepted for symmetry with the other entry points.
    """
    M = W.entries
    a = float(M[0, 0])
    b = M[1:, 0]
    C = M[1:, 1:]
    lam, U = bulk_eigh(C)
    f = U.T @ b
    w = f * f
    bb = float(b @ b)
    if abs(w.sum() - bb) > 1e-10 * max(bb, 1e-300):
        raise NumericError("weights do not sum to |b|^2")
    return SecularModel(a, lam, w)


def eval_weyl_N(m: SecularModel, d: float, z) -> complex:
    """``z/d - a + sum_j w_j / (lam_j - z)``."""
    z = complex(z)
    if m.N and np.min(np.abs(m.lambdas - z)) <= POLE_DISTANCE:
        raise ZeroDivisionError(f"z={z} is within {POLE_DISTANCE} of a pole")
    return z / d - m.a + complex(np.sum(m.weights / (m.lambdas - z)))


def _weyl_and_slope(m: SecularModel, d: float, z: complex) -> tuple[complex, complex]:
    r = 1.0 / (m.lambdas - z)
    wr = m.weights * r
    return z / d - m.a + complex(wr.sum()), 1.0 / d + complex((wr * r).sum())


def measure_moments(m: SecularModel, n: int) -> float:
    """``int t**n dmu_N = sum_j w_j lam_j**n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return float(np.sum(m.weights * m.lambdas ** n))


def secular_alpha(m: SecularModel, d: float, n_terms: int) -> list[float]:
    """Laurent coefficients of ``Q_N`` at infinity: ``[1/d, -a, -m_0, -m_1, ...]``.

    Entry ``j`` multiplies ``z**(1-j)``; ``m_k`` are the moments of ``mu_N``.
    """
    alpha = [1.0 / d, -m.a]
    alpha += [-measure_moments(m, k) for k in range(max(n_terms - 2, 0))]
    return alpha[:n_terms]


def edge_gap(N: int) -> float:
    """Separation from the bulk edge required of a real outlier (edge scale ``N**(-2/3)``)."""
    return N ** (-2.0 / 3.0)


def _bisect(f, lo: float, hi: float, f_lo: float) -> float:
    while hi - lo > 1e-12 * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (f_lo < 0):
            lo, f_lo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _outlier_side(m: SecularModel, d: float, sign: int, gap: float) -> float | None:
    # search on the ray edge + sign*t; S is increasing in z for d > 0
    edge = float(m.lambdas[-1] if sign > 0 else m.lambdas[0]) if m.N else 0.0

    def S(t: float) -> float:
        return eval_weyl_N(m, d, edge + sign * t).real

    near = S(gap)
    # S(edge + t) moves from -inf to +inf (right) or +inf to -inf (left)
    if (near >= 0) if sign > 0 else (near <= 0):
        return None
    t_max = max(10.0, 2.0 * abs(d))
    t = 1.0
    while True:
        far = S(t)
        if (far > 0) if sign > 0 else (far < 0):
            break
        if t >= t_max:
            return None
        t = min(2.0 * t, t_max)
    if t <= gap:
        return None
    return edge + sign * _bisect(S, gap, t, near)


def real_outliers(m: SecularModel, d: float,
                  gap: float | None = None) -> tuple[float | None, float | None]:
    """Real zeros of ``Q_N`` below the bulk and above it, as ``(minus, plus)``.

    A side reports ``None`` when ``Q_N`` has no sign change between
    ``edge +- gap`` and the end of the expanded bracket, i.e. the zero sticks
    to the bulk. ``gap`` defaults to ``edge_gap(N)``.
    """
    if d <= 0:
        raise ValueError("real_outliers requires d > 0")
    if gap is None:
        gap = edge_gap(max(m.N, 1))
    return _outlier_side(m, d, -1, gap), _outlier_side(m, d, +1, gap)


@dataclass(frozen=True)
class ComplexRoot:
    root: complex | None
    iterations: int
    converged: bool
    residual: float


def complex_outlier_search(m: SecularModel, d: float, tol: float = 1e-11,
                           max_iter: int = 200) -> ComplexRoot:
    """Damped Newton for the upper-half-plane zero of ``Q_N``, for ``d < 0``."""
    if d >= 0:
        raise ValueError("complex_outlier requires d < 0")
    z = limit_outliers(d).values[0]
    S, dS = _weyl_and_slope(m, d, z)
    for it in range(1, max_iter + 1):
        if abs(S) <= tol:
            return ComplexRoot(z, it - 1, True, abs(S))
        step = S / dS
        lam = 1.0
        while True:
            cand = z - lam * step
            S_c, dS_c = _weyl_and_slope(m, d, cand)
            if abs(S_c) < abs(S) or lam < 1e-8:
                break
            lam *= 0.5
        z, S, dS = cand, S_c, dS_c
        if z.imag < 1e-10:
            return ComplexRoot(None, it, False, abs(S))
    if abs(S) <= tol:
        return ComplexRoot(z, max_iter, True, abs(S))
    log.warning("complex outlier search did not converge after %d iterations", max_iter)
    return ComplexRoot(None, max_iter, False, abs(S))


def complex_outlier(m: SecularModel, d: float) -> complex | None:
    return complex_outlier_search(m, d).root


def jacobi_resolvent(d: float, z, depth: int) -> complex:
    """``(0, 0)`` resolvent entry of the ``depth x depth`` truncated Jacobi matrix.

    Off-diagonals are ``sqrt(d), 1, 1, ...`` and the diagonal is zero; evaluated
    as the backward continued fraction ``g_k = 1 / (-z - beta_k**2 g_{k+1})``.
    """
    if d <= 0:
        raise ValueError("jacobi_resolvent requires d > 0")
    if depth < 2:
        raise ValueError("depth must be >= 2")
    z = complex(z)
    if z.imag == 0 and -2 <= z.real <= 2:
        raise ValueError(f"z={z} lies on [-2, 2]")
    while depth >= 2:
        try:
            return _continued_fraction(d, z, depth)
        except ZeroDivisionError:
            log.warning("near-zero pivot at depth %d, retrying with depth %d", depth, depth - 1)
            depth -= 1
    raise NumericError(f"continued fraction breaks down at z={z}")


def _continued_fraction(d: float, z: complex, depth: int) -> complex:
    g = -1.0 / z
    for k in range(depth - 1, 0, -1):
        beta2 = d if k == 1 else 1.0
        den = -z - beta2 * g
        if abs(den) < 1e-300:
            raise ZeroDivisionError
        g = 1.0 / den
    return g


def _logdet(M: np.ndarray) -> tuple[float, complex] | None:
    lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    diag = np.diag(lu)
    if np.any(diag == 0):
        return None
    swaps = int(np.sum(piv != np.arange(len(piv))))
    logabs = float(np.sum(np.log(np.abs(diag))))
    phase = np.prod(diag / np.abs(diag)) * (-1) ** swaps
    return logabs, complex(phase)


def permutation_similarity_check(W: WignerSample, d: float, k: int,
                                 zs: Sequence[complex], rtol: float = 1e-6) -> bool:
    """Check ``det(H_k W - z) == det(H U W U - z)`` where ``U`` swaps coordinates 0 and ``k``.

    ``H_k`` carries ``d`` at diagonal position ``k``. Determinants are compared
    through log-magnitude and phase of an LU factorisation.
    """
    N = W.N
    if not 0 <= k <= N:
        raise ValueError(f"k must lie in [0, {N}]")
    M = W.entries
    n1 = N + 1
    hk = np.ones(n1)
    hk[k] = d
    perm = np.arange(n1)
    perm[[0, k]] = perm[[k, 0]]
    UWU = M[np.ix_(perm, perm)]
    h0 = np.ones(n1)
    h0[0] = d
    left = hk[:, None] * M
    right = h0[:, None] * UWU
    eye = np.eye(n1)
    checked = 0
    ok = True
    for z in zs:
        z = complex(z)
        A = _logdet(left - z * eye)
        B = _logdet(right - z * eye)
        if A is None or B is None:
            log.warning("singular factorisation at z=%s, point skipped", z)
            continue
        checked += 1
        same_mag = abs(A[0] - B[0]) <= rtol * max(1.0, abs(A[0]))
        same_phase = abs(A[1] - B[1]) <= rtol
        ok = ok and same_mag and same_phase
    if checked == 0:
        raise NumericError("every sample point gave a singular factorisation")
    return ok
