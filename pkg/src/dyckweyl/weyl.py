"""Closed-form limit Weyl function and related generating functions.

Branch convention: ``sqrt(z**2 - 4)`` is realised as ``sqrt(z - 2) * sqrt(z + 2)``
with principal square roots, which is analytic off ``[-2, 2]`` and behaves
like ``z`` at infinity.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from dyckweyl.combinatorics import pi_closed_form

# identity checks between algebraically equal closed forms
IDENTITY_RTOL = 1e-12
Q_FORMS_RTOL = 1e-13
# truncated series vs closed form
SERIES_ATOL = 1e-8
# |q_limit| at an emitted outlier
ROOT_RESIDUAL_TOL = 1e-12
POLE_TOL = 1e-12


class CutError(ValueError):
    """Point lies on a branch cut where the function is not defined."""


class PoleError(ZeroDivisionError):
    pass


def _as_complex(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite input {z!r}")
    return z


def _check_d(d: float) -> float:
    d = float(d)
    if d == 0 or not math.isfinite(d):
        raise ValueError(f"d must be a finite nonzero real, got {d}")
    return d


def sqrt_branch(z) -> complex:
    z = _as_complex(z)
    if z.imag == 0 and -2.0 <= z.real <= 2.0:
        raise CutError(f"z={z} lies on the cut [-2, 2]")
    if z.imag == 0:
        # signed zeros would pick inconsistent sides of the two factor cuts
        x = z.real
        return complex(math.copysign(math.sqrt((x - 2) * (x + 2)), x), 0.0)
    return cmath.sqrt(z - 2) * cmath.sqrt(z + 2)


def semicircle_stieltjes(z) -> complex:
    """Stieltjes transform ``int dsigma(t) / (t - z)`` of the semicircle law."""
    z = _as_complex(z)
    return (-z + sqrt_branch(z)) / 2


def q_limit(d: float, z) -> complex:
    """``Q(z) = sigma_hat(z) + z/d``, cross-checked against ``((2-d) z + d sqrt(z^2-4)) / (2d)``."""
    d = _check_d(d)
    z = _as_complex(z)
    s = sqrt_branch(z)
    sigma = (-z + s) / 2
    first = sigma + z / d
    second = ((2 - d) * z + d * s) / (2 * d)
    # both forms cancel near a root; compare at the scale of the summands
    scale = abs(sigma) + abs(z / d)
    if abs(first - second) > Q_FORMS_RTOL * scale:
        raise ArithmeticError(f"closed forms disagree at d={d}, z={z}: {first} vs {second}")
    return first


def catalan_gf(z) -> complex:
    """Catalan generating function ``(1 - sqrt(1 - 4z)) / (2z)``.

    Evaluated as ``2 / (1 + sqrt(1 - 4z))`` which is the same function, has no
    cancellation near 0 and gives ``F(0) = 1`` directly.
    """
    z = _as_complex(z)
    if z.imag == 0 and z.real >= 0.25:
        raise CutError(f"z={z} lies on the cut [1/4, inf)")
    return 2 / (1 + cmath.sqrt(1 - 4 * z))


def pi_gf(d: float, z) -> complex:
    """Generating function of ``pi_n(d)``: ``1/(1 - z d F(z)) = 2/(2 - d + d sqrt(1-4z))``."""
    d = _check_d(d)
    z = _as_complex(z)
    f = catalan_gf(z)
    den1 = 1 - z * d * f
    den2 = 2 - d + d * cmath.sqrt(1 - 4 * z)
    if abs(den1) < POLE_TOL or abs(den2) < POLE_TOL:
        raise PoleError(f"pi_gf has a pole near z={z} for d={d}")
    g1, g2 = 1 / den1, 2 / den2
    if abs(g1 - g2) > IDENTITY_RTOL * max(abs(g1), abs(g2)):
        raise ArithmeticError(f"generating-function forms disagree: {g1} vs {g2}")
    return g1


def neg_inv_q_series(d: float, K: int) -> list[float]:
    """Coefficients of ``z**-(2k+1)``, ``k < K``, in the expansion of ``-1/Q`` at infinity.

    Coefficient ``k`` is ``-d * pi_k(d)``; even negative powers vanish and are
    not returned.
    """
    d = _check_d(d)
    if K < 1:
        raise ValueError("K must be at least 1")
    dq = Fraction(d)
    return [float(-dq * pi_closed_form(k)(dq)) for k in range(K)]


def neg_inv_q_coefficients(d: float, n_terms: int) -> list[float]:
    """Like ``neg_inv_q_series`` but with the vanishing even powers included.

    Entry ``j`` multiplies ``z**-(j+1)``; this is the layout ``invert_series``
    expects.
    """
    odd = neg_inv_q_series(d, (n_terms + 1) // 2)
    out = [0.0] * n_terms
    out[::2] = odd
    return out


def series_radius(d: float) -> float:
    """Radius outside which the ``-1/Q`` expansion converges absolutely.

    Never smaller than 2: the cut ``[-2, 2]`` bounds the region for every ``d``.
    """
    d = _check_d(d)
    if abs(d) < 2:
        return 2.0
    return max(2.0, abs(d) / math.sqrt(abs(d - 1)))


def eval_neg_inv_q_series(coeffs: Sequence[float], z) -> complex:
    z = _as_complex(z)
    w = 1 / z
    w2 = w * w
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * w2 + c
    return acc * w


@dataclass(frozen=True)
class OutlierSet:
    kind: str  # "complex-pair" | "none" | "real-pair"
    values: tuple[complex, ...] = ()


def root_residual_bound(d: float, v) -> float:
    """Allowed ``|q_limit(d, v)|`` at a computed root ``v``.

    ``ROOT_RESIDUAL_TOL`` scaled by ``|v Q'(v)|``: near the branch points the
    slope blows up like ``|v - 2|**-0.5`` and one ulp in ``v`` costs more.
    """
    v = _as_complex(v)
    slope = (-1 + v / sqrt_branch(v)) / 2 + 1 / d
    return ROOT_RESIDUAL_TOL * max(1.0, abs(v * slope))


def limit_outliers(d: float) -> OutlierSet:
    """Zeros of ``q_limit(d, .)`` off ``[-2, 2]``; the ``+`` root is listed first."""
    d = _check_d(d)
    if d < 0:
        r = abs(d) / math.sqrt(1 - d)
        out = OutlierSet("complex-pair", (complex(0, r), complex(0, -r)))
    elif d <= 2:
        out = OutlierSet("none")
    else:
        r = d / math.sqrt(d - 1)
        out = OutlierSet("real-pair", (complex(r, 0), complex(-r, 0)))
    for v in out.values:
        res = abs(q_limit(d, v))
        if res > root_residual_bound(d, v):
            raise ArithmeticError(f"outlier {v} has residual {res:.3g}")
    return out


def invert_series(alpha_head: float, gamma: Sequence[float]) -> list[float]:
    """Coefficients ``alpha_{-1}, alpha_0, alpha_1, ...`` of ``Q`` from those of ``-1/Q``.

    ``gamma[j]`` multiplies ``z**-(j+1)``. The returned ``alpha[j]`` multiplies
    ``z**(1-j)``, starts at ``alpha_head`` and solves the Cauchy-product
    conditions ``sum_{i=0}^k alpha_{i-1} gamma_{k-i+1} = 0`` for ``k >= 1``.
    With ``alpha_head = -1/gamma[0]`` the two series multiply to ``-1``, i.e.
    the output is the expansion of ``Q``; entries ``alpha_n`` with ``n >= 1``
    are then minus the moments ``int t**(n-1) dmu``.
    """
    if not gamma:
        raise ValueError("gamma must be non-empty")
    g1 = gamma[0]
    if g1 == 0:
        raise ZeroDivisionError("leading coefficient of gamma is zero")
    alpha = [float(alpha_head)]
    for k in range(1, len(gamma)):
        # alpha_{k-1} g_1 = -sum_{i<k} alpha_{i-1} gamma_{k-i+1}
        s = sum(alpha[i] * gamma[k - i] for i in range(k))
        alpha.append(-s / g1)
    return alpha


def gamma_from_alpha(alpha: Sequence[float], K: int) -> list[float]:
    """Inverse direction: first ``K`` coefficients of ``-1/Q`` given those of ``Q``.

    ``alpha[j]`` multiplies ``z**(1-j)`` (so ``alpha[0] = 1/d``), ``gamma[j]``
    multiplies ``z**-(j+1)`` and the product of the two series is ``-1``.
    """
    if not alpha or alpha[0] == 0:
        raise ZeroDivisionError("leading coefficient of alpha is zero")
    if len(alpha) < K:
        raise ValueError(f"need at least {K} alpha coefficients")
    a0 = alpha[0]
    gamma = [-1.0 / a0]
    for k in range(1, K):
        s = sum(alpha[i] * gamma[k - i] for i in range(1, k + 1))
        gamma.append(-s / a0)
    return gamma


def cauchy_product(alpha: Sequence[float], gamma: Sequence[float]) -> list[float]:
    """Coefficients of ``z**-k``, ``k = 0..len(gamma)-1``, of the product series."""
    n = min(len(alpha), len(gamma))
    return [sum(alpha[i] * gamma[k - i] for i in range(k + 1)) for k in range(n)]
