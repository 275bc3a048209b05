"""Generalized Catalan polynomials, the limit Weyl function of ``H W`` and
Monte Carlo checks of its finite-N behaviour."""

from dyckweyl.combinatorics import (
    catalan,
    pi_closed_form,
    pi_convolution,
    pi_enumerate,
    pi_linear,
)
from dyckweyl.polynomial import IntPolynomial
from dyckweyl.randmat import EnsembleConfig, SecularModel
from dyckweyl.weyl import limit_outliers, q_limit

__all__ = [
    "EnsembleConfig",
    "IntPolynomial",
    "SecularModel",
    "catalan",
    "limit_outliers",
    "pi_closed_form",
    "pi_convolution",
    "pi_enumerate",
    "pi_linear",
    "q_limit",
]
