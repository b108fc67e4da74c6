"""Real Lambert W on the principal (0) and lower (-1) branches.

``w = lambert_w(z, branch)`` solves ``w * exp(w) = z``. Seeds come from the
Taylor series about 0, the series about the branch point ``-1/e`` and the
logarithmic asymptotics; Halley's iteration then polishes the seed until the
round-trip residual is at rounding level.
"""

import math
from fractions import Fraction
from functools import lru_cache

from .errors import LambertWDomainError

__all__ = [
    "BRANCH_POINT",
    "lambert_w",
    "principal_series",
    "principal_series_coefficient",
    "branch_point_series",
    "branch_point_coefficients",
]

#: ``-1/e``, where the two real branches meet.
BRANCH_POINT = -math.exp(-1.0)

_BRANCH_TOL = 1e-12
_MAX_HALLEY = 64


def principal_series_coefficient(i):
    """Exact coefficient of ``z**i`` in the Taylor series of ``W_0`` at 0."""
    if i < 1:
        raise ValueError("series starts at i = 1")
    return Fraction((-i) ** (i - 1), math.factorial(i))


def principal_series(z, terms=5):
    """Truncated series ``sum_{i=1..terms} (-i)**(i-1) / i! * z**i``.

    Converges for ``|z| < 1/e``.
    """
    return sum(float(principal_series_coefficient(i)) * z**i for i in range(1, terms + 1))


@lru_cache(maxsize=None)
def branch_point_coefficients(terms=10):
    """Coefficients ``mu_0..mu_{terms-1}`` of the expansion about ``-1/e``.

    Generated by the standard recurrence, as exact fractions. With
    ``x = +-sqrt(2 (e z + 1))`` the series ``sum mu_k x**k`` gives ``W_0``
    (positive root) or ``W_{-1}`` (negative root).
    """
    mu = [Fraction(-1), Fraction(1)]
    alpha = [Fraction(2), Fraction(-1)]
    for k in range(2, terms):
        alpha.append(sum((mu[j] * mu[k + 1 - j] for j in range(2, k)), Fraction(0)))
        mu.append(
            Fraction(k - 1, k + 1) * (mu[k - 2] / 2 + alpha[k - 2] / 4)
            - alpha[k] / 2
            - mu[k - 1] / (k + 1)
        )
    return tuple(mu[:terms])


def branch_point_series(z, branch=0, terms=6):
    """Truncated branch-point series evaluated at ``z`` for the given branch."""
    _check_branch(branch)
    x = math.sqrt(max(2.0 * (math.e * z + 1.0), 0.0))
    if branch == -1:
        x = -x
    return sum(float(c) * x**k for k, c in enumerate(branch_point_coefficients(terms)))


def _check_branch(branch):
    if branch not in (0, -1):
        raise ValueError(f"branch must be 0 or -1, got {branch!r}")


def _seed(z, branch):
    if branch == 0:
        if z < -0.25:
            return branch_point_series(z, 0, 6)
        if abs(z) <= 0.25:
            return principal_series(z, 4)
        if z < 3.0:
            return math.log1p(z) * 0.8
        l1 = math.log(z)
        l2 = math.log(l1)
        return l1 - l2 + l2 / l1
    if z < -0.25:
        return branch_point_series(z, -1, 6)
    l1 = math.log(-z)
    l2 = math.log(-l1)
    return l1 - l2 + l2 / l1


def _halley(w, z, branch):
    for _ in range(_MAX_HALLEY):
        if w == -1.0:
            # derivative vanishes here; step off towards the requested branch
            w = -1.0 + (1e-8 if branch == 0 else -1e-8)
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w_new = w - dw
        if branch == 0 and w_new < -1.0:
            w_new = -1.0 + 0.5 * (w + 1.0)
        elif branch == -1 and w_new > -1.0:
            w_new = -1.0 + 0.5 * (w + 1.0)
        if abs(w_new - w) <= 4.0 * math.ulp(max(abs(w_new), 1.0)):
            return w_new
        w = w_new
    return w


def lambert_w(z, branch=0):
    """Real value of the Lambert W function on branch ``0`` or ``-1``.

    Parameters
    ----------
    z : float
        Argument. The principal branch accepts ``z >= -1/e``; the lower branch
        accepts ``-1/e <= z < 0``. Within ``1e-12`` of ``-1/e`` both branches
        return exactly ``-1``.
    branch : {0, -1}

    Returns
    -------
    float
        ``w`` with ``w * exp(w) == z`` to rounding; ``w >= -1`` on branch 0 and
        ``w <= -1`` on branch -1.

    Raises
    ------
    LambertWDomainError
        If ``z`` lies outside the branch domain.
    """
    _check_branch(branch)
    z = float(z)
    if math.isnan(z):
        raise LambertWDomainError("z is NaN")
    if z < BRANCH_POINT - _BRANCH_TOL:
        raise LambertWDomainError(f"z={z!r} is below the branch point -1/e")
    if abs(z - BRANCH_POINT) <= _BRANCH_TOL:
        return -1.0
    if branch == 0:
        if z == 0.0:
            return 0.0
        if math.isinf(z):
            return math.inf
        return _halley(_seed(z, 0), z, 0)
    if z >= 0.0:
        raise LambertWDomainError(f"branch -1 requires z < 0, got z={z!r}")
    return _halley(_seed(z, -1), z, -1)
