"""eta(t) = t(t-1) d/dt ln D_n and the sigma-form of Painleve VI it satisfies.

D_n is only available for real alpha, so all t-derivatives are obtained from
real alpha-derivatives of ln D_n through t = exp(-2i alpha),
dt/d alpha = -2i t. The branch sqrt(t) = exp(-i alpha) is used throughout.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numerics import DEFAULT_PRECISION, PrecisionConfig, derivative
from .rh import delta_from_determinant
from .toeplitz import ArcEnsemble, log_det

__all__ = [
    "EtaValue",
    "eta_from_alpha_derivatives",
    "eta_from_determinant",
    "eta0",
    "eta2",
    "eta_expansion",
    "eta_expansion_value",
    "sigma_form_residual",
    "sigma_pvi_residual",
    "delta_from_eta",
    "delta_eta_consistency",
    "eta_order_fit",
]


@dataclass(frozen=True)
class EtaValue:
    """eta and its first two t-derivatives at t = exp(-2i alpha).

    The ``*_error`` fields propagate the Richardson increments of the
    underlying alpha-derivatives (NaN when no extrapolation was done).
    """

    t: complex
    eta: complex
    d_eta_dt: complex
    d2_eta_dt2: complex
    eta_error: float = float("nan")
    d_eta_error: float = float("nan")
    d2_eta_error: float = float("nan")


def eta_from_alpha_derivatives(alpha: float, l1, l2, l3, errors=(math.nan,) * 3) -> EtaValue:
    """Chain rule from d^k/d alpha^k ln D_n (k = 1, 2, 3) to eta, eta', eta''."""
    t = cmath.exp(-2j * float(alpha))
    l1, l2, l3 = complex(l1), complex(l2), complex(l3)
    e1, e2, e3 = (float(e) for e in errors)
    eta = 0.5j * (t - 1) * l1
    d1 = 0.5j * l1 - (t - 1) * l2 / (4 * t)
    d2 = -l2 / (4 * t) - l2 / (4 * t * t) - 1j * (t - 1) * l3 / (8 * t * t)
    err0 = abs(t - 1) * e1 / 2
    err1 = e1 / 2 + abs(t - 1) * e2 / 4
    err2 = e2 / 2 + abs(t - 1) * e3 / 8
    return EtaValue(t, eta, d1, d2, err0, err1, err2)


def _check_stencil(alpha: float, reach: float):
    if not (0 < alpha - reach and alpha + reach < math.pi):
        raise DomainError("finite-difference stencil leaves (0, pi)")


def eta_from_determinant(
    n: int,
    alpha: float,
    h: float = 1e-3,
    levels: int = 1,
    prec: PrecisionConfig = DEFAULT_PRECISION,
) -> EtaValue:
    """eta and its t-derivatives from Richardson differences of ln D_n(alpha).

    ``h`` is the finest step; the third-derivative stencil reaches
    ``2 * h * 2**levels`` on either side of ``alpha``.
    """
    _check_stencil(alpha, 2 * h * 2**levels)

    def f(a):
        return log_det(ArcEnsemble(n, a), prec, certify=False).log_det

    x = prec.real(alpha)
    ests = [derivative(f, x, order=k, h=h, levels=levels, prec=prec) for k in (1, 2, 3)]
    return eta_from_alpha_derivatives(alpha, *(e.value for e in ests), errors=[e.error for e in ests])


def eta0(alpha: float) -> complex:
    """(1 - sqrt t)^2 / 4 with sqrt t = exp(-i alpha)."""
    u = cmath.exp(-1j * alpha)
    return (1 - u) ** 2 / 4


def eta2(alpha: float) -> complex:
    """-(1 + sqrt t)^2 / 16."""
    u = cmath.exp(-1j * alpha)
    return -((1 + u) ** 2) / 16


def eta_expansion(n: int, alpha: float) -> complex:
    """n^2 eta0 + eta2 (the n^1 coefficient vanishes)."""
    return n * n * eta0(alpha) + eta2(alpha)


def eta_expansion_value(n: int, alpha: float) -> EtaValue:
    """The expansion together with its exact t-derivatives, u = sqrt t."""
    u = cmath.exp(-1j * alpha)
    t = u * u
    d_du = -n * n * (1 - u) / 2 - (1 + u) / 8
    d2_du2 = n * n / 2 - 1 / 8
    # d/dt = (1/(2u)) d/du
    d1 = d_du / (2 * u)
    d2 = (d2_du2 - d_du / u) / (4 * u * u)
    return EtaValue(t, eta_expansion(n, alpha), d1, d2)


def sigma_form_residual(n: int, ev: EtaValue) -> float:
    """|LHS - (eta')^4| / (1 + |eta'|^4) for the sigma-form with theta_inf = -theta_0 = n."""
    t, eta, d1, d2 = ev.t, ev.eta, ev.d_eta_dt, ev.d2_eta_dt2
    q = d1 - n * n / 4
    lhs = q * (t * (t - 1) * d2) ** 2 + (2 * q * (t * d1 - eta) - d1 * d1 + n * n / 2 * d1) ** 2
    return abs(lhs - d1**4) / (1 + abs(d1) ** 4)


def sigma_pvi_residual(
    n: int,
    alpha: float,
    h: float = 1e-3,
    levels: int = 1,
    prec: PrecisionConfig = DEFAULT_PRECISION,
) -> float:
    """Normalized sigma-form residual with eta measured from the determinant."""
    return sigma_form_residual(n, eta_from_determinant(n, alpha, h, levels, prec))


def delta_from_eta(n: int, ev: EtaValue) -> complex:
    """((1 - t) eta' + eta) / n^2."""
    return ((1 - ev.t) * ev.d_eta_dt + ev.eta) / (n * n)


def delta_eta_consistency(
    n: int,
    alpha: float,
    h: float = 1e-3,
    levels: int = 1,
    prec: PrecisionConfig = DEFAULT_PRECISION,
):
    """Compare Delta built from eta with Delta from the second alpha-derivative.

    Returns ``(discrepancy, tolerance)`` where the tolerance is the sum of the
    two finite-difference error indicators.
    """
    ev = eta_from_determinant(n, alpha, h, levels, prec)
    from_eta = delta_from_eta(n, ev)
    direct, direct_err = delta_from_determinant(n, alpha, prec=prec)
    eta_err = (abs(1 - ev.t) * ev.d_eta_error + ev.eta_error) / (n * n)
    return abs(from_eta - direct), eta_err + direct_err


def eta_order_fit(alpha: float, ns=(8, 16, 32, 64), h: float = 1e-3):
    """Fit eta(n) - n^2 eta0 = c1 n + c0 + c_{-1}/n over ``ns``.

    Returns ``(c1, c0)``; the expansion predicts c1 = 0 and c0 = eta2(alpha).
    """
    rows, rhs = [], []
    for n in ns:
        ev = eta_from_determinant(n, alpha, h=h, levels=1)
        rows.append([n, 1.0, 1.0 / n])
        rhs.append(ev.eta - n * n * eta0(alpha))
    a = np.array(rows, dtype=complex)
    coef, *_ = np.linalg.lstsq(a, np.array(rhs, dtype=complex), rcond=None)
    return complex(coef[0]), complex(coef[1])
