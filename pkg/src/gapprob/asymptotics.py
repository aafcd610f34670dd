"""Large-gap expansions and the extraction of the constant c0 from data.

Both gap probabilities share the constant term c0:

    ln D_n(alpha) ~ n^2 ln cos(alpha/2) - (1/4) ln(n sin(alpha/2)) + c0,
    ln P_s        ~ -s^2/2 - (1/4) ln s + c0.

c0 is recovered from determinant data with one Richardson step in 1/rho
(respectively 1/s) and compared against the value from the constants module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import widom_dyson_c0
from .errors import DomainError, PrecisionFault
from .fredholm import GapSpec, NystromConfig, log_det_gap
from .numerics import DEFAULT_PRECISION, PrecisionConfig, derivative, gauss_legendre
from .rh import delta_from_determinant
from .toeplitz import ArcEnsemble, log_det

__all__ = [
    "Expansion",
    "ConstantFit",
    "widom_expansion",
    "dyson_expansion",
    "richardson_constant",
    "extract_c0_widom",
    "extract_c0_dyson",
    "first_derivative_law_residual",
    "DintegResult",
    "dinteg_sides",
    "dinteg_residual",
]


@dataclass(frozen=True)
class Expansion:
    terms: tuple
    remainder_order: str

    @property
    def value(self) -> float:
        return math.fsum(v for _, v in self.terms)


@dataclass(frozen=True)
class ConstantFit:
    """Extrapolated constant with the raw (scale, residual) samples behind it.

    ``extrapolants[i]`` combines samples i and i+1; ``estimate`` is the last
    one and ``spread`` the distance between the last two (or between the
    estimate and the last raw residual when only one extrapolant exists).
    """

    estimate: float
    samples: tuple
    extrapolation_order: int
    extrapolants: tuple
    spread: float


def widom_expansion(n: int, alpha: float, c0: float | None = None) -> Expansion:
    if not (0 < alpha < math.pi):
        raise DomainError(f"alpha must lie in (0, pi), got {alpha!r}")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    c0 = widom_dyson_c0() if c0 is None else c0
    return Expansion(
        (
            ("n^2 ln cos(alpha/2)", n * n * math.log(math.cos(alpha / 2))),
            ("-(1/4) ln(n sin(alpha/2))", -0.25 * math.log(n * math.sin(alpha / 2))),
            ("c0", float(c0)),
        ),
        "1/(n sin(alpha/2))",
    )


def dyson_expansion(s: float, c0: float | None = None) -> Expansion:
    if not s > 0:
        raise DomainError(f"s must be positive, got {s!r}")
    c0 = widom_dyson_c0() if c0 is None else c0
    return Expansion(
        (("-s^2/2", -s * s / 2), ("-(1/4) ln s", -0.25 * math.log(s)), ("c0", float(c0))),
        "1/s",
    )


def richardson_constant(samples) -> ConstantFit:
    """Eliminate an a/scale term from residuals r(scale) = c + a/scale + ...

    ``samples`` is an iterable of (scale, residual); order does not matter.
    Raises DomainError unless the scales spread by at least a factor of 2.
    """
    pts = sorted((float(x), float(r)) for x, r in samples)
    if len(pts) < 2:
        raise DomainError("at least two samples are needed to extrapolate")
    if pts[-1][0] < 2 * pts[0][0]:
        raise DomainError("sample scales must spread by at least a factor of 2")
    ext = tuple(
        (x2 * r2 - x1 * r1) / (x2 - x1) for (x1, r1), (x2, r2) in zip(pts[:-1], pts[1:])
    )
    spread = abs(ext[-1] - ext[-2]) if len(ext) > 1 else abs(ext[-1] - pts[-1][1])
    return ConstantFit(ext[-1], tuple(pts), 1, ext, spread)


def extract_c0_widom(pairs, prec: PrecisionConfig = DEFAULT_PRECISION) -> ConstantFit:
    """c0 from ln D_n(alpha) - n^2 ln cos(alpha/2) + (1/4) ln rho, extrapolated in 1/rho."""
    samples = []
    for n, alpha in pairs:
        ens = ArcEnsemble(n, alpha)
        res = log_det(ens, prec)
        if not res.precision_ok:
            raise PrecisionFault(f"log_det at n={n}, alpha={alpha} is not precision_ok")
        resid = float(res.log_det) - n * n * math.log(math.cos(alpha / 2)) + 0.25 * math.log(ens.rho)
        samples.append((ens.rho, resid))
    return richardson_constant(samples)


def extract_c0_dyson(s_values, m: NystromConfig | None = None) -> ConstantFit:
    """c0 from ln P_s + s^2/2 + (1/4) ln s, extrapolated in 1/s."""
    samples = []
    for s in s_values:
        spec = GapSpec(float(s), 1.0)
        samples.append((s, log_det_gap(spec, m) + s * s / 2 + 0.25 * math.log(s)))
    return richardson_constant(samples)


def _log_det_fn(n: int, prec: PrecisionConfig):
    def f(a):
        return log_det(ArcEnsemble(n, a), prec, certify=False).log_det

    return f


def first_derivative_law_residual(
    n: int,
    alpha: float,
    h: float = 1e-3,
    levels: int = 2,
    prec: PrecisionConfig = DEFAULT_PRECISION,
) -> float:
    """|d/d alpha ln D_n + (n^2/2) tan(alpha/2) + (1/8) cot(alpha/2)|."""
    reach = h * 2**levels
    if not (0 < alpha - reach and alpha + reach < math.pi):
        raise DomainError("finite-difference stencil leaves (0, pi)")
    d = derivative(_log_det_fn(n, prec), prec.real(alpha), order=1, h=h, levels=levels, prec=prec)
    half = alpha / 2
    return abs(float(d.value) + n * n / 2 * math.tan(half) + 1 / (8 * math.tan(half)))


@dataclass(frozen=True)
class DintegResult:
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def dinteg_sides(
    n: int,
    alpha: float,
    alpha0: float,
    grid: int = 32,
    h: float = 2e-3,
    levels: int = 2,
    prec: PrecisionConfig = DEFAULT_PRECISION,
) -> DintegResult:
    """Both sides of the twice-integrated differential identity.

    lhs = (alpha0 - alpha) (ln D_n)'(alpha0) - ln D_n(alpha0) + ln D_n(alpha)
    rhs = -n^2 int_alpha^alpha0 d theta int_theta^alpha0 Delta(phi)/sin^2(phi) d phi

    Delta comes from determinant finite differences; the double integral is
    a nested Gauss-Legendre rule of order ``grid`` in each variable.
    """
    if not (0 < alpha <= alpha0 < math.pi):
        raise DomainError("need 0 < alpha <= alpha0 < pi")
    if grid < 1:
        raise DomainError("grid must be positive")
    f = _log_det_fn(n, prec)
    if alpha == alpha0:
        return DintegResult(0.0, 0.0)
    d1 = derivative(f, prec.real(alpha0), order=1, h=h, levels=levels, prec=prec).value
    lhs = (alpha0 - alpha) * float(d1) - float(f(alpha0)) + float(f(alpha))
    rule = gauss_legendre(grid)
    outer_x, outer_w = rule.mapped(alpha, alpha0)
    total = 0.0
    for theta, wt in zip(outer_x, outer_w):
        inner_x, inner_w = rule.mapped(theta, alpha0)
        inner = math.fsum(
            w * delta_from_determinant(n, phi, h=h, levels=levels, prec=prec)[0] / math.sin(phi) ** 2
            for phi, w in zip(inner_x, inner_w)
        )
        total += wt * inner
    return DintegResult(lhs, -n * n * total)


def dinteg_residual(n: int, alpha: float, alpha0: float, grid: int = 32, **kwargs) -> float:
    """|lhs - rhs| of :func:`dinteg_sides`."""
    return dinteg_sides(n, alpha, alpha0, grid, **kwargs).residual
