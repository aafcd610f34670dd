"""Closed-form objects of the steepest-descent analysis of the arc RH problem.

Branch conventions (fixed once, used everywhere):

* ``sqrt(lambda^2 - 1) = sqrt(lambda - 1) * sqrt(lambda + 1)`` with principal
  roots, so it behaves like ``lambda`` at infinity, is positive for
  ``lambda > 1`` and has its cut on [-1, 1]. On the cut it equals
  ``+i sqrt(1 - x^2)`` from above (``PLUS``) and ``-i sqrt(1 - x^2)`` from below.
* ``beta(lambda) = ((lambda - 1)/(lambda + 1))^{1/4}`` with the principal
  fourth root; ``beta(inf) = 1``.
* ``omega = (1/2) ln f = i arctan(sin(alpha/2) sqrt(lambda^2 - 1))``, which is
  the principal logarithm near ``lambda = 1``; ``sqrt(zeta) = -i n omega``.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings

import mpmath as mp
import numpy as np

from .errors import BranchAmbiguity, DomainError, PoleInput, SectorViolation
from .numerics import DEFAULT_PRECISION, IDENTITY2, PrecisionConfig, derivative, inv2, mat2
from .toeplitz import ArcEnsemble, log_det

__all__ = [
    "BoundarySide",
    "HankelAccuracyWarning",
    "map_z_lambda",
    "map_lambda_z",
    "sqrt_lambda2_minus1",
    "g_eval",
    "phi_z",
    "f_eval",
    "omega",
    "omega_squared_series",
    "beta_fn",
    "model_solution",
    "correction",
    "bessel_series",
    "hankel_asymptotic",
    "hankel",
    "hankel_h0",
    "hankel_h0_prime",
    "lambda_matrices",
    "parametrix",
    "parametrix_mismatch",
    "delta_asymptotic",
    "delta_from_determinant",
    "theta_from_determinant",
]

HANKEL_CROSSOVER = 20.0
HANKEL_BAND = 1.0
HANKEL_AGREEMENT = 1e-9
SECTOR = 3 * math.pi / 4


class BoundarySide(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"
    OFF_CUT = "off-cut"


class HankelAccuracyWarning(UserWarning):
    """Series and asymptotic Hankel evaluations disagree near the crossover."""


def _check_alpha(alpha):
    if not (0 < alpha < math.pi):
        raise DomainError(f"alpha must lie in (0, pi), got {alpha!r}")


def _on_cut(lam: complex) -> bool:
    return lam.imag == 0 and -1 <= lam.real <= 1


# -- conformal map -------------------------------------------------------------


def map_z_lambda(z: complex, alpha: float) -> complex:
    """lambda = -i cot(alpha/2) (z - 1)/(z + 1); sends the arc Gamma_alpha onto (-1, 1)."""
    _check_alpha(alpha)
    z = complex(z)
    if z == -1:
        raise PoleInput("z = -1 is the pole of the z -> lambda map")
    return -1j / math.tan(alpha / 2) * (z - 1) / (z + 1)


def map_lambda_z(lam: complex, alpha: float) -> complex:
    """Inverse map z = (1 + i lambda tan(alpha/2)) / (1 - i lambda tan(alpha/2))."""
    _check_alpha(alpha)
    lam = complex(lam)
    tn = math.tan(alpha / 2)
    den = 1 - 1j * lam * tn
    if den == 0:
        raise PoleInput("lambda = -i cot(alpha/2) is the pole of the lambda -> z map")
    return (1 + 1j * lam * tn) / den


# -- scalar functions ----------------------------------------------------------


def sqrt_lambda2_minus1(lam: complex, side: BoundarySide = BoundarySide.OFF_CUT) -> complex:
    """sqrt(lambda^2 - 1) ~ lambda at infinity, with boundary values on (-1, 1)."""
    lam = complex(lam)
    if _on_cut(lam):
        if side is BoundarySide.OFF_CUT:
            raise BranchAmbiguity(f"lambda = {lam.real} lies on the cut [-1, 1]; give a boundary side")
        root = math.sqrt(max(0.0, 1 - lam.real**2))
        return 1j * root if side is BoundarySide.PLUS else -1j * root
    return cmath.sqrt(lam - 1) * cmath.sqrt(lam + 1)


def g_eval(lam: complex, alpha: float, side: BoundarySide = BoundarySide.OFF_CUT) -> complex:
    """g(lambda) = (1 + i sqrt(lambda^2-1) sin(alpha/2)) / (1 + i lambda tan(alpha/2)).

    At lambda = i cot(alpha/2) both numerator and denominator vanish; there the
    equivalent form kappa (1 - i lambda tan) / (1 - i sqrt(lambda^2-1) sin) is
    used (the two agree because g_+ g_- style identities hold off the cut too).
    """
    _check_alpha(alpha)
    lam = complex(lam)
    sn, tn = math.sin(alpha / 2), math.tan(alpha / 2)
    kappa = math.cos(alpha / 2) ** 2
    w = sqrt_lambda2_minus1(lam, side)
    den1 = 1 + 1j * lam * tn
    den2 = 1 - 1j * w * sn
    if abs(den1) >= abs(den2):
        return (1 + 1j * w * sn) / den1
    return kappa * (1 - 1j * lam * tn) / den2


def phi_z(z: complex, alpha: float) -> complex:
    """(z + 1 + sqrt((z - e^{i alpha})(z - e^{-i alpha}))) / (2z), the g-function in z.

    The root is the branch ~ z at infinity, cut along the arc through -1
    joining e^{i alpha} and e^{-i alpha}.
    """
    _check_alpha(alpha)
    z = complex(z)
    if z == 0:
        raise PoleInput("phi(z) has a pole at z = 0")
    a = cmath.exp(1j * alpha)
    ac = a.conjugate()
    if z == ac:
        root = 0j
    else:
        # (z - a)/(z - a_bar) * e^{-i alpha} is negative real exactly on the arc through -1
        root = (z - ac) * cmath.exp(0.5j * alpha) * cmath.sqrt((z - a) / (z - ac) * cmath.exp(-1j * alpha))
    return (z + 1 + root) / (2 * z)


def f_eval(lam: complex, alpha: float, side: BoundarySide = BoundarySide.OFF_CUT) -> complex:
    """f = (1 + i sqrt(lambda^2-1) sin(alpha/2)) / (1 - i sqrt(lambda^2-1) sin(alpha/2))."""
    if not (0 < alpha <= math.pi):
        raise DomainError(f"alpha must lie in (0, pi], got {alpha!r}")
    sn = math.sin(alpha / 2)
    lam = complex(lam)
    if _on_cut(lam) and side is not BoundarySide.OFF_CUT:
        r = math.sqrt(max(0.0, 1 - lam.real**2)) * sn
        fp = (1 - r) / (1 + r)
        return complex(fp if side is BoundarySide.PLUS else 1 / fp)
    w = sqrt_lambda2_minus1(lam, side)
    den = 1 - 1j * w * sn
    if den == 0:
        raise PoleInput("f has a pole at this lambda")
    return (1 + 1j * w * sn) / den


def omega(lam: complex, alpha: float, side: BoundarySide = BoundarySide.OFF_CUT) -> complex:
    """omega = (1/2) ln f = i arctan(sin(alpha/2) sqrt(lambda^2 - 1))."""
    if not (0 < alpha <= math.pi):
        raise DomainError(f"alpha must lie in (0, pi], got {alpha!r}")
    w = sqrt_lambda2_minus1(lam, side)
    return 1j * cmath.atan(math.sin(alpha / 2) * w)


def omega_squared_series(u: complex, alpha: float) -> complex:
    """Two-term expansion of omega^2 about lambda = 1 in u = lambda - 1."""
    s2 = math.sin(alpha / 2) ** 2
    return -2 * u * s2 * (1 + u / 2 - 4 * u * s2 / 3)


def beta_fn(lam: complex, side: BoundarySide = BoundarySide.OFF_CUT) -> complex:
    """beta = ((lambda - 1)/(lambda + 1))^{1/4}, beta(inf) = 1, cut on [-1, 1]."""
    lam = complex(lam)
    if lam == -1:
        raise PoleInput("beta has a pole at lambda = -1")
    if _on_cut(lam):
        if side is BoundarySide.OFF_CUT:
            raise BranchAmbiguity(f"lambda = {lam.real} lies on the cut [-1, 1]; give a boundary side")
        r = abs((lam.real - 1) / (lam.real + 1)) ** 0.25
        phase = math.pi / 4 if side is BoundarySide.PLUS else -math.pi / 4
        return r * cmath.exp(1j * phase)
    return ((lam - 1) / (lam + 1)) ** 0.25


def _n_from_beta(b: complex) -> np.ndarray:
    p = (b + 1 / b) / 2
    m = (b - 1 / b) / 2j
    return mat2(p, m, -m, p)


def model_solution(lam: complex, side: BoundarySide = BoundarySide.OFF_CUT) -> np.ndarray:
    """The outer model solution N(lambda) built from beta; det N = 1, N(inf) = I."""
    return _n_from_beta(beta_fn(lam, side))


def correction(j: int, lam: complex, n: int, alpha: float, delta: float = 0.2) -> np.ndarray:
    """First (j=1) or second (j=2) correction R_j(lambda) outside the endpoint disks."""
    _check_alpha(alpha)
    if j not in (1, 2):
        raise DomainError("correction index must be 1 or 2")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    lam = complex(lam)
    if abs(lam - 1) <= delta or abs(lam + 1) <= delta:
        raise DomainError(f"lambda = {lam} lies inside an endpoint disk of radius {delta}")
    rho = n * math.sin(alpha / 2)
    a, b = 1 / (1 - lam), 1 / (1 + lam)
    if j == 1:
        return (a * mat2(-1, 1j, 1j, 1) + b * mat2(1, 1j, 1j, -1)) / (16j * rho)
    return (a * mat2(1, 8j, -8j, 1) + b * mat2(1, -8j, 8j, 1)) / (2**8 * rho**2)


# -- Hankel functions of orders 0 and 1 -----------------------------------------


def _series_dps(z: complex) -> int:
    # terms grow to ~e^{|z|} and H^(1)/H^(2) cancel down to ~e^{-|Im z|}
    return 20 + int((abs(z) + abs(z.imag)) / math.log(10)) + 5


def bessel_series(nu: int, z: complex):
    """(J_nu(z), Y_nu(z)) for nu in {0, 1} from their ascending series, in mpmath.

    Y uses the principal branch of ln(z/2). Returns mpmath complex numbers at
    a working precision that absorbs the cancellation for moderate |z|.
    """
    if nu not in (0, 1):
        raise DomainError("only orders 0 and 1 are implemented")
    dps = _series_dps(complex(z))
    with mp.workdps(dps):
        z = mp.mpc(z)
        q = -(z * z) / 4
        tol = mp.mpf(10) ** (-dps)
        j_sum = mp.mpc(0)
        y_sum = mp.mpc(0)
        term = mp.mpc(1) if nu == 0 else z / 2
        harmonic = mp.mpf(0)
        k = 0
        while True:
            j_sum += term
            if nu == 0:
                # Y0: sum_{k>=1} (-1)^{k+1} H_k (z^2/4)^k / (k!)^2 = -sum H_k q^k/(k!)^2
                y_sum -= harmonic * term
            else:
                # Y1: -(1/pi) sum (psi(k+1) + psi(k+2)) (-1)^k (z/2)^{2k+1} / (k!(k+1)!)
                y_sum += (2 * harmonic + mp.mpf(1) / (k + 1) - 2 * mp.euler) * term
            k += 1
            harmonic += mp.mpf(1) / k
            term = term * q / (k * (k + nu))
            if abs(term) * (1 + harmonic) < tol * max(abs(j_sum), 1) and k > 2:
                break
        log_half = mp.log(z / 2)
        if nu == 0:
            y = 2 / mp.pi * ((log_half + mp.euler) * j_sum + y_sum)
        else:
            y = 2 / mp.pi * log_half * j_sum - 2 / (mp.pi * z) - y_sum / mp.pi
        return j_sum, y


def hankel_asymptotic(kind: int, nu: int, z: complex) -> complex:
    """Large-argument expansion of H_nu^(kind)(z), truncated at its smallest term."""
    z = complex(z)
    sign = 1 if kind == 1 else -1
    mu = 4 * nu * nu
    total = 0j
    term = 1 + 0j
    best = abs(term)
    k = 0
    while True:
        total += term
        k += 1
        nxt = term * (mu - (2 * k - 1) ** 2) / (k * 8 * z) * (1j * sign)
        if abs(nxt) >= best or abs(nxt) < 1e-17 * abs(total):
            if abs(nxt) < best:
                total += nxt
            break
        best = abs(nxt)
        term = nxt
    phase = cmath.exp(1j * sign * (z - nu * math.pi / 2 - math.pi / 4))
    return cmath.sqrt(2 / (math.pi * z)) * phase * total


def _hankel_series(kind: int, nu: int, z: complex) -> complex:
    j, y = bessel_series(nu, z)
    with mp.workdps(_series_dps(z)):
        h = j + 1j * y if kind == 1 else j - 1j * y
        return complex(h)


def hankel(kind: int, nu: int, z: complex) -> complex:
    """H_nu^(kind)(z) for nu in {0, 1}: series below |z| = 20, asymptotic above.

    Inside the band 19 <= |z| <= 21 both methods run; a relative disagreement
    above 1e-9 raises :class:`HankelAccuracyWarning`.
    """
    if kind not in (1, 2):
        raise DomainError("Hankel kind must be 1 or 2")
    z = complex(z)
    if z == 0:
        raise PoleInput("Hankel functions are singular at z = 0")
    if abs(cmath.phase(z)) > SECTOR + 1e-12:
        raise SectorViolation(f"arg z = {cmath.phase(z):.4f} outside [-3pi/4, 3pi/4]")
    r = abs(z)
    if r <= HANKEL_CROSSOVER:
        value = _hankel_series(kind, nu, z)
        other = hankel_asymptotic(kind, nu, z) if r >= HANKEL_CROSSOVER - HANKEL_BAND else None
    else:
        value = hankel_asymptotic(kind, nu, z)
        other = _hankel_series(kind, nu, z) if r <= HANKEL_CROSSOVER + HANKEL_BAND else None
    if other is not None and abs(value - other) > HANKEL_AGREEMENT * abs(value):
        warnings.warn(
            f"Hankel series/asymptotic mismatch {abs(value - other) / abs(value):.2e} at z={z}",
            HankelAccuracyWarning,
            stacklevel=2,
        )
    return value


def hankel_h0(kind: int, z: complex) -> complex:
    """H_0^(1) or H_0^(2)."""
    return hankel(kind, 0, z)


def hankel_h0_prime(kind: int, z: complex) -> complex:
    """d/dz H_0^(kind)(z) = -H_1^(kind)(z)."""
    return -hankel(kind, 1, z)


# -- endpoint parametrix ---------------------------------------------------------


def lambda_matrices(lam: complex, n: int, alpha: float):
    """(Lambda_1, Lambda_2): the 1/sqrt(zeta) and 1/zeta terms of P N^{-1} near lambda = 1."""
    b2 = beta_fn(lam) ** 2
    sz = -1j * n * omega(lam, alpha)
    zeta = sz * sz
    p, m = 3 * b2 - 1 / b2, 3 * b2 + 1 / b2
    lam1 = 1j / (16 * sz) * mat2(p, 1j * m, 1j * m, -p)
    lam2 = 3 / (2**7 * zeta) * mat2(1, -4j, 4j, 1)
    return lam1, lam2


def parametrix(lam: complex, n: int, alpha: float) -> np.ndarray:
    """Hankel-function parametrix P(lambda) in the disk around lambda = 1 (off the cut)."""
    _check_alpha(alpha)
    lam = complex(lam)
    if lam.imag == 0 and lam.real <= 1:
        raise BranchAmbiguity("the parametrix is evaluated off the cut (1 - delta, 1]")
    om = omega(lam, alpha)
    sz = -1j * n * om
    if abs(cmath.phase(sz)) > SECTOR + 1e-12:
        raise SectorViolation(f"arg sqrt(zeta) = {cmath.phase(sz):.4f} outside [-3pi/4, 3pi/4]")
    z4 = cmath.sqrt(sz)
    hat = mat2(
        hankel_h0(1, sz),
        hankel_h0(2, sz),
        sz * hankel_h0_prime(1, sz),
        sz * hankel_h0_prime(2, sz),
    )
    e = cmath.exp(1j * math.pi / 4)
    left = model_solution(lam) @ np.diag([e, 1 / e]) @ (math.sqrt(math.pi) / 2**1.5 * mat2(1, -1j, 1, 1j))
    left = left @ np.diag([z4, 1 / z4])
    return left @ hat @ np.diag([cmath.exp(-n * om), cmath.exp(n * om)])


def parametrix_mismatch(theta: float, n: int, alpha: float, delta: float = 0.2) -> np.ndarray:
    """P N^{-1} - (I + Lambda_1 + Lambda_2) at lambda = 1 + delta e^{i theta}.

    The remainder is O(|zeta|^{-3/2}) = O(rho^{-3}).
    """
    if not (0 < delta < 0.25):
        raise DomainError("disk radius delta must lie in (0, 1/4)")
    lam = 1 + delta * cmath.exp(1j * theta)
    pn = parametrix(lam, n, alpha) @ inv2(model_solution(lam))
    l1, l2 = lambda_matrices(lam, n, alpha)
    return pn - (IDENTITY2 + l1 + l2)


# -- Delta and Theta ---------------------------------------------------------------


def delta_asymptotic(n: int, alpha: float) -> float:
    """sin^2(alpha/2) - cos^2(alpha/2) / (4 n^2)."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if not (0 < alpha <= math.pi):
        raise DomainError(f"alpha must lie in (0, pi], got {alpha!r}")
    return math.sin(alpha / 2) ** 2 - math.cos(alpha / 2) ** 2 / (4 * n * n)


def _log_det_fn(n: int, prec: PrecisionConfig):
    def f(a):
        return log_det(ArcEnsemble(n, a), prec, certify=False).log_det

    return f


def delta_from_determinant(
    n: int,
    alpha: float,
    h: float = 2e-3,
    levels: int = 1,
    prec: PrecisionConfig = DEFAULT_PRECISION,
):
    """Delta = -(sin^2 alpha / n^2) d^2/d alpha^2 ln D_n(alpha), by Richardson differences.

    Returns ``(value, error)`` where ``error`` is the scaled Richardson increment.
    """
    reach = h * 2**levels
    if not (0 < alpha - reach and alpha + reach < math.pi):
        raise DomainError("finite-difference stencil leaves (0, pi)")
    est = derivative(_log_det_fn(n, prec), prec.real(alpha), order=2, h=h, levels=levels, prec=prec)
    scale = math.sin(alpha) ** 2 / n**2
    return -scale * float(est.value), scale * float(est.error)


def theta_from_determinant(n: int, alpha: float, prec: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """Theta = (D_{n+1}/D_n) / cos^{2n}(alpha/2)."""
    res = log_det(ArcEnsemble(n + 1, alpha), prec)
    return math.exp(float(res.log_pivots[-1]) - 2 * n * math.log(math.cos(alpha / 2)))
