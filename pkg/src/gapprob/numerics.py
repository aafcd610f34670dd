"""Precision configuration, Gauss-Legendre rules, finite differences, 2x2 algebra.

Everything downstream is written against two numeric backends: native
``float``/``numpy.float64`` when 15 decimal digits are requested, and
``mpmath`` multiprecision numbers above that.
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import mpmath as mp
import numpy as np

from .errors import DomainError, PrecisionFault

__all__ = [
    "PrecisionConfig",
    "DEFAULT_PRECISION",
    "QuadratureRule",
    "gauss_legendre",
    "DerivativeEstimate",
    "derivative",
    "richardson_table",
    "mat2",
    "det2",
    "inv2",
    "IDENTITY2",
    "SIGMA1",
    "SIGMA3",
]

NEWTON_MAX_ITER = 100


@dataclass(frozen=True)
class PrecisionConfig:
    """Target number of significant decimal digits.

    Exactly 15 digits selects native 64-bit floats; more digits switch to
    mpmath with ``mp.dps = decimal_digits`` inside :meth:`workdps`.
    """

    decimal_digits: int = 15

    def __post_init__(self):
        if not isinstance(self.decimal_digits, (int, np.integer)) or self.decimal_digits < 15:
            raise DomainError(f"decimal_digits must be an integer >= 15, got {self.decimal_digits!r}")

    @property
    def native(self) -> bool:
        return self.decimal_digits == 15

    @property
    def epsilon(self):
        if self.native:
            return float(np.finfo(np.float64).eps)
        with mp.workdps(self.decimal_digits):
            return +mp.eps

    def workdps(self, extra: int = 0):
        """Context manager setting mpmath's working precision (no-op for native)."""
        if self.native and extra == 0:
            return contextlib.nullcontext()
        return mp.workdps(self.decimal_digits + extra)

    def real(self, x):
        return float(x) if self.native else mp.mpf(x)

    @property
    def pi(self):
        return math.pi if self.native else +mp.pi


DEFAULT_PRECISION = PrecisionConfig()


@dataclass(frozen=True)
class QuadratureRule:
    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def mapped(self, a, b):
        """Nodes and weights transplanted affinely from (-1, 1) to (a, b)."""
        half = (b - a) / 2
        mid = (b + a) / 2
        return mid + half * self.nodes, half * self.weights


def _legendre_pair(m: int, x):
    """P_m(x) and P_m'(x) by the three-term recurrence (works elementwise)."""
    p_prev = x * 0 + 1
    p = x
    for k in range(2, m + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = m * (x * p - p_prev) / (x * x - 1)
    return p, dp


def _chebyshev_guesses(m: int) -> np.ndarray:
    i = np.arange(1, m + 1)
    return np.cos(np.pi * (i - 0.25) / (m + 0.5))


def _gl_native(m: int, eps: float):
    x = _chebyshev_guesses(m)
    for _ in range(NEWTON_MAX_ITER):
        p, dp = _legendre_pair(m, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 10 * eps:
            break
    else:
        raise PrecisionFault(f"Newton iteration for Legendre roots of degree {m} did not converge")
    _, dp = _legendre_pair(m, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    return x[order], w[order]


def _gl_mp(m: int, prec: PrecisionConfig):
    eps = prec.epsilon
    with prec.workdps(10):
        nodes = []
        weights = []
        # only the non-negative half; the rest follows by symmetry
        for i in range(1, m // 2 + m % 2 + 1):
            x = mp.cos(mp.pi * (i - mp.mpf(0.25)) / (m + mp.mpf(0.5)))
            for _ in range(NEWTON_MAX_ITER):
                p, dp = _legendre_pair(m, x)
                dx = p / dp
                x -= dx
                if abs(dx) < 10 * eps:
                    break
            else:
                raise PrecisionFault(f"Newton iteration for Legendre root {i} of degree {m} did not converge")
            p, dp = _legendre_pair(m, x)
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * dp * dp))
    # mpmath rounds even unary minus to the ambient precision
    with prec.workdps():
        pos = [+x for x in nodes]
        wpos = [+w for w in weights]
        if m % 2:
            pos[-1] = mp.mpf(0)
            full_x = [-x for x in pos] + pos[-2::-1]
            full_w = wpos + wpos[-2::-1]
        else:
            full_x = [-x for x in pos] + pos[::-1]
            full_w = wpos + wpos[::-1]
    return np.array(full_x, dtype=object), np.array(full_w, dtype=object)


def gauss_legendre(m: int, prec: PrecisionConfig = DEFAULT_PRECISION) -> QuadratureRule:
    """Gauss-Legendre rule of order ``m`` on (-1, 1).

    Roots of P_m are found by Newton iteration from Chebyshev-type initial
    guesses and then symmetrized so that ``nodes[i] == -nodes[m-1-i]``.

    Raises:
        PrecisionFault: a root failed to converge within 100 iterations.
    """
    if int(m) != m or m < 1:
        raise DomainError(f"quadrature order must be a positive integer, got {m!r}")
    m = int(m)
    if m == 1:
        zero, two = prec.real(0), prec.real(2)
        return QuadratureRule(1, np.array([zero], dtype=type(zero)), np.array([two], dtype=type(two)))
    if prec.native:
        x, w = _gl_native(m, prec.epsilon)
        x = (x - x[::-1]) / 2
        w = (w + w[::-1]) / 2
        if m % 2:
            x[m // 2] = 0.0
    else:
        x, w = _gl_mp(m, prec)
    return QuadratureRule(m, x, w)


class DerivativeEstimate(NamedTuple):
    value: float
    error: float


def _central(f, x, h, order):
    if order == 1:
        return (f(x + h) - f(x - h)) / (2 * h)
    if order == 2:
        return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)
    # 5-point stencil for the third derivative
    return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h**3)


def richardson_table(values, ratio: float = 2.0, power: int = 2):
    """Neville-style table eliminating errors in h^power, h^(2*power), ...

    ``values[i]`` must be computed with step ``h0 / ratio**i``. Returns the
    triangular table as a list of rows; the last entry of the last row is the
    most extrapolated value.
    """
    table = [[v] for v in values]
    for i in range(1, len(values)):
        for j in range(1, i + 1):
            factor = ratio ** (power * j)
            prev = table[i][j - 1]
            table[i].append(prev + (prev - table[i - 1][j - 1]) / (factor - 1))
    return table


def derivative(
    f: Callable,
    x,
    order: int = 1,
    h=None,
    levels: int = 2,
    prec: PrecisionConfig = DEFAULT_PRECISION,
) -> DerivativeEstimate:
    """Central-difference derivative of order 1, 2 or 3 with Richardson extrapolation.

    ``h`` is the finest step; the table is built from steps
    ``h * 2**levels, ..., 2h, h`` so ``f`` must be defined on
    ``[x - 2**levels * h * w, x + 2**levels * h * w]`` with ``w = 2`` for the
    third-order stencil and 1 otherwise. The error indicator is the size of the
    last extrapolation increment (NaN when ``levels == 0``).

    Works with any numeric type ``f`` returns, so mpmath values keep their
    precision.
    """
    if order not in (1, 2, 3):
        raise DomainError(f"derivative order must be 1, 2 or 3, got {order!r}")
    if levels < 0:
        raise DomainError("levels must be non-negative")
    eps = prec.epsilon
    scale = max(abs(x), 1)
    if h is None:
        h = scale * float(eps) ** (1 / (order + 2))
    if h <= 0:
        raise DomainError("finite-difference step must be positive")
    if h < 100 * eps * abs(x):
        raise PrecisionFault(f"finite-difference step {h!r} is below the roundoff floor at x={x!r}")
    h = prec.real(h)
    with prec.workdps():
        raw = [_central(f, x, h * 2 ** (levels - i), order) for i in range(levels + 1)]
        table = richardson_table(raw)
        value = table[-1][-1]
        err = abs(table[-1][-1] - table[-1][-2]) if levels else float("nan")
    return DerivativeEstimate(value, err)


# -- 2x2 complex matrices ----------------------------------------------------

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)


def mat2(a11, a12, a21, a22) -> np.ndarray:
    return np.array([[a11, a12], [a21, a22]], dtype=complex)


def det2(a: np.ndarray) -> complex:
    return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]


def inv2(a: np.ndarray) -> np.ndarray:
    d = det2(a)
    return np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]], dtype=complex) / d
