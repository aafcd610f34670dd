"""zeta'(-1) and the Widom-Dyson constant, computed from a k*ln(k) sum.

The partial sums S(N) = sum_{k<=N} k ln k obey

    S(N) = (N^2/2 + N/2 + 1/12) ln N - N^2/4 + 1/12 - zeta'(-1) + r(N),

and Euler-Maclaurin gives the tail r(N) as an asymptotic series in N^-2:

    r(N) ~ sum_{j>=2} -B_{2j} / ((2j)(2j-1)(2j-2)) * N^(2-2j)
         = 1/(720 N^2) - 1/(5040 N^4) + ...

Solving for zeta'(-1) with a direct sum and a few tail terms avoids any table
lookup, so later extractions of c0 have an independent target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .errors import DomainError
from .numerics import DEFAULT_PRECISION, PrecisionConfig

__all__ = [
    "ZetaPrimeResult",
    "bernoulli",
    "zeta_prime_minus1",
    "widom_dyson_c0",
    "k_ln_k_residual",
]

DEFAULT_TERMS = 10_000
DEFAULT_CORRECTIONS = 2  # B_4 and B_6
GUARD_DIGITS = 10


@dataclass(frozen=True)
class ZetaPrimeResult:
    value: float
    terms_used: int
    tail_bound: float


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m (convention B_1 = -1/2)."""
    if m < 0:
        raise DomainError("Bernoulli index must be non-negative")
    p, q = mp.bernfrac(m)
    return Fraction(int(p), int(q))


def _tail_coefficient(j: int) -> Fraction:
    # coefficient of N^(2-2j) in r(N)
    return -bernoulli(2 * j) / ((2 * j) * (2 * j - 1) * (2 * j - 2))


@lru_cache(maxsize=64)
def _k_ln_k_sum(n: int, dps: int):
    with mp.workdps(dps):
        return mp.fsum(k * mp.log(k) for k in range(2, n + 1))


def _main_part(n, dps: int):
    """(N^2/2 + N/2 + 1/12) ln N - N^2/4 + 1/12 at working precision ``dps``."""
    with mp.workdps(dps):
        N = mp.mpf(n)
        return (N * N / 2 + N / 2 + mp.mpf(1) / 12) * mp.log(N) - N * N / 4 + mp.mpf(1) / 12


def _out(x, prec: PrecisionConfig):
    if prec.native:
        return float(x)
    with prec.workdps():
        return +x


@lru_cache(maxsize=32)
def zeta_prime_minus1(
    n_terms: int = DEFAULT_TERMS,
    prec: PrecisionConfig = DEFAULT_PRECISION,
    corrections: int = DEFAULT_CORRECTIONS,
) -> ZetaPrimeResult:
    """zeta'(-1) from the k ln k relation with Euler-Maclaurin tail corrections.

    Args:
        n_terms: number N of directly summed terms (>= 10).
        prec: output precision; the sum runs with extra guard digits.
        corrections: number of Bernoulli tail terms kept (1 = B_4 only,
            2 = B_4 and B_6, ...).

    ``tail_bound`` is the magnitude of the first omitted tail term plus a
    bound on the rounding error of the direct sum.
    """
    if int(n_terms) != n_terms or n_terms < 10:
        raise DomainError(f"n_terms must be an integer >= 10, got {n_terms!r}")
    if corrections < 1:
        raise DomainError("at least the B_4 correction is required")
    n = int(n_terms)
    dps = prec.decimal_digits + GUARD_DIGITS
    s = _k_ln_k_sum(n, dps)
    with mp.workdps(dps):
        N = mp.mpf(n)
        tail = mp.fsum(
            mp.mpf(c.numerator) / c.denominator * N ** (2 - 2 * j)
            for j, c in ((j, _tail_coefficient(j)) for j in range(2, corrections + 2))
        )
        value = _main_part(n, dps) + tail - s
        omitted = _tail_coefficient(corrections + 2)
        bound = abs(mp.mpf(omitted.numerator) / omitted.denominator * N ** (-2 * corrections - 2))
        bound += n * abs(s) * mp.mpf(10) ** (-dps)
    return ZetaPrimeResult(_out(value, prec), n, float(bound))


def widom_dyson_c0(prec: PrecisionConfig = DEFAULT_PRECISION):
    """c0 = ln(2)/12 + 3 zeta'(-1)."""
    zp = zeta_prime_minus1(prec=prec).value
    if prec.native:
        return math.log(2) / 12 + 3 * zp
    with prec.workdps():
        return mp.log(2) / 12 + 3 * zp


def k_ln_k_residual(N: int, prec: PrecisionConfig = DEFAULT_PRECISION):
    """r(N) = S(N) - [(N^2/2 + N/2 + 1/12) ln N - N^2/4 + 1/12 - zeta'(-1)].

    Evaluated with guard digits so the cancellation between the O(N^2 ln N)
    pieces does not swamp r(N) ~ 1/(720 N^2).
    """
    if int(N) != N or N < 2:
        raise DomainError(f"N must be an integer >= 2, got {N!r}")
    dps = prec.decimal_digits + GUARD_DIGITS + 2 * len(str(int(N)))
    zp_prec = PrecisionConfig(dps)
    zp = zeta_prime_minus1(prec=zp_prec).value
    s = _k_ln_k_sum(int(N), dps)
    with mp.workdps(dps):
        r = s - _main_part(int(N), dps) + zp
    return _out(r, prec)
