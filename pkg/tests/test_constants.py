import math
from fractions import Fraction

import mpmath as mp
import pytest

from gapprob.constants import (
    bernoulli,
    k_ln_k_residual,
    widom_dyson_c0,
    zeta_prime_minus1,
)
from gapprob.errors import DomainError
from gapprob.numerics import PrecisionConfig

# frozen from mpmath.zeta(-1, derivative=1) at 40 digits
ZETA_PRIME_M1 = -0.16542114370045092921
C0 = math.log(2) / 12 + 3 * ZETA_PRIME_M1


def test_oracle_values_frozen():
    with mp.workdps(40):
        assert abs(mp.zeta(-1, derivative=1) - mp.mpf("-0.16542114370045092921")) < 1e-20


def test_zeta_prime_default():
    r = zeta_prime_minus1()
    assert abs(r.value - ZETA_PRIME_M1) < 1e-13
    assert r.terms_used == 10_000
    assert 0 < r.tail_bound < 1e-12


def test_zeta_prime_doubling_and_deeper_corrections():
    base = zeta_prime_minus1()
    doubled = zeta_prime_minus1(20_000, corrections=4)
    assert abs(base.value - doubled.value) < 1e-12
    assert abs(base.value - doubled.value) <= base.tail_bound


def test_zeta_prime_high_precision():
    prec = PrecisionConfig(30)
    r = zeta_prime_minus1(2000, prec, corrections=8)
    with mp.workdps(40):
        assert abs(r.value - mp.zeta(-1, derivative=1)) < mp.mpf(10) ** -25


def test_zeta_prime_domain():
    with pytest.raises(DomainError):
        zeta_prime_minus1(5)
    with pytest.raises(DomainError):
        zeta_prime_minus1(100, corrections=0)


def test_bernoulli_exact():
    assert bernoulli(0) == 1
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_c0_value_and_identity():
    c0 = widom_dyson_c0()
    assert abs(c0 - C0) < 1e-13
    assert abs(c0 - (-0.4385011)) < 1e-6
    eps = PrecisionConfig().epsilon
    assert abs(c0 - 3 * zeta_prime_minus1().value - math.log(2) / 12) <= 10 * eps


def test_c0_stable_in_n_terms():
    a = math.log(2) / 12 + 3 * zeta_prime_minus1(5000).value
    b = math.log(2) / 12 + 3 * zeta_prime_minus1(40_000).value
    assert abs(a - b) < 3e-12


def test_k_ln_k_residual_decay():
    r = {n: float(k_ln_k_residual(n)) for n in (10, 20, 40, 80, 100)}
    assert abs(r[20]) < abs(r[10])
    assert abs(r[100]) < abs(r[10])
    assert all(v > 0 for v in r.values())
    # r(N) N stays bounded (in fact r(N) = 1/(720 N^2) + O(N^-4))
    assert max(abs(r[n] * n) for n in (10, 20, 40, 80)) < 1e-3
    for n in (10, 20, 40, 80):
        assert r[n] * 720 * n * n == pytest.approx(1, rel=1e-2)


def test_k_ln_k_residual_direct_sum():
    # independent oracle: mpmath direct sum and mpmath zeta'(-1)
    with mp.workdps(40):
        n = 10
        s = mp.fsum(k * mp.log(k) for k in range(1, n + 1))
        main = (mp.mpf(n) ** 2 / 2 + mp.mpf(n) / 2 + mp.mpf(1) / 12) * mp.log(n) - mp.mpf(n) ** 2 / 4 + mp.mpf(1) / 12
        oracle = s - (main - mp.zeta(-1, derivative=1))
    assert float(k_ln_k_residual(10)) == pytest.approx(float(oracle), rel=1e-10)
