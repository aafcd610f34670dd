import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gapprob.errors import DomainError, SignFlip
from gapprob.fredholm import (
    GapSpec,
    NystromConfig,
    kernel,
    kernel_matrix,
    log_det_gap,
    scaling_limit_gap,
    trace_identity_residual,
)


def _oracle_log_det(s, gamma=1.0, m=100):
    # independent Nystrom build: numpy's Gauss-Legendre rule, numpy's sinc
    x, w = np.polynomial.legendre.leggauss(m)
    x = s * (x + 1)
    w = s * w
    k = np.sinc((x[:, None] - x[None, :]) / np.pi) / np.pi
    a = np.eye(m) - gamma * np.sqrt(w)[:, None] * k * np.sqrt(w)[None, :]
    return np.linalg.slogdet(a)[1]


def test_kernel_examples():
    assert kernel(0.3, 0.3) == pytest.approx(1 / math.pi, abs=1e-16)
    assert abs(kernel(math.pi + 0.2, 0.2)) < 1e-16
    assert kernel(1e-7, 0.0) == pytest.approx(1 / math.pi, rel=1e-14)


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_kernel_symmetric_and_bounded(x, y):
    assert kernel(x, y) == kernel(y, x)
    assert abs(kernel(x, y)) <= 1 / math.pi + 1e-15


@given(st.floats(-1e-5, 1e-5))
def test_kernel_taylor_branch_continuous(u):
    exact = np.sinc(u / np.pi) / np.pi
    assert kernel(u, 0.0) == pytest.approx(exact, rel=1e-15, abs=1e-300)


def test_config_and_spec_validation():
    assert NystromConfig.default_for(1).m == 40
    assert NystromConfig.default_for(10).m == 100
    with pytest.raises(DomainError):
        NystromConfig(3)
    with pytest.raises(DomainError):
        GapSpec(0.0)
    with pytest.raises(DomainError):
        GapSpec(1.0, 1.5)


def test_kernel_matrix_symmetric_psd():
    k = kernel_matrix(GapSpec(2.0), NystromConfig(30))
    assert np.array_equal(k, k.T)
    ev = np.linalg.eigvalsh(k)
    assert ev.min() > -1e-14 and ev.max() < 1


def test_log_det_gap_examples():
    assert abs(log_det_gap(GapSpec(1.0, 1e-12))) < 1e-11
    assert log_det_gap(GapSpec(0.1)) == pytest.approx(math.log(1 - 0.2 / math.pi), abs=1e-3)
    a = log_det_gap(GapSpec(1.0), NystromConfig(40))
    b = log_det_gap(GapSpec(1.0), NystromConfig(80))
    assert abs(a - b) < 1e-10


@pytest.mark.parametrize("s,gamma", [(0.5, 1.0), (1.0, 1.0), (3.0, 1.0), (6.0, 1.0), (2.0, 0.4)])
def test_log_det_gap_against_independent_build(s, gamma):
    # det(I - K) ~ e^{-s^2/2}, so rounding in the two builds differs by ~ eps / det
    assert log_det_gap(GapSpec(s, gamma)) == pytest.approx(_oracle_log_det(s, gamma), abs=1e-10)


@given(st.floats(0.05, 4.0), st.floats(0.05, 0.95))
def test_log_det_gap_monotone(s, gamma):
    # increasing the interval or gamma lowers the determinant
    base = log_det_gap(GapSpec(s, gamma))
    assert log_det_gap(GapSpec(s * 1.1, gamma)) < base
    assert log_det_gap(GapSpec(s, min(1.0, gamma + 0.05))) < base


def test_sign_flip_on_underresolved_rule():
    with pytest.raises(SignFlip):
        log_det_gap(GapSpec(12.0), NystromConfig(5))


def test_trace_identity():
    r20 = abs(trace_identity_residual(GapSpec(1.0, 0.5), steps=20))
    assert r20 <= 1e-8
    r40 = abs(trace_identity_residual(GapSpec(1.0, 0.5), steps=40))
    assert r40 <= max(r20, 1e-13)
    assert abs(trace_identity_residual(GapSpec(1.0, 1e-6), steps=4)) < 1e-14
    with pytest.raises(DomainError):
        trace_identity_residual(GapSpec(1.0, 1.0))


def test_scaling_limit():
    d200 = scaling_limit_gap(1.0, 200)
    d400 = scaling_limit_gap(1.0, 400)
    assert abs(d200) <= 0.02
    assert abs(d400) < abs(d200)
    small = scaling_limit_gap(0.05, 100)
    assert abs(small) <= 1e-3
    assert log_det_gap(GapSpec(0.05)) == pytest.approx(math.log(1 - 0.1 / math.pi), abs=1e-3)
    with pytest.raises(DomainError):
        scaling_limit_gap(10.0, 3)
