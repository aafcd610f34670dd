"""Quick invariant suite behind ``gapprob selftest`` (a few seconds in total)."""

from __future__ import annotations

import math

import numpy as np

from .constants import widom_dyson_c0, zeta_prime_minus1
from .fredholm import GapSpec, NystromConfig, kernel_matrix, trace_identity_residual
from .numerics import det2, gauss_legendre
from .rh import BoundarySide, f_eval, g_eval, hankel, model_solution
from .toeplitz import ArcEnsemble, log_det, multiple_integral_oracle, small_beta_logdet

P, M = BoundarySide.PLUS, BoundarySide.MINUS


def _gl_exactness():
    x, w = gauss_legendre(10).nodes, gauss_legendre(10).weights
    return abs(float(np.dot(w, x**18)) - 2 / 19)


def _d1_closed_form():
    return abs(float(log_det(ArcEnsemble(1, math.pi / 2)).log_det) - math.log(0.5))


def _oracle_n2():
    return abs(multiple_integral_oracle(2, 1.2) - math.exp(float(log_det(ArcEnsemble(2, 1.2)).log_det)))


def _small_beta_n1():
    return abs(float(small_beta_logdet(1, 0.3)) - float(log_det(ArcEnsemble(1, math.pi - 0.3)).log_det))


def _c0_value():
    return abs(widom_dyson_c0() + 0.4385011660546906)


def _zeta_doubling():
    return abs(zeta_prime_minus1(10_000).value - zeta_prime_minus1(20_000).value)


def _g_boundary():
    worst = 0.0
    for alpha in (0.5, math.pi / 2, 2.8):
        tn, sn, kappa = math.tan(alpha / 2), math.sin(alpha / 2), math.cos(alpha / 2) ** 2
        for x in np.linspace(-0.95, 0.95, 50):
            gp, gm = g_eval(x, alpha, P), g_eval(x, alpha, M)
            r = math.sqrt(1 - x * x) * sn
            worst = max(
                worst,
                abs(gp * gm - kappa * (1 - 1j * x * tn) / (1 + 1j * x * tn)),
                abs(gp / gm - (1 - r) / (1 + r)),
                abs(f_eval(x, alpha, P) * f_eval(x, alpha, M) - 1),
            )
    return worst


def _model_jump():
    jump = np.array([[0, -1], [1, 0]], dtype=complex)
    worst = 0.0
    for x in np.linspace(-0.95, 0.95, 50):
        nm, np_ = model_solution(x, M), model_solution(x, P)
        worst = max(worst, float(np.max(np.abs(nm - np_ @ jump))), abs(det2(np_) - 1))
    return worst


def _hankel_wronskian():
    # H0^(1) H1^(2) - H1^(1) H0^(2) = 4i / (pi z)
    worst = 0.0
    for z in (0.5 + 0.2j, 3.0, 12.0 - 1j, 25.0 + 2j):
        w = hankel(1, 0, z) * hankel(2, 1, z) - hankel(1, 1, z) * hankel(2, 0, z)
        worst = max(worst, abs(w * math.pi * z / 4j - 1))
    return worst


def _kernel_symmetry():
    k = kernel_matrix(GapSpec(2.0), NystromConfig(40))
    return float(np.max(np.abs(k - k.T)))


def _trace_identity():
    return abs(trace_identity_residual(GapSpec(1.5, 0.7)))


CHECKS = (
    ("gauss_legendre_exactness", _gl_exactness, 1e-14, "fredholm"),
    ("toeplitz_n1_closed_form", _d1_closed_form, 1e-13, "toeplitz"),
    ("toeplitz_vs_multiple_integral", _oracle_n2, 1e-7, "toeplitz"),
    ("small_beta_exact_n1", _small_beta_n1, 1e-12, "toeplitz"),
    ("widom_dyson_c0", _c0_value, 1e-12, "constants"),
    ("zeta_prime_doubling", _zeta_doubling, 1e-12, "constants"),
    ("g_and_f_boundary_identities", _g_boundary, 1e-12, "rh-model"),
    ("model_solution_jump_and_det", _model_jump, 1e-12, "rh-model"),
    ("hankel_wronskian", _hankel_wronskian, 1e-12, "rh-model"),
    ("sine_kernel_symmetry", _kernel_symmetry, 0.0, "fredholm"),
    ("fredholm_trace_identity", _trace_identity, 1e-10, "fredholm"),
)


def run_checks():
    """Yield (name, passed, measured value, route) for every invariant check."""
    for name, fn, tol, route in CHECKS:
        value = float(fn())
        yield name, bool(value <= tol), value, route
