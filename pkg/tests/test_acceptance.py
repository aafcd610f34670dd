"""Acceptance criteria 1-11, each at its stated tolerance.

Every test records a PASS/FAIL line (printed in the terminal summary by
conftest.py, or directly when this file is run as a script). Nothing here is
relaxed to force a pass; criteria that do not hold fail.
"""

import math
import time

import numpy as np
import pytest

from gapprob import constants
from gapprob.asymptotics import dinteg_residual, extract_c0_dyson, extract_c0_widom
from gapprob.numerics import PrecisionConfig, det2
from gapprob.painleve import delta_eta_consistency, sigma_pvi_residual
from gapprob.rh import (
    BoundarySide,
    delta_asymptotic,
    delta_from_determinant,
    f_eval,
    g_eval,
    model_solution,
    parametrix_mismatch,
)
from gapprob.toeplitz import (
    ArcEnsemble,
    a_n_asymptotic_residual,
    log_det,
    multiple_integral_oracle,
    small_beta_logdet,
)
from gapprob.fredholm import scaling_limit_gap

RESULTS = {}


def report(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} {title}: {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def _criterion1_values():
    constants.zeta_prime_minus1.cache_clear()
    constants._k_ln_k_sum.cache_clear()
    start = time.perf_counter()
    c0 = constants.widom_dyson_c0()
    base = constants.zeta_prime_minus1(10_000).value
    doubled = constants.zeta_prime_minus1(20_000).value
    return c0, abs(base - doubled), time.perf_counter() - start


def test_criterion_01_constant_identity():
    c0, drift, elapsed = _criterion1_values()
    ok = abs(c0 - (-0.4385012)) <= 1e-6 and drift <= 1e-12 and elapsed < 1.0
    report(1, "c0 identity", ok, f"c0={c0:.13f}, doubling drift={drift:.1e}, {elapsed:.2f}s")


def test_criterion_02_oracle_equivalence():
    start = time.perf_counter()
    worst = 0.0
    for n in (1, 2, 3):
        for alpha in (0.8, math.pi / 2, 2.4):
            direct = math.exp(log_det(ArcEnsemble(n, alpha)).log_det)
            worst = max(worst, abs(multiple_integral_oracle(n, alpha) - direct))
    elapsed = time.perf_counter() - start
    report(2, "oracle equivalence", worst <= 1e-7 and elapsed < 30, f"max diff={worst:.1e}, {elapsed:.2f}s")


def test_criterion_03_universality_bridge():
    start = time.perf_counter()
    d200 = abs(scaling_limit_gap(1.0, 200))
    d400 = abs(scaling_limit_gap(1.0, 400))
    elapsed = time.perf_counter() - start
    ok = d200 <= 0.02 and d400 < d200 and elapsed < 10
    report(3, "universality bridge", ok, f"|diff| n=200: {d200:.2e}, n=400: {d400:.2e}, {elapsed:.2f}s")


def test_criterion_04_widom_law():
    start = time.perf_counter()
    fit = extract_c0_widom([(100, 1.2), (200, 1.2), (400, 1.2)])
    elapsed = time.perf_counter() - start
    c0 = constants.widom_dyson_c0()
    resid = [r - c0 for _, r in fit.samples]
    ratios = [resid[1] / resid[0], resid[2] / resid[1]]
    ok = abs(fit.estimate - c0) <= 0.01 and all(0.4 <= q <= 0.6 for q in ratios) and elapsed < 60
    report(
        4,
        "Widom law",
        ok,
        f"estimate-c0={fit.estimate - c0:.2e}, residual ratios={ratios[0]:.4f},{ratios[1]:.4f} "
        f"(need [0.4,0.6]), {elapsed:.2f}s",
    )


def test_criterion_05_dyson_law():
    start = time.perf_counter()
    fit = extract_c0_dyson([3, 4.5, 6])
    elapsed = time.perf_counter() - start
    diff = fit.estimate - constants.widom_dyson_c0()
    report(5, "Dyson law", abs(diff) <= 5e-3 and elapsed < 10, f"estimate-c0={diff:.2e}, {elapsed:.2f}s")


def test_criterion_06_delta_expansion():
    cs = {}
    for n in (10, 20, 40):
        for alpha in (1.0, math.pi / 2, 2.5):
            value, _ = delta_from_determinant(n, alpha)
            rho = n * math.sin(alpha / 2)
            cs[(n, alpha)] = abs(value - delta_asymptotic(n, alpha)) * rho**3 / math.sin(alpha) ** 2
    lo, hi = min(cs.values()), max(cs.values())
    report(6, "Delta expansion", hi <= 2 * lo, f"fitted C in [{lo:.2e}, {hi:.2e}], max/min={hi / lo:.1f} (need <= 2)")


def test_criterion_07_painleve_sigma_form():
    points = ((2, 2.5), (6, 1.8), (10, 1.2))
    native = [sigma_pvi_residual(n, a, h=1e-3) for n, a in points]
    # h-halving at extended precision, where roundoff does not yet dominate
    prec = PrecisionConfig(30)
    halving = [[sigma_pvi_residual(n, a, h=h, levels=0, prec=prec) for h in (1e-3, 5e-4, 2.5e-4)] for n, a in points]
    decreasing = all(r[0] > r[1] > r[2] for r in halving)
    consist = [delta_eta_consistency(n, a) for n, a in points]
    consistent = all(d <= 10 * tol for d, tol in consist)
    ok = max(native) <= 1e-4 and decreasing and consistent
    report(
        7,
        "Painleve VI sigma form",
        ok,
        f"max residual(h=1e-3)={max(native):.1e}, halving ratios="
        + ",".join(f"{r[0] / r[1]:.2f}/{r[1] / r[2]:.2f}" for r in halving)
        + f", max Delta-eta disc/tol={max(d / t for d, t in consist):.1e}",
    )


def test_criterion_08_rh_identities():
    plus, minus = BoundarySide.PLUS, BoundarySide.MINUS
    xs = np.linspace(-0.95, 0.95, 50)
    worst = 0.0
    for alpha in (0.5, math.pi / 2, 2.8):
        tn, sn, kappa = math.tan(alpha / 2), math.sin(alpha / 2), math.cos(alpha / 2) ** 2
        for x in xs:
            gp, gm = g_eval(x, alpha, plus), g_eval(x, alpha, minus)
            r = math.sqrt(1 - x * x) * sn
            worst = max(
                worst,
                abs(gp * gm - kappa * (1 - 1j * x * tn) / (1 + 1j * x * tn)),
                abs(gp / gm - (1 - r) / (1 + r)),
                abs(f_eval(x, alpha, plus) * f_eval(x, alpha, minus) - 1),
            )
    jump = np.array([[0, -1], [1, 0]])
    for x in xs:
        worst = max(worst, np.abs(model_solution(x, minus) - model_solution(x, plus) @ jump).max())
    rng = np.random.default_rng(20240611)
    for lam in rng.uniform(-3, 3, 40) + 1j * rng.uniform(-3, 3, 40):
        worst = max(worst, abs(det2(model_solution(lam)) - 1))
    thetas = np.linspace(-math.pi + 0.15, math.pi - 0.15, 41)
    norms = {n: max(np.abs(parametrix_mismatch(t, n, math.pi / 2, 0.2)).max() for t in thetas) for n in (20, 40, 80)}
    ratios = [norms[20] / norms[40], norms[40] / norms[80]]
    ok = worst <= 1e-12 and all(6 <= q <= 10 for q in ratios)
    report(8, "RH model identities", ok, f"identity error={worst:.1e}, mismatch ratios={ratios[0]:.2f},{ratios[1]:.2f}")


def test_criterion_09_small_beta():
    ref = PrecisionConfig(60)

    def err(n, beta):
        return abs(small_beta_logdet(n, beta) - float(log_det(ArcEnsemble.from_beta(n, beta), ref).log_det))

    ratios = {n: err(n, 0.1) / err(n, 0.05) for n in (2, 3, 5)}
    exact = max(err(1, b) for b in (0.1, 0.05, 0.01))
    ok = all(3 <= q <= 5 for q in ratios.values()) and exact <= 1e-12
    detail = ", ".join(f"n={n}: {q:.3f}" for n, q in ratios.items())
    report(9, "small-beta representation", ok, f"halving ratios {detail}; n=1 diff={exact:.1e}")


def test_criterion_10_a_n_asymptotics():
    r10, r50 = a_n_asymptotic_residual(10), a_n_asymptotic_residual(50)
    ok = abs(r50) < 0.02 and abs(r50) < abs(r10)
    report(10, "A_n asymptotics", ok, f"residual(10)={r10:.3e}, residual(50)={r50:.3e}")


@pytest.mark.slow
def test_criterion_11_dinteg_identity():
    r32 = dinteg_residual(10, 1.0, 2.8, grid=32)
    r64 = dinteg_residual(10, 1.0, 2.8, grid=64)
    ok = r32 <= 1e-5 and r64 <= r32 / 2
    report(11, "double-integral identity", ok, f"residual grid=32: {r32:.2e}, grid=64: {r64:.2e} (need halving)")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
