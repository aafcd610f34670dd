"""Command-line front end.

Every subcommand writes one JSON object per computation to stdout::

    {"command": ..., "inputs": {...}, "outputs": {...}, "provenance": {...}}

``--format csv`` flattens the same records into a header row plus one row
per record. Exit codes: 0 success, 2 invalid input, 3 numerical fault.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .asymptotics import dinteg_sides, extract_c0_dyson, extract_c0_widom, first_derivative_law_residual
from .constants import widom_dyson_c0, zeta_prime_minus1
from .errors import DomainError, NumericalFault
from .fredholm import GapSpec, NystromConfig, log_det_gap, scaling_limit_gap
from .numerics import PrecisionConfig
from .painleve import delta_from_eta, eta_expansion, eta_from_determinant, sigma_form_residual
from .rh import delta_asymptotic, delta_from_determinant, theta_from_determinant
from .toeplitz import ArcEnsemble, log_det, small_beta_logdet

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- grid and value parsing ------------------------------------------------------


def parse_grid(text: str) -> list[float]:
    """``a:b:xk`` (geometric), ``a:b:+d`` (arithmetic), ``a,b,c`` or a single value."""
    text = text.strip()
    if ":" not in text:
        return [float(v) for v in text.split(",") if v.strip()]
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"bad grid specification {text!r}")
    start, stop = float(parts[0]), float(parts[1])
    step = parts[2].strip()
    values = []
    if step.startswith("x"):
        factor = float(step[1:])
        if factor <= 1 or start <= 0:
            raise DomainError(f"geometric grid needs factor > 1 and positive start: {text!r}")
        v = start
        while v <= stop * (1 + 1e-12):
            values.append(v)
            v *= factor
    elif step.startswith("+"):
        inc = float(step[1:])
        if inc <= 0:
            raise DomainError(f"arithmetic grid needs a positive increment: {text!r}")
        # index-based to keep grid points free of accumulated rounding
        count = int(math.floor((stop - start) / inc + 1e-9)) + 1
        values = [start + k * inc for k in range(count)]
    else:
        raise DomainError(f"grid step must start with 'x' or '+': {text!r}")
    if not values:
        raise DomainError(f"empty grid {text!r}")
    return values


def _int(value: float, name: str) -> int:
    if value != int(value):
        raise DomainError(f"{name} must be an integer, got {value}")
    return int(value)


def _num(x):
    """JSON-friendly number (complex numbers are split by the caller)."""
    if isinstance(x, Fraction):
        return float(x)
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    return float(x)


def record(command, inputs, outputs, route):
    if isinstance(route, str):
        provenance = {k: route for k in outputs}
    else:
        provenance = dict(route)
    return {
        "command": command,
        "inputs": inputs,
        "outputs": {k: _num(v) for k, v in outputs.items()},
        "provenance": provenance,
    }


# -- argument helpers --------------------------------------------------------------


def _prec(args) -> PrecisionConfig:
    return PrecisionConfig(args.digits)


def _alpha(args) -> float:
    if args.alpha is not None:
        alpha = args.alpha
    elif args.beta is not None:
        alpha = math.pi - args.beta
    else:
        raise DomainError("one of --alpha or --beta is required")
    if not (0 < alpha <= math.pi):
        raise DomainError(f"alpha must lie in (0, pi], got {alpha}")
    return alpha


def _n(args) -> int:
    if args.n is None:
        raise DomainError("--n is required")
    n = _int(float(args.n), "n")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return n


def _s(args) -> float:
    if args.s is None:
        raise DomainError("--s is required")
    s = float(args.s)
    if not s > 0:
        raise DomainError(f"s must be positive, got {s}")
    return s


def _ab_inputs(n, alpha):
    return {"n": n, "alpha": alpha}


# -- subcommands --------------------------------------------------------------------


def cmd_constants(args):
    prec = _prec(args)
    z = zeta_prime_minus1(prec=prec)
    c0 = widom_dyson_c0(prec)
    yield record(
        "constants",
        {"digits": args.digits},
        {
            "zeta_prime_minus1": z.value,
            "tail_bound": z.tail_bound,
            "terms_used": z.terms_used,
            "c0": c0,
        },
        "constants",
    )


def _toeplitz_record(n, alpha, digits, log_only=False, beta=None):
    prec = PrecisionConfig(digits)
    res = log_det(ArcEnsemble(n, alpha), prec)
    outputs = {
        "log_det": res.log_det,
        "min_pivot": res.min_pivot,
        "precision_ok": res.precision_ok,
    }
    if not log_only:
        outputs["det"] = math.exp(float(res.log_det))
    route = {k: "toeplitz" for k in outputs}
    inputs = _ab_inputs(n, alpha)
    if beta is not None:
        inputs["beta"] = beta
        outputs["small_beta_log_det"] = small_beta_logdet(n, beta, prec)
        route["small_beta_log_det"] = "toeplitz"
    inputs["digits"] = digits
    return record("toeplitz", inputs, outputs, route)


def cmd_toeplitz(args):
    n, alpha = _n(args), _alpha(args)
    yield _toeplitz_record(n, alpha, args.digits, args.log, args.beta)


def cmd_fredholm(args):
    s = _s(args)
    gamma = args.gamma
    cfg = NystromConfig(args.quad_order) if args.quad_order else NystromConfig.default_for(s)
    value = log_det_gap(GapSpec(s, gamma), cfg)
    outputs = {"log_det_gap": value}
    route = {"log_det_gap": "fredholm"}
    if args.n is not None:
        outputs["scaling_limit_gap"] = scaling_limit_gap(s, _n(args), _prec(args), cfg)
        route["scaling_limit_gap"] = "toeplitz"
    yield record("fredholm", {"s": s, "gamma": gamma, "quad_order": cfg.m}, outputs, route)


def _delta_record(n, alpha, h, digits):
    prec = PrecisionConfig(digits)
    value, err = delta_from_determinant(n, alpha, h=h, prec=prec)
    return record(
        "delta",
        {"n": n, "alpha": alpha, "fd_step": h, "digits": digits},
        {"delta": value, "delta_fd_error": err, "delta_asymptotic": delta_asymptotic(n, alpha)},
        {"delta": "toeplitz", "delta_fd_error": "toeplitz", "delta_asymptotic": "rh-model"},
    )


def cmd_delta(args):
    yield _delta_record(_n(args), _alpha(args), args.fd_step or 2e-3, args.digits)


def _theta_record(n, alpha, digits):
    return record(
        "theta",
        {"n": n, "alpha": alpha, "digits": digits},
        {"theta": theta_from_determinant(n, alpha, PrecisionConfig(digits)), "cos_half_alpha": math.cos(alpha / 2)},
        {"theta": "toeplitz", "cos_half_alpha": "rh-model"},
    )


def cmd_theta(args):
    yield _theta_record(_n(args), _alpha(args), args.digits)


def cmd_painleve(args):
    n, alpha = _n(args), _alpha(args)
    h = args.fd_step or 1e-3
    ev = eta_from_determinant(n, alpha, h=h, prec=_prec(args))
    expected = eta_expansion(n, alpha)
    delta = delta_from_eta(n, ev)
    outputs = {
        "eta_re": ev.eta.real,
        "eta_im": ev.eta.imag,
        "eta_expansion_re": expected.real,
        "eta_expansion_im": expected.imag,
        "sigma_residual": sigma_form_residual(n, ev),
        "delta_from_eta": delta.real,
    }
    route = {k: "painleve" for k in outputs}
    yield record("painleve", {"n": n, "alpha": alpha, "fd_step": h, "digits": args.digits}, outputs, route)


def cmd_widom_fit(args):
    alpha = _alpha(args)
    ns = [_int(v, "n") for v in parse_grid(args.n or "100:400:x2")]
    fit = extract_c0_widom([(n, alpha) for n in ns], _prec(args))
    c0 = widom_dyson_c0()
    yield record(
        "widom-fit",
        {"n": ns, "alpha": alpha},
        {"c0_estimate": fit.estimate, "c0": c0, "difference": fit.estimate - c0, "spread": fit.spread},
        {"c0_estimate": "toeplitz", "c0": "constants", "difference": "toeplitz", "spread": "toeplitz"},
    )


def cmd_dyson_fit(args):
    ss = parse_grid(args.s or "3,4.5,6")
    cfg = NystromConfig(args.quad_order) if args.quad_order else None
    fit = extract_c0_dyson(ss, cfg)
    c0 = widom_dyson_c0()
    yield record(
        "dyson-fit",
        {"s": ss},
        {"c0_estimate": fit.estimate, "c0": c0, "difference": fit.estimate - c0, "spread": fit.spread},
        {"c0_estimate": "fredholm", "c0": "constants", "difference": "fredholm", "spread": "fredholm"},
    )


def cmd_dinteg(args):
    n, alpha = _n(args), _alpha(args)
    grid = args.quad_order or 32
    sides = dinteg_sides(n, alpha, args.alpha0, grid, prec=_prec(args))
    yield record(
        "dinteg",
        {"n": n, "alpha": alpha, "alpha0": args.alpha0, "grid": grid},
        {"lhs": sides.lhs, "rhs": sides.rhs, "residual": sides.residual},
        "toeplitz",
    )


SWEEP_QUANTITIES = ("log_det", "delta", "theta", "first_derivative_law")


def _sweep_point(task):
    quantity, n, alpha, digits, h = task
    if quantity == "log_det":
        return _toeplitz_record(n, alpha, digits, log_only=True)
    if quantity == "delta":
        return _delta_record(n, alpha, h or 2e-3, digits)
    if quantity == "theta":
        return _theta_record(n, alpha, digits)
    value = first_derivative_law_residual(n, alpha, prec=PrecisionConfig(digits))
    return record("first-derivative-law", {"n": n, "alpha": alpha}, {"residual": value}, "toeplitz")


def cmd_sweep(args):
    ns = [_int(v, "n") for v in parse_grid(args.n or "50:400:x2")]
    alphas = parse_grid(args.alpha if args.alpha is not None else "0.4:2.8:+0.4")
    for n in ns:
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
    for a in alphas:
        if not (0 < a < math.pi):
            raise DomainError(f"alpha must lie in (0, pi), got {a}")
    tasks = [(args.quantity, n, a, args.digits, args.fd_step) for n in ns for a in alphas]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            yield from pool.map(_sweep_point, tasks)
    else:
        yield from map(_sweep_point, tasks)


def cmd_selftest(args):
    from .selftest import run_checks

    for name, ok, value, route in run_checks():
        yield record("selftest", {"check": name}, {"passed": ok, "value": value}, route)


COMMANDS = {
    "constants": cmd_constants,
    "toeplitz": cmd_toeplitz,
    "fredholm": cmd_fredholm,
    "delta": cmd_delta,
    "theta": cmd_theta,
    "painleve": cmd_painleve,
    "widom-fit": cmd_widom_fit,
    "dyson-fit": cmd_dyson_fit,
    "dinteg": cmd_dinteg,
    "sweep": cmd_sweep,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--digits", type=int, default=15, help="significant decimal digits (>= 15)")
    common.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    common.add_argument("--fd-step", type=float, default=None, help="finest finite-difference step")
    common.add_argument("--quad-order", type=int, default=None, help="quadrature order / grid size")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweep")
    common.add_argument("--n", default=None, help="matrix size (grid spec for sweep / widom-fit)")
    common.add_argument("--s", default=None, help="interval half-length (list for dyson-fit)")
    common.add_argument("--gamma", type=float, default=1.0)
    angle = common.add_mutually_exclusive_group()
    angle.add_argument("--alpha", default=None, help="arc half-gap in radians")
    angle.add_argument("--beta", type=float, default=None, help="pi - alpha, for arcs near pi")

    parser = _Parser(prog="gapprob", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "toeplitz":
            p.add_argument("--log", action="store_true", help="report only the logarithm")
        if name == "dinteg":
            p.add_argument("--alpha0", type=float, default=2.8)
        if name == "sweep":
            p.add_argument("--quantity", choices=SWEEP_QUANTITIES, default="log_det")
    return parser


def _normalize(args):
    # --alpha doubles as a grid spec for sweep; everywhere else it is a number
    if args.command != "sweep" and args.alpha is not None:
        args.alpha = float(args.alpha)
    if args.s is not None and args.command not in ("dyson-fit",):
        args.s = float(args.s)
    if args.n is not None and args.command not in ("sweep", "widom-fit"):
        args.n = float(args.n)
    if args.gamma is not None and not (0 < args.gamma <= 1):
        raise DomainError(f"gamma must lie in (0, 1], got {args.gamma}")
    if args.jobs < 1:
        raise DomainError("--jobs must be >= 1")
    if args.quad_order is not None and args.quad_order < 1:
        raise DomainError("--quad-order must be >= 1")
    if args.fd_step is not None and not args.fd_step > 0:
        raise DomainError("--fd-step must be positive")
    PrecisionConfig(args.digits)


def _flatten(rec):
    row = {"command": rec["command"]}
    for section in ("inputs", "outputs", "provenance"):
        for k, v in rec[section].items():
            row[f"{section}.{k}"] = json.dumps(v) if isinstance(v, list) else v
    return row


def _emit(records, fmt, out):
    if fmt == "jsonl":
        for rec in records:
            out.write(json.dumps(rec) + "\n")
        return
    writer = None
    for rec in records:
        row = _flatten(rec)
        if writer is None:
            writer = csv.DictWriter(out, fieldnames=list(row), lineterminator="\n")
            writer.writeheader()
        writer.writerow(row)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        _normalize(args)
        records = list(COMMANDS[args.command](args))
    except (UsageError, DomainError, ValueError) as exc:
        print(f"gapprob: error: {' '.join(str(exc).split())}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFault as exc:
        print(f"gapprob: numerical fault: {' '.join(str(exc).split())}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(records, args.format, out)
    if args.command == "selftest" and not all(r["outputs"]["passed"] for r in records):
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run())
