"""Command line interface.

Subcommands:
  verify      run a campaign from a JSON config and emit a report
  eval        evaluate the weighted integral for one parameter point
  specialize  show the parameter recipe for a named classical operator

Exit codes: 0 success, 1 usage or configuration error, 2 campaign found
bound violations or identity failures.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .campaign import CampaignConfig, ConfigError, exit_code, run_campaign
from .operators import (
    Function1D,
    OperatorParams,
    constant,
    lambda_factor,
    left_integral,
    monomial,
    specialize,
)
from .oracles import monomial_integral
from .reporting import render_csv, render_json, write_report

_GRAMMAR = (
    "function grammar: const:<c> | pow:<sigma>[*<c>] | poly:<c0,c1,...> | "
    "sin:<a,b> (a + b*sin t) | exp:<a,b> (a + b*exp t)"
)


def parse_function_spec(text):
    """Parse a small function grammar into (Function1D, metadata)."""
    kind, sep, rest = text.partition(":")
    if not sep:
        raise ValueError(f"bad function spec {text!r}; {_GRAMMAR}")
    try:
        if kind == "const":
            c = float(rest)
            return constant(c), ("const", c)
        if kind == "pow":
            sigma_text, star, coef_text = rest.partition("*")
            sigma = float(sigma_text)
            coef = float(coef_text) if star else 1.0
            return monomial(sigma, coef), ("pow", sigma, coef)
        if kind == "poly":
            coeffs = tuple(float(v) for v in rest.split(","))
            ev = lambda t: np.polynomial.polynomial.polyval(
                np.asarray(t, dtype=float), coeffs
            )
            return Function1D(ev, label=f"poly{coeffs}"), ("poly", coeffs)
        if kind == "sin":
            off_text, _, amp_text = rest.partition(",")
            off, amp = float(off_text), float(amp_text)
            ev = lambda t: off + amp * np.sin(np.asarray(t, dtype=float))
            return Function1D(ev, label=f"{off:g}+{amp:g}*sin"), ("sin", off, amp)
        if kind == "exp":
            off_text, _, amp_text = rest.partition(",")
            off, amp = float(off_text), float(amp_text)
            ev = lambda t: off + amp * np.exp(np.asarray(t, dtype=float))
            return Function1D(ev, label=f"{off:g}+{amp:g}*exp"), ("exp", off, amp)
    except ValueError as exc:
        raise ValueError(f"bad function spec {text!r}: {exc}; {_GRAMMAR}") from exc
    raise ValueError(f"unknown function kind {kind!r}; {_GRAMMAR}")


def _closed_form(params, meta, x):
    """Independent value for specs with one, else None."""
    if params.lower != 0.0:
        return None
    kind = meta[0]
    if kind == "const":
        return meta[1] * lambda_factor(params, x)
    if kind == "pow":
        sigma, coef = meta[1], meta[2]
        if sigma <= -params.rho * (params.eta + 1.0):
            return None
        return coef * monomial_integral(params, sigma, x)
    if kind == "poly":
        return sum(
            c * monomial_integral(params, float(k), x)
            for k, c in enumerate(meta[1])
        )
    return None


def _cmd_verify(args):
    cfg = CampaignConfig.from_json(args.config)
    report = run_campaign(cfg, threads=args.threads)
    fmt = args.format or cfg.format
    out = args.out or cfg.out
    if out:
        write_report(report, out, fmt)
        print(f"report: {out}")
    else:
        text = render_json(report) if fmt == "json" else render_csv(report)
        sys.stdout.write(text)
    figures_dir = args.figures or cfg.figures
    if figures_dir:
        from .figures import render_figures

        for path in render_figures(report, figures_dir):
            print(f"figure: {path}")
    total = report.summary["total"]
    stream = sys.stdout if out else sys.stderr
    print(
        f"cases={total['cases']} violations={total['violations']} "
        f"identity_failures={total['identity_failures']} "
        f"excluded_by_refinement={total['excluded_by_refinement']}",
        file=stream,
    )
    return exit_code(report)


def _cmd_eval(args):
    params = OperatorParams(
        alpha=args.alpha,
        beta=args.beta,
        rho=args.rho,
        eta=args.eta,
        kappa=args.kappa,
        lower=args.a,
    )
    fn, meta = parse_function_spec(args.f)
    value = left_integral(params, fn, args.x, n=args.n)
    print(f"left_integral = {value!r}")
    if params.lower == 0.0:
        print(f"lambda_factor = {lambda_factor(params, args.x)!r}")
    oracle = _closed_form(params, meta, args.x)
    if oracle is not None:
        denom = abs(oracle) if oracle != 0.0 else 1.0
        print(f"closed_form = {oracle!r}")
        print(f"relative_difference = {abs(value - oracle) / denom!r}")
    return 0


def _cmd_specialize(args):
    directive = specialize(args.name)
    doc = {
        "name": directive.name,
        "fixed": directive.fixed,
        "rules": list(directive.rules),
        "limit": directive.limit,
        "rho_sequence": list(directive.rho_sequence),
        "numeric": directive.numeric,
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fracineq",
        description="Verification toolkit for weighted fractional integral bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a campaign from a JSON config")
    p_verify.add_argument("config", help="path to the campaign config JSON")
    p_verify.add_argument("--out", default=None, help="report output path")
    p_verify.add_argument(
        "--format", choices=("json", "csv"), default=None, help="report format"
    )
    p_verify.add_argument(
        "--threads", type=int, default=None, help="worker threads (default: cpu count)"
    )
    p_verify.add_argument(
        "--figures", default=None, metavar="DIR", help="also render PNG figures"
    )
    p_verify.set_defaults(handler=_cmd_verify)

    p_eval = sub.add_parser("eval", help="evaluate the integral at one point")
    p_eval.add_argument("--alpha", type=float, required=True)
    p_eval.add_argument("--beta", type=float, default=0.0)
    p_eval.add_argument("--rho", type=float, default=1.0)
    p_eval.add_argument("--eta", type=float, default=0.0)
    p_eval.add_argument("--kappa", type=float, default=0.0)
    p_eval.add_argument("--a", type=float, default=0.0, help="lower endpoint")
    p_eval.add_argument("--x", type=float, required=True)
    p_eval.add_argument("--f", required=True, help=_GRAMMAR)
    p_eval.add_argument("--n", type=int, default=48, help="quadrature order")
    p_eval.set_defaults(handler=_cmd_eval)

    p_spec = sub.add_parser("specialize", help="show a classical operator recipe")
    p_spec.add_argument("name")
    p_spec.set_defaults(handler=_cmd_specialize)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
