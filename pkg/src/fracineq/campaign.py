"""Randomized verification campaigns over parameter grids.

A campaign walks the configured parameter grids, draws deterministic
function samples per cell, evaluates every check at quadrature orders n
and 2n, and keeps the 2n values. Cases whose two evaluations disagree
beyond quad_tol are flagged and excluded from violation statistics
rather than silently trusted.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .inequalities import (
    YOUNG_DUAL_ITEMS,
    YOUNG_ITEMS_3,
    YOUNG_ITEMS_4,
    POLYA_ITEMS,
    CheckResult,
    YoungExponents,
    classical_gruss_check,
    function_family_sampler,
    gruss_check,
    lemma1_residual,
    lemma2_check,
    lemma3_residual,
    polya_szego_suite_check,
    ratio_bounded_pair,
    theorem2_check,
    young_suite_check,
)
from .operators import monomial, specialize
from .oracles import hadamard_log_monomial, monomial_integral, rl_monomial
from .operators import Function1D, left_integral

import numpy as np

SUITES = (
    "lemma1",
    "lemma2",
    "lemma3",
    "theorem1",
    "theorem2",
    "young3",
    "young4",
    "polya5",
    "classical",
    "specializations",
)

# suites built on the positive-measure bound machinery: eta must be >= 0
_BOUND_SUITES = frozenset(SUITES) - {"classical", "specializations"}

# variants whose residual field is an agreement check against an
# independent value and is gated by identity_tol
RESIDUAL_GATED_VARIANTS = frozenset(
    {"identity", "classical", "rl_monomial", "ek_monomial"}
)

_GRID_KEYS = ("alpha", "beta", "rho", "eta", "kappa", "x", "gamma")
_TOL_KEYS = ("identity_tol", "margin_tol", "quad_tol")


class ConfigError(ValueError):
    """Campaign configuration rejected; message carries the reason."""


@dataclass(frozen=True)
class CampaignConfig:
    alpha: tuple
    beta: tuple
    rho: tuple
    eta: tuple
    kappa: tuple
    x: tuple
    gamma: tuple
    suites: tuple
    cases_per_cell: int = 1
    seed: int = 0
    young_p: tuple = (1.5, 2.0, 3.0)
    identity_tol: float = 1e-8
    margin_tol: float = 1e-9
    quad_tol: float = 1e-9
    n: int = 48
    out: Optional[str] = None
    format: str = "json"
    figures: Optional[str] = None

    def __post_init__(self):
        for key in _GRID_KEYS:
            grid = getattr(self, key)
            if not grid:
                raise ConfigError(f"grid {key!r} must be non-empty")
            if not all(isinstance(v, float) and math.isfinite(v) for v in grid):
                raise ConfigError(f"grid {key!r} must hold finite numbers, got {grid}")
        if not self.suites:
            raise ConfigError("at least one suite is required")
        for s in self.suites:
            if s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}; known: {list(SUITES)}")
        bound = [s for s in self.suites if s in _BOUND_SUITES]
        if bound and min(self.eta) < 0.0:
            raise ConfigError(
                f"suites {bound} need eta >= 0, but the eta grid contains "
                f"{min(self.eta)}"
            )
        if self.cases_per_cell < 1:
            raise ConfigError("cases_per_cell must be >= 1")
        for key in _TOL_KEYS:
            if not (getattr(self, key) > 0.0):
                raise ConfigError(f"{key} must be positive")
        if self.n < 4:
            raise ConfigError("quadrature order n must be >= 4")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.format!r}")
        if not all(p > 1.0 for p in self.young_p):
            raise ConfigError("young_p entries must exceed 1")

    @classmethod
    def from_json(cls, path):
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"{path}:{exc.lineno}:{exc.colno}: malformed JSON ({exc.msg})"
            ) from exc
        if not isinstance(doc, dict):
            raise ConfigError(f"{path}: top level must be an object")
        return cls.from_dict(doc, origin=path)

    @classmethod
    def from_dict(cls, doc, origin="<config>"):
        known = {
            "grids",
            "suites",
            "cases_per_cell",
            "seed",
            "young_p",
            "tolerances",
            "n",
            "out",
            "format",
            "figures",
        }
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"{origin}: unknown keys {sorted(unknown)}")
        grids = doc.get("grids")
        if not isinstance(grids, dict):
            raise ConfigError(f"{origin}: 'grids' object is required")
        bad = set(grids) - set(_GRID_KEYS)
        if bad:
            raise ConfigError(f"{origin}: unknown grid keys {sorted(bad)}")
        kwargs = {}
        for key in _GRID_KEYS:
            if key not in grids:
                raise ConfigError(f"{origin}: grid {key!r} is required")
            try:
                kwargs[key] = tuple(float(v) for v in grids[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{origin}: grid {key!r} must be numeric") from exc
        suites = doc.get("suites")
        if not isinstance(suites, list) or not all(isinstance(s, str) for s in suites):
            raise ConfigError(f"{origin}: 'suites' must be a list of names")
        kwargs["suites"] = tuple(suites)
        tols = doc.get("tolerances", {})
        if not isinstance(tols, dict) or set(tols) - set(_TOL_KEYS):
            raise ConfigError(f"{origin}: 'tolerances' may set only {_TOL_KEYS}")
        for key in _TOL_KEYS:
            if key in tols:
                kwargs[key] = float(tols[key])
        if "cases_per_cell" in doc:
            kwargs["cases_per_cell"] = int(doc["cases_per_cell"])
        if "seed" in doc:
            kwargs["seed"] = int(doc["seed"])
        if "young_p" in doc:
            kwargs["young_p"] = tuple(float(v) for v in doc["young_p"])
        if "n" in doc:
            kwargs["n"] = int(doc["n"])
        for key in ("out", "figures"):
            if doc.get(key) is not None:
                kwargs[key] = str(doc[key])
        if "format" in doc:
            kwargs["format"] = str(doc["format"])
        try:
            return cls(**kwargs)
        except ConfigError as exc:
            raise ConfigError(f"{origin}: {exc}") from exc

    def echo(self):
        """Round-trippable plain-dict form for the report header."""
        return {
            "grids": {k: list(getattr(self, k)) for k in _GRID_KEYS},
            "suites": list(self.suites),
            "cases_per_cell": self.cases_per_cell,
            "seed": self.seed,
            "young_p": list(self.young_p),
            "tolerances": {k: getattr(self, k) for k in _TOL_KEYS},
            "n": self.n,
            "out": self.out,
            "format": self.format,
            "figures": self.figures,
        }


@dataclass
class CaseRow:
    """One reported check plus its campaign bookkeeping flags."""

    suite: str
    result: CheckResult
    gating: bool
    refinement_ok: bool


@dataclass
class Report:
    config: dict
    rows: list
    summary: dict
    wall_time_s: float
    version: str = "1"


def _core_cells(cfg):
    return itertools.product(cfg.alpha, cfg.beta, cfg.rho, cfg.eta, cfg.kappa, cfg.x)


def _case_seed(cfg, suite, ordinal):
    return cfg.seed + SUITES.index(suite) * 1_000_003 + ordinal


def _agree(a, b, tol):
    if a is None or b is None:
        return a is None and b is None
    scale = abs(a) + abs(b) + 1.0
    return abs(a - b) <= tol * scale


def _gated(build, cfg):
    """Evaluate at n and 2n; keep 2n values, flag disagreement."""
    rows_n = build(cfg.n)
    rows_2n = build(2 * cfg.n)
    out = []
    for rn, r2 in zip(rows_n, rows_2n):
        ok = (
            _agree(rn.result.lhs, r2.result.lhs, cfg.quad_tol)
            and _agree(rn.result.rhs, r2.result.rhs, cfg.quad_tol)
            and _agree(rn.result.residual, r2.result.residual, cfg.quad_tol)
        )
        r2.refinement_ok = ok
        out.append(r2)
    return out


def _poly_degree(ordinal):
    return 2 + ordinal % 3


def _jobs_lemma1(cfg):
    from .operators import OperatorParams

    ordinal = 0
    for al, be, rho, eta, kap, x in _core_cells(cfg):
        for _ in range(cfg.cases_per_cell):
            params = OperatorParams(al, be, rho, eta, kap, 0.0)
            seed = _case_seed(cfg, "lemma1", ordinal)
            case_id = f"lemma1:{ordinal:05d}"
            deg = _poly_degree(ordinal)

            def job(params=params, x=x, seed=seed, case_id=case_id, deg=deg):
                def build(n):
                    u = function_family_sampler(seed, "polynomial", deg, x)
                    r = lemma1_residual(params, u, x, n=n, case_id=case_id, seed=seed)
                    return [CaseRow("lemma1", r, True, True)]

                return _gated(build, cfg)

            yield job
            ordinal += 1


def _jobs_lemma3(cfg):
    from .operators import OperatorParams

    ordinal = 0
    for al, be, rho, eta, kap, x in _core_cells(cfg):
        for gamma in cfg.gamma:
            for _ in range(cfg.cases_per_cell):
                params = OperatorParams(al, be, rho, eta, kap, 0.0)
                seed = _case_seed(cfg, "lemma3", ordinal)
                case_id = f"lemma3:{ordinal:05d}"
                deg = _poly_degree(ordinal)

                def job(params=params, gamma=gamma, x=x, seed=seed,
                        case_id=case_id, deg=deg):
                    def build(n):
                        u = function_family_sampler(seed, "polynomial", deg, x)
                        r = lemma3_residual(
                            params, gamma, u, x, n=n, case_id=case_id, seed=seed
                        )
                        return [CaseRow("lemma3", r, True, True)]

                    return _gated(build, cfg)

                yield job
                ordinal += 1


def _jobs_lemma2(cfg):
    from .operators import OperatorParams

    ordinal = 0
    for al, be, rho, eta, kap, x in _core_cells(cfg):
        for gamma in cfg.gamma:
            for _ in range(cfg.cases_per_cell):
                params = OperatorParams(al, be, rho, eta, kap, 0.0)
                seed = _case_seed(cfg, "lemma2", ordinal)
                case_id = f"lemma2:{ordinal:05d}"
                deg = _poly_degree(ordinal)

                def job(params=params, gamma=gamma, x=x, seed=seed,
                        case_id=case_id, deg=deg):
                    def build(n):
                        f = function_family_sampler(2 * seed + 1, "polynomial", deg, x)
                        g = function_family_sampler(2 * seed + 2, "polynomial", deg, x)
                        r = lemma2_check(
                            params, gamma, f.f, g.f, x, n=n, case_id=case_id, seed=seed
                        )
                        return [CaseRow("lemma2", r, True, True)]

                    return _gated(build, cfg)

                yield job
                ordinal += 1


def _jobs_theorem1(cfg):
    from .operators import OperatorParams

    ordinal = 0
    for al, be, rho, eta, kap, x in _core_cells(cfg):
        for _ in range(cfg.cases_per_cell):
            params = OperatorParams(al, be, rho, eta, kap, 0.0)
            seed = _case_seed(cfg, "theorem1", ordinal)
            case_id = f"theorem1:{ordinal:05d}"
            deg = _poly_degree(ordinal)

            def job(params=params, x=x, seed=seed, case_id=case_id, deg=deg):
                def build(n):
                    f = function_family_sampler(2 * seed + 1, "polynomial", deg, x)
                    g = function_family_sampler(2 * seed + 2, "polynomial", deg, x)
                    rows = []
                    for variant, gating in (("quarter", True), ("as_printed", False)):
                        r = gruss_check(
                            params, f, g, x, variant=variant, n=n,
                            case_id=case_id, seed=seed,
                        )
                        rows.append(CaseRow("theorem1", r, gating, True))
                    return rows

                return _gated(build, cfg)

            yield job
            ordinal += 1


def _jobs_theorem2(cfg):
    from .operators import OperatorParams

    ordinal = 0
    for al, be, rho, eta, kap, x in _core_cells(cfg):
        for gamma in cfg.gamma:
            for _ in range(cfg.cases_per_cell):
                params = OperatorParams(al, be, rho, eta, kap, 0.0)
                seed = _case_seed(cfg, "theorem2", ordinal)
                case_id = f"theorem2:{ordinal:05d}"
                deg = _poly_degree(ordinal)

                def job(params=params, gamma=gamma, x=x, seed=seed,
                        case_id=case_id, deg=deg):
                    def build(n):
                        f = function_family_sampler(2 * seed + 1, "polynomial", deg, x)
                        g = function_family_sampler(2 * seed + 2, "polynomial", deg, x)
                        r = theorem2_check(
                            params, gamma, f, g, x, n=n, case_id=case_id, seed=seed
                        )
                        return [CaseRow("theorem2", r, True, True)]

                    return _gated(build, cfg)

                yield job
                ordinal += 1


def _young_jobs(cfg, suite, items):
    from .operators import OperatorParams

    ordinal = 0
    for al, be, rho, eta, kap, x in _core_cells(cfg):
        for _ in range(cfg.cases_per_cell):
            params = OperatorParams(al, be, rho, eta, kap, 0.0)
            seed = _case_seed(cfg, suite, ordinal)
            base_id = f"{suite}:{ordinal:05d}"
            deg = _poly_degree(ordinal)

            def job(params=params, x=x, seed=seed, base_id=base_id, deg=deg):
                def build(n):
                    f = function_family_sampler(
                        2 * seed + 1, "polynomial", deg, x, positive=True
                    )
                    g = function_family_sampler(
                        2 * seed + 2, "polynomial", deg, x, positive=True
                    )
                    rows = []
                    for p in cfg.young_p:
                        exps = YoungExponents(p)
                        for item in items:
                            cid = f"{base_id}:{item}:p{p:g}"
                            r = young_suite_check(
                                params, f.f, g.f, exps, x, item,
                                variant="as_proved", n=n, case_id=cid, seed=seed,
                            )
                            rows.append(CaseRow(suite, r, True, True))
                            if item in YOUNG_DUAL_ITEMS:
                                r = young_suite_check(
                                    params, f.f, g.f, exps, x, item,
                                    variant="as_printed", n=n, case_id=cid, seed=seed,
                                )
                                rows.append(CaseRow(suite, r, False, True))
                    return rows

                return _gated(build, cfg)

            yield job
            ordinal += 1


def _jobs_polya5(cfg):
    from .operators import OperatorParams

    ordinal = 0
    for al, be, rho, eta, kap, x in _core_cells(cfg):
        for _ in range(cfg.cases_per_cell):
            params = OperatorParams(al, be, rho, eta, kap, 0.0)
            seed = _case_seed(cfg, "polya5", ordinal)
            base_id = f"polya5:{ordinal:05d}"
            deg = _poly_degree(ordinal)

            def job(params=params, x=x, seed=seed, base_id=base_id, deg=deg):
                def build(n):
                    pair = ratio_bounded_pair(seed, x, degree=deg)
                    rows = []
                    for item in POLYA_ITEMS:
                        r = polya_szego_suite_check(
                            params, pair, x, item, n=n,
                            case_id=f"{base_id}:{item}", seed=seed,
                        )
                        rows.append(CaseRow("polya5", r, True, True))
                    return rows

                return _gated(build, cfg)

            yield job
            ordinal += 1


def _jobs_classical(cfg):
    ordinal = 0
    for x in cfg.x:
        for _ in range(cfg.cases_per_cell):
            seed = _case_seed(cfg, "classical", ordinal)
            case_id = f"classical:{ordinal:05d}"

            def job(x=x, seed=seed, case_id=case_id):
                def build(n):
                    f = function_family_sampler(2 * seed + 1, "polynomial", 3, x)
                    g = function_family_sampler(2 * seed + 2, "trig_series", 4, x)
                    r = classical_gruss_check(
                        f, g, 0.0, x, n=n, case_id=case_id, seed=seed
                    )
                    return [CaseRow("classical", r, True, True)]

                return _gated(build, cfg)

            yield job
            ordinal += 1


_SPECIALIZATION_SIGMAS = (0.5, 1.0, 2.0)
_EK_SIGMA = 1.3
_HADAMARD_NUS = (1.0, 2.5)
_HADAMARD_X = 2.0
_HADAMARD_TOL = 1e-2
_CLOSED_FORM_TOL = 1e-9


def _spec_row(case_id, suite, variant, params, x, lhs, rhs, margin, lam):
    r = CheckResult(
        case_id=case_id,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        residual=lhs - rhs,
        lambda_alpha=lam,
        lambda_gamma=None,
        params=params,
        gamma=None,
        x=x,
        seed=0,
        variant=variant,
    )
    return CaseRow(suite, r, True, True)


def _jobs_specializations(cfg):
    from .operators import lambda_factor

    def job():
        rows = []
        rl = specialize("riemann_liouville")
        idx = 0
        for al in cfg.alpha:
            for x in cfg.x:
                for sigma in _SPECIALIZATION_SIGMAS:
                    params = rl.params(al)
                    lhs = left_integral(params, monomial(sigma), x, n=cfg.n)
                    rhs = rl_monomial(al, sigma, x)
                    scale = abs(lhs) + abs(rhs) + 1.0
                    margin = _CLOSED_FORM_TOL * scale - abs(lhs - rhs)
                    rows.append(
                        _spec_row(
                            f"specializations:rl:{idx:04d}", "specializations",
                            "rl_monomial", params, x, lhs, rhs, margin,
                            lambda_factor(params, x),
                        )
                    )
                    idx += 1
        ek = specialize("erdelyi_kober")
        idx = 0
        for al in cfg.alpha:
            for rho in cfg.rho:
                for eta in cfg.eta:
                    x = cfg.x[0]
                    params = ek.params(al, rho=rho, eta=eta)
                    lhs = left_integral(params, monomial(_EK_SIGMA), x, n=cfg.n)
                    rhs = monomial_integral(params, _EK_SIGMA, x)
                    scale = abs(lhs) + abs(rhs) + 1.0
                    margin = _CLOSED_FORM_TOL * scale - abs(lhs - rhs)
                    rows.append(
                        _spec_row(
                            f"specializations:ek:{idx:04d}", "specializations",
                            "ek_monomial", params, x, lhs, rhs, margin,
                            lambda_factor(params, x),
                        )
                    )
                    idx += 1
        had = specialize("hadamard")
        idx = 0
        for al in cfg.alpha[:2]:
            for nu in _HADAMARD_NUS:
                fn = Function1D(
                    lambda t, nu=nu: np.log(np.asarray(t, dtype=float)) ** nu,
                    label=f"log^{nu:g}",
                )
                rhs = hadamard_log_monomial(al, nu, _HADAMARD_X)
                prev_rel = None
                for step, rho in enumerate(had.rho_sequence):
                    params = had.params(al, rho=rho)
                    lhs = left_integral(params, fn, _HADAMARD_X, n=cfg.n)
                    rel = abs(lhs - rhs) / abs(rhs)
                    if prev_rel is None:
                        margin = 1.0
                    else:
                        margin = prev_rel - rel
                    if step == len(had.rho_sequence) - 1:
                        margin = min(margin, _HADAMARD_TOL - rel)
                    rows.append(
                        _spec_row(
                            f"specializations:hadamard:{idx:04d}", "specializations",
                            "hadamard_limit", params, _HADAMARD_X, lhs, rhs, margin,
                            lambda_factor(params, _HADAMARD_X),
                        )
                    )
                    prev_rel = rel
                    idx += 1
        return rows

    yield job


_SUITE_JOBS = {
    "lemma1": _jobs_lemma1,
    "lemma2": _jobs_lemma2,
    "lemma3": _jobs_lemma3,
    "theorem1": _jobs_theorem1,
    "theorem2": _jobs_theorem2,
    "young3": lambda cfg: _young_jobs(cfg, "young3", YOUNG_ITEMS_3),
    "young4": lambda cfg: _young_jobs(cfg, "young4", YOUNG_ITEMS_4),
    "polya5": _jobs_polya5,
    "classical": _jobs_classical,
    "specializations": _jobs_specializations,
}


def _row_scale(result):
    return abs(result.lhs) + abs(result.rhs) + 1.0


def summarize(rows, cfg):
    suites = {}
    for row in rows:
        entry = suites.setdefault(
            row.suite,
            {
                "cases": 0,
                "violations": 0,
                "identity_failures": 0,
                "excluded_by_refinement": 0,
                "min_margin": None,
                "max_abs_residual": None,
            },
        )
        entry["cases"] += 1
        res = row.result
        if not row.refinement_ok:
            entry["excluded_by_refinement"] += 1
            continue
        scale = _row_scale(res)
        if row.gating:
            if res.margin < -cfg.margin_tol * scale:
                entry["violations"] += 1
            if entry["min_margin"] is None or res.margin < entry["min_margin"]:
                entry["min_margin"] = res.margin
        if res.residual is not None and res.variant in RESIDUAL_GATED_VARIANTS:
            if abs(res.residual) > cfg.identity_tol * scale:
                entry["identity_failures"] += 1
            if entry["max_abs_residual"] is None or abs(res.residual) > entry[
                "max_abs_residual"
            ]:
                entry["max_abs_residual"] = abs(res.residual)
    total = {
        "cases": sum(e["cases"] for e in suites.values()),
        "violations": sum(e["violations"] for e in suites.values()),
        "identity_failures": sum(e["identity_failures"] for e in suites.values()),
        "excluded_by_refinement": sum(
            e["excluded_by_refinement"] for e in suites.values()
        ),
    }
    return {"suites": suites, "total": total}


def run_campaign(cfg, threads=None):
    """Execute all configured suites; deterministic for a fixed config."""
    start = time.perf_counter()
    jobs = []
    for suite in cfg.suites:
        jobs.extend(_SUITE_JOBS[suite](cfg))
    if threads is None:
        threads = os.cpu_count() or 1
    threads = max(1, int(threads))
    if threads == 1:
        chunks = [job() for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda job: job(), jobs))
    rows = [row for chunk in chunks for row in chunk]
    summary = summarize(rows, cfg)
    wall = time.perf_counter() - start
    return Report(config=cfg.echo(), rows=rows, summary=summary, wall_time_s=wall)


def exit_code(report):
    total = report.summary["total"]
    if total["violations"] or total["identity_failures"]:
        return 2
    return 0
