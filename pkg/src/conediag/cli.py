"""Command-line front end: analyze, validate, scan.

analyze runs the full pipeline (normalize, locate the cone point, rule out
competing critical points, certify minimality, build the log-space
quadratic, evaluate the asymptotic law, issue the verdict) and emits a
schema-versioned JSON report. validate additionally expands the exact
series and tabulates empirical/predicted ratios. scan looks for the first
nonpositive diagonal coefficient in exact arithmetic.

Exit codes: 0 a verdict was reached (positive, negative, or a clean scan),
2 a structural hypothesis failed (method inapplicable), 3 the method ran
but is inconclusive (degenerate Gamma, falsified minimality), 4 bad input.
Reports are deterministic for a fixed config except the timings block.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import time
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import asympt, geometry, series
from .polycore import (
    ParseError,
    Polynomial,
    Rat,
    is_exact,
    parse_polynomial,
    rat_str,
    to_rat,
    to_string,
)

EXIT_OK = 0
EXIT_INAPPLICABLE = 2
EXIT_INCONCLUSIVE = 3
EXIT_INPUT = 4

DEFAULT_ORDERS = {3: [10, 20, 30, 60], 4: [8, 16, 24]}
FALLBACK_ORDERS = [8, 16, 24]


class InputError(ValueError):
    """Malformed input file, flags, or parameters."""


class _Parser(argparse.ArgumentParser):
    """argparse front end whose usage errors exit with the input-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


@dataclasses.dataclass
class JobConfig:
    command: str
    input_path: str
    beta: Optional[Rat]
    scan_depth: int = 30
    orders: Optional[List[int]] = None
    backend: str = "exact"
    samples: int = 4096
    seed: int = 42
    out: Optional[str] = None
    fmt: str = "json"


def _parse_beta(text) -> Rat:
    """Accept "num/den" strings, decimal strings, and JSON numbers."""
    if isinstance(text, bool):
        raise InputError("beta must be a number or a num/den string")
    if isinstance(text, int):
        return Rat(text)
    if isinstance(text, float):
        return Rat(Fraction(str(text)))
    if isinstance(text, str):
        try:
            return Rat(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse beta {text!r}: {exc}") from None
    raise InputError(f"cannot parse beta of type {type(text).__name__}")


def load_input(path: str) -> Tuple[List[str], Polynomial, Optional[Rat]]:
    """Read the polynomial description file.

    The file is a JSON record with `variables`, exactly one of `terms`
    (list of {coeff, exps}) or `expression` (text), and an optional `beta`.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read input file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"input file is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("input file must hold a JSON object")
    variables = data.get("variables")
    if (
        not isinstance(variables, list)
        or not variables
        or not all(isinstance(v, str) and v for v in variables)
        or len(set(variables)) != len(variables)
    ):
        raise InputError("variables must be a nonempty list of distinct names")
    d = len(variables)
    has_terms = "terms" in data
    has_expr = "expression" in data
    if has_terms == has_expr:
        raise InputError("exactly one of terms/expression is required")
    if has_expr:
        expr = data["expression"]
        if not isinstance(expr, str):
            raise InputError("expression must be a string")
        try:
            P = parse_polynomial(expr, variables)
        except ParseError as exc:
            raise InputError(f"bad expression: {exc}") from None
    else:
        terms = data["terms"]
        if not isinstance(terms, list) or not terms:
            raise InputError("terms must be a nonempty list")
        acc = {}
        for t in terms:
            if not isinstance(t, dict) or set(t) != {"coeff", "exps"}:
                raise InputError("each term needs exactly the keys coeff and exps")
            exps = t["exps"]
            if (
                not isinstance(exps, list)
                or len(exps) != d
                or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exps)
            ):
                raise InputError(f"exps must be {d} nonnegative integers")
            try:
                coeff = to_rat(t["coeff"]) if not isinstance(t["coeff"], str) else Rat(
                    Fraction(t["coeff"].strip())
                )
            except (ValueError, ZeroDivisionError, TypeError) as exc:
                raise InputError(f"bad coefficient {t['coeff']!r}: {exc}") from None
            key = tuple(exps)
            acc[key] = acc.get(key, Rat(0)) + coeff
        P = Polynomial(d, acc)
    beta = _parse_beta(data["beta"]) if "beta" in data else None
    return list(variables), P, beta


# -- serialization helpers -------------------------------------------------

def _jf(x: float):
    """JSON-safe float: non-finite values become strings."""
    xf = float(x)
    if math.isfinite(xf):
        return xf
    return "inf" if xf > 0 else ("-inf" if xf < 0 else "nan")


def _jr(x) -> str:
    return rat_str(to_rat(x))


def _jnum(x):
    return _jr(x) if is_exact(x) else _jf(x)


def _jcomplex(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


def _jpoint(zs) -> list:
    return [_jr(z) if is_exact(z) else _jcomplex(complex(z)) for z in zs]


def _checklist_json(checks: Sequence[asympt.Check]) -> list:
    return [{"name": c.name, "passed": c.passed, "evidence": c.evidence} for c in checks]


def _estimate_json(est: asympt.AsymptoticEstimate) -> dict:
    return {
        "C_full_decimal": _jf(est.C_full),
        "C_full_sign": 1 if est.C_full > 0 else (-1 if est.C_full < 0 else 0),
        "C_exact_square": None if est.C_exact_square is None else _jr(est.C_exact_square),
        "rho": [_jr(r) for r in est.rho],
        "alpha": _jnum(est.alpha),
        "qstar_one": _jr(est.qstar_one),
        "gamma_args": [_jnum(g) for g in est.gamma_args],
    }


def _matrix_json(M) -> list:
    return [[_jr(v) for v in row] for row in M]


def _certificate_json(cert: geometry.MinimalityCertificate) -> dict:
    return {
        "status": cert.status,
        "samples": cert.samples,
        "collar": cert.collar,
        "min_modulus": None if cert.min_modulus is None else _jf(cert.min_modulus),
        "argmin": None if cert.argmin is None else [_jcomplex(z) for z in cert.argmin],
        "witness": None if cert.witness is None else [_jcomplex(z) for z in cert.witness],
        "transform_numerator": None
        if cert.transform_numerator is None
        else str(cert.transform_numerator),
    }


# -- pipeline ---------------------------------------------------------------

class _Inapplicable(Exception):
    def __init__(self, stage: str, reason: str):
        super().__init__(reason)
        self.stage = stage
        self.reason = reason


class _Analysis:
    """Mutable result bundle for one pipeline run."""

    def __init__(self) -> None:
        self.spec = None
        self.constant: Optional[Rat] = None
        self.prefactor: float = 1.0
        self.cone: Optional[geometry.ConePoint] = None
        self.cones_on_torus: int = 0
        self.smooth: Optional[list] = None
        self.cert: Optional[geometry.MinimalityCertificate] = None
        self.M = None
        self.qd: Optional[asympt.QuadraticData] = None
        self.est: Optional[asympt.AsymptoticEstimate] = None
        self.verdict: Optional[asympt.Verdict] = None
        self.timings: dict = {}
        self.skipped: dict = {}
        self.error: Optional[dict] = None


def _fold_prefactor(est: asympt.AsymptoticEstimate, c: Rat, beta) -> asympt.AsymptoticEstimate:
    """Scale the estimate by c^(-beta) for the constant pulled out of P."""
    if c == 1:
        return est
    b = to_rat(beta)
    if c > 0:
        pref = float(c) ** (-float(b))
    else:
        if b.denominator != 1:
            raise InputError("negative leading constant needs an integer beta")
        pref = (-1.0 if int(b.numerator) % 2 else 1.0) * float(-c) ** (-float(b))
    sq = est.C_exact_square
    if sq is not None:
        two_beta = 2 * b
        sq = sq * c ** (-int(two_beta.numerator))
    return dataclasses.replace(est, C_full=pref * est.C_full, C_exact_square=sq)


def _prefactor_sign(c: Rat, beta) -> int:
    b = to_rat(beta)
    if c > 0:
        return 1
    if b.denominator != 1:
        raise InputError("negative leading constant needs an integer beta")
    return -1 if int(b.numerator) % 2 else 1


def run_pipeline(P: Polynomial, beta: Rat, cfg: JobConfig) -> _Analysis:
    """Execute the analysis stages, keeping partial results on failure."""
    out = _Analysis()
    try:
        out.spec, out.constant = series.make_spec(P, beta)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _prefactor_sign(out.constant, beta)
    Pn = out.spec.P

    t0 = time.perf_counter()
    try:
        try:
            cones = geometry.find_cone_point(Pn)
        except geometry.NoConePointError as exc:
            raise _Inapplicable("cone_point", str(exc)) from None
        base = cones[0].moduli()
        on_torus = [
            c
            for c in cones
            if all(abs(m - b) <= 1e-9 * max(1.0, abs(b)) for m, b in zip(c.moduli(), base))
        ]
        out.cones_on_torus = len(on_torus)
        if len(on_torus) > 1:
            raise _Inapplicable(
                "cone_point", f"{len(on_torus)} cone points share the minimal torus"
            )
        out.cone = cones[0]
        if not out.cone.is_rational:
            raise _Inapplicable("cone_point", "cone point is not rational")
        out.timings["cone_point"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        out.smooth = geometry.solve_smooth_critical(Pn, out.cone.moduli(), seed=cfg.seed)
        out.timings["smooth_critical"] = time.perf_counter() - t0
        if out.smooth:
            raise _Inapplicable(
                "smooth_critical",
                f"{len(out.smooth)} smooth critical points share the minimal torus",
            )

        t0 = time.perf_counter()
        out.cert = geometry.certify_minimality(Pn, out.cone, samples=cfg.samples, seed=cfg.seed)
        out.timings["minimality"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        try:
            out.M = asympt.log_hessian(Pn, out.cone)
            out.qd = asympt.dual_form(out.M)
        except asympt.MethodInapplicableError as exc:
            raise _Inapplicable("quadratic", str(exc)) from None
        out.timings["quadratic"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        degenerate: Optional[str] = None
        try:
            est = asympt.asymptotic_estimate(out.spec, out.cone, out.qd)
            out.est = _fold_prefactor(est, out.constant, beta)
        except asympt.DegenerateGammaError as exc:
            degenerate = str(exc)
        except asympt.MethodInapplicableError as exc:
            raise _Inapplicable("estimate", str(exc)) from None
        out.timings["estimate"] = time.perf_counter() - t0

        d = Pn.dim
        checks = [
            asympt.Check(
                "cone_point_unique",
                True,
                f"1 cone point on the minimal torus, {len(cones)} candidate(s) total",
            ),
            asympt.Check("gradient_vanishes", True, "exact rational verification"),
            asympt.Check(
                "no_smooth_critical_on_torus", True, "multistart solver found none"
            ),
            asympt.Check(
                "lorentzian_signature",
                out.qd.inertia == (1, d - 1, 0),
                f"inertia {out.qd.inertia}",
            ),
            asympt.Check(
                "qstar_one_positive",
                out.qd.qstar_one > 0,
                f"q*(1) = {rat_str(out.qd.qstar_one)}",
            ),
            asympt.Check(
                "minimality_certificate",
                out.cert.status != "Falsified",
                out.cert.status,
            ),
            asympt.Check(
                "gamma_finite",
                degenerate is None,
                "both Gamma arguments finite" if degenerate is None else degenerate,
            ),
        ]
        out.verdict = asympt.verdict(out.est, out.cert, checks)
    except _Inapplicable as exc:
        out.error = {"type": "MethodInapplicable", "stage": exc.stage, "reason": exc.reason}
        for stage in ("cone_point", "smooth_critical", "minimality", "quadratic", "estimate"):
            if stage not in out.timings:
                out.skipped[stage] = f"not reached: {exc.stage} failed"
    return out


def _exit_code(a: _Analysis) -> int:
    if a.error is not None:
        return EXIT_INAPPLICABLE
    if a.verdict is not None and a.verdict.status in (
        "UltimatelyPositive",
        "UltimatelyNegative",
    ):
        return EXIT_OK
    return EXIT_INCONCLUSIVE


def _base_report(cfg: JobConfig, variables: List[str], P: Polynomial, beta: Rat) -> dict:
    return {
        "schema": 1,
        "command": cfg.command,
        "input": {
            "variables": variables,
            "polynomial": to_string(P, variables),
            "beta": _jr(beta),
            "dimension": P.dim,
        },
        "config": {
            "backend": cfg.backend,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "scan_depth": cfg.scan_depth,
            "orders": cfg.orders,
        },
    }


def _analysis_report(rep: dict, a: _Analysis) -> dict:
    rep["normalization"] = {
        "constant": None if a.constant is None else _jr(a.constant),
        "note": "report concerns (P/constant)^(-beta) scaled by constant^(-beta)",
    }
    if a.cone is not None:
        rep["cone_point"] = {
            "Zstar": _jpoint(a.cone.Zstar),
            "tstar": None if a.cone.tstar is None else _jr(a.cone.tstar),
            "moduli": [_jf(m) for m in a.cone.moduli()],
            "rational": a.cone.is_rational,
            "evidence": {k: str(v) for k, v in sorted(a.cone.multiplicity_evidence.items())},
            "candidates_on_minimal_torus": a.cones_on_torus,
        }
    else:
        rep["cone_point"] = None
    rep["smooth_critical_points"] = (
        None
        if a.smooth is None
        else [
            {"Z": [_jcomplex(z) for z in s.Z], "residuals": [_jf(r) for r in s.residuals]}
            for s in a.smooth
        ]
    )
    rep["certificate"] = None if a.cert is None else _certificate_json(a.cert)
    rep["quadratic"] = (
        None
        if a.qd is None
        else {
            "M": _matrix_json(a.qd.M),
            "inertia": list(a.qd.inertia),
            "det": _jr(a.qd.det),
            "Minv": _matrix_json(a.qd.Minv),
            "qstar_one": _jr(a.qd.qstar_one),
        }
    )
    rep["estimate"] = None if a.est is None else _estimate_json(a.est)
    rep["verdict"] = (
        None
        if a.verdict is None
        else {
            "status": a.verdict.status,
            "conditional": a.verdict.conditional,
            "reason": a.verdict.reason,
            "checklist": _checklist_json(a.verdict.checklist),
        }
    )
    rep["skipped"] = a.skipped
    rep["error"] = a.error
    rep["timings"] = {k: round(v, 6) for k, v in a.timings.items()}
    return rep


# -- validation and scan ------------------------------------------------------

def _default_orders(d: int) -> List[int]:
    return list(DEFAULT_ORDERS.get(d, FALLBACK_ORDERS))


def _validation_table(a: _Analysis, orders: List[int], backend: str) -> dict:
    spec = a.spec
    est = a.est
    nmax = max(orders)
    t0 = time.perf_counter()
    box = series.expand_power(spec, (nmax,) * spec.d, backend=backend)
    diag = series.diagonal_of(box)
    elapsed = time.perf_counter() - t0
    pref = a.prefactor
    rows = []
    deltas = []
    for n in orders:
        emp = pref * float(diag.values[n])
        pred = est.predicted(n)
        ratio = emp / pred if pred != 0 and math.isfinite(pred) else math.nan
        rows.append(
            {
                "n": n,
                "empirical": _jf(emp),
                "predicted": _jf(pred),
                "ratio": _jf(ratio),
            }
        )
        if n > 0 and math.isfinite(ratio):
            deltas.append(abs(ratio - 1.0))
    monotone = all(b <= a_ for a_, b in zip(deltas, deltas[1:]))
    return {
        "orders": orders,
        "backend": backend,
        "rows": rows,
        "tail_monotone": monotone,
        "seconds": round(elapsed, 6),
    }


def _scan_result(spec, depth: int, sign: int) -> dict:
    box = series.expand_power(spec, (depth,) * spec.d, backend="exact")
    diag = series.diagonal_of(box)
    if sign > 0:
        values = list(diag.values)
        first = series.positivity_scan(diag)
    else:
        # sign-adjusted values no longer satisfy the a_0 = 1 invariant
        values = [-v for v in diag.values]
        first = next((n for n, v in enumerate(values) if v <= 0), None)
    return {
        "depth": depth,
        "prefactor_sign": sign,
        "first_nonpositive": first,
        "signs": ["+" if v > 0 else ("0" if v == 0 else "-") for v in values],
    }


# -- output -------------------------------------------------------------------

def _dump_report(rep: dict) -> str:
    return json.dumps(rep, indent=2, sort_keys=True, allow_nan=False)


def _tsv_analyze(rep: dict) -> str:
    lines = ["key\tvalue"]
    v = rep.get("verdict") or {}
    lines.append(f"status\t{v.get('status')}")
    lines.append(f"conditional\t{v.get('conditional')}")
    lines.append(f"reason\t{v.get('reason')}")
    est = rep.get("estimate") or {}
    for key in ("C_full_decimal", "C_exact_square", "alpha", "qstar_one"):
        lines.append(f"{key}\t{est.get(key)}")
    if est:
        lines.append("rho\t" + ",".join(est.get("rho", [])))
    cone = rep.get("cone_point") or {}
    if cone:
        zs = cone.get("Zstar", [])
        lines.append(
            "cone_point\t" + ",".join(z if isinstance(z, str) else repr(z) for z in zs)
        )
    cert = rep.get("certificate") or {}
    lines.append(f"certificate\t{cert.get('status')}")
    err = rep.get("error")
    if err:
        lines.append(f"error\t{err['stage']}: {err['reason']}")
    return "\n".join(lines) + "\n"


def _tsv_validate(rep: dict) -> str:
    lines = ["n\tempirical\tpredicted\tratio"]
    for row in (rep.get("validation") or {}).get("rows", []):
        lines.append(f"{row['n']}\t{row['empirical']}\t{row['predicted']}\t{row['ratio']}")
    return "\n".join(lines) + "\n"


def _tsv_scan(rep: dict) -> str:
    scan = rep.get("scan") or {}
    lines = ["n\tsign"]
    for n, s in enumerate(scan.get("signs", [])):
        lines.append(f"{n}\t{s}")
    first = scan.get("first_nonpositive")
    lines.append(f"first_nonpositive\t{'none' if first is None else first}")
    return "\n".join(lines) + "\n"


def _emit(rep: dict, cfg: JobConfig) -> None:
    text = _dump_report(rep)
    if cfg.fmt == "tsv":
        table = {"analyze": _tsv_analyze, "validate": _tsv_validate, "scan": _tsv_scan}[
            cfg.command
        ](rep)
        sys.stdout.write(table)
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
            with open(cfg.out + ".tsv", "w", encoding="utf-8") as fh:
                fh.write(table)
    else:
        sys.stdout.write(text + "\n")
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")


# -- commands -------------------------------------------------------------------

def _prepare(cfg: JobConfig) -> Tuple[List[str], Polynomial, Rat]:
    variables, P, beta_file = load_input(cfg.input_path)
    beta = cfg.beta if cfg.beta is not None else beta_file
    if beta is None:
        raise InputError("beta is required (flag --beta or input field)")
    return variables, P, beta


def cmd_analyze(cfg: JobConfig) -> int:
    variables, P, beta = _prepare(cfg)
    analysis = run_pipeline(P, beta, cfg)
    rep = _analysis_report(_base_report(cfg, variables, P, beta), analysis)
    _emit(rep, cfg)
    return _exit_code(analysis)


def cmd_validate(cfg: JobConfig) -> int:
    variables, P, beta = _prepare(cfg)
    analysis = run_pipeline(P, beta, cfg)
    rep = _analysis_report(_base_report(cfg, variables, P, beta), analysis)
    code = _exit_code(analysis)
    if analysis.est is None:
        rep["validation"] = None
        rep["skipped"]["validation"] = "no asymptotic estimate to validate against"
    else:
        orders = cfg.orders if cfg.orders else _default_orders(P.dim)
        backend = cfg.backend
        if backend == "exact" and not analysis.spec.has_exact_beta:
            backend = "float"
        analysis.prefactor = _pref_float(analysis.constant, beta)
        try:
            table = _validation_table(analysis, orders, backend)
        except series.MemoryCapExceeded as exc:
            raise InputError(f"validation orders exceed the memory cap: {exc}") from None
        rep["validation"] = table
        rep["timings"]["validation"] = table.pop("seconds")
    _emit(rep, cfg)
    return code


def _pref_float(c: Rat, beta) -> float:
    b = to_rat(beta)
    if c > 0:
        return float(c) ** (-float(b))
    return (-1.0 if int(b.numerator) % 2 else 1.0) * float(-c) ** (-float(b))


def cmd_scan(cfg: JobConfig) -> int:
    variables, P, beta = _prepare(cfg)
    if cfg.scan_depth < 0:
        raise InputError("scan depth must be nonnegative")
    try:
        spec, c = series.make_spec(P, beta)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if not spec.has_exact_beta:
        raise InputError("scan needs a rational beta")
    sign = _prefactor_sign(c, beta)
    rep = _base_report(cfg, variables, P, beta)
    rep["normalization"] = {"constant": _jr(c), "note": "signs include constant^(-beta)"}
    t0 = time.perf_counter()
    try:
        rep["scan"] = _scan_result(spec, cfg.scan_depth, sign)
    except series.MemoryCapExceeded as exc:
        raise InputError(f"scan depth exceeds the memory cap: {exc}") from None
    rep["timings"] = {"scan": round(time.perf_counter() - t0, 6)}
    _emit(rep, cfg)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="conediag",
        description="Diagonal asymptotics and ultimate positivity of P^(-beta)",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_text in (
        ("analyze", "run the asymptotic pipeline and report a verdict"),
        ("validate", "analyze, then compare against the exact series"),
        ("scan", "search the exact diagonal for a nonpositive entry"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="JSON polynomial description")
        p.add_argument("--beta", default=None, help="exponent, num/den or decimal")
        p.add_argument("--scan-depth", type=int, default=30, dest="scan_depth")
        p.add_argument("--orders", default=None, help="comma-separated validation orders")
        p.add_argument("--backend", choices=["exact", "float"], default="exact")
        p.add_argument("--samples", type=int, default=4096)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.add_argument("--format", choices=["json", "tsv"], default="json", dest="fmt")
    return parser


def _config_from_args(args: argparse.Namespace) -> JobConfig:
    beta = _parse_beta(args.beta) if args.beta is not None else None
    orders = None
    if args.orders is not None:
        try:
            orders = sorted({int(tok) for tok in args.orders.split(",") if tok.strip()})
        except ValueError:
            raise InputError(f"bad --orders value {args.orders!r}") from None
        if not orders or orders[0] < 0:
            raise InputError("--orders needs nonnegative integers")
    if args.samples <= 0:
        raise InputError("--samples must be positive")
    return JobConfig(
        command=args.command,
        input_path=args.input,
        beta=beta,
        scan_depth=args.scan_depth,
        orders=orders,
        backend=args.backend,
        samples=args.samples,
        seed=args.seed,
        out=args.out,
        fmt=args.fmt,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        handler = {"analyze": cmd_analyze, "validate": cmd_validate, "scan": cmd_scan}[
            cfg.command
        ]
        return handler(cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
