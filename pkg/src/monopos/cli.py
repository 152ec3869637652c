"""Command-line front end.

Every subcommand prints one JSON (or text) report and exits with
0 when everything checked holds, 1 on a violation, 2 on bad input.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import positivity as pos
from . import structmat as sm
from .algebra import format_poly, parse_rational

SCHEMA_VERSION = "1.0"
ORDER_ENV = "MONOPOS_ORDER"
SYMBOLIC_ORDER = 12
SCALAR_ORDER = 200

BAD_STATUSES = frozenset({"violated", "fails", "not_found", "no_n_exists", "inconclusive"})


@dataclass
class VerdictReport:
    command: str
    inputs: dict
    verdicts: list = field(default_factory=list)
    certified_order: int = 0
    runtime_ms: int = 0
    schema_version: str = SCHEMA_VERSION
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "certified_order": self.certified_order,
            "verdicts": self.verdicts,
            "data": self.data,
            "runtime_ms": self.runtime_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerdictReport":
        return cls(d["command"], d["inputs"], d["verdicts"], d["certified_order"],
                   d["runtime_ms"], d["schema_version"], d.get("data", {}))

    @property
    def violated(self) -> bool:
        return any(v.get("status") in BAD_STATUSES for v in self.verdicts)


def emit_report(report: VerdictReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"{report.command}  (schema {report.schema_version})"]
    for k, v in report.inputs.items():
        lines.append(f"  {k} = {v}")
    lines.append(f"certified order: {report.certified_order}")
    for v in report.verdicts:
        lines.append(f"- [{v.get('status')}] {v.get('context') or v.get('name') or v.get('kind')}")
        viol = v.get("violation")
        if viol:
            lines.append(f"    first negative: t^{viol['t_power']} {viol['monomial']} "
                         f"coefficient {viol['coefficient']}")
        failure = v.get("failure")
        if failure:
            lines.append(f"    failure: {json.dumps(failure)}")
        for item in v.get("per_n", []):
            where = item.get("violation", {}).get("t_power")
            tail = f"first negative at t^{where}" if where is not None else "nonnegative to order"
            lines.append(f"    N={item['N']}: {item['status']} ({tail})")
        cert = v.get("no_n_certificate")
        if cert and cert["fires"]:
            ks = cert["nonpositive_power_sums"]
            lines.append(f"    no N can work: s_k <= 0 at k = {ks[:10]}{' ...' if len(ks) > 10 else ''}")
    for k, v in report.data.items():
        lines.append(f"{k}: {json.dumps(v)}")
    lines.append(f"runtime: {report.runtime_ms} ms")
    return "\n".join(lines)


def parse_report(text: str) -> VerdictReport:
    return VerdictReport.from_dict(json.loads(text))


# --- argument handling ------------------------------------------------------

class UsageError(Exception):
    pass


def _csv_rationals(text: str) -> list:
    try:
        return [parse_rational(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _default_order(symbolic: bool) -> int:
    env = os.environ.get(ORDER_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ORDER_ENV} must be an integer, got {env!r}")
    return SYMBOLIC_ORDER if symbolic else SCALAR_ORDER


def _spectrum(args) -> pos.SpectrumInput:
    try:
        if args.spectrum:
            return pos.SpectrumInput.from_file(args.spectrum)
        if args.lambdas:
            return pos.SpectrumInput.from_lambdas(_csv_rationals(args.lambdas))
        if args.f_coeffs:
            return pos.SpectrumInput.from_f_coeffs(_csv_rationals(args.f_coeffs))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad spectrum input: {exc}") from exc
    raise UsageError("one of --spectrum, --lambdas, --f-coeffs is required")


def _positive(name: str, value: int, minimum: int = 1):
    if value < minimum:
        raise UsageError(f"--{name} must be >= {minimum}")


# --- commands -------------------------------------------------------------

def cmd_fn_expand(args) -> VerdictReport:
    order = args.order if args.order is not None else _default_order(True)
    _positive("n", args.n, 0)
    f = sm.fn_recursive(args.n, order)
    graded = all(c.is_homogeneous(j) for j, c in enumerate(f.coeffs))
    verdicts = [sm.IdentityReport("weight_grading", graded, f"t^j coefficient of f_{args.n} has weight j",
                                  {"order": order}).to_dict()]
    if 1 <= args.n <= 6:
        agree = sm.fn_direct_oracle(args.n).truncate(order).same_coeffs(f)
        verdicts.append(sm.IdentityReport("oracle", agree, "recursion equals cofactor determinant",
                                          {"n": args.n}).to_dict())
    return VerdictReport("fn-expand", {"n": args.n, "order": order}, verdicts, order,
                         data={"f_n": f.to_json()})


def cmd_verify_main(args) -> VerdictReport:
    order = args.order if args.order is not None else _default_order(True)
    _positive("n", args.n)
    v = pos.verify_main(args.n, order)
    gammas = [format_poly(c) for c in v.checked.coeffs[1:]]
    return VerdictReport("verify-main", {"n": args.n, "order": order}, [v.to_dict()], v.certified_order,
                         data={"gammas": gammas})


def _verify_quot(args, order: int) -> list:
    ks = [args.k] if args.k is not None else list(range(args.n))
    return [pos.verify_quotient_lemmas(args.n, k, order, "general").to_dict() for k in ks]


def cmd_verify(args) -> VerdictReport:
    lemma, n = args.lemma, args.n
    _positive("n", n)
    inputs = {"lemma": lemma, "n": n}
    data: dict = {}
    scalar = lemma == "xn2"
    order = args.order if args.order is not None else _default_order(not scalar)
    K = args.k if args.k is not None else 8
    try:
        if lemma in ("adjacent", "quot1", "vn", "wn"):
            which = {"adjacent": "adjacent", "quot1": "fractional", "vn": "v_n", "wn": "w_n"}[lemma]
            verdicts = [pos.verify_quotient_lemmas(n, None, order, which).to_dict()]
            inputs["order"] = order
            cert = order
        elif lemma == "quot":
            verdicts = _verify_quot(args, order)
            inputs.update(order=order, k=args.k)
            cert = order
        elif lemma == "cor1":
            verdicts = [pos.verify_cor1(n, K).to_dict()]
            inputs["k"] = K
            cert = K
        elif lemma == "diff1":
            verdicts = [sm.derivative_identity_check(n).to_dict()]
            cert = 0
        elif lemma == "trace":
            verdicts = [sm.trace_vector_check(n, K).to_dict()]
            inputs["k"] = K
            cert = K
        elif lemma == "determinants":
            verdicts = []
            for m in range(1, K + 1):
                g_det = sm.gamma_via_determinant(n, m)
                g_ser = sm.gamma_via_series(n, m)
                verdicts.append(sm.IdentityReport(
                    "determinants", g_det == g_ser, f"gamma_{m}({n}) via det T_{m}({n})",
                    {"n": n, "m": m, "gamma": format_poly(g_det)}).to_dict())
            inputs["k"] = K
            cert = K
        elif lemma == "xn2":
            verdicts = [sm.xn2_checks(n, order).to_dict()]
            inputs["order"] = order
            cert = order
        else:  # argparse restricts choices
            raise UsageError(f"unknown lemma {lemma!r}")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return VerdictReport("verify", inputs, verdicts, cert, data=data)


def cmd_min_root(args) -> VerdictReport:
    spec = _spectrum(args)
    order = args.order if args.order is not None else _default_order(False)
    _positive("order", order)
    _positive("nmax", args.nmax)
    r = pos.min_root_search(spec, order, args.nmax)
    if r.minimal_n is not None:
        cert = r.verdicts[r.minimal_n - 1].certified_order
    else:
        cert = max(v.certified_order for v in r.verdicts)
    return VerdictReport("min-root", {"spectrum": spec.to_dict(), "order": order, "nmax": args.nmax},
                         [r.to_dict()], cert)


def cmd_diagnostics(args) -> VerdictReport:
    spec = _spectrum(args)
    _positive("kmax", args.kmax)
    r = pos.spectrum_diagnostics(spec, args.kmax)
    return VerdictReport("diagnostics", {"spectrum": spec.to_dict(), "kmax": args.kmax}, [r.to_dict()], args.kmax)


def cmd_bh_realize(args) -> VerdictReport:
    spec = _spectrum(args)
    _positive("mmax", args.mmax)
    try:
        r = pos.bh_realize(spec, args.mmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return VerdictReport("bh-realize", {"spectrum": spec.to_dict(), "mmax": args.mmax}, [r.to_dict()], 0)


def cmd_gamma_det(args) -> VerdictReport:
    _positive("n", args.n)
    _positive("m", args.m)
    g = sm.gamma_via_determinant(args.n, args.m)
    agree = g == sm.gamma_via_series(args.n, args.m)
    v = sm.IdentityReport("determinants", agree, f"gamma_{args.m}({args.n}) = (-1)^(m-1) det T_m(n) / m!",
                          {"n": args.n, "m": args.m})
    return VerdictReport("gamma-det", {"n": args.n, "m": args.m}, [v.to_dict()], args.m,
                         data={"gamma": format_poly(g)})


LEMMAS = ("adjacent", "quot", "quot1", "cor1", "diff1", "trace", "determinants", "xn2", "vn", "wn")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--expect", choices=("certified", "violated"), default="certified",
                        help="'violated' inverts the exit code for counterexample fixtures")

    spectrum = argparse.ArgumentParser(add_help=False)
    g = spectrum.add_mutually_exclusive_group(required=True)
    g.add_argument("--spectrum", metavar="FILE", help="JSON file with lambdas / complex_pairs / f_coeffs")
    g.add_argument("--lambdas", metavar="CSV", help="e.g. --lambdas=1,9/10,-9/10")
    g.add_argument("--f-coeffs", metavar="CSV", help="coefficients of f(t), constant term first")

    p = argparse.ArgumentParser(prog="monopos", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fn-expand", parents=[common], help="expand f_n(t) = det(I - t X_n)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--order", type=int)
    s.set_defaults(func=cmd_fn_expand)

    s = sub.add_parser("verify-main", parents=[common], help="certify 1 - f_n^(1/n) monomially positive")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--order", type=int)
    s.set_defaults(func=cmd_verify_main)

    s = sub.add_parser("verify", parents=[common], help="check one of the supporting lemmas")
    s.add_argument("--lemma", choices=LEMMAS, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--order", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("min-root", parents=[common, spectrum], help="smallest N with 1 - f^(1/N) nonnegative")
    s.add_argument("--order", type=int)
    s.add_argument("--nmax", type=int, default=20)
    s.set_defaults(func=cmd_min_root)

    s = sub.add_parser("diagnostics", parents=[common, spectrum], help="power sums, JLL, companion, Perron")
    s.add_argument("--kmax", type=int, default=10)
    s.set_defaults(func=cmd_diagnostics)

    s = sub.add_parser("bh-realize", parents=[common, spectrum], help="search for nonnegative X_m realizations")
    s.add_argument("--mmax", type=int, default=50)
    s.set_defaults(func=cmd_bh_realize)

    s = sub.add_parser("gamma-det", parents=[common], help="gamma_m(n) through det T_m(n)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_gamma_det)
    return p


def exit_code(report: VerdictReport, expect: str = "certified") -> int:
    bad = report.violated
    if expect == "violated":
        return 0 if bad else 1
    return 1 if bad else 0


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    start = time.perf_counter()
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"monopos: error: {exc}", file=stderr)
        return 2
    report.runtime_ms = int((time.perf_counter() - start) * 1000)
    print(emit_report(report, args.format), file=stdout)
    return exit_code(report, args.expect)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
