"""Monomial-positivity certificates, the quotient lemmas, and spectrum diagnostics.

Every certificate is finite: a ``certified_nonneg_to_order`` verdict says
nothing about coefficients past ``certified_order``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .algebra import (
    MultiPoly,
    format_monomial,
    format_poly,
    format_rational,
    parse_rational,
    poly_negative_terms,
)
from .series import (
    MULTIPOLY,
    RATIONAL,
    TruncatedSeries,
    series_exp,
    series_log,
    series_log_derivative_sums,
    series_mul,
    series_pow,
    series_reciprocal,
)
from .structmat import (
    charpoly_from_musum,
    fn_recursive,
    monic_power_sums,
    specialize_series,
    trace_table,
)

CERTIFIED_TO_ORDER = "certified_nonneg_to_order"
CERTIFIED_EXACT = "certified_exact"
VIOLATED = "violated"


@dataclass(frozen=True)
class Violation:
    t_power: int
    monomial: tuple
    coefficient: Fraction

    def to_dict(self) -> dict:
        return {"t_power": self.t_power, "monomial": format_monomial(self.monomial),
                "coefficient": format_rational(self.coefficient)}


@dataclass(frozen=True)
class PositivityVerdict:
    status: str
    certified_order: int
    violation: Violation | None = None
    context: str = ""
    strictly_positive: bool = False
    checked: TruncatedSeries | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if (self.status == VIOLATED) != (self.violation is not None):
            raise ValueError("a verdict is violated exactly when it carries a violation")

    @property
    def ok(self) -> bool:
        return self.status != VIOLATED

    def to_dict(self, include_coefficients: bool = False) -> dict:
        d = {"kind": "positivity", "status": self.status, "certified_order": self.certified_order,
             "context": self.context, "strictly_positive": self.strictly_positive}
        if self.violation is not None:
            d["violation"] = self.violation.to_dict()
        if include_coefficients and self.checked is not None:
            d["coefficients"] = [format_poly(c) for c in self.checked.coeffs]
        return d


def _negatives(c) -> list:
    if isinstance(c, MultiPoly):
        return poly_negative_terms(c)
    return [((), c)] if c < 0 else []


def is_monomially_positive(F: TruncatedSeries, complement: bool = False,
                           context: str = "") -> PositivityVerdict:
    """Scan every t-coefficient for a negative monomial coefficient.

    With ``complement`` the object is read as 1 - sum gamma_j t^j and the
    gamma_j = -(coefficient of t^j in 1 - F ...) are checked, i.e. 1 - F is scanned.
    """
    G = (1 - F) if complement else F
    for j, c in enumerate(G.coeffs):
        neg = _negatives(c)
        if neg:
            exps, coef = neg[0]
            return PositivityVerdict(VIOLATED, j - 1, Violation(j, exps, coef), context, False, G)
    strict = G.order >= 1 and all(
        not (c.is_zero() if isinstance(c, MultiPoly) else c == 0) for c in G.coeffs[1:])
    status = CERTIFIED_EXACT if G.exact else CERTIFIED_TO_ORDER
    return PositivityVerdict(status, G.order, None, context, strict, G)


# --- theorem and lemma verifiers -----------------------------------------

def verify_main(n: int, order: int = 12) -> PositivityVerdict:
    """Certify 1 - f_n(t)^(1/n) monomially positive up to ``order``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    h = series_pow(fn_recursive(n, order), Fraction(1, n))
    return is_monomially_positive(h, complement=True, context=f"1 - f_{n}^(1/{n})")


def main_gammas(n: int, order: int = 12) -> list:
    """gamma_1..gamma_order of f_n^(1/n) = 1 - sum gamma_j t^j."""
    h = series_pow(fn_recursive(n, order), Fraction(1, n))
    return [-c for c in h.coeffs[1:]]


def verify_root_lower_bound(n: int, N: int, order: int = 200) -> PositivityVerdict:
    """Check 1 - f_n^(1/N) at x = (1, 0, ..., 0), where f_n = (1 - t)^n."""
    if N < 1 or n < 1:
        raise ValueError("need n >= 1 and N >= 1")
    point = [Fraction(1)] + [Fraction(0)] * (n - 1)
    f = specialize_series(fn_recursive(n, n), point)
    h = series_pow(f.truncate(order), Fraction(1, N))
    return is_monomially_positive(h, complement=True, context=f"1 - (1-t)^({n}/{N})")


QUOTIENT_KINDS = ("adjacent", "general", "fractional", "v_n", "w_n")


def v_series(n: int, order: int) -> TruncatedSeries:
    """V_n = sum_{i=2}^n (n-1)!/(n-i)! x_i f_{n-i} t^i / ((1 - x_1 t) f_{n-1})."""
    num = TruncatedSeries.constant(MultiPoly(), order, MULTIPOLY)
    for i in range(2, n + 1):
        scale = math.factorial(n - 1) // math.factorial(n - i)
        shift = [MultiPoly()] * i + [MultiPoly.var(i, n).scale(scale)]
        num = num + series_mul(TruncatedSeries.from_coeffs(shift, order, MULTIPOLY, exact=i <= order),
                               fn_recursive(n - i, order))
    den = series_mul(_one_minus_x1t(n, order), fn_recursive(n - 1, order))
    return series_mul(num, series_reciprocal(den))


def _one_minus_x1t(n: int, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_coeffs([MultiPoly.constant(1, n), -MultiPoly.var(1, n)],
                                       order, MULTIPOLY, exact=order >= 1)


def quotient_series(n: int, which: str, order: int, k: int | None = None) -> TruncatedSeries:
    if which == "adjacent":
        if n < 1:
            raise ValueError("adjacent quotient needs n >= 1")
        return fn_recursive(n - 1, order) / fn_recursive(n, order)
    if which == "general":
        if k is None or not 0 <= k < n:
            raise ValueError(f"general quotient needs 0 <= k < n, got n={n}, k={k}")
        return fn_recursive(k, order) / fn_recursive(n, order)
    if which == "fractional":
        if n < 1:
            raise ValueError("fractional quotient needs n >= 1")
        return series_mul(fn_recursive(n - 1, order),
                          series_pow(fn_recursive(n, order), Fraction(1 - n, n)))
    if which == "v_n":
        if n < 2:
            raise ValueError("V_n needs n >= 2")
        return v_series(n, order)
    if which == "w_n":
        if n < 2:
            raise ValueError("W_n needs n >= 2")
        base = series_mul(_one_minus_x1t(n, order), fn_recursive(n - 1, order))
        return series_mul(series_pow(base, Fraction(1, n)), v_series(n, order))
    raise ValueError(f"unknown quotient {which!r}; expected one of {QUOTIENT_KINDS}")


_QUOTIENT_LABELS = {
    "adjacent": "f_{m}/f_{n}",
    "general": "f_{k}/f_{n}",
    "fractional": "f_{m}/f_{n}^(1-1/{n})",
    "v_n": "V_{n}",
    "w_n": "W_{n}",
}


def verify_quotient_lemmas(n: int, k: int | None = None, order: int = 10,
                           which: str = "adjacent") -> PositivityVerdict:
    series = quotient_series(n, which, order, k)
    label = _QUOTIENT_LABELS[which].format(n=n, m=n - 1, k=k)
    return is_monomially_positive(series, context=label)


def verify_cor1(n: int, K: int = 8) -> PositivityVerdict:
    """t_k(n) - t_k(n-1) has no negative coefficient, k = 1..K (the t-power is k)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    hi, lo = trace_table(n, K), trace_table(n - 1, K)
    diffs = [MultiPoly()] + [a - b for a, b in zip(hi.t, lo.t)]
    series = TruncatedSeries.from_coeffs(diffs, K, MULTIPOLY, exact=False)
    return is_monomially_positive(series, context=f"t_k({n}) - t_k({n - 1}), k <= {K}")


# --- spectra -------------------------------------------------------------

def _expand_linear_factors(factors: Sequence[Sequence[Fraction]]) -> list:
    out = [Fraction(1)]
    for fac in factors:
        new = [Fraction(0)] * (len(out) + len(fac) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(fac):
                new[i + j] += a * b
        out = new
    return out


@dataclass(frozen=True)
class SpectrumInput:
    """A spectrum given as reals, conjugate pairs, or directly as f(t) = prod(1 - lambda t).

    A pair (a, b) with b != 0 stands for a +- bi; with b == 0 it is the single real a.
    """

    f_coeffs: tuple
    lambdas: tuple | None = None
    pairs: tuple | None = None

    def __post_init__(self):
        if not self.f_coeffs or self.f_coeffs[0] != 1:
            raise ValueError("f(t) must have constant coefficient 1")

    @classmethod
    def from_lambdas(cls, lambdas: Sequence, pairs: Sequence = ()) -> "SpectrumInput":
        lam = tuple(Fraction(v) for v in lambdas)
        prs = tuple((Fraction(a), Fraction(b)) for a, b in pairs)
        factors = [[Fraction(1), -v] for v in lam]
        for a, b in prs:
            if b == 0:
                factors.append([Fraction(1), -a])
            else:
                factors.append([Fraction(1), -2 * a, a * a + b * b])
        if not lam and not prs:
            raise ValueError("empty spectrum")
        return cls(_trim(_expand_linear_factors(factors)), lam, prs if prs else None)

    @classmethod
    def from_complex_pairs(cls, pairs: Sequence, lambdas: Sequence = ()) -> "SpectrumInput":
        return cls.from_lambdas(lambdas, pairs)

    @classmethod
    def from_f_coeffs(cls, coeffs: Sequence) -> "SpectrumInput":
        return cls(_trim([Fraction(c) for c in coeffs]))

    @classmethod
    def from_json(cls, data: dict) -> "SpectrumInput":
        def rat(v):
            return parse_rational(v) if isinstance(v, str) else Fraction(v)

        if "f_coeffs" in data:
            return cls.from_f_coeffs([rat(v) for v in data["f_coeffs"]])
        lam = [rat(v) for v in data.get("lambdas", [])]
        prs = [(rat(a), rat(b)) for a, b in data.get("complex_pairs", [])]
        if not lam and not prs:
            raise ValueError("spectrum JSON needs 'lambdas', 'complex_pairs' or 'f_coeffs'")
        return cls.from_lambdas(lam, prs)

    @classmethod
    def from_file(cls, path) -> "SpectrumInput":
        return cls.from_json(json.loads(Path(path).read_text()))

    @property
    def exact_roots(self) -> bool:
        return self.lambdas is not None or self.pairs is not None

    @property
    def size(self) -> int:
        """Number of listed eigenvalues (zeros included), else deg f."""
        if not self.exact_roots:
            return self.degree
        count = len(self.lambdas or ())
        for _, b in self.pairs or ():
            count += 1 if b == 0 else 2
        return count

    @property
    def degree(self) -> int:
        return len(self.f_coeffs) - 1

    def f_series(self, order: int) -> TruncatedSeries:
        return TruncatedSeries.from_coeffs(self.f_coeffs, order, RATIONAL)

    def to_dict(self) -> dict:
        d = {"f_coeffs": [format_rational(c) for c in self.f_coeffs]}
        if self.lambdas:
            d["lambdas"] = [format_rational(v) for v in self.lambdas]
        if self.pairs:
            d["complex_pairs"] = [[format_rational(a), format_rational(b)] for a, b in self.pairs]
        return d


def _trim(coeffs: list) -> tuple:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def power_sums(spec: SpectrumInput, K: int) -> list:
    """s_1..s_K from f'/f = -sum s_j t^(j-1); no roots are extracted."""
    if K < 1:
        return []
    return series_log_derivative_sums(spec.f_series(K))


@dataclass(frozen=True)
class MinRootReport:
    order: int
    n_max: int
    verdicts: tuple           # PositivityVerdict per N = 1..n_max
    minimal_n: int | None
    nonpositive_s: tuple      # k <= order with s_k <= 0
    spectrum: SpectrumInput

    @property
    def status(self) -> str:
        if self.minimal_n is not None:
            return CERTIFIED_TO_ORDER
        if self.nonpositive_s:
            return "no_n_exists"
        return "inconclusive"

    def to_dict(self) -> dict:
        per_n = []
        for N, v in enumerate(self.verdicts, start=1):
            d = v.to_dict()
            d["N"] = N
            per_n.append(d)
        return {
            "kind": "min_root", "status": self.status, "order": self.order, "n_max": self.n_max,
            "minimal_certified_n": self.minimal_n,
            "note": "certified to order only; not a proof of positivity beyond it",
            "no_n_certificate": {
                "fires": bool(self.nonpositive_s),
                "nonpositive_power_sums": list(self.nonpositive_s),
            },
            "per_n": per_n,
        }


def root_series(spec: SpectrumInput, N: int, order: int) -> TruncatedSeries:
    return series_pow(spec.f_series(order), Fraction(1, N))


def min_root_search(spec: SpectrumInput, order: int = 200, n_max: int = 20) -> MinRootReport:
    if n_max < 1 or order < 1:
        raise ValueError("need n_max >= 1 and order >= 1")
    verdicts = []
    for N in range(1, n_max + 1):
        h = root_series(spec, N, order)
        verdicts.append(is_monomially_positive(h, complement=True, context=f"1 - f^(1/{N})"))
    minimal = next((N for N, v in enumerate(verdicts, start=1) if v.ok), None)
    s = power_sums(spec, order)
    bad = tuple(k for k, sk in enumerate(s, start=1) if sk <= 0)
    return MinRootReport(order, n_max, tuple(verdicts), minimal, bad, spec)


def oracle_root_coefficient(spec: SpectrumInput, N: int, j: int) -> Fraction:
    """Coefficient of t^j in 1 - f^(1/N) recomputed as 1 - exp(log(f)/N)."""
    lg = series_log(spec.f_series(j))
    h = series_exp(lg / N)
    return -h[j] if j else 1 - h[0]


@dataclass(frozen=True)
class DiagnosticsReport:
    K: int
    power_sums: tuple
    jll_failures: tuple        # (m, k, lhs, rhs)
    jll_checked: int
    companion: PositivityVerdict
    perron: dict

    @property
    def necessary_ok(self) -> bool:
        return all(s >= 0 for s in self.power_sums) and not self.jll_failures

    @property
    def status(self) -> str:
        return "holds" if self.necessary_ok else "fails"

    def to_dict(self) -> dict:
        signs = []
        for k, s in enumerate(self.power_sums, start=1):
            signs.append({"k": k, "s_k": format_rational(s), "sign": (s > 0) - (s < 0)})
        return {
            "kind": "diagnostics", "status": self.status, "K": self.K,
            "power_sums": signs,
            "jll": {"checked": self.jll_checked, "all_hold": not self.jll_failures,
                    "failures": [{"m": m, "k": k, "lhs": format_rational(a), "rhs": format_rational(b)}
                                 for m, k, a, b in self.jll_failures]},
            "companion_nonnegative": self.companion.ok,
            "companion": self.companion.to_dict(),
            "perron": self.perron,
        }


def _perron_exact(spec: SpectrumInput) -> dict:
    # squared moduli keep everything rational
    items = [(v, v * v, True) for v in spec.lambdas or ()]
    for a, b in spec.pairs or ():
        if b == 0:
            items.append((a, a * a, True))
        else:
            items += [(None, a * a + b * b, False)] * 2
    if not items:
        return {"exact": True, "strict_dominance": False, "perron": None}
    top = max(m for _, m, _ in items)
    at_top = [(v, real) for v, m, real in items if m == top]
    ok = len(at_top) == 1 and at_top[0][1] and at_top[0][0] > 0
    return {"exact": True, "strict_dominance": ok,
            "perron": format_rational(at_top[0][0]) if ok else None}


def _perron_advisory(spec: SpectrumInput) -> dict:
    import numpy as np

    # roots of F(x) = x^d f(1/x): coefficients of f read as descending powers
    roots = np.roots([float(c) for c in spec.f_coeffs]) if spec.degree else np.array([])
    if roots.size == 0:
        return {"exact": False, "advisory": "advisory - not exact", "strict_dominance": False}
    mods = np.abs(roots)
    i = int(np.argmax(mods))
    lead = roots[i]
    others = np.delete(mods, i)
    ok = bool(abs(lead.imag) < 1e-12 and lead.real > 0 and (others.size == 0 or mods[i] - others.max() > 1e-9))
    return {"exact": False, "advisory": "advisory - not exact", "strict_dominance": ok,
            "perron_float": float(lead.real)}


def spectrum_diagnostics(spec: SpectrumInput, K: int = 10) -> DiagnosticsReport:
    s = power_sums(spec, K)
    n = spec.size
    failures = []
    checked = 0
    for m in range(1, K + 1):
        for k in range(1, K // m + 1):
            checked += 1
            lhs = Fraction(n) ** (k - 1) * s[k * m - 1]
            rhs = s[m - 1] ** k
            if lhs < rhs:
                failures.append((m, k, lhs, rhs))
    companion = is_monomially_positive(
        TruncatedSeries.from_coeffs(spec.f_coeffs, ring=RATIONAL), complement=True,
        context="1 - f(t) (companion matrix nonnegative)")
    perron = _perron_exact(spec) if spec.exact_roots else _perron_advisory(spec)
    return DiagnosticsReport(K, tuple(s), tuple(failures), checked, companion, perron)


@dataclass(frozen=True)
class RealizationReport:
    m_max: int
    found_m: int | None
    x: tuple | None
    charpoly: tuple | None   # det(xI - X_m) descending, when found
    target: tuple | None     # F(x) x^(m-n) descending
    verified: bool
    attempts: tuple          # (m, first k with x_k < 0)

    @property
    def status(self) -> str:
        return "found" if self.found_m is not None and self.verified else "not_found"

    def to_dict(self) -> dict:
        d = {"kind": "realization", "status": self.status, "m_max": self.m_max,
             "found_m": self.found_m,
             "note": "search over one family (zeros appended one at a time); "
                     "minimal within that family only"}
        if self.found_m is not None:
            d["x"] = [format_rational(v) for v in self.x]
            d["charpoly"] = [format_rational(v) for v in self.charpoly]
            d["target"] = [format_rational(v) for v in self.target]
            d["identity_verified"] = self.verified
        d["attempts"] = [{"m": m, "first_negative_k": k} for m, k in self.attempts]
        return d


def bh_realize(spec: SpectrumInput, m_max: int = 50) -> RealizationReport:
    """Search m = n..m_max for nonnegative x with det(xI - X_m) = F(x) x^(m-n)."""
    p = [Fraction(c) for c in spec.f_coeffs[1:]]
    n = len(p)
    if n < 1:
        raise ValueError("spectrum has no nonzero eigenvalue")
    attempts = []
    for m in range(n, m_max + 1):
        q = [p[i - 1] * Fraction(math.factorial(m - i), math.factorial(m)) for i in range(1, n + 1)]
        q += [Fraction(0)] * (m - n)
        x = monic_power_sums(q, m)
        neg = next((k for k, v in enumerate(x, start=1) if v < 0), None)
        if neg is not None:
            attempts.append((m, neg))
            continue
        check = charpoly_from_musum(q)
        target = tuple([Fraction(1)] + p + [Fraction(0)] * (m - n))
        ok = check.holds and check.charpoly == target and check.x == tuple(x)
        return RealizationReport(m_max, m, tuple(x), check.charpoly, target, ok, tuple(attempts))
    return RealizationReport(m_max, None, None, None, None, False, tuple(attempts))
