"""Exact rational scalars and sparse weighted multivariate polynomials.

Scalars are :class:`fractions.Fraction`.  A monomial x_1^a1 ... x_n^an is
keyed by its exponent tuple ``(a1, ..., an)`` with trailing zeros stripped,
and carries the weight ``a1 + 2*a2 + ... + n*an``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Exponents = tuple  # canonical: no trailing zeros

Scalar = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or ``p`` (optional leading ``-``) into a Fraction."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(value: Scalar) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def canonical_exponents(exps: Iterable[int]) -> Exponents:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    if any(e < 0 for e in exps):
        raise ValueError("negative exponent")
    return tuple(exps)


def weight(exps: Exponents) -> int:
    return sum((j + 1) * a for j, a in enumerate(exps))


def monomial_key(exps: Exponents, nvars: int = 0):
    """Sort key for graded-lex order: weight first, then exponents lexicographically."""
    padded = tuple(exps) + (0,) * max(0, nvars - len(exps))
    return (weight(exps), padded)


def _add_exps(a: Exponents, b: Exponents) -> Exponents:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


class MultiPoly:
    """Sparse polynomial in x_1..x_n over the rationals.

    Instances are treated as immutable values.  ``nvars`` is informational;
    polynomials of different variable counts combine by zero-extension and
    compare equal whenever their terms agree.
    """

    __slots__ = ("_terms", "nvars")

    def __init__(self, terms: Mapping[Sequence[int], Scalar] | None = None, nvars: int = 0):
        clean: dict = {}
        if terms:
            for exps, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                key = canonical_exponents(exps)
                s = clean.get(key, 0) + c
                if s == 0:
                    clean.pop(key, None)
                else:
                    clean[key] = s
        self._terms = clean
        self.nvars = max([nvars] + [len(k) for k in clean])

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "MultiPoly":
        # terms already canonical and free of zeros
        p = cls.__new__(cls)
        p._terms = terms
        p.nvars = max([nvars] + [len(k) for k in terms])
        return p

    @classmethod
    def constant(cls, c: Scalar, nvars: int = 0) -> "MultiPoly":
        return cls({(): c}, nvars)

    @classmethod
    def var(cls, j: int, nvars: int = 0) -> "MultiPoly":
        """The variable x_j (1-based)."""
        if j < 1:
            raise ValueError("variables are numbered from 1")
        exps = [0] * j
        exps[j - 1] = 1
        return cls({tuple(exps): 1}, max(nvars, j))

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(canonical_exponents(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(k == () for k in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def weights(self) -> set:
        return {weight(k) for k in self._terms}

    def is_homogeneous(self, w: int) -> bool:
        return all(weight(k) == w for k in self._terms)

    def sorted_terms(self) -> list:
        """Terms in graded-lex order, largest monomial first."""
        n = self.nvars
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0], n), reverse=True)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == MultiPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.nvars)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return MultiPoly._raw(out, max(self.nvars, other.nvars))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({k: -c for k, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, MultiPoly):
            return poly_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = MultiPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: Scalar) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return MultiPoly._raw({}, self.nvars)
        return MultiPoly._raw({k: v * c for k, v in self._terms.items()}, self.nvars)

    def truncate_weight(self, cap: int) -> "MultiPoly":
        return MultiPoly._raw({k: c for k, c in self._terms.items() if weight(k) <= cap}, self.nvars)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def poly_mul(a: MultiPoly, b: MultiPoly, weight_cap: int | None = None) -> MultiPoly:
    """Exact product; with ``weight_cap`` every term of weight above the cap is dropped."""
    out: dict = {}
    if weight_cap is None:
        for ka, ca in a._terms.items():
            for kb, cb in b._terms.items():
                k = _add_exps(ka, kb)
                out[k] = out.get(k, 0) + ca * cb
    else:
        wb = [(kb, cb, weight(kb)) for kb, cb in b._terms.items()]
        for ka, ca in a._terms.items():
            room = weight_cap - weight(ka)
            if room < 0:
                continue
            for kb, cb, w in wb:
                if w > room:
                    continue
                k = _add_exps(ka, kb)
                out[k] = out.get(k, 0) + ca * cb
    out = {k: c for k, c in out.items() if c != 0}
    return MultiPoly._raw(out, max(a.nvars, b.nvars))


def poly_negative_terms(a: MultiPoly) -> list:
    """Terms with negative coefficient, in graded-lex order (largest monomial first)."""
    return [(k, c) for k, c in a.sorted_terms() if c < 0]


def poly_eval(a: MultiPoly, point: Sequence[Scalar]) -> Fraction:
    used = max([len(k) for k in a._terms] + [0])
    if len(point) < used:
        raise ValueError(f"need {used} values, got {len(point)}")
    pt = [Fraction(v) for v in point]
    total = Fraction(0)
    for k, c in a._terms.items():
        term = c
        for v, e in zip(pt, k):
            if e:
                term *= v**e
        total += term
    return total


def poly_exact_div(a: MultiPoly, d: MultiPoly) -> MultiPoly:
    """Quotient ``a / d`` when ``d`` divides ``a`` exactly; ValueError otherwise."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = max(a.nvars, d.nvars)
    lead_k, lead_c = max(d._terms.items(), key=lambda kv: monomial_key(kv[0], n))
    rem = a
    quot: dict = {}
    while not rem.is_zero():
        k, c = max(rem._terms.items(), key=lambda kv: monomial_key(kv[0], n))
        padded_k = k + (0,) * (n - len(k))
        padded_l = lead_k + (0,) * (n - len(lead_k))
        diff = [x - y for x, y in zip(padded_k, padded_l)]
        if any(e < 0 for e in diff):
            raise ValueError("polynomial division is not exact")
        qk = canonical_exponents(diff)
        qc = c / lead_c
        quot[qk] = quot.get(qk, 0) + qc
        rem = rem - poly_mul(MultiPoly._raw({qk: qc}, n), d)
    return MultiPoly({k: c for k, c in quot.items()}, n)


def format_monomial(exps: Exponents) -> str:
    parts = []
    for j, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{j}")
        elif e > 1:
            parts.append(f"x{j}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(a: MultiPoly | Scalar) -> str:
    """Render as ``coef*x1^a1*...`` terms joined by `` + `` / `` - ``."""
    if not isinstance(a, MultiPoly):
        return format_rational(a)
    if a.is_zero():
        return "0"
    out = []
    for k, c in a.sorted_terms():
        mag = abs(c)
        if k == ():
            body = format_rational(mag)
        elif mag == 1:
            body = format_monomial(k)
        else:
            body = f"{format_rational(mag)}*{format_monomial(k)}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TERM_RE = re.compile(r"^(\d+(?:/\d+)?)?((?:\*?x\d+(?:\^\d+)?)*)$")
_FACTOR_RE = re.compile(r"x(\d+)(?:\^(\d+))?")


def parse_poly(text: str, nvars: int = 0) -> MultiPoly:
    """Inverse of :func:`format_poly`."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    tokens = re.split(r"\s+([+-])\s+", s)
    signs = ["+"]
    first = tokens[0]
    if first.startswith("-"):
        signs[0] = "-"
        first = first[1:]
    chunks = [first] + tokens[2::2]
    signs += tokens[1::2]
    terms: dict = {}
    for sign, chunk in zip(signs, chunks):
        m = _TERM_RE.match(chunk)
        if m is None or not chunk:
            raise ValueError(f"malformed polynomial term: {chunk!r}")
        coef = parse_rational(m.group(1)) if m.group(1) else Fraction(1)
        if sign == "-":
            coef = -coef
        exps: list = []
        for vm in _FACTOR_RE.finditer(m.group(2) or ""):
            j = int(vm.group(1))
            e = int(vm.group(2)) if vm.group(2) else 1
            if j < 1:
                raise ValueError("variables are numbered from 1")
            if len(exps) < j:
                exps.extend([0] * (j - len(exps)))
            exps[j - 1] += e
        key = canonical_exponents(exps)
        terms[key] = terms.get(key, 0) + coef
    return MultiPoly(terms, nvars)


def parse_coefficient(text: str, ring: str):
    if ring == "rational":
        return parse_rational(text)
    return parse_poly(text)
