"""Truncated power series in t over the rationals or over MultiPoly.

A :class:`TruncatedSeries` stores c_0..c_M.  When ``exact`` is set the
series is a polynomial and every coefficient past ``order`` is known to be
zero, so it can be padded freely when combined with longer series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import MultiPoly, format_poly, parse_coefficient

RATIONAL = "rational"
MULTIPOLY = "multipoly"


class RingMismatch(TypeError):
    pass


def ring_of(c) -> str:
    if isinstance(c, MultiPoly):
        return MULTIPOLY
    if isinstance(c, (int, Fraction)):
        return RATIONAL
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def ring_zero(ring: str):
    return MultiPoly() if ring == MULTIPOLY else Fraction(0)


def ring_one(ring: str):
    return MultiPoly.constant(1) if ring == MULTIPOLY else Fraction(1)


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, MultiPoly) else c == 0


def _is_one(c) -> bool:
    return c == 1


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    coeffs: tuple
    order: int
    ring: str = RATIONAL
    exact: bool = False

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")
        if self.ring not in (RATIONAL, MULTIPOLY):
            raise ValueError(f"unknown ring {self.ring!r}")
        if self.exact is False:
            return
        # no further validation: an exact series is just a polynomial

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, order: int | None = None, ring: str | None = None,
                    exact: bool | None = None) -> "TruncatedSeries":
        """Build from a coefficient list, padding or truncating to ``order``.

        With ``exact`` left as None, the series is exact iff nothing nonzero
        was truncated away, i.e. the list is taken to be a whole polynomial.
        """
        coeffs = list(coeffs)
        if ring is None:
            ring = ring_of(coeffs[0]) if coeffs else RATIONAL
        coeffs = [Fraction(c) if ring == RATIONAL else c for c in coeffs]
        for c in coeffs:
            if ring_of(c) != ring:
                raise RingMismatch("mixed coefficient rings")
        if order is None:
            order = max(len(coeffs) - 1, 0)
        dropped = coeffs[order + 1:]
        if exact is None:
            exact = all(_is_zero(c) for c in dropped)
        coeffs = coeffs[: order + 1]
        coeffs += [ring_zero(ring)] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs), order, ring, exact)

    @classmethod
    def constant(cls, c, order: int, ring: str = RATIONAL) -> "TruncatedSeries":
        return cls.from_coeffs([c], order, ring, exact=True)

    @classmethod
    def one(cls, order: int, ring: str = RATIONAL) -> "TruncatedSeries":
        return cls.constant(ring_one(ring), order, ring)

    def __getitem__(self, j: int):
        if j < 0:
            raise IndexError(j)
        if j > self.order:
            if self.exact:
                return ring_zero(self.ring)
            raise IndexError(f"coefficient t^{j} is beyond order {self.order}")
        return self.coeffs[j]

    def degree(self) -> int:
        """Index of the last nonzero stored coefficient (-1 for zero)."""
        for j in range(self.order, -1, -1):
            if not _is_zero(self.coeffs[j]):
                return j
        return -1

    def is_zero(self) -> bool:
        return self.degree() < 0

    def _support(self) -> list:
        return [(i, c) for i, c in enumerate(self.coeffs) if not _is_zero(c)]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            if not self.exact:
                raise ValueError(f"cannot extend inexact series from order {self.order} to {order}")
            return TruncatedSeries.from_coeffs(self.coeffs, order, self.ring, exact=True)
        exact = self.exact and self.degree() <= order
        return TruncatedSeries(self.coeffs[: order + 1], order, self.ring, exact)

    def map(self, fn) -> "TruncatedSeries":
        """Apply ``fn`` to every coefficient; the result ring is re-inferred."""
        coeffs = [fn(c) for c in self.coeffs]
        ring = ring_of(coeffs[0])
        return TruncatedSeries.from_coeffs(coeffs, self.order, ring, exact=self.exact)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.order == other.order and self.ring == other.ring
                and self.exact == other.exact and self.coeffs == other.coeffs)

    def same_coeffs(self, other: "TruncatedSeries") -> bool:
        """Coefficient equality up to the common order, ignoring the exact flag."""
        m = min(self.order, other.order)
        return all(self[j] == other[j] for j in range(m + 1))

    def __add__(self, other):
        return series_add(self, _promote(other, self))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.order, self.ring, self.exact)

    def __sub__(self, other):
        return series_add(self, -_promote(other, self))

    def __rsub__(self, other):
        return series_add(_promote(other, self), -self)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction, MultiPoly)):
            return series_mul(self, _promote(other, self))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, series_reciprocal(other))
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1) / Fraction(other)
            return TruncatedSeries(tuple(c * inv for c in self.coeffs), self.order, self.ring, self.exact)
        return NotImplemented

    def __pow__(self, alpha):
        return series_pow(self, alpha)

    def __repr__(self):
        body = ", ".join(format_poly(c) for c in self.coeffs)
        return f"TruncatedSeries([{body}], order={self.order}, ring={self.ring}{', exact' if self.exact else ''})"

    def to_json(self) -> dict:
        ring = self.ring
        if ring == MULTIPOLY:
            n = max([c.nvars for c in self.coeffs] + [0])
            ring = f"multipoly({n})"
        return {"order": self.order, "ring": ring, "exact": self.exact,
                "coeffs": [format_poly(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        ring = RATIONAL if data["ring"] == RATIONAL else MULTIPOLY
        coeffs = [parse_coefficient(s, ring) for s in data["coeffs"]]
        return cls(tuple(coeffs), int(data["order"]), ring, bool(data.get("exact", False)))


def _promote(x, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, MultiPoly) and like.ring != MULTIPOLY:
        raise RingMismatch("polynomial scalar with a rational series")
    if like.ring == MULTIPOLY and not isinstance(x, MultiPoly):
        x = MultiPoly.constant(x)
    return TruncatedSeries.constant(x, like.order, like.ring)


def _common_order(a: TruncatedSeries, b: TruncatedSeries) -> int:
    if a.ring != b.ring:
        raise RingMismatch(f"cannot combine {a.ring} and {b.ring} series")
    if a.exact and b.exact:
        return max(a.order, b.order)
    if a.exact:
        return b.order
    if b.exact:
        return a.order
    return min(a.order, b.order)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    m = _common_order(a, b)
    coeffs = [a[j] + b[j] for j in range(m + 1)]
    exact = a.exact and b.exact
    return TruncatedSeries.from_coeffs(coeffs, m, a.ring, exact=exact)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the common order."""
    m = _common_order(a, b)
    zero = ring_zero(a.ring)
    out = [zero] * (m + 1)
    sb = [(i, c) for i, c in b._support() if i <= m]
    for i, ca in a._support():
        if i > m:
            break
        for k, cb in sb:
            if i + k > m:
                break
            out[i + k] = out[i + k] + ca * cb
    exact = a.exact and b.exact and max(a.degree(), 0) + max(b.degree(), 0) <= m
    return TruncatedSeries.from_coeffs(out, m, a.ring, exact=exact)


def _require_unit(a: TruncatedSeries, what: str):
    if not _is_one(a.coeffs[0]):
        raise ValueError(f"{what} needs constant term 1, got {format_poly(a.coeffs[0])}")


def series_reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    _require_unit(a, "reciprocal")
    m = a.order
    r = [ring_one(a.ring)]
    sup = [(i, c) for i, c in a._support() if i > 0]
    for j in range(1, m + 1):
        acc = ring_zero(a.ring)
        for i, c in sup:
            if i > j:
                break
            acc = acc + c * r[j - i]
        r.append(-acc)
    exact = a.exact and a.degree() == 0
    return TruncatedSeries.from_coeffs(r, m, a.ring, exact=exact)


def series_derivative(a: TruncatedSeries) -> TruncatedSeries:
    if a.order == 0:
        if not a.exact:
            raise ValueError("derivative of an order-0 series is unknown")
        return TruncatedSeries.constant(ring_zero(a.ring), 0, a.ring)
    coeffs = [a.coeffs[j] * j for j in range(1, a.order + 1)]
    return TruncatedSeries.from_coeffs(coeffs, a.order - 1, a.ring, exact=a.exact)


def series_antiderivative(a: TruncatedSeries) -> TruncatedSeries:
    coeffs = [ring_zero(a.ring)] + [c * Fraction(1, j + 1) for j, c in enumerate(a.coeffs)]
    return TruncatedSeries.from_coeffs(coeffs, a.order + 1, a.ring, exact=a.exact)


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    # a * L' = a'  =>  j l_j = j a_j - sum_{i=1}^{j-1} a_i (j-i) l_{j-i}
    _require_unit(a, "log")
    m = a.order
    zero = ring_zero(a.ring)
    sup = [(i, c) for i, c in a._support() if i > 0]
    lg = [zero]
    for j in range(1, m + 1):
        acc = a.coeffs[j] * j
        for i, c in sup:
            if i >= j:
                break
            acc = acc - c * lg[j - i] * (j - i)
        lg.append(acc * Fraction(1, j))
    exact = a.exact and a.degree() == 0
    return TruncatedSeries.from_coeffs(lg, m, a.ring, exact=exact)


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    # E' = a' E  =>  j e_j = sum_{i=1}^{j} i a_i e_{j-i}
    if not _is_zero(a.coeffs[0]):
        raise ValueError("exp needs a zero constant term")
    m = a.order
    sup = [(i, c) for i, c in a._support() if i > 0]
    e = [ring_one(a.ring)]
    for j in range(1, m + 1):
        acc = ring_zero(a.ring)
        for i, c in sup:
            if i > j:
                break
            acc = acc + c * e[j - i] * i
        e.append(acc * Fraction(1, j))
    exact = a.exact and a.is_zero()
    return TruncatedSeries.from_coeffs(e, m, a.ring, exact=exact)


def series_pow(a: TruncatedSeries, alpha) -> TruncatedSeries:
    """``a**alpha`` for rational ``alpha`` via the recurrence from a h' = alpha a' h.

    Coefficient-wise: j h_j = sum_{i=1}^{j} (alpha*i - (j-i)) a_i h_{j-i}.
    """
    _require_unit(a, "pow")
    alpha = Fraction(alpha)
    m = a.order
    sup = [(i, c) for i, c in a._support() if i > 0]
    h = [ring_one(a.ring)]
    for j in range(1, m + 1):
        acc = ring_zero(a.ring)
        for i, c in sup:
            if i > j:
                break
            w = alpha * i - (j - i)
            if w:
                acc = acc + c * h[j - i] * w
        h.append(acc * Fraction(1, j))
    out = TruncatedSeries.from_coeffs(h, m, a.ring, exact=False)
    if a.exact and _confirm_polynomial_root(a, out, alpha):
        out = TruncatedSeries(out.coeffs, m, a.ring, True)
    return out


def _confirm_polynomial_root(a: TruncatedSeries, h: TruncatedSeries, alpha: Fraction) -> bool:
    """True when h is provably the whole of a**alpha (a polynomial).

    If h is a polynomial of degree deg(a)*alpha that fits inside the order and
    h**q == a**p as polynomials (alpha = p/q), then h is the unique unit
    power series with that property.
    """
    p, q = alpha.numerator, alpha.denominator
    if p < 0:
        return a.degree() == 0
    target = a.degree() * alpha
    if target.denominator != 1 or target > h.order or h.degree() != target:
        return False
    big = int(a.degree() * p)
    ha = TruncatedSeries.from_coeffs(h.coeffs, big, a.ring, exact=True)
    aa = TruncatedSeries.from_coeffs(a.coeffs, big, a.ring, exact=True)
    return _int_pow(ha, q) == _int_pow(aa, p)


def _int_pow(a: TruncatedSeries, k: int) -> TruncatedSeries:
    out = TruncatedSeries.one(a.order, a.ring)
    for _ in range(k):
        out = series_mul(out, a)
    return out


def series_log_derivative_sums(f: TruncatedSeries) -> list:
    """Return s_1..s_M with f'/f = -sum_j s_j t^(j-1).

    For f = det(I - tA) these are the traces of A^j.
    """
    _require_unit(f, "log-derivative")
    if f.order == 0:
        return []
    q = series_mul(series_derivative(f), series_reciprocal(f.truncate(f.order - 1)))
    return [-c for c in q.coeffs]


def newton_power_sums(f_coeffs: Sequence, K: int) -> list:
    """Power sums s_1..s_K of the reciprocal roots of f = 1 + c_1 t + ... (Newton's identities).

    s_k = -k c_k - sum_{i=1}^{k-1} c_i s_{k-i}; works in any coefficient ring.
    """
    c = list(f_coeffs)
    if not c or c[0] != 1:
        raise ValueError("constant coefficient must be 1")
    zero = c[0] - c[0]
    sup = [(i, ci) for i, ci in enumerate(c) if i > 0 and not _is_zero(ci)]
    s = [zero]
    for k in range(1, K + 1):
        acc = c[k] * (-k) if k < len(c) else zero
        for i, ci in sup:
            if i >= k:
                break
            acc = acc - ci * s[k - i]
        s.append(acc)
    return s[1:]
