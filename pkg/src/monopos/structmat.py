"""The structured matrix X_n and everything computed from it.

X_n has x_1 on the diagonal, x_k on the (k-1)-th subdiagonal, the constants
1, 2, ..., n-1 on the superdiagonal and zeros above that.  Its reversed
characteristic polynomial is f_n(t) = det(I - t X_n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import MultiPoly, format_poly, poly_eval, poly_exact_div, poly_mul
from .series import (
    MULTIPOLY,
    RATIONAL,
    TruncatedSeries,
    newton_power_sums,
    series_log_derivative_sums,
    series_pow,
)


@dataclass(frozen=True)
class StructuredMatrix:
    n: int
    point: tuple | None  # None for the symbolic matrix
    rows: tuple

    @property
    def symbolic(self) -> bool:
        return self.point is None

    def entry(self, i: int, j: int):
        """1-based entry access."""
        return self.rows[i - 1][j - 1]

    def leading(self, k: int) -> "StructuredMatrix":
        """Leading k x k principal submatrix (equal to X_k)."""
        point = None if self.point is None else self.point[:k]
        return StructuredMatrix(k, point, tuple(r[:k] for r in self.rows[:k]))

    def to_json(self) -> list:
        return [[format_poly(e) for e in row] for row in self.rows]


def build_xn(n: int, point: Sequence | None = None) -> StructuredMatrix:
    """X_n, symbolic when ``point`` is None, otherwise specialized at x = point."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if point is None:
        xs = [MultiPoly.var(j, n) for j in range(1, n + 1)]
        lift = lambda c: MultiPoly.constant(c, n)
    else:
        if len(point) < n:
            raise ValueError(f"need {n} values, got {len(point)}")
        xs = [Fraction(v) for v in point[:n]]
        lift = Fraction
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j == i + 1:
                row.append(lift(i))
            elif j > i + 1:
                row.append(lift(0))
            else:
                row.append(xs[i - j])
        rows.append(tuple(row))
    pt = None if point is None else tuple(xs)
    return StructuredMatrix(n, pt, tuple(rows))


# --- f_n and F_n -----------------------------------------------------------

@lru_cache(maxsize=None)
def _fn_poly(n: int) -> tuple:
    """Coefficients of f_n(t) as a tuple of n+1 MultiPolys (memoized recursion)."""
    if n == 0:
        return (MultiPoly.constant(1),)
    x = [None] + [MultiPoly.var(j, n) for j in range(1, n + 1)]
    out = [MultiPoly() for _ in range(n + 1)]
    prev = _fn_poly(n - 1)
    for j, c in enumerate(prev):
        out[j] = out[j] + c
        out[j + 1] = out[j + 1] - x[1] * c
    for i in range(2, n + 1):
        scale = math.factorial(n - 1) // math.factorial(n - i)
        xi = x[i].scale(scale)
        for j, c in enumerate(_fn_poly(n - i)):
            out[j + i] = out[j + i] - xi * c
    return tuple(out)


def fn_recursive(n: int, order: int | None = None) -> TruncatedSeries:
    """f_n(t) via f_n = (1 - x_1 t) f_{n-1} - sum_i (n-1)!/(n-i)! x_i t^i f_{n-i}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    order = n if order is None else order
    return TruncatedSeries.from_coeffs(_fn_poly(n), order, MULTIPOLY)


def det_cofactor(rows: Sequence[Sequence], zero, one):
    """Laplace expansion along rows, memoized on the set of remaining columns."""
    n = len(rows)
    memo: dict = {}

    def minor(r: int, cols: tuple):
        if r == n:
            return one
        key = (r, cols)
        if key in memo:
            return memo[key]
        acc = zero
        for pos, c in enumerate(cols):
            e = rows[r][c]
            if isinstance(e, TruncatedSeries):
                if e.is_zero():
                    continue
            elif e == 0:
                continue
            term = e * minor(r + 1, cols[:pos] + cols[pos + 1:])
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def fn_direct_oracle(n: int) -> TruncatedSeries:
    """det(I - t X_n) by cofactor expansion with polynomial-in-t entries."""
    if n < 1:
        raise ValueError("n must be >= 1")
    X = build_xn(n)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            diag = MultiPoly.constant(1 if i == j else 0, n)
            row.append(TruncatedSeries.from_coeffs([diag, -X.rows[i][j]], n, MULTIPOLY, exact=True))
        rows.append(row)
    zero = TruncatedSeries.constant(MultiPoly(), n, MULTIPOLY)
    one = TruncatedSeries.one(n, MULTIPOLY)
    return det_cofactor(rows, zero, one)


def Fn_from_fn(n: int) -> list:
    """Coefficients of F_n(x) = det(xI - X_n), ascending powers of x."""
    return list(reversed(_fn_poly(n)))


def derivative_coeffs(coeffs: Sequence) -> list:
    return [c * k for k, c in enumerate(coeffs)][1:]


# --- matrix powers and traces -------------------------------------------

def matmul(a: Sequence[Sequence], b: Sequence[Sequence], weight_cap: int | None = None) -> list:
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = MultiPoly()
            for k in range(m):
                if a[i][k] and b[k][j]:
                    acc = acc + poly_mul(a[i][k], b[k][j], weight_cap)
            row.append(acc)
        out.append(row)
    return out


def matrix_powers(n: int, K: int) -> list:
    """[X_n^1, ..., X_n^K] with entries capped at weight K.

    Entry (i, j) of X_n^k is homogeneous of weight k + i - j, so dropping
    weights above K never affects the diagonal of any power up to K.
    """
    X = [list(r) for r in build_xn(n).rows]
    powers = [X]
    for _ in range(1, K):
        powers.append(matmul(powers[-1], X, weight_cap=K))
    return powers


class InconsistentTraces(RuntimeError):
    """The matrix-power and log-derivative routes to tr X_n^k disagree."""


@dataclass(frozen=True)
class TraceTable:
    n: int
    s: tuple  # s[k-1] = tr X_n^k
    t: tuple  # t[k-1] = s_k / n

    @property
    def K(self) -> int:
        return len(self.s)


@lru_cache(maxsize=None)
def trace_table(n: int, K: int) -> TraceTable:
    if n < 1 or K < 1:
        raise ValueError("need n >= 1 and K >= 1")
    powers = matrix_powers(n, K)
    s_mat = []
    for P in powers:
        acc = MultiPoly()
        for i in range(n):
            acc = acc + P[i][i]
        s_mat.append(acc)
    s_log = series_log_derivative_sums(fn_recursive(n, K))
    for k, (a, b) in enumerate(zip(s_mat, s_log), start=1):
        if a != b:
            raise InconsistentTraces(f"tr X_{n}^{k}: {format_poly(a)} != {format_poly(b)}")
    t = tuple(s.scale(Fraction(1, n)) for s in s_mat)
    return TraceTable(n, tuple(s_mat), t)


# --- identity reports -----------------------------------------------------

@dataclass(frozen=True)
class IdentityReport:
    """Outcome of an exact identity check; a failure is data, not an exception."""

    name: str
    holds: bool
    context: str = ""
    checked: dict = field(default_factory=dict)
    failure: dict | None = None

    @property
    def status(self) -> str:
        return "holds" if self.holds else "fails"

    def to_dict(self) -> dict:
        d = {"kind": "identity", "name": self.name, "status": self.status,
             "context": self.context, "checked": self.checked}
        if self.failure is not None:
            d["failure"] = self.failure
        return d


def trace_vector_check(n: int, K: int) -> IdentityReport:
    """Check (X_n^k)_{nn} == t_k(n) for k = 0..K."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ctx = f"e_{n} is a trace vector of X_{n}"
    checked = {"n": n, "K": K}
    # k = 0: identity matrix, normalized trace 1
    if K < 1:
        return IdentityReport("trace", True, ctx, checked)
    powers = matrix_powers(n, K)
    table = trace_table(n, K)
    for k in range(1, K + 1):
        corner = powers[k - 1][n - 1][n - 1]
        if corner != table.t[k - 1]:
            return IdentityReport("trace", False, ctx, checked, {
                "k": k, "corner": format_poly(corner), "normalized_trace": format_poly(table.t[k - 1])})
    return IdentityReport("trace", True, ctx, checked)


def derivative_identity_check(n: int) -> IdentityReport:
    """Check d/dx F_n(x) == n F_{n-1}(x) coefficient by coefficient."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lhs = derivative_coeffs(Fn_from_fn(n))
    rhs = [c * n for c in Fn_from_fn(n - 1)]
    ctx = f"d/dx F_{n} = {n} F_{n - 1}"
    for k, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            return IdentityReport("diff1", False, ctx, {"n": n},
                                  {"x_power": k, "lhs": format_poly(a), "rhs": format_poly(b)})
    return IdentityReport("diff1", len(lhs) == len(rhs), ctx, {"n": n})


# --- determinants -----------------------------------------------------------

def det_bareiss(rows: Sequence[Sequence]) -> MultiPoly:
    """Fraction-free elimination over Q[x_1..x_n]; divisions are exact."""
    a = [[e if isinstance(e, MultiPoly) else MultiPoly.constant(e) for e in r] for r in rows]
    n = len(a)
    if n == 0:
        return MultiPoly.constant(1)
    sign = 1
    prev = MultiPoly.constant(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return MultiPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = poly_exact_div(num, prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def t_matrix(table: TraceTable, m: int) -> list:
    """The m x m matrix T_m(n): t_{i-j+1} below/on the diagonal, 1..m-1 above it."""
    if m > table.K:
        raise ValueError(f"trace table only reaches k = {table.K}")
    rows = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m + 1):
            if j == i + 1:
                row.append(MultiPoly.constant(i))
            elif j > i + 1:
                row.append(MultiPoly())
            else:
                row.append(table.t[i - j])
        rows.append(row)
    return rows


def gamma_via_determinant(n: int, m: int, method: str = "bareiss") -> MultiPoly:
    """gamma_m(n) = (-1)^(m-1) det T_m(n) / m!."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    T = t_matrix(trace_table(n, m), m)
    if method == "bareiss":
        d = det_bareiss(T)
    elif method == "cofactor":
        d = det_cofactor(T, MultiPoly(), MultiPoly.constant(1))
    else:
        raise ValueError(f"unknown method {method!r}")
    return d.scale(Fraction((-1) ** (m - 1), math.factorial(m)))


def gamma_via_series(n: int, m: int) -> MultiPoly:
    """Coefficient of t^m in 1 - f_n(t)^(1/n)."""
    h = series_pow(fn_recursive(n, m), Fraction(1, n))
    return -h[m]


# --- rational specializations --------------------------------------------

def det_rational(rows: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(e) for e in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def charpoly_rational(rows: Sequence[Sequence]) -> list:
    """det(xI - A), ascending coefficients, by evaluation at 0..n and interpolation."""
    n = len(rows)
    xs = list(range(n + 1))
    ys = []
    for x0 in xs:
        shifted = [[(x0 if i == j else 0) - Fraction(rows[i][j]) for j in range(n)] for i in range(n)]
        ys.append(det_rational(shifted))
    coeffs = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n + 1):
            coeffs[k] += ys[i] * basis[k] / denom
    return coeffs


def monic_power_sums(q: Sequence, K: int) -> list:
    """Power sums of the roots of x^d + q_1 x^(d-1) + ... + q_d, for k = 1..K."""
    return newton_power_sums([Fraction(1)] + [Fraction(c) for c in q], K)


@dataclass(frozen=True)
class CharpolyReport:
    q: tuple
    x: tuple
    charpoly: tuple   # det(xI - X_n), descending: 1, c_1, ..., c_n
    expected: tuple   # 1, n q_1, n(n-1) q_2, ..., n! q_n
    holds: bool

    @property
    def status(self) -> str:
        return "holds" if self.holds else "fails"

    def to_dict(self) -> dict:
        from .algebra import format_rational as fr
        return {"kind": "identity", "name": "charpoly_from_musum", "status": self.status,
                "q": [fr(v) for v in self.q], "x": [fr(v) for v in self.x],
                "charpoly": [fr(v) for v in self.charpoly],
                "expected": [fr(v) for v in self.expected]}


def charpoly_hessenberg(rows: Sequence[Sequence]) -> list:
    """det(zI - H), descending coefficients, for lower Hessenberg H (zero above the superdiagonal).

    p_k = (z - h_kk) p_{k-1} - sum_{i<k} (h_{i,i+1} ... h_{k-1,k}) h_{k,i} p_{i-1}.
    """
    m = len(rows)
    polys = [[1]]  # descending coefficients of p_0, p_1, ...
    for k in range(1, m + 1):
        new = list(polys[k - 1]) + [0]
        diag = rows[k - 1][k - 1]
        for a, c in enumerate(polys[k - 1]):
            new[a + 1] -= diag * c
        prod = 1
        for i in range(k - 1, 0, -1):
            prod *= rows[i - 1][i]
            h = rows[k - 1][i - 1]
            if h and prod:
                coef = prod * h
                off = len(new) - len(polys[i - 1])
                for a, c in enumerate(polys[i - 1]):
                    new[a + off] -= coef * c
        polys.append(new)
    return polys[m]


def charpoly_from_musum(q: Sequence) -> CharpolyReport:
    """Specialize X_n at the power sums of q's roots and compare det(xI - X_n) with the scaled q.

    The roots are scaled by D = lcm(denominators of q) so the power sums, and
    hence the determinant recurrence, stay in the integers.
    """
    q = tuple(Fraction(c) for c in q)
    n = len(q)
    if n < 1:
        raise ValueError("q must have degree >= 1")
    x = tuple(monic_power_sums(q, n))
    D = math.lcm(*[c.denominator for c in q])
    q_int = [int(c * D ** i) for i, c in enumerate(q, start=1)]
    y = [int(v) for v in monic_power_sums(q_int, n)]
    if any(Fraction(yk, D ** k) != xk for k, (yk, xk) in enumerate(zip(y, x), start=1)):
        raise ArithmeticError("scaled power sums disagree")
    Y = build_xn(n, y).rows
    Y = [[int(e) for e in row] for row in Y]
    got = tuple(Fraction(c, D ** i) for i, c in enumerate(charpoly_hessenberg(Y)))
    expected = (Fraction(1),) + tuple(
        Fraction(math.factorial(n) // math.factorial(n - i)) * q[i - 1] for i in range(1, n + 1))
    return CharpolyReport(q, x, got, expected, got == expected)


def specialize_series(f: TruncatedSeries, point: Sequence) -> TruncatedSeries:
    if f.ring == RATIONAL:
        return f
    return f.map(lambda c: poly_eval(c, list(point) + [0] * max(0, c.nvars - len(point))))


@dataclass(frozen=True)
class Xn2Report:
    n: int
    odd_vanish: bool
    symmetric: bool
    root_exponent: int
    positivity: object  # PositivityVerdict
    f_coeffs: tuple

    @property
    def holds(self) -> bool:
        return self.odd_vanish and self.symmetric and self.positivity.status != "violated"

    @property
    def status(self) -> str:
        return "holds" if self.holds else "fails"

    def to_dict(self) -> dict:
        return {"kind": "identity", "name": "xn2", "status": self.status, "n": self.n,
                "f_n2": [format_poly(c) for c in self.f_coeffs],
                "odd_coefficients_vanish": self.odd_vanish,
                "d2_symmetrizes": self.symmetric,
                "root_exponent": f"1/{self.root_exponent}",
                "positivity": self.positivity.to_dict()}


def xn2_checks(n: int, order: int = 30) -> Xn2Report:
    """Checks for X_{n,2} = X_n at x = (0, 1, 0, ..., 0)."""
    from .positivity import is_monomially_positive

    if n < 2:
        raise ValueError("n must be >= 2")
    point = [0, 1] + [0] * (n - 2)
    f = specialize_series(fn_recursive(n, n), point)
    odd = all(f[j] == 0 for j in range(1, n + 1, 2))
    X = build_xn(n, point).rows
    d2 = [Fraction(1)] + [Fraction(1, math.factorial(k - 1)) for k in range(2, n + 1)]
    symmetric = all(d2[i] * X[j][i] == X[i][j] * d2[j] for i in range(n) for j in range(n))
    N = n // 2
    h = series_pow(f.truncate(order), Fraction(1, N))
    verdict = is_monomially_positive(h, complement=True, context=f"1 - f_{{{n},2}}^(1/{N})")
    return Xn2Report(n, odd, symmetric, N, verdict, tuple(f.coeffs))
