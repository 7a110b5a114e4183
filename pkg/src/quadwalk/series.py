"""Truncated series in ``t`` over exact rationals.

Two concrete types share one implementation:

* :class:`TruncatedLaurentSeries` -- coefficients are Laurent polynomials in a
  tagged variable (``x`` or ``y``); houses kernel roots and boundary series.
* :class:`UnivariateSeries` -- coefficients are exact rationals, or
  polynomials in a single formal parameter.

A series stores its coefficients from ``valuation`` up to ``order``
inclusive; everything above ``order`` is unknown.  ``order`` is ``EXACT``
(infinity) for series that are known exactly, e.g. polynomials in ``t``.
Every operation reports the honest order of its result: multiplying by a
series of valuation ``-1`` costs one order of precision, and so on.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .laurent import (
    LaurentPolynomial,
    Scalar,
    format_scalar,
    normalize_scalar,
    parse_scalar,
)

EXACT = math.inf

Coeff = Union[int, Fraction, LaurentPolynomial]


def _is_scalar(c) -> bool:
    return isinstance(c, (int, Fraction))


def _finite(order) -> bool:
    return order != EXACT


class _Series:
    __slots__ = ("valuation", "order", "coeffs")

    def __init__(self, coeffs: Iterable[Coeff] = (), valuation: int = 0, order=EXACT):
        cs = [self._coerce(c) for c in coeffs]
        if _finite(order):
            order = int(order)
            known = order - valuation + 1
            if known <= 0:
                cs = []
            elif len(cs) > known:
                del cs[known:]
            elif len(cs) < known:
                cs.extend([self._zero()] * (known - len(cs)))
        start = 0
        while start < len(cs) and not cs[start]:
            start += 1
        if start:
            cs = cs[start:]
            valuation += start
        if not _finite(order):
            while cs and not cs[-1]:
                cs.pop()
        if not cs:
            valuation = order + 1 if _finite(order) else 0
        self.valuation = valuation
        self.order = order
        self.coeffs = tuple(cs)

    # subclass hooks
    def _coerce(self, c):
        raise NotImplementedError

    def _zero(self):
        raise NotImplementedError

    def _like(self, coeffs, valuation, order):
        raise NotImplementedError

    # -- inspection -------------------------------------------------------

    def is_exact(self) -> bool:
        return not _finite(self.order)

    def is_exact_zero(self) -> bool:
        return not self.coeffs and not _finite(self.order)

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def __getitem__(self, k: int):
        """Coefficient of ``t**k``; raises ``IndexError`` above the order."""
        if _finite(self.order) and k > self.order:
            raise IndexError(f"t^{k} is beyond the known order {self.order}")
        i = k - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self._zero()

    def coefficient_list(self, start: int = 0, stop: Optional[int] = None) -> list:
        stop = self.order if stop is None else stop
        return [self[k] for k in range(start, int(stop) + 1)]

    def first_nonzero(self) -> Optional[int]:
        """Exponent of the first nonzero known coefficient, or ``None``."""
        return self.valuation if self.coeffs else None

    def leading_coefficient(self):
        if not self.coeffs:
            raise ValueError("series has no known nonzero coefficient")
        return self.coeffs[0]

    # -- structural -------------------------------------------------------

    def truncate(self, order) -> "_Series":
        if order >= self.order:
            return self
        return self._like(self.coeffs, self.valuation, order)

    def shift(self, k: int) -> "_Series":
        """Multiply by ``t**k``."""
        return self._like(self.coeffs, self.valuation + k, self.order + k)

    def map_coefficients(self, f: Callable) -> "_Series":
        return self._like([f(c) for c in self.coeffs], self.valuation, self.order)

    # -- arithmetic -------------------------------------------------------

    def _coerce_operand(self, other):
        if isinstance(other, _Series):
            return other
        if _is_scalar(other):
            return UnivariateSeries([other])
        if isinstance(other, LaurentPolynomial):
            return TruncatedLaurentSeries([other], var=other.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs], self.valuation, self.order)

    def __sub__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(other, -self)

    def __mul__(self, other):
        if _is_scalar(other):
            if not other:
                return self._like([], 0, self.order)
            return self._like([c * other for c in self.coeffs], self.valuation, self.order)
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / Fraction(other))
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return series_divide(self, other)

    def __rtruediv__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return series_divide(other, self)

    def __pow__(self, n: int):
        if n < 0:
            return series_invert(self) ** (-n)
        result = _one_like(self)
        base = self
        while n:
            if n & 1:
                result = series_mul(result, base)
            n >>= 1
            if n:
                base = series_mul(base, base)
        return result

    # -- comparison -------------------------------------------------------

    def first_difference(self, other) -> Optional[int]:
        """First t-exponent, within the shared order, where the series differ."""
        diff = self - other
        return diff.first_nonzero()

    def agrees_with(self, other) -> bool:
        return self.first_difference(other) is None

    def __eq__(self, other):
        if isinstance(other, (_Series, int, Fraction, LaurentPolynomial)):
            return self.agrees_with(other)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        head = type(self).__name__
        return f"<{head} {self.to_text(compact=True)}>"

    # -- serialization ----------------------------------------------------

    def _terms_of(self, c) -> list:
        if isinstance(c, LaurentPolynomial):
            return c.terms()
        return [(0, c)] if c else []

    def to_text(self, compact: bool = False) -> str:
        """Canonical text: one ``t^k: ...`` entry per nonzero coefficient."""
        lines = [f"{type(self).__name__} var={self.var or '-'} valuation={self.valuation}"]
        for k, c in enumerate(self.coeffs, self.valuation):
            terms = self._terms_of(c)
            if terms:
                body = " ".join(f"{format_scalar(v)}*x^{e}" for e, v in terms)
                lines.append(f"t^{k}: {body}")
        lines.append("exact" if self.is_exact() else f"O(t^{self.order + 1})")
        return "; ".join(lines) if compact else "\n".join(lines)

    def to_json(self) -> dict:
        coeffs = []
        for k, c in enumerate(self.coeffs, self.valuation):
            terms = self._terms_of(c)
            if terms:
                coeffs.append(
                    {
                        "exp": k,
                        "terms": [[e, Fraction(v).numerator, Fraction(v).denominator] for e, v in terms],
                    }
                )
        return {
            "kind": type(self).__name__,
            "var": self.var,
            "valuation": self.valuation,
            "order": None if self.is_exact() else self.order,
            "coeffs": coeffs,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class TruncatedLaurentSeries(_Series):
    """Series in ``t`` whose coefficients are Laurent polynomials in ``var``."""

    __slots__ = ("var",)

    def __init__(self, coeffs: Iterable[Coeff] = (), valuation: int = 0, order=EXACT, var: str = "x"):
        self.var = var
        super().__init__(coeffs, valuation, order)

    def _coerce(self, c):
        if isinstance(c, LaurentPolynomial):
            if c.var != self.var and not c.is_constant():
                raise ValueError(f"coefficient in {c.var!r} inside a series in {self.var!r}")
            return c if c.var == self.var else c.with_var(self.var)
        return LaurentPolynomial.constant(c, self.var)

    def _zero(self):
        return LaurentPolynomial((), 0, self.var)

    def _like(self, coeffs, valuation, order):
        return TruncatedLaurentSeries(coeffs, valuation, order, self.var)

    def reflect(self) -> "TruncatedLaurentSeries":
        """Substitute ``var -> 1/var`` coefficientwise."""
        return self.map_coefficients(LaurentPolynomial.reflect)

    def shift_var(self, k: int) -> "TruncatedLaurentSeries":
        """Multiply by ``var**k``."""
        return self.map_coefficients(lambda c: c.shift(k))

    def var_range(self) -> tuple:
        """Smallest and largest ``var`` exponents among known coefficients."""
        nz = [c for c in self.coeffs if c]
        if not nz:
            return (0, -1)
        return (min(c.lo for c in nz), max(c.hi for c in nz))

    def coefficient_series(self, k: int) -> "UnivariateSeries":
        """The scalar series ``[var^k]`` of this series."""
        return UnivariateSeries([c.coefficient(k) for c in self.coeffs], self.valuation, self.order)


class UnivariateSeries(_Series):
    """Series in ``t`` with exact rational coefficients.

    Coefficients may also be polynomials in one formal parameter (for the
    parametrizing series that depend on ``x`` or ``y``); ``param`` names it.
    """

    __slots__ = ()

    var = None

    def _coerce(self, c):
        if isinstance(c, LaurentPolynomial):
            return c
        return normalize_scalar(c)

    def _zero(self):
        return 0

    def _like(self, coeffs, valuation, order):
        return UnivariateSeries(coeffs, valuation, order)

    @property
    def param(self) -> Optional[str]:
        for c in self.coeffs:
            if isinstance(c, LaurentPolynomial) and not c.is_constant():
                return c.var
        return None

    def as_laurent(self, var: str = "x") -> TruncatedLaurentSeries:
        return TruncatedLaurentSeries(self.coeffs, self.valuation, self.order, var)


# ---------------------------------------------------------------------------
# constructors


def t_power(k: int = 1) -> UnivariateSeries:
    """The exact series ``t**k``."""
    return UnivariateSeries([1], k)


def univariate(coeffs: Sequence[Scalar], order=None, valuation: int = 0) -> UnivariateSeries:
    """Scalar series with the given coefficients; ``order=None`` means exact."""
    return UnivariateSeries(coeffs, valuation, EXACT if order is None else order)


def _one_like(s: _Series) -> _Series:
    if isinstance(s, TruncatedLaurentSeries):
        return TruncatedLaurentSeries([1], var=s.var)
    return UnivariateSeries([1])


def _result_shell(a: _Series, b: _Series):
    """Construct-function for a result combining ``a`` and ``b``."""
    if isinstance(a, TruncatedLaurentSeries) or isinstance(b, TruncatedLaurentSeries):
        va = a.var if isinstance(a, TruncatedLaurentSeries) else None
        vb = b.var if isinstance(b, TruncatedLaurentSeries) else None
        if va and vb and va != vb:
            if _all_constant(a):
                va = vb
            elif not _all_constant(b):
                raise ValueError(f"cannot combine series in {va!r} and {vb!r}")
        var = va or vb
        return lambda cs, v, o: TruncatedLaurentSeries(cs, v, o, var)
    return UnivariateSeries


def _all_constant(s: _Series) -> bool:
    return all(not isinstance(c, LaurentPolynomial) or c.is_constant() for c in s.coeffs)


# ---------------------------------------------------------------------------
# core arithmetic


def _add(a: _Series, b: _Series) -> _Series:
    make = _result_shell(a, b)
    if a.is_exact_zero():
        return make(b.coeffs, b.valuation, b.order)
    if b.is_exact_zero():
        return make(a.coeffs, a.valuation, a.order)
    order = min(a.order, b.order)
    val = min(a.valuation, b.valuation)
    if _finite(order):
        length = order - val + 1
        if length <= 0:
            return make([], val, order)
    else:
        length = max(a.valuation + len(a.coeffs), b.valuation + len(b.coeffs)) - val
    cs = [0] * length
    for s in (a, b):
        off = s.valuation - val
        for i, c in enumerate(s.coeffs):
            j = off + i
            if j >= length:
                break
            if j >= 0:
                cs[j] = cs[j] + c
    return make(cs, val, order)


def _conv_lp(A: Sequence[LaurentPolynomial], B: Sequence[LaurentPolynomial], length: int, var: str) -> list:
    """Truncated convolution of two lists of Laurent polynomials."""
    na, nb = len(A), len(B)
    nzA = [(i, a.lo, a.coeffs) for i, a in enumerate(A) if a.coeffs]
    nzB = {j: (b.lo, b.coeffs) for j, b in enumerate(B) if b.coeffs}
    out = []
    for k in range(length):
        pairs = []
        for i, alo, ac in nzA:
            if i > k:
                break
            entry = nzB.get(k - i)
            if entry is not None:
                pairs.append((alo, ac, entry[0], entry[1]))
        if not pairs:
            out.append(LaurentPolynomial((), 0, var))
            continue
        lo = min(p[0] + p[2] for p in pairs)
        hi = max(p[0] + len(p[1]) + p[2] + len(p[3]) - 2 for p in pairs)
        buf = [0] * (hi - lo + 1)
        for alo, ac, blo, bc in pairs:
            base = alo + blo - lo
            if len(ac) < len(bc):
                ac, bc = bc, ac
            for q, bv in enumerate(bc):
                if bv:
                    o = base + q
                    for p, av in enumerate(ac):
                        buf[o + p] += av * bv
        out.append(LaurentPolynomial(buf, lo, var))
    return out


def _conv_generic(A: Sequence, B: Sequence, length: int) -> list:
    na, nb = len(A), len(B)
    out = []
    for k in range(length):
        acc = 0
        for i in range(max(0, k - nb + 1), min(k, na - 1) + 1):
            a = A[i]
            if a:
                b = B[k - i]
                if b:
                    acc = acc + a * b
        out.append(acc)
    return out


def series_mul(a: _Series, b: _Series) -> _Series:
    """Product with honest order ``min(ord(a) + val(b), ord(b) + val(a))``."""
    make = _result_shell(a, b)
    if a.is_exact_zero() or b.is_exact_zero():
        return make([], 0, EXACT)
    order = min(a.order + b.valuation, b.order + a.valuation)
    val = a.valuation + b.valuation
    if _finite(order):
        length = int(order) - val + 1
    else:
        length = len(a.coeffs) + len(b.coeffs) - 1
    if length <= 0 or not a.coeffs or not b.coeffs:
        return make([], val, order)
    lp_a = isinstance(a, TruncatedLaurentSeries)
    lp_b = isinstance(b, TruncatedLaurentSeries)
    if lp_a and lp_b:
        var = a.var if not _all_constant(a) else b.var
        cs = _conv_lp(a.coeffs, b.coeffs, length, var)
    else:
        cs = _conv_generic(a.coeffs, b.coeffs, length)
    return make(cs, val, order)


def _divide_coeff(num, den):
    if _is_scalar(den):
        if _is_scalar(num):
            return normalize_scalar(Fraction(num) / den)
        return num * (1 / Fraction(den))
    if _is_scalar(num):
        num = LaurentPolynomial.constant(num, den.var)
    return num.exact_div(den)


def series_divide(a: _Series, b: _Series, order=None) -> _Series:
    """Quotient ``a / b`` computed coefficient by coefficient.

    The leading coefficient of ``b`` must divide every intermediate
    coefficient exactly; this always holds when it is a monomial, and
    otherwise holds precisely when the quotient has Laurent-polynomial
    coefficients.  Raises ``ValueError`` when the division is not exact.
    """
    make = _result_shell(a, b)
    if not b.coeffs:
        raise ZeroDivisionError("divisor has no known nonzero coefficient")
    val = a.valuation - b.valuation
    if a.is_exact_zero():
        return make([], 0, EXACT)
    rel = min(a.order - a.valuation, b.order - b.valuation)
    if order is not None:
        rel = min(rel, order - val)
    if not _finite(rel):
        if len(b.coeffs) == 1:
            lead = b.coeffs[0]
            return make([_divide_coeff(c, lead) for c in a.coeffs], val, EXACT)
        raise ValueError("exact quotient of exact series needs an explicit order")
    rel = int(rel)
    if rel < 0:
        return make([], val + rel + 1, val + rel)
    B = b.coeffs
    lead = B[0]
    A = a.coeffs
    q: list = []
    for k in range(rel + 1):
        acc = A[k] if k < len(A) else 0
        for i in range(1, min(k, len(B) - 1) + 1):
            bi = B[i]
            if bi:
                qk = q[k - i]
                if qk:
                    acc = acc - bi * qk
        q.append(_divide_coeff(acc, lead) if acc else acc)
    return make(q, val, val + rel)


def series_invert(a: _Series, order=None) -> _Series:
    """Multiplicative inverse; the leading coefficient must be a unit.

    Units are nonzero rationals and monomials ``c * x**k``.  Any other
    leading coefficient is rejected because the inverse would not have
    Laurent-polynomial coefficients.
    """
    if not a.coeffs:
        raise ZeroDivisionError("series has no known nonzero coefficient")
    lead = a.coeffs[0]
    if isinstance(lead, LaurentPolynomial) and not lead.is_monomial():
        raise ValueError(f"leading coefficient {lead} is not a monomial; inverse is not a Laurent series")
    return series_divide(_one_like(a), a, order)


def series_sqrt(a: _Series, order=None) -> _Series:
    """Square root of a series with constant term 1 (result has constant term 1)."""
    if a.valuation != 0 or a.coeffs[0] != 1:
        raise ValueError("series_sqrt needs a series with constant term 1")
    n = a.order if order is None else min(a.order, order)
    if not _finite(n):
        raise ValueError("square root of an exact series needs an explicit order")
    n = int(n)
    A = a.coeffs
    s = [A[0]]
    half = Fraction(1, 2)
    for k in range(1, n + 1):
        acc = A[k] if k < len(A) else 0
        for i in range(1, k):
            si, sj = s[i], s[k - i]
            if si and sj:
                acc = acc - si * sj
        s.append(acc * half if acc else acc)
    return a._like(s, 0, n)


# ---------------------------------------------------------------------------
# coefficientwise operations


def extract_x_part(f: TruncatedLaurentSeries, mode: Union[str, int]) -> TruncatedLaurentSeries:
    """Keep monomials with exponent ``>= 0`` (``"nonneg"``), ``<= 0``
    (``"nonpos"``), ``> 0`` (``"pos"``), ``< 0`` (``"neg"``) or exactly ``k``."""
    if mode == "nonneg":
        return f.map_coefficients(lambda c: c.restrict(lo=0))
    if mode == "nonpos":
        return f.map_coefficients(lambda c: c.restrict(hi=0))
    if mode == "pos":
        return f.map_coefficients(lambda c: c.restrict(lo=1))
    if mode == "neg":
        return f.map_coefficients(lambda c: c.restrict(hi=-1))
    if isinstance(mode, int):
        return f.map_coefficients(lambda c: c.restrict(mode, mode))
    raise ValueError(f"unknown extraction mode {mode!r}")


def substitute_var(f: TruncatedLaurentSeries, k: int) -> TruncatedLaurentSeries:
    """Substitute ``var -> var**k`` coefficientwise (``k = -1`` reflects)."""
    return f.map_coefficients(lambda c: c.scale_var(k))


def reindex_by_var(f: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Substitute ``var -> var * t``; exponents of ``var`` must be ``>= 0``."""
    terms: dict = {}
    for n, c in enumerate(f.coeffs, f.valuation):
        for e, v in c.terms():
            if e < 0:
                raise ValueError("reindexing needs non-negative exponents")
            terms.setdefault(n + e, {})[e] = v
    order = f.order
    lo = min(terms, default=f.valuation)
    hi = int(order) if _finite(order) else max(terms, default=lo)
    cs = [LaurentPolynomial.from_dict(terms.get(k, {}), f.var) for k in range(lo, hi + 1)]
    return TruncatedLaurentSeries(cs, lo, order, f.var)


# ---------------------------------------------------------------------------
# composition


class SubstitutionError(ValueError):
    """Raised when a substitution is not certified to converge."""


def required_outer_order(order: int, inner_valuation: int, valuation_bound: Optional[Callable[[int], int]]) -> int:
    """Smallest truncation order of the outer series that keeps ``order`` honest."""
    if inner_valuation >= 0:
        return order
    n = 0
    while valuation_bound(n + 1) <= order:
        n += 1
    return n


def substitute_boundary(
    outer: TruncatedLaurentSeries,
    inner: _Series,
    order: Optional[int] = None,
    valuation_bound: Optional[Callable[[int], int]] = None,
) -> _Series:
    """Compose ``outer(inner)`` where ``outer`` is a series in ``t`` whose
    coefficients are polynomials in its variable.

    When ``inner`` has negative valuation the composition is only meaningful
    if the monomials ``t^n y^j`` of ``outer`` have ``n + j*val(inner)``
    bounded below by an increasing function of ``n``.  ``valuation_bound(n)``
    supplies that certified lower bound; it is checked against every known
    monomial, and it caps the honest order of the result by the first
    unknown coefficient of ``outer``.
    """
    v_in = inner.valuation
    if not inner.coeffs:
        # substituting zero keeps the constant section
        target = outer.order if order is None else min(order, outer.order)
        const = [c.coefficient(0) for c in outer.coeffs]
        return inner._like(const, outer.valuation, target)
    max_deg = -1
    for n, c in enumerate(outer.coeffs, outer.valuation):
        if c and c.lo < 0:
            raise SubstitutionError(f"t^{n} coefficient of outer has negative exponents")
        if c:
            max_deg = max(max_deg, c.hi)
    if v_in < 0:
        if valuation_bound is None:
            raise SubstitutionError("inner series has negative valuation; a certified valuation bound is required")
        for n, c in enumerate(outer.coeffs, outer.valuation):
            for j, _ in c.terms():
                if n + j * v_in < valuation_bound(n):
                    raise SubstitutionError(
                        f"monomial t^{n}*{outer.var}^{j} has valuation {n + j * v_in} "
                        f"below the certified bound {valuation_bound(n)}"
                    )
        tail = valuation_bound(outer.order + 1) - 1 if _finite(outer.order) else EXACT
    else:
        tail = outer.order
    target = tail if order is None else min(order, tail)
    if max_deg < 0:
        return inner._like([], 0, target)
    # d_j(t) = [y^j] outer, exact polynomials in t
    d = []
    for j in range(max_deg + 1):
        d.append(UnivariateSeries([c.coefficient(j) for c in outer.coeffs], outer.valuation))
    acc = d[max_deg]
    for j in range(max_deg - 1, -1, -1):
        # acc_j must be accurate to target - j*v_in
        cap = target - j * v_in if v_in < 0 else target
        acc = series_mul(acc, inner)
        if _finite(cap):
            acc = acc.truncate(cap)
        acc = acc + d[j]
        if _finite(cap):
            acc = acc.truncate(cap)
    if isinstance(acc, UnivariateSeries) and isinstance(inner, TruncatedLaurentSeries):
        acc = acc.as_laurent(inner.var)
    return acc.truncate(target)


# ---------------------------------------------------------------------------
# parsing


def from_json(doc: Union[dict, str]) -> _Series:
    if isinstance(doc, str):
        doc = json.loads(doc)
    order = EXACT if doc["order"] is None else doc["order"]
    var = doc.get("var")
    byexp = {}
    for entry in doc["coeffs"]:
        terms = {e: normalize_scalar(Fraction(p, q)) for e, p, q in entry["terms"]}
        byexp[entry["exp"]] = terms
    val = doc["valuation"]
    hi = int(order) if _finite(order) else max(byexp, default=val)
    if doc["kind"] == "TruncatedLaurentSeries":
        cs = [LaurentPolynomial.from_dict(byexp.get(k, {}), var) for k in range(val, hi + 1)]
        return TruncatedLaurentSeries(cs, val, order, var)
    cs = []
    for k in range(val, hi + 1):
        terms = byexp.get(k, {})
        if set(terms) - {0}:
            raise ValueError("univariate series coefficient with a variable exponent")
        cs.append(terms.get(0, 0))
    return UnivariateSeries(cs, val, order)


def from_text(text: str) -> _Series:
    parts = [p.strip() for p in text.replace("\n", ";").split(";") if p.strip()]
    head = parts[0].split()
    kind = head[0]
    fields = dict(h.split("=") for h in head[1:])
    var = None if fields["var"] == "-" else fields["var"]
    val = int(fields["valuation"])
    tail = parts[-1]
    order = EXACT if tail == "exact" else int(tail[len("O(t^") : -1]) - 1
    coeffs = []
    for p in parts[1:-1]:
        exp_s, body = p.split(":", 1)
        k = int(exp_s[2:])
        terms = {}
        for tok in body.split():
            c, e = tok.split("*x^")
            terms[int(e)] = parse_scalar(c)
        coeffs.append({"exp": k, "terms": [[e, Fraction(c).numerator, Fraction(c).denominator] for e, c in terms.items()]})
    return from_json(
        {"kind": kind, "var": var, "valuation": val, "order": None if order == EXACT else order, "coeffs": coeffs}
    )
