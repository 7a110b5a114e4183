"""Sparse multivariate Laurent polynomials over the rationals.

Monomials are tuples of ``(name, exponent)`` pairs sorted by name, with no
zero exponents, so polynomials in different variable sets combine freely.
Evaluation maps each variable to a scalar, a Laurent polynomial or a
truncated series; that is how the symbolic identities get checked on
enumerated data.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .laurent import LaurentPolynomial, format_scalar, normalize_scalar

Monomial = Tuple[Tuple[str, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        s = d.get(k, 0) + e
        if s:
            d[k] = s
        else:
            d.pop(k, None)
    return tuple(sorted(d.items()))


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: Dict[Monomial, object] = {}
        for m, c in (terms or {}).items():
            c = normalize_scalar(c)
            if c:
                clean[m] = c
        self.terms = clean

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({(): c})

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _lift(other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = 1 / Fraction(other)
            return MPoly({m: c * inv for m, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (m, c), = self.terms.items()
            return MPoly({tuple((k, -e) for k, e in m): 1 / Fraction(c)}) ** (-n)
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def variables(self) -> set:
        return {k for m in self.terms for k, _ in m}

    def degree(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    def min_degree(self, name: str) -> int:
        return min((dict(m).get(name, 0) for m in self.terms), default=0)

    def collect(self, name: str) -> Dict[int, "MPoly"]:
        """Coefficients with respect to ``name`` as a dict ``{exp: MPoly}``."""
        out: Dict[int, Dict[Monomial, object]] = {}
        for m, c in self.terms.items():
            e = dict(m).get(name, 0)
            rest = tuple(p for p in m if p[0] != name)
            bucket = out.setdefault(e, {})
            bucket[rest] = bucket.get(rest, 0) + c
        return {e: MPoly(t) for e, t in out.items()}

    def coeff(self, name: str, k: int) -> "MPoly":
        return self.collect(name).get(k, MPoly())

    # -- calculus & substitution -------------------------------------------

    def diff(self, name: str) -> "MPoly":
        out: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(name, 0)
            if e:
                if e == 1:
                    del d[name]
                else:
                    d[name] = e - 1
                mm = tuple(sorted(d.items()))
                out[mm] = out.get(mm, 0) + c * e
        return MPoly(out)

    def reflect(self, name: str) -> "MPoly":
        """Substitute ``name -> 1/name``."""
        return MPoly(
            {tuple((k, -e) if k == name else (k, e) for k, e in m): c for m, c in self.terms.items()}
        )

    def rename(self, mapping: Mapping[str, str]) -> "MPoly":
        out: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            d: Dict[str, int] = {}
            for k, e in m:
                k = mapping.get(k, k)
                d[k] = d.get(k, 0) + e
            mm = tuple(sorted((k, e) for k, e in d.items() if e))
            out[mm] = out.get(mm, 0) + c
        return MPoly(out)

    def subs(self, name: str, value: "MPoly") -> "MPoly":
        """Substitute a polynomial for ``name`` (negative powers need a monomial)."""
        result = MPoly()
        powers: Dict[int, MPoly] = {}
        for e, rest in self.collect(name).items():
            if e not in powers:
                powers[e] = value**e
            result = result + rest * powers[e]
        return result

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate with every variable mapped to a scalar, Laurent polynomial
        or series.  Negative powers invert the value."""
        missing = self.variables() - set(values)
        if missing:
            raise KeyError(f"no value for {sorted(missing)}")
        cache: Dict[Tuple[str, int], object] = {}

        def power(name, e):
            key = (name, e)
            if key not in cache:
                v = values[name]
                if e < 0:
                    cache[key] = _inverse(v) ** (-e) if e != -1 else _inverse(v)
                else:
                    cache[key] = v**e if e != 1 else v
            return cache[key]

        total = 0
        # group by monomial to keep large evaluations cheap
        for m, c in sorted(self.terms.items()):
            term = c
            for name, e in m:
                term = power(name, e) * term
            total = term + total
        return total

    # -- display ----------------------------------------------------------

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(k if e == 1 else f"{k}^{e}" for k, e in m)
            if not mono:
                parts.append(format_scalar(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{format_scalar(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_sympy(self):
        import sympy

        expr = 0
        for m, c in self.terms.items():
            term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
            for k, e in m:
                term *= sympy.Symbol(k) ** e
            expr += term
        return expr


def _inverse(v):
    from .series import _Series, series_invert

    if isinstance(v, (int, Fraction)):
        return normalize_scalar(1 / Fraction(v))
    if isinstance(v, LaurentPolynomial):
        return v**-1
    if isinstance(v, _Series):
        return series_invert(v)
    if isinstance(v, MPoly):
        return v**-1
    raise TypeError(f"cannot invert {type(v).__name__}")


def gens(*names: str) -> Tuple[MPoly, ...]:
    return tuple(MPoly.var(n) for n in names)


def cubic_discriminant(p: MPoly, name: str) -> MPoly:
    """Discriminant of ``p`` viewed as a cubic in ``name``."""
    cs = p.collect(name)
    if max(cs) != 3 or min(cs) < 0:
        raise ValueError(f"not a cubic polynomial in {name}")
    a, b, c, d = (cs.get(k, MPoly()) for k in (3, 2, 1, 0))
    return (
        18 * a * b * c * d
        - 4 * b**3 * d
        + b**2 * c**2
        - 4 * a * c**3
        - 27 * a**2 * d**2
    )


def is_reflection_symmetric(p: MPoly, name: str) -> bool:
    return p == p.reflect(name)


def symmetric_to_sum_basis(p: MPoly, name: str, new: str) -> MPoly:
    """Rewrite a polynomial symmetric under ``name -> 1/name`` as a polynomial
    in ``new = name + 1/name``."""
    if not is_reflection_symmetric(p, name):
        raise ValueError(f"polynomial is not symmetric under {name} -> 1/{name}")
    z = MPoly.var(name)
    s_val = z + z**-1
    s = MPoly.var(new)
    rest = p
    out = MPoly()
    while rest:
        k = rest.degree(name)
        c = rest.coeff(name, k)
        out = out + c * s**k
        rest = rest - c * s_val**k
    return out


def elementary_symmetric_form(p: MPoly, u: str, v: str, e1: str = "e1", e2: str = "e2") -> MPoly:
    """Express a polynomial symmetric in ``u``, ``v`` through ``e1 = u + v``
    and ``e2 = u * v``; raises ``ValueError`` if ``p`` is not symmetric."""
    if p != p.rename({u: v, v: u}):
        raise ValueError(f"polynomial is not symmetric in {u}, {v}")
    U, V = MPoly.var(u), MPoly.var(v)
    E1, E2 = MPoly.var(e1), MPoly.var(e2)
    rest = p
    out = MPoly()
    while rest:
        # leading monomial in lex order u > v
        best = max(rest.terms, key=lambda m: (dict(m).get(u, 0), dict(m).get(v, 0)))
        d = dict(best)
        a, b = d.get(u, 0), d.get(v, 0)
        if a < b:
            raise ValueError("symmetric reduction stalled")
        coef_mono = tuple((k, e) for k, e in best if k not in (u, v))
        c = MPoly({coef_mono: rest.terms[best]})
        out = out + c * E1 ** (a - b) * E2**b
        rest = rest - c * (U + V) ** (a - b) * (U * V) ** b
    return out
