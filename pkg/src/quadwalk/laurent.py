"""Laurent polynomials in one variable with exact rational coefficients.

Coefficients are kept as Python ``int`` whenever they are integral and as
``fractions.Fraction`` otherwise, so integer-only workloads (walk counts,
kernel roots of unweighted models) stay on the fast integer path.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def normalize_scalar(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def parse_scalar(text: str) -> Scalar:
    return normalize_scalar(Fraction(text))


def format_scalar(c: Scalar) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _convolve(a: Sequence[Scalar], b: Sequence[Scalar]) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


class LaurentPolynomial:
    """Finite sum ``sum_k coeffs[k - lo] * var**k`` with exact coefficients.

    The stored coefficient list never starts or ends with a zero; the zero
    polynomial has ``lo == 0`` and no coefficients.  Instances are immutable.
    A constant polynomial is compatible with polynomials in any variable.
    """

    __slots__ = ("var", "lo", "coeffs")

    def __init__(self, coeffs: Iterable[Scalar] = (), lo: int = 0, var: str = "x"):
        cs = [normalize_scalar(c) for c in coeffs]
        start = 0
        while start < len(cs) and not cs[start]:
            start += 1
        end = len(cs)
        while end > start and not cs[end - 1]:
            end -= 1
        object.__setattr__(self, "var", var)
        if start == end:
            object.__setattr__(self, "lo", 0)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "lo", lo + start)
            object.__setattr__(self, "coeffs", tuple(cs[start:end]))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    @classmethod
    def _raw(cls, lo: int, coeffs: tuple, var: str) -> "LaurentPolynomial":
        # caller guarantees normalized, trimmed coefficients
        obj = object.__new__(cls)
        object.__setattr__(obj, "var", var)
        object.__setattr__(obj, "lo", lo if coeffs else 0)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: Scalar = 1, var: str = "x") -> "LaurentPolynomial":
        return cls([coeff], exp, var)

    @classmethod
    def constant(cls, c: Scalar, var: str = "x") -> "LaurentPolynomial":
        return cls([c], 0, var)

    @classmethod
    def from_dict(cls, terms: dict, var: str = "x") -> "LaurentPolynomial":
        if not terms:
            return cls((), 0, var)
        lo, hi = min(terms), max(terms)
        cs = [0] * (hi - lo + 1)
        for k, c in terms.items():
            cs[k - lo] += c
        return cls(cs, lo, var)

    # -- inspection -------------------------------------------------------

    @property
    def hi(self) -> int:
        """Highest exponent; ``lo - 1`` for the zero polynomial."""
        return self.lo + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs or (self.lo == 0 and len(self.coeffs) == 1)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def coefficient(self, k: int) -> Scalar:
        i = k - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self) -> list:
        """Nonzero ``(exponent, coefficient)`` pairs in increasing exponent."""
        return [(self.lo + i, c) for i, c in enumerate(self.coeffs) if c]

    def to_dict(self) -> dict:
        return dict(self.terms())

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coefficient(0)

    def __call__(self, value):
        """Evaluate at an exact scalar (nonzero if negative exponents occur)."""
        total = 0
        for k, c in self.terms():
            total += c * (Fraction(value) ** k if k < 0 else value**k)
        return normalize_scalar(total)

    # -- arithmetic -------------------------------------------------------

    def _var_with(self, other: "LaurentPolynomial") -> str:
        if self.var == other.var or other.is_constant():
            return self.var
        if self.is_constant():
            return other.var
        raise ValueError(f"incompatible variables {self.var!r} and {other.var!r}")

    def _lift(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial([other], 0, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        var = self._var_with(other)
        if not other.coeffs:
            return self if self.var == var else LaurentPolynomial._raw(self.lo, self.coeffs, var)
        if not self.coeffs:
            return other if other.var == var else LaurentPolynomial._raw(other.lo, other.coeffs, var)
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        cs = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs, self.lo - lo):
            cs[i] = c
        for i, c in enumerate(other.coeffs, other.lo - lo):
            cs[i] += c
        return LaurentPolynomial(cs, lo, var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw(self.lo, tuple(-c for c in self.coeffs), self.var)

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
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPolynomial._raw(0, (), self.var)
            return LaurentPolynomial._raw(
                self.lo, tuple(normalize_scalar(c * other) for c in self.coeffs), self.var
            )
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        var = self._var_with(other)
        if not self.coeffs or not other.coeffs:
            return LaurentPolynomial._raw(0, (), var)
        if len(other.coeffs) == 1:
            c = other.coeffs[0]
            return LaurentPolynomial._raw(
                self.lo + other.lo, tuple(normalize_scalar(a * c) for a in self.coeffs), var
            )
        if len(self.coeffs) == 1:
            c = self.coeffs[0]
            return LaurentPolynomial._raw(
                self.lo + other.lo, tuple(normalize_scalar(a * c) for a in other.coeffs), var
            )
        return LaurentPolynomial(_convolve(self.coeffs, other.coeffs), self.lo + other.lo, var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, LaurentPolynomial):
            return self.exact_div(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent-polynomial inverses")
            return LaurentPolynomial.monomial(-self.lo, 1 / Fraction(self.coeffs[0]), self.var) ** (-n)
        result = LaurentPolynomial.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod_poly(self, other: "LaurentPolynomial"):
        """Long division from the top degree: ``self = q*other + r``.

        The remainder has all exponents below ``other.hi - other.lo + self.lo``
        when the division consumes the full range; exactness is decided by
        ``exact_div``.
        """
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        var = self._var_with(other)
        rem = list(self.coeffs)
        lead = Fraction(other.coeffs[-1])
        dlen = len(other.coeffs)
        qlen = len(rem) - dlen + 1
        if qlen <= 0:
            return LaurentPolynomial._raw(0, (), var), self
        q = [0] * qlen
        for k in range(qlen - 1, -1, -1):
            c = rem[k + dlen - 1]
            if c:
                f = normalize_scalar(c / lead)
                q[k] = f
                for i, d in enumerate(other.coeffs):
                    rem[k + i] -= f * d
        return (
            LaurentPolynomial(q, self.lo - other.lo, var),
            LaurentPolynomial(rem, self.lo, var),
        )

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Quotient in the Laurent ring; raises ``ValueError`` if inexact."""
        if len(other.coeffs) == 1:
            inv = 1 / Fraction(other.coeffs[0])
            var = self._var_with(other)
            return LaurentPolynomial._raw(
                self.lo - other.lo, tuple(normalize_scalar(c * inv) for c in self.coeffs), var
            )
        q, r = self.divmod_poly(other)
        if r:
            raise ValueError(f"{self} is not divisible by {other}")
        return q

    # -- structural maps --------------------------------------------------

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``var**k``."""
        return LaurentPolynomial._raw(self.lo + k, self.coeffs, self.var)

    def reflect(self) -> "LaurentPolynomial":
        """Substitute ``var -> 1/var``."""
        return LaurentPolynomial(reversed(self.coeffs), -self.hi, self.var)

    def restrict(self, lo=None, hi=None) -> "LaurentPolynomial":
        """Keep only exponents in ``[lo, hi]`` (either bound optional)."""
        if not self.coeffs:
            return self
        a = self.lo if lo is None else max(lo, self.lo)
        b = self.hi if hi is None else min(hi, self.hi)
        if a > b:
            return LaurentPolynomial._raw(0, (), self.var)
        return LaurentPolynomial(self.coeffs[a - self.lo : b - self.lo + 1], a, self.var)

    def with_var(self, var: str) -> "LaurentPolynomial":
        return LaurentPolynomial._raw(self.lo, self.coeffs, var)

    def scale_var(self, k: int) -> "LaurentPolynomial":
        """Substitute ``var -> var**k`` for a nonzero integer ``k``."""
        return LaurentPolynomial.from_dict({e * k: c for e, c in self.terms()}, self.var)

    # -- comparison & display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.coefficient(0) == other
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if self.lo != other.lo or self.coeffs != other.coeffs:
            return False
        return self.var == other.var or self.is_constant()

    def __hash__(self):
        return hash((self.lo, self.coeffs))

    def __repr__(self):
        return f"LaurentPolynomial({list(self.coeffs)!r}, lo={self.lo}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in self.terms():
            if k == 0:
                parts.append(format_scalar(c))
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{format_scalar(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def lp(terms: dict | Scalar, var: str = "x") -> LaurentPolynomial:
    """Shorthand constructor: ``lp({-1: 1, 1: 1})`` is ``x^-1 + x``."""
    if isinstance(terms, dict):
        return LaurentPolynomial.from_dict(terms, var)
    return LaurentPolynomial.constant(terms, var)
