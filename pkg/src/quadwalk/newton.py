"""Coefficient-by-coefficient solution of implicit polynomial equations."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .laurent import LaurentPolynomial, normalize_scalar
from .mpoly import MPoly
from .series import (
    EXACT,
    TruncatedLaurentSeries,
    UnivariateSeries,
    _Series,
    t_power,
)


class NewtonError(ValueError):
    pass


def equation_coefficients(equation: MPoly, unknown: str, env: Optional[Mapping[str, object]] = None) -> list:
    """Coefficients ``c_k(t)`` of ``sum_k c_k(t) * unknown**k``.

    ``t`` is bound to the exact series ``t``; other symbols come from ``env``
    (scalars, Laurent polynomials or series).
    """
    values = {"t": t_power(1)}
    values.update(env or {})
    cs = equation.collect(unknown)
    if min(cs) < 0:
        raise NewtonError(f"negative power of {unknown} in the equation")
    out = [UnivariateSeries([0])] * (max(cs) + 1)
    for k, c in cs.items():
        v = c.evaluate(values)
        if not isinstance(v, _Series):
            v = (UnivariateSeries([v]) if not isinstance(v, LaurentPolynomial)
                 else TruncatedLaurentSeries([v], var=v.var))
        out[k] = v
    return out


def _is_unit(c) -> bool:
    if isinstance(c, LaurentPolynomial):
        return c.is_monomial()
    return c != 0


def _coef(s: _Series, k: int):
    return s[k] if k >= s.valuation else 0


def newton_implicit(
    equation: Union[MPoly, Sequence[_Series]],
    seed,
    order: int,
    unknown: str = "S",
    env: Optional[Mapping[str, object]] = None,
) -> _Series:
    """Unique series ``S`` with ``S(0) = seed`` and ``F(S, t) = 0``.

    ``equation`` is either a polynomial in ``unknown`` and ``t`` (plus any
    symbols bound in ``env``) or the list of coefficient series of the
    powers of the unknown.  Each step fixes one new coefficient through the
    linearization ``F_S(seed, 0)``, which must be a unit.
    """
    if isinstance(equation, MPoly):
        cs = equation_coefficients(equation, unknown, env)
    else:
        cs = list(equation)
    for k, c in enumerate(cs):
        if c.coeffs and c.valuation < 0:
            raise NewtonError(f"coefficient of {unknown}^{k} has negative t-valuation")
        if c.order < order:
            raise NewtonError(f"coefficient of {unknown}^{k} is only known to order {c.order}")
    seed = normalize_scalar(seed) if not isinstance(seed, LaurentPolynomial) else seed
    # constant-term equation and its derivative at the seed
    f0 = 0
    d0 = 0
    for k, c in enumerate(cs):
        c0 = _coef(c, 0)
        if c0:
            f0 = f0 + c0 * seed**k
            if k:
                d0 = d0 + k * c0 * seed ** (k - 1)
    if f0:
        raise NewtonError(f"seed {seed} is not a root of the constant-term equation (residual {f0})")
    if not _is_unit(d0):
        raise NewtonError(f"degenerate linearization at the seed: derivative {d0}")
    parametric = any(isinstance(c, TruncatedLaurentSeries) and c.coeffs and
                     any(not x.is_constant() for x in c.coeffs) for c in cs) or isinstance(seed, LaurentPolynomial)
    var = None
    for c in cs:
        if isinstance(c, TruncatedLaurentSeries):
            var = c.var
        elif isinstance(c, UnivariateSeries) and c.param:
            var = c.param
            parametric = True
    if isinstance(seed, LaurentPolynomial):
        var = var or seed.var

    def make(coeffs, top):
        if parametric:
            return TruncatedLaurentSeries(coeffs, 0, top, var)
        return UnivariateSeries(coeffs, 0, top)

    inv_d0 = d0**-1 if isinstance(d0, LaurentPolynomial) else 1 / Fraction(d0)
    coeffs = [seed]
    for n in range(1, order + 1):
        s = make(coeffs + [0], n)
        # F(s) mod t^(n+1) by Horner
        acc = cs[-1].truncate(n)
        for c in reversed(cs[:-1]):
            acc = (acc * s).truncate(n) + c.truncate(n)
        r = _coef(acc, n)
        coeffs.append(-r * inv_d0 if r else 0)
    result = make(coeffs, order)
    return result


def residual(equation: Union[MPoly, Sequence[_Series]], value: _Series, unknown: str = "S",
             env: Optional[Mapping[str, object]] = None) -> _Series:
    """``F(value, t)`` as a truncated series."""
    if isinstance(equation, MPoly):
        cs = equation_coefficients(equation, unknown, env)
    else:
        cs = list(equation)
    acc = cs[-1]
    for c in reversed(cs[:-1]):
        acc = acc * value + c
    return acc
