"""Gessel's model: boundary series, the chain of identities leading to an
algebraic equation, the parametrizing series and the closed forms.

Every identity is checked on series built from the walk table.  Terms in
``1/t`` are kept as series of negative valuation, so residuals carry their
own honest truncation order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple

from .kernel import (
    KernelRoots,
    build_kernel,
    kernel_roots,
    substitutability_certificate,
)
from .laurent import LaurentPolynomial
from .mpoly import MPoly, cubic_discriminant, gens, is_reflection_symmetric, symmetric_to_sum_basis
from .newton import newton_implicit, residual
from .report import CheckResult, Report, check_equal, check_zero
from .series import (
    EXACT,
    TruncatedLaurentSeries,
    UnivariateSeries,
    _Series,
    extract_x_part,
    reindex_by_var,
    series_divide,
    series_sqrt,
    substitute_boundary,
    t_power,
)
from .walks import WalkTable, boundary_sections, count_walks, get_model

GESSEL = get_model("gessel")

DEFAULT_CHAIN_ORDER = 24
DEFAULT_Q00_ORDER = 30
DEFAULT_ANNIHILATOR_ORDER = 40


@lru_cache(maxsize=8)
def gessel_table(maxn: int) -> WalkTable:
    return count_walks(GESSEL, maxn)


def _x(k: int = 1, c=1, var: str = "x") -> TruncatedLaurentSeries:
    """The exact series ``c * var**k``."""
    return TruncatedLaurentSeries([LaurentPolynomial.monomial(k, c, var)], 0, EXACT, var)


def _tx(tk: int, xk: int = 0, c=1, var: str = "x") -> TruncatedLaurentSeries:
    """The exact series ``c * t**tk * var**xk``."""
    return TruncatedLaurentSeries([LaurentPolynomial.monomial(xk, c, var)], tk, EXACT, var)


def _lift(s: UnivariateSeries, var: str = "x") -> TruncatedLaurentSeries:
    return s.as_laurent(var)


# ---------------------------------------------------------------------------
# boundary series


@dataclass
class BoundarySeries:
    """``R(x) = t(Q(x,0) - Q(0,0))`` and ``S(y) = t(1+y)Q(0,y)``."""

    r: TruncatedLaurentSeries
    s: TruncatedLaurentSeries
    order: int
    table: Optional[WalkTable] = None


@dataclass
class BoundaryInvariants:
    """``S(0)``, ``R'(0)`` and ``R''(0)`` as series in ``t``."""

    s0: UnivariateSeries
    r1: UnivariateSeries
    r2: UnivariateSeries

    @property
    def order(self) -> int:
        return int(min(self.s0.order, self.r1.order, self.r2.order))


def build_boundary(table: WalkTable, order: Optional[int] = None) -> BoundarySeries:
    qx0, q0y, q00 = boundary_sections(table)
    top = table.maxn + 1 if order is None else min(order, table.maxn + 1)
    t = t_power(1)
    r = (t * (qx0 - q00)).truncate(top)
    one_y = TruncatedLaurentSeries([LaurentPolynomial([1, 1], 0, "y")], 0, EXACT, "y")
    s = (t * one_y * q0y).truncate(top)
    return BoundarySeries(r.as_laurent("x") if isinstance(r, UnivariateSeries) else r, s, int(top), table)


def boundary_invariants(table: WalkTable) -> BoundaryInvariants:
    qx0, _, q00 = boundary_sections(table)
    t = t_power(1)
    return BoundaryInvariants(
        t * q00,
        t * qx0.coefficient_series(1),
        2 * t * qx0.coefficient_series(2),
    )


def _y_bound(slope: Fraction, v: int) -> Callable[[int], int]:
    """Lower bound on ``n + j*v`` over monomials ``t^n y^j`` of ``S``.

    ``S = t(1+y)Q(0,y)`` so a walk of length ``n-1`` ending at ``(0, j)``
    contributes ``t^n y^j`` and ``t^n y^(j+1)``.
    """
    return lambda n: math.ceil(slope * (n - 1) + 1 + min(0, v))


def substitute_s(b: BoundarySeries, inner: TruncatedLaurentSeries, order: int) -> _Series:
    """``S(inner)``; a negative-valuation ``inner`` is certified on the table."""
    if inner.valuation >= 0:
        return substitute_boundary(b.s, inner, order)
    if b.table is None:
        raise ValueError("substituting a negative-valuation series needs the walk table")
    cert = substitutability_certificate(b.table, 0, inner.valuation, section="y-axis")
    if not cert.passed:
        raise ValueError(f"substitution not certified: {cert.note}")
    return substitute_boundary(b.s, inner, order, _y_bound(cert.slope, inner.valuation))


def substitute_r(b: BoundarySeries, inner: _Series, order: int) -> _Series:
    if inner.valuation < 0:
        raise ValueError("R is only substituted with series of non-negative valuation")
    return substitute_boundary(b.r, inner, order)


def chain_inputs(order: int):
    """Table, boundary series and kernel roots sized for identities through
    ``t^order``.  Compositions with ``Y1`` need ``S`` to about twice the
    order, products with ``1/t`` terms need two extra orders."""
    n = order + 2
    table = gessel_table(2 * n + 2)
    b = build_boundary(table)
    roots = kernel_roots(build_kernel(GESSEL), n + 2)
    return table, b, roots, n


def _orbit_values(b: BoundarySeries, roots: KernelRoots, n: int) -> Dict[str, _Series]:
    x = _x()
    y0, y1 = roots.y0, roots.y1
    xy0 = x * y0
    out = {
        "R(x)": b.r,
        "R(xbar)": b.r.reflect(),
        "R(xY0)": substitute_r(b, xy0, n),
        "S(Y0)": substitute_s(b, y0, n),
        "S(Y1)": substitute_s(b, y1, n),
        "S(x^2Y0)": substitute_s(b, _x(2) * y0, n),
        "S(x^2Y1)": substitute_s(b, _x(2) * y1, n),
        "S(0)": _lift(b.s.coefficient_series(0)),
    }
    return out


def verify_orbit_equations(b: BoundarySeries, roots: KernelRoots, order: int) -> Report:
    """``R(x') + S(y') = x'y'`` for the four certified orbit pairs."""
    v = _orbit_values(b, roots, order + 2)
    x, xbar = _x(), _x(-1)
    y0 = roots.y0
    rep = Report("orbit", order)
    rep.add(check_equal("R(x)+S(Y0)=xY0", v["R(x)"] + v["S(Y0)"], x * y0, order))
    rep.add(check_equal("R(xY0)+S(Y1)=xbar", v["R(xY0)"] + v["S(Y1)"], xbar, order))
    rep.add(check_equal("R(xbar)+S(x^2Y0)=xY0", v["R(xbar)"] + v["S(x^2Y0)"], x * y0, order))
    rep.add(check_equal("R(xY0)+S(x^2Y1)=x", v["R(xY0)"] + v["S(x^2Y1)"], x, order))
    return rep


def _inv_t():
    return _tx(-1)


def _eq5g_rhs(r, rb, s0):
    """``R(x) + R(xbar) + 2 xbar - 1/t + x + S(0)``."""
    return r + rb + _x(-1, 2) - _inv_t() + _x() + s0


def verify_sum_identity(b: BoundarySeries, roots: KernelRoots, order: int) -> Report:
    v = _orbit_values(b, roots, order + 2)
    xbar = _x(-1)
    rep = Report("sum", order)
    rep.add(check_equal("S(Y0)+S(Y1)=R(xbar)+xbar+S(0)", v["S(Y0)"] + v["S(Y1)"],
                        v["R(xbar)"] + xbar + v["S(0)"], order))
    rep.add(check_equal("S(Y1)-xY1=R(x)+R(xbar)+2xbar-1/t+x+S(0)", v["S(Y1)"] - _x() * roots.y1,
                        _eq5g_rhs(v["R(x)"], v["R(xbar)"], v["S(0)"]), order))
    f = v["R(xbar)"] - v["S(Y0)"] - v["S(Y1)"] + xbar
    rep.add(check_zero("R(xbar)-S(Y0)-S(Y1)+xbar is x-constant", f - extract_x_part(f, 0), order))
    rep.add(check_equal("its constant term is -S(0)", extract_x_part(f, 0), -v["S(0)"], order))
    return rep


def verify_reconstructed_relation(b: BoundarySeries, roots: KernelRoots, order: int) -> Report:
    n = order + 2
    v = _orbit_values(b, roots, n)
    x, xbar, inv_t = _x(), _x(-1), _inv_t()
    r, rb, s0 = v["R(x)"].truncate(n), v["R(xbar)"].truncate(n), v["S(0)"].truncate(n)
    y0, y1 = roots.y0, roots.y1
    rep = Report("reconstruct", order)
    lhs = (v["S(Y0)"] - x * y0) * (v["S(Y1)"] - x * y1)
    rep.add(check_equal("product identity", lhs, -r * _eq5g_rhs(r, rb, s0), order))
    mixed = y0 * v["S(Y1)"] + y1 * v["S(Y0)"]
    rep.add(check_equal("[xbar](Y0 S(Y1) + Y1 S(Y0)) = S(0)/t",
                        extract_x_part(mixed, -1), xbar * s0 * inv_t, order))
    rrb = r * rb
    nonneg = 1 + (x - inv_t) * s0
    rep.add(check_equal("non-negative part", nonneg,
                        -r * r - extract_x_part(rrb, "nonneg") - (_x(-1, 2) - inv_t + x + s0) * r, order))
    r1 = _lift(r.coefficient_series(1))
    rep.add(check_equal("constant term 1 - S(0)/t", 1 - s0 * inv_t,
                        -extract_x_part(rrb, 0) - 2 * r1, order))
    quad = (r * r + rrb + rb * rb + (_x(-1, 2) - inv_t + x + s0) * r
            + (_x(1, 2) - inv_t + xbar + s0) * rb)
    rep.add(check_equal("quadratic relation in R(x), R(xbar)", quad,
                        2 * r1 - (xbar + x - inv_t) * s0 - 1, order))
    return rep


# ---------------------------------------------------------------------------
# cubic equation


def pol() -> MPoly:
    """The cubic in ``x0`` satisfied by ``x0 = R(x)`` given ``x1 = S(0)``,
    ``x2 = R'(0)``, ``x3 = R''(0)``."""
    x0, x1, x2, x3, t, x = gens("x0", "x1", "x2", "x3", "t", "x")
    xb, tb = x**-1, t**-1
    return (
        x0**3
        + (x1 + 3 * xb - tb) * x0**2
        + (2 * xb**2 - xb * tb + x * tb - x**2 - 2 * x2 + (2 * xb - tb) * x1) * x0
        - x3
        - x2 * (2 * x1 + 2 * xb - tb)
        - x * x1 * (x - tb)
        - x
    )


def _p_series(r, s0, r1, x, xb, inv_t):
    """``P(x)``, the side of the decoupled equation built from ``R(x)``."""
    return (
        r * r * r
        + (s0 + 3 * xb - inv_t) * r * r
        + (2 * xb * xb - xb * inv_t + x * inv_t - x * x - 2 * r1 + (2 * xb - inv_t) * s0) * r
        - x * x * s0
        + x * (2 * r1 + s0 * inv_t - 1)
    )


def verify_cubic_dde(b: BoundarySeries, inv: BoundaryInvariants, order: int) -> Report:
    n = order + 2
    x, xb, inv_t = _x(), _x(-1), _inv_t()
    r = b.r.truncate(n)
    s0, r1, r2 = (_lift(s.truncate(n)) for s in (inv.s0, inv.r1, inv.r2))
    p = _p_series(r, s0, r1, x, xb, inv_t)
    rep = Report("cubic", order)
    rep.add(check_equal("P(x)=P(xbar)", p, p.reflect(), order))
    closed = 2 * (x + xb) * r1 + r1 * (2 * s0 - inv_t) + r2
    rep.add(check_equal("P(x)=2(x+xbar)R'(0)+R'(0)(2S(0)-1/t)+R''(0)", p, closed, order))
    rep.add(check_equal("[x]P(x)=2R'(0)", extract_x_part(p, 1), 2 * x * r1, order))
    values = {"x0": r, "x1": s0, "x2": r1, "x3": r2, "t": _tx(1), "x": x}
    rep.add(check_zero("Pol(R(x),S(0),R'(0),R''(0),t,x)=0", pol().evaluate(values), order))
    return rep


# ---------------------------------------------------------------------------
# critical series


def factorization_identity() -> Tuple[MPoly, MPoly]:
    """Both sides of ``t x^2 (dPol/dx0 + x^2 dPol/dx) =
    (1-x)(1+x)(2tx^2+2t-x)(x0 x + x1 x + 1)``."""
    x0, x1, t, x = gens("x0", "x1", "t", "x")
    p = pol()
    lhs = t * x**2 * (p.diff("x0") + x**2 * p.diff("x"))
    rhs = (1 - x) * (1 + x) * (2 * t * x**2 + 2 * t - x) * (x0 * x + x1 * x + 1)
    return lhs, rhs


def catalan_like_series(order: int) -> UnivariateSeries:
    """The power series root of ``2tX^2 + 2t - X``."""
    X, t = gens("X", "t")
    return newton_implicit(2 * t * X**2 + 2 * t - X, 0, order, unknown="X")


@dataclass
class CriticalSeries:
    x0: UnivariateSeries
    x1: int
    x2: int
    identity_ring: str
    report: Report


def _evaluate_r_at(r: TruncatedLaurentSeries, point) -> UnivariateSeries:
    if isinstance(point, _Series):
        return substitute_boundary(r, point)
    return UnivariateSeries([c(point) for c in r.coeffs], r.valuation, r.order)


def critical_series(order: int, b: Optional[BoundarySeries] = None,
                    inv: Optional[BoundaryInvariants] = None) -> CriticalSeries:
    """``X1 = 1``, ``X2 = -1``, the Newton series ``X0``, the factorization
    identity (exact, in all six symbols) and the cancellation of
    ``t X^2 dPol/dx0`` at each ``X_i`` on table data."""
    lhs, rhs = factorization_identity()
    if lhs != rhs:
        raise ArithmeticError("factorization identity fails; Pol is mistranscribed")
    ring = "Q[x0, x1, x2, x3, t, 1/t, x, 1/x]"
    n = order + 3
    if b is None or inv is None:
        table = gessel_table(n + 2)
        b, inv = build_boundary(table), boundary_invariants(table)
    x0 = catalan_like_series(n)
    rep = Report("critical", order)
    rep.add(CheckResult(f"factorization identity holds in {ring}", order, True))
    X, tt = gens("X", "t")
    rep.add(check_zero("2tX0^2 + 2t - X0 = 0", residual(2 * tt * X**2 + 2 * tt - X, x0, "X"), order))
    d0 = pol().diff("x0")
    t = t_power(1)
    s0, r1, r2 = (s.truncate(n) for s in (inv.s0, inv.r1, inv.r2))
    for name, point in (("X1=1", 1), ("X2=-1", -1), ("X0", x0)):
        rx = _evaluate_r_at(b.r.truncate(n), point)
        values = {"x0": rx, "x1": s0, "x2": r1, "x3": r2, "t": t, "x": point}
        val = d0.evaluate(values) * point * point
        rep.add(check_zero(f"t X^2 dPol/dx0 at {name}", t * val, order))
    return CriticalSeries(x0.truncate(order), 1, -1, ring, rep)


# ---------------------------------------------------------------------------
# annihilating polynomials


def quartic_r1() -> MPoly:
    R, t = gens("R", "t")
    return (
        729 * t**6 * R**4
        + 243 * t**4 * (4 * t**2 + 1) * R**3
        - 27 * t**2 * (14 * t**4 + 19 * t**2 - 1) * R**2
        - (20 * t**2 - 1) * (7 * t**2 - 6 * t + 1) * (7 * t**2 + 6 * t + 1) * R
        - t**2 * (343 * t**4 - 37 * t**2 + 1)
    )


def octic_s0() -> MPoly:
    S, t = gens("S", "t")
    return (
        27 * t**7 * S**8
        + 108 * t**6 * S**7
        + 189 * t**5 * S**6
        + 189 * t**4 * S**5
        - 9 * t**3 * (32 * t**4 + 28 * t**2 - 13) * S**4
        - 9 * t**2 * (64 * t**4 + 56 * t**2 - 5) * S**3
        - 2 * t * (256 * t**6 - 312 * t**4 + 156 * t**2 - 5) * S**2
        - (32 * t**2 - 1) * (4 * t**2 - 6 * t + 1) * (4 * t**2 + 6 * t + 1) * S
        - t * (256 * t**6 + 576 * t**4 - 48 * t**2 + 1)
    )


def verify_annihilators(inv: BoundaryInvariants, order: int) -> Report:
    rep = Report("annihilators", order)
    t = t_power(1)
    rep.add(check_zero("quartic in R'(0)", quartic_r1().evaluate({"R": inv.r1, "t": t}), order))
    rep.add(check_zero("octic in S(0)", octic_s0().evaluate({"S": inv.s0, "t": t}), order))
    return rep


# ---------------------------------------------------------------------------
# discriminant


@dataclass
class DiscriminantConditions:
    disc: MPoly
    in_s: MPoly
    relations: Dict[str, MPoly]
    report: Report


@lru_cache(maxsize=1)
def discriminant_in_s() -> Tuple[MPoly, MPoly]:
    """The ``x0``-discriminant of ``Pol`` and the same polynomial in ``s = x + 1/x``."""
    disc = cubic_discriminant(pol(), "x0")
    if not is_reflection_symmetric(disc, "x"):
        raise ArithmeticError("discriminant is not symmetric under x -> 1/x")
    return disc, symmetric_to_sum_basis(disc, "x", "s")


def derive_discriminant_conditions(order: int, inv: Optional[BoundaryInvariants] = None) -> DiscriminantConditions:
    disc, in_s = discriminant_in_s()
    t = MPoly.var("t")
    rels = {
        "s=2": in_s.subs("s", MPoly.const(2)),
        "s=-2": in_s.subs("s", MPoly.const(-2)),
        "s=1/(2t)": in_s.subs("s", t**-1 / 2),
    }
    lost = max(-r.min_degree("t") for r in rels.values())
    if inv is None:
        inv = boundary_invariants(gessel_table(order + lost + 1))
    rep = Report("discriminant", order)
    rep.add(CheckResult("Disc(x) = Disc(1/x)", order, True))
    values = {"x1": inv.s0, "x2": inv.r1, "x3": inv.r2, "t": t_power(1)}
    for name, rel in rels.items():
        rep.add(check_zero(f"Disc at {name}", rel.evaluate(values), order))
    return DiscriminantConditions(disc, in_s, rels, rep)


# ---------------------------------------------------------------------------
# parametrization


def t_relation() -> MPoly:
    T, t = gens("T", "t")
    return (T - 1) * (T + 3) ** 3 - 256 * t**2 * T**3


def u_relation() -> MPoly:
    U, T, x = gens("U", "T", "x")
    return 16 * T**2 * (U**2 - T) - x * (U + U * T - 2 * T) * (U**2 - 9 * T + 8 * T * U + T**2 - T * U**2)


def v_relation() -> MPoly:
    V, T, y = gens("V", "T", "y")
    return 1 - T + 3 * V + V * T - y * V**2 * (3 + V + T - V * T)


def t_alt_relation() -> MPoly:
    A, t = gens("Ta", "t")
    return A - t**2 * (1 - A) * (1 + 3 * A) ** 3


def z_alt_relation() -> MPoly:
    Za, Ta = gens("Za", "Ta")
    return Za - Ta * (1 - Za + Za**2)


def u_alt_relation() -> MPoly:
    """The alternative ``U`` relation with its denominator cleared."""
    U, Z, x = gens("Ua", "Za", "x")
    return (U * (Z - 1) * (Z + 1) ** 3 * (Z**2 + U) * (U - 1)
            - x * Z * (U + Z - U * Z + U * Z**2) * (U - U * Z - Z**3 + U * Z**2))


def t_consistency() -> MPoly:
    """Both ``T`` relations solved for ``t^2`` and equated."""
    T, A = gens("T", "Ta")
    return (T - 1) * (T + 3) ** 3 * (1 - A) * (1 + 3 * A) ** 3 - 256 * T**3 * A


@dataclass
class ParametrizationSeries:
    T: UnivariateSeries
    Z: UnivariateSeries
    U: UnivariateSeries
    V: UnivariateSeries
    order: int
    T_alt: Optional[UnivariateSeries] = None
    Z_alt: Optional[UnivariateSeries] = None
    U_alt: Optional[UnivariateSeries] = None

    def residuals(self) -> Dict[str, _Series]:
        x = LaurentPolynomial.monomial(1, 1, "x")
        y = LaurentPolynomial.monomial(1, 1, "y")
        out = {
            "T": residual(t_relation(), self.T, "T"),
            "Z^2=T": self.Z * self.Z - self.T,
            "U": residual(u_relation(), self.U, "U", {"T": self.T, "x": x}),
            "V": residual(v_relation(), self.V, "V", {"T": self.T, "y": y}),
        }
        if self.T_alt is not None:
            out["T_alt"] = residual(t_alt_relation(), self.T_alt, "Ta")
            out["Z_alt"] = residual(z_alt_relation(), self.Z_alt, "Za", {"Ta": self.T_alt})
            out["U_alt"] = residual(u_alt_relation(), self.U_alt, "Ua", {"Za": self.Z_alt, "x": x})
            out["T consistency"] = t_consistency().evaluate({"T": self.T, "Ta": self.T_alt})
        return out


def parametrize(order: int, alternative: bool = True) -> ParametrizationSeries:
    """``T, Z, U, V`` (and the alternative ``T~, Z~, U~``) to ``t^order``."""
    x = LaurentPolynomial.monomial(1, 1, "x")
    y = LaurentPolynomial.monomial(1, 1, "y")
    T = newton_implicit(t_relation(), 1, order, unknown="T")
    Z = series_sqrt(T)
    U = newton_implicit(u_relation(), 1, order, unknown="U", env={"T": T, "x": x})
    V = newton_implicit(v_relation(), 0, order, unknown="V", env={"T": T, "y": y})
    p = ParametrizationSeries(T, Z, U, V, order)
    if alternative:
        p.T_alt = newton_implicit(t_alt_relation(), 0, order, unknown="Ta")
        p.Z_alt = newton_implicit(z_alt_relation(), 0, order, unknown="Za", env={"Ta": p.T_alt})
        p.U_alt = newton_implicit(u_alt_relation(), 1, order, unknown="Ua", env={"Za": p.Z_alt, "x": x})
    return p


def verify_parametrization(p: ParametrizationSeries, order: Optional[int] = None) -> Report:
    order = p.order if order is None else order
    rep = Report("parametrization", order)
    for name, res in p.residuals().items():
        rep.add(check_zero(f"{name} relation", res, order))
    return rep


# ---------------------------------------------------------------------------
# closed forms


def q00_closed_form(Z: _Series) -> _Series:
    num = 32 * Z**3 * (3 + 3 * Z - 3 * Z**2 + Z**3)
    den = (1 + Z) * (Z**2 + 3) ** 3
    return series_divide(num, den)


def r1_closed_form(T: _Series) -> _Series:
    return series_divide((T - 1) * (21 - 6 * T + T**2), (T + 3) ** 3)


def r2_closed_form(Z: _Series) -> _Series:
    num = 1024 * t_power(1) * Z**3 * (Z - 1) * (1 + 2 * Z + 7 * Z**2 - Z**4 - 2 * Z**5 + Z**6)
    den = (1 + Z) * (3 + Z**2) ** 6
    return series_divide(num, den)


def qxt0_closed_form(T: _Series, Z: _Series, U: _Series) -> _Series:
    """``Q(xt, 0)`` from ``T``, ``Z`` and ``U``."""
    one = UnivariateSeries([1])
    T1 = T - one
    M = (T1**2 * U**3 + Z * T1 * (T - 16 * Z - 1) * U**2
         - T * U * (T**2 + 16 * Z * T - 82 * T - 16 * Z + 17)
         - Z * T * (T**2 - 18 * T + 128 * Z + 81))
    w = U + U * T - 2 * T
    q = U**2 - 9 * T + 8 * T * U + T**2 - T * U**2
    num = 16 * T * w * M
    den = (one - T) * (T + 3) ** 3 * (U + Z) * q
    return series_divide(num, den)


def q0y_closed_form(T: _Series, Z: _Series, V: _Series) -> _Series:
    """``Q(0, y)`` from ``T``, ``Z`` and ``V``."""
    one = UnivariateSeries([1])
    N = ((Z - 1) ** 2 * (T + 3) * V**3 + (T - 1) * (T + 2 * Z - 7) * V**2
         + (T - 1) * (T - 2 * Z - 7) * V + (Z + 1) ** 2 * (T + 3))
    num = 16 * V * Z**3 * (3 + V + T - V * T) * N
    den = (T - one) * (T + 3) ** 3 * (1 + V) ** 2 * (1 + Z + V - V * Z) ** 2
    return series_divide(num, den)


def _as_param(s: _Series, var: str) -> TruncatedLaurentSeries:
    if isinstance(s, TruncatedLaurentSeries):
        return s
    return s.as_laurent(var)


def verify_theorem(table: WalkTable, p: ParametrizationSeries, order: int) -> Report:
    """Closed forms for ``Q(0,0)``, ``Q(xt,0)``, ``Q(0,y)``, ``R'(0)`` and
    ``R''(0)`` against the table, plus the evenness of ``Q(xt,0)``."""
    qx0, q0y, q00 = boundary_sections(table)
    inv = boundary_invariants(table)
    rep = Report("theorem", order)
    rep.add(check_equal("(a) Q(0,0) closed form", q00_closed_form(p.Z), q00, order))
    qxt0 = reindex_by_var(qx0)
    closed_b = _as_param(qxt0_closed_form(p.T, p.Z, p.U), "x")
    rep.add(check_equal("(b) Q(xt,0) closed form", closed_b, qxt0, order))
    odd = [n for n, c in enumerate(qxt0.coeffs, qxt0.valuation) if n % 2 and c and n <= order]
    rep.add(CheckResult("(b) Q(xt,0) is even in t", order, not odd, odd[0] if odd else None,
                        f"t^{odd[0]}: {qxt0[odd[0]]}" if odd else None))
    neg = [n for n, c in enumerate(qxt0.coeffs, qxt0.valuation) if c and c.lo < 0 and n <= order]
    rep.add(CheckResult("(b) Q(xt,0) has polynomial coefficients in x", order, not neg,
                        neg[0] if neg else None))
    closed_c = _as_param(q0y_closed_form(p.T, p.Z, p.V), "y")
    rep.add(check_equal("(c) Q(0,y) closed form", closed_c, q0y, order))
    rep.add(check_equal("(d) R'(0) closed form", r1_closed_form(p.T), inv.r1, order))
    rep.add(check_equal("(d) R''(0) closed form", r2_closed_form(p.Z), inv.r2, order))
    return rep


# ---------------------------------------------------------------------------
# the kernel equation at xt


def _poly_shift_one(p: LaurentPolynomial, var: str = "w") -> LaurentPolynomial:
    """``p(1 + w)`` for a polynomial ``p(x)``."""
    if p.lo < 0:
        raise ValueError("expected a polynomial")
    one_w = LaurentPolynomial([1, 1], 0, var)
    acc = LaurentPolynomial([], 0, var)
    for k in range(p.hi, -1, -1):
        acc = acc * one_w + p.coefficient(k)
    return acc


def y0_at_xt(order: int) -> TruncatedLaurentSeries:
    """``Y0(xt)`` in the variable ``w = x - 1``.

    ``K(xt, y) = 0`` reads ``w y = 1 + (1+w)^2 t^2 y (1+y)``; the coefficients
    are Laurent polynomials in ``w`` (they have poles at ``x = 1``).
    """
    one_w2 = LaurentPolynomial([1, 2, 1], 0, "w")
    w = LaurentPolynomial.monomial(1, 1, "w")
    cs = [
        TruncatedLaurentSeries([-1], 0, EXACT, "w"),
        TruncatedLaurentSeries([w, 0, -one_w2], 0, EXACT, "w"),
        TruncatedLaurentSeries([-one_w2], 2, EXACT, "w"),
    ]
    return newton_implicit(cs, LaurentPolynomial.monomial(-1, 1, "w"), order)


def xbar_expansion(c: LaurentPolynomial, depth: int) -> Dict[int, Fraction]:
    """Expand a Laurent polynomial in ``w = x - 1`` in powers of ``1/x``,
    keeping exponents ``>= -depth``."""
    out: Dict[int, Fraction] = {}
    for k, a in c.terms():
        if k >= 0:
            for i in range(k + 1):
                e = i
                out[e] = out.get(e, 0) + a * math.comb(k, i) * (-1) ** (k - i)
        else:
            m = -k
            # (x-1)^-m = xbar^m (1 - xbar)^-m
            for i in range(0, depth - m + 1):
                e = -(m + i)
                out[e] = out.get(e, 0) + a * math.comb(m + i - 1, i)
    return {e: v for e, v in out.items() if v and e >= -depth}


def derive_q0y_from_kernel(table: WalkTable, order: int) -> Report:
    """``t(Q(xt,0) - Q(0,0)) + S(Y0(xt)) = xt Y0(xt)`` with ``x = 1 + w``."""
    qx0, _, q00 = boundary_sections(table)
    b = build_boundary(table)
    y = y0_at_xt(order)
    qxt0 = reindex_by_var(qx0)
    qxt0 = TruncatedLaurentSeries([_poly_shift_one(c) for c in qxt0.coeffs], qxt0.valuation, qxt0.order, "w")
    t = _tx(1, 0, 1, "w")
    one_w = TruncatedLaurentSeries([LaurentPolynomial([1, 1], 0, "w")], 0, EXACT, "w")
    lhs = t * (qxt0 - q00.as_laurent("w")) + substitute_boundary(b.s, y, order)
    rep = Report("q0y-bridge", order)
    rep.add(check_equal("t(Q(xt,0)-Q(0,0)) + S(Y0(xt)) = xt Y0(xt)", lhs, one_w * t * y, order))
    rep.add(check_zero("K(xt, Y0(xt)) = 0", residual([
        TruncatedLaurentSeries([-1], 0, EXACT, "w"),
        TruncatedLaurentSeries([LaurentPolynomial.monomial(1, 1, "w"), 0,
                                -LaurentPolynomial([1, 2, 1], 0, "w")], 0, EXACT, "w"),
        TruncatedLaurentSeries([-LaurentPolynomial([1, 2, 1], 0, "w")], 2, EXACT, "w"),
    ], y), order))
    return rep


# alias spelling Q(0,y) with a capital Q
derive_Q0y_from_kernel = derive_q0y_from_kernel


def compare_y0_at_xt(roots: KernelRoots, y_w: TruncatedLaurentSeries, max_t: int, depth: int) -> Optional[Tuple[int, int]]:
    """Compare ``Y0(xt)`` against ``Y0(x)`` regrouped by total degree, as
    expansions in ``1/x``.  Returns the first mismatch ``(t-exponent, x-exponent)``."""
    for m in range(max_t + 1):
        lhs = xbar_expansion(y_w[m], depth)
        rhs: Dict[int, Fraction] = {}
        for n in range(max(1, roots.y0.valuation), m + depth + 1):
            c = roots.y0[n].coefficient(m - n)
            if c:
                rhs[m - n] = rhs.get(m - n, 0) + c
        for e in sorted(set(lhs) | set(rhs)):
            if lhs.get(e, 0) != rhs.get(e, 0):
                return m, e
    return None
