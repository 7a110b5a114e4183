"""The kernel of a small-step model, its two roots in ``y``, the group
generated by the two involutions, and constant-term extraction from
symmetric functions of the roots."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import sympy

from .laurent import LaurentPolynomial
from .mpoly import MPoly, elementary_symmetric_form
from .series import (
    EXACT,
    TruncatedLaurentSeries,
    _Series,
    extract_x_part,
    series_divide,
    series_sqrt,
)
from .walks import StepModel, WalkTable, count_walks

X, Y, T = sympy.symbols("x y t")
Y0_SYM, Y1_SYM = sympy.symbols("Y0 Y1")

DEFAULT_ORBIT_BOUND = 16


class InvariantViolation(AssertionError):
    """A structural property that must hold on exact data was found broken."""


@dataclass(frozen=True)
class Kernel:
    """``K(x, y) = 1 - t * sum m x^dx y^dy`` for a small-step model."""

    model: StepModel

    def y_coefficients(self) -> Tuple[LaurentPolynomial, LaurentPolynomial, LaurentPolynomial]:
        """``(A_-1, A_0, A_1)`` with ``sum m x^dx y^dy = A_-1/y + A_0 + A_1 y``."""
        parts = {-1: {}, 0: {}, 1: {}}
        for (dx, dy), m in self.model.steps:
            parts[dy][dx] = parts[dy].get(dx, 0) + m
        return tuple(LaurentPolynomial.from_dict(parts[k], "x") for k in (-1, 0, 1))

    def x_coefficients(self) -> Tuple[LaurentPolynomial, LaurentPolynomial, LaurentPolynomial]:
        """``(B_-1, B_0, B_1)``, the same split with respect to ``x``."""
        parts = {-1: {}, 0: {}, 1: {}}
        for (dx, dy), m in self.model.steps:
            parts[dx][dy] = parts[dx].get(dy, 0) + m
        return tuple(LaurentPolynomial.from_dict(parts[k], "y") for k in (-1, 0, 1))

    def step_polynomial(self) -> MPoly:
        return MPoly({tuple(p for p in (("x", dx), ("y", dy)) if p[1]): m for (dx, dy), m in self.model.steps})

    def poly(self) -> MPoly:
        return 1 - MPoly.var("t") * self.step_polynomial()

    def to_sympy(self):
        return 1 - T * sum(m * X**dx * Y**dy for (dx, dy), m in self.model.steps)

    def __str__(self):
        return f"1 - t*({self.step_polynomial()})"


def build_kernel(model: StepModel) -> Kernel:
    k = Kernel(model)
    a_m, _, a_p = k.y_coefficients()
    if a_m.is_zero() or a_p.is_zero():
        raise ValueError(f"kernel of {model.name} is not quadratic in y")
    return k


# ---------------------------------------------------------------------------
# roots


@dataclass
class KernelRoots:
    """``Y0`` (positive valuation) and ``Y1`` as truncated series in ``t``.

    ``y1`` is ``None`` when ``A_1`` is not a monomial, because ``Y1`` then
    has no Laurent-polynomial coefficients.  ``e1`` and ``e2`` are the exact
    symmetric functions ``Y0 + Y1`` and ``Y0 * Y1`` when they exist.
    """

    kernel: Kernel
    order: int
    y0: TruncatedLaurentSeries
    y1: Optional[TruncatedLaurentSeries]
    e1: Optional[TruncatedLaurentSeries]
    e2: Optional[TruncatedLaurentSeries]

    def residuals(self) -> List[_Series]:
        """``K(x, Yi)`` for the available roots (multiplied by ``y``)."""
        a_m, a_0, a_p = self.kernel.y_coefficients()
        out = []
        for y in (self.y0, self.y1):
            if y is None:
                continue
            t = TruncatedLaurentSeries([1], 1, EXACT, "x")
            yk = y - t * (_const(a_m) + _const(a_0) * y + _const(a_p) * y * y)
            out.append(yk)
        return out


def _const(p: LaurentPolynomial) -> TruncatedLaurentSeries:
    return TruncatedLaurentSeries([p], 0, EXACT, "x")


def kernel_roots(k: Kernel, order: int) -> KernelRoots:
    """Both roots by the quadratic formula with a series square root.

    ``y*K = -t A_1 y^2 + (1 - t A_0) y - t A_-1``; the discriminant
    ``(1 - t A_0)^2 - 4 t^2 A_1 A_-1`` has constant term 1, so its square root
    always exists and ``Y0 = (1 - t A_0 - sqrt) / (2 t A_1)``.
    """
    a_m, a_0, a_p = k.y_coefficients()
    disc = TruncatedLaurentSeries([1, -2 * a_0, a_0 * a_0 - 4 * a_p * a_m], 0, EXACT, "x")
    root = series_sqrt(disc, order + 1)
    b = TruncatedLaurentSeries([1, -a_0], 0, EXACT, "x")
    den = TruncatedLaurentSeries([2 * a_p], 1, EXACT, "x")
    y0 = series_divide(b - root, den).truncate(order)
    y1 = e1 = e2 = None
    if a_p.is_monomial():
        inv = a_p**-1
        e1 = TruncatedLaurentSeries([inv, -a_0 * inv], -1, EXACT, "x")
        e2 = TruncatedLaurentSeries([a_m * inv], 0, EXACT, "x")
        y1 = (e1 - y0).truncate(order)
    return KernelRoots(k, order, y0, y1, e1, e2)


def symmetric_functions(roots: KernelRoots) -> Optional[Tuple[_Series, _Series]]:
    """``(Y0 + Y1, Y0 * Y1)`` from the truncated roots, or ``None``."""
    if roots.y1 is None:
        return None
    return roots.y0 + roots.y1, roots.y0 * roots.y1


def is_xbar_polynomial(s: _Series) -> bool:
    return all(not c or c.hi <= 0 for c in s.coeffs)


def roots_have_symmetric_kernel(roots: KernelRoots) -> bool:
    """Are both symmetric functions of the computed roots polynomials in 1/x?"""
    sf = symmetric_functions(roots)
    return sf is not None and all(is_xbar_polynomial(s) for s in sf)


# ---------------------------------------------------------------------------
# symmetric-function extraction


def symmetric_extract(p: MPoly, roots: KernelRoots, u: str = "u", v: str = "v"):
    """``P(Y0, Y1)`` and its ``x``-constant term, for ``P`` symmetric in ``u, v``.

    The evaluation goes through ``e1 = Y0 + Y1`` and ``e2 = Y0 Y1`` so it is
    exact.  For a symmetric-kernel model no positive power of ``x`` may
    appear; one that does raises ``InvariantViolation``.
    """
    if roots.e1 is None:
        raise ValueError("roots do not come from a model with Laurent symmetric functions")
    form = elementary_symmetric_form(p, u, v, "e1", "e2")
    value = form.evaluate({"e1": roots.e1, "e2": roots.e2})
    if not isinstance(value, _Series):
        value = TruncatedLaurentSeries([value], 0, EXACT, "x")
    for n, c in enumerate(value.coeffs, value.valuation):
        if c and c.hi > 0:
            raise InvariantViolation(f"t^{n} coefficient {c} has a positive power of x")
    return value, extract_x_part(value, 0)


# ---------------------------------------------------------------------------
# group of the walk


def _sympy_lp(p: LaurentPolynomial, sym):
    return sum(c * sym**e for e, c in p.terms())


def involutions(k: Kernel):
    """``(Phi, Psi)`` as functions on pairs of sympy expressions."""
    b_m, _, b_p = k.x_coefficients()
    a_m, _, a_p = k.y_coefficients()
    if b_m.is_zero() or b_p.is_zero():
        raise ValueError(f"kernel of {k.model.name} is not quadratic in x")
    ratio_x = _sympy_lp(b_m, Y) / _sympy_lp(b_p, Y)
    ratio_y = _sympy_lp(a_m, X) / _sympy_lp(a_p, X)

    def phi(pair):
        a, b = pair
        return (sympy.cancel(ratio_x.subs(Y, b) / a), b)

    def psi(pair):
        a, b = pair
        return (a, sympy.cancel(ratio_y.subs(X, a) / b))

    return phi, psi


def verify_kernel_invariance(k: Kernel) -> bool:
    """``K(Phi(x,y)) = K(Psi(x,y)) = K(x,y)`` as rational functions."""
    phi, psi = involutions(k)
    kk = k.to_sympy()
    for g in (phi, psi):
        a, b = g((X, Y))
        if sympy.cancel(kk.subs({X: a, Y: b}, simultaneous=True) - kk) != 0:
            return False
    return True


@dataclass
class OrbitElement:
    """An element ``g(x, y)`` of the orbit, later read at ``y = Y0``."""

    word: str
    x_expr: object
    y_expr: object
    label: str = ""
    x_series: Optional[_Series] = None
    y_series: Optional[_Series] = None
    substitutable: Optional[bool] = None
    note: Optional[str] = None

    @property
    def pair(self):
        return (self.x_expr, self.y_expr)

    def valuations(self) -> Optional[Tuple[int, int]]:
        if self.x_series is None or self.y_series is None:
            return None
        return self.x_series.valuation, self.y_series.valuation


def _same(p, q) -> bool:
    return all(sympy.cancel(a - b) == 0 for a, b in zip(p, q))


def orbit_pairs(k: Kernel, bound: int = DEFAULT_ORBIT_BOUND) -> List[Tuple[str, tuple]]:
    """Orbit of ``(x, y)`` under ``<Phi, Psi>``, breadth first, with the
    shortest word producing each element."""
    phi, psi = involutions(k)
    found: List[Tuple[str, tuple]] = [("id", (X, Y))]
    queue = deque(found)
    while queue:
        word, p = queue.popleft()
        for name, g in (("Phi", phi), ("Psi", psi)):
            q = g(p)
            if any(_same(q, r) for _, r in found):
                continue
            if len(found) >= bound:
                raise ValueError(f"orbit of {k.model.name} does not close within {bound} elements")
            w = name if word == "id" else f"{name}.{word}"
            found.append((w, q))
            queue.append((w, q))
    return found


def _root_label(expr, ratio) -> str:
    """Write ``expr(x, Y0)`` with negative powers of ``Y0`` turned into
    powers of ``Y1`` when ``Y0 Y1`` is a monomial."""
    expr = sympy.factor(expr)
    num, den = sympy.fraction(expr)
    if ratio is not None and den.has(Y) and not num.has(Y):
        pd = sympy.Poly(den, Y)
        if len(pd.terms()) == 1:
            ((e,), c) = pd.terms()[0]
            out = num / c * (Y1_SYM / ratio) ** e
            return str(sympy.factor(sympy.simplify(out)))
    return str(expr.subs(Y, Y0_SYM))


def _instantiate(expr, y0: TruncatedLaurentSeries, order: int) -> Optional[_Series]:
    """``expr(x, Y0)`` as a series, or ``None`` when it has no
    Laurent-polynomial coefficients."""
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))

    def evaluate(poly):
        p = sympy.Poly(poly, X, Y)
        by_y: Dict[int, Dict[int, Fraction]] = {}
        for (i, j), c in p.terms():
            by_y.setdefault(j, {})[i] = Fraction(int(c.p), int(c.q))
        top = max(by_y)
        acc = _const(LaurentPolynomial.from_dict(by_y.get(top, {}), "x"))
        for j in range(top - 1, -1, -1):
            acc = (acc * y0).truncate(order + 2) + _const(LaurentPolynomial.from_dict(by_y.get(j, {}), "x"))
        return acc

    a, b = evaluate(num), evaluate(den)
    try:
        return series_divide(a, b).truncate(order)
    except ValueError:
        return None


@dataclass
class SubstitutabilityCertificate:
    passed: bool
    valuations: Tuple[int, int]
    slope: Optional[Fraction] = None
    violation: Optional[Tuple[int, int, int]] = None
    note: Optional[str] = None

    def __bool__(self):
        return self.passed


def substitutability_certificate(table: WalkTable, vx: int, vy: int,
                                 section: Optional[str] = None) -> SubstitutabilityCertificate:
    """Scan every nonzero ``q(i,j;n)`` with ``n >= 1`` for ``n + i vx + j vy``.

    The substitution ``Q(x', y')`` is certified when that valuation is at
    least 1 throughout; the slope is the least ratio to ``n``.  ``section``
    restricts the scan to ``"x-axis"`` (``j = 0``) or ``"y-axis"`` (``i = 0``).
    """
    slope = None
    for n, i, j, _ in table.nonzero():
        if n == 0 or (section == "y-axis" and i) or (section == "x-axis" and j):
            continue
        val = n + i * vx + j * vy
        if val < 1:
            return SubstitutabilityCertificate(False, (vx, vy), None, (n, i, j),
                                               f"t^{n} x^{i} y^{j} lands at t-valuation {val}")
        r = Fraction(val, n)
        if slope is None or r < slope:
            slope = r
    return SubstitutabilityCertificate(True, (vx, vy), slope)


def verify_substitutability(table: WalkTable, pair: OrbitElement) -> SubstitutabilityCertificate:
    vals = pair.valuations()
    if vals is None:
        return SubstitutabilityCertificate(False, (0, 0), note=pair.note or "pair has no series form")
    return substitutability_certificate(table, *vals)


def group_orbit(
    k: Kernel,
    bound: int = DEFAULT_ORBIT_BOUND,
    order: int = 10,
    table: Optional[WalkTable] = None,
) -> List[OrbitElement]:
    """The orbit of ``(x, Y0)``, each element certified against a walk table
    (built to length ``2*order`` unless given)."""
    pairs = orbit_pairs(k, bound)
    roots = kernel_roots(k, order)
    a_m, _, a_p = k.y_coefficients()
    ratio = None
    if a_m.is_monomial() and a_p.is_monomial():
        ratio = _sympy_lp(a_m, X) / _sympy_lp(a_p, X)
    if table is None:
        table = count_walks(k.model, 2 * order)
    out = []
    for word, (a, b) in pairs:
        label = f"({_root_label(a, ratio)}, {_root_label(b, ratio)})"
        el = OrbitElement(word, a, b, label)
        el.x_series = _instantiate(a, roots.y0, order)
        el.y_series = _instantiate(b, roots.y0, order)
        if el.x_series is None or el.y_series is None:
            el.note = "not a series with Laurent-polynomial coefficients"
        el.substitutable = verify_substitutability(table, el).passed
        out.append(el)
    return out


@lru_cache(maxsize=None)
def group_order(model: StepModel, bound: int = DEFAULT_ORBIT_BOUND) -> int:
    return len(orbit_pairs(build_kernel(model), bound))
