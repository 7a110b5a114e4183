"""Models with multiple steps: the kernel-symmetry classification, the
lambda-weighted model {W, SW, SE, NE, E x2, S x lambda}, and enumeration
support for the remaining models."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

from .gessel import _lift, _tx, _x, substitute_s
from .kernel import (
    KernelRoots,
    build_kernel,
    group_order,
    kernel_roots,
    roots_have_symmetric_kernel,
)
from .laurent import LaurentPolynomial
from .report import CheckResult, Report, check_equal, check_zero
from .series import (
    EXACT,
    TruncatedLaurentSeries,
    UnivariateSeries,
    series_invert,
    substitute_boundary,
    t_power,
)
from .walks import (
    KAUERS_YATCHAK,
    UNWEIGHTED,
    StepModel,
    WalkTable,
    boundary_sections,
    count_walks,
    verify_functional_equation,
    weighted_model,
)

TESTED_LAMBDAS = (0, 1, 2, 3, 5)


def classify_kernel_symmetry(model: StepModel) -> bool:
    """True iff the only step going up is ``(1, 1)``."""
    return {s for s, _ in model.steps if s[1] == 1} == {(1, 1)}


@dataclass
class ClassificationRow:
    model: str
    steps: str
    predicate: bool
    roots_symmetric: bool
    group_order: int

    @property
    def agree(self) -> bool:
        return self.predicate == self.roots_symmetric


def classify(model: StepModel, order: int = 10) -> ClassificationRow:
    """Predicate next to the direct test on the computed roots."""
    k = build_kernel(model)
    by_roots = roots_have_symmetric_kernel(kernel_roots(k, order))
    return ClassificationRow(model.name, model.label(), classify_kernel_symmetry(model), by_roots, group_order(model))


def classification_table(models: Optional[Dict[str, StepModel]] = None, order: int = 10) -> List[ClassificationRow]:
    if models is None:
        models = dict(UNWEIGHTED)
        models["weighted-1"] = weighted_model(1)
        models.update(KAUERS_YATCHAK)
    return [classify(m, order) for m in models.values()]


# ---------------------------------------------------------------------------
# weighted model


@dataclass
class WeightedBoundary:
    """``R(x) = t(1+lam x+x^2)Q(x,0) - tQ(0,0)`` and ``S(y) = t(1+y)Q(0,y)``."""

    r: TruncatedLaurentSeries
    s: TruncatedLaurentSeries
    lam: int
    order: int
    table: Optional[WalkTable] = None
    q00: Optional[UnivariateSeries] = None


def build_weighted_boundary(table: WalkTable, lam: int) -> WeightedBoundary:
    qx0, q0y, q00 = boundary_sections(table)
    top = table.maxn + 1
    t = t_power(1)
    quad = TruncatedLaurentSeries([LaurentPolynomial([1, lam, 1], 0, "x")], 0, EXACT, "x")
    r = (t * quad * qx0 - t * q00).truncate(top)
    one_y = TruncatedLaurentSeries([LaurentPolynomial([1, 1], 0, "y")], 0, EXACT, "y")
    s = (t * one_y * q0y).truncate(top)
    return WeightedBoundary(r, s, lam, top, table, q00)


def weighted_inputs(lam: int, order: int):
    n = order + 2
    table = count_walks(weighted_model(lam), 2 * n + 2)
    wb = build_weighted_boundary(table, lam)
    roots = kernel_roots(build_kernel(weighted_model(lam)), n + 2)
    return wb, roots


def weighted_pairs(wb: WeightedBoundary, roots: KernelRoots):
    """The four orbit pairs for which ``Q(x', y')`` is well defined."""
    lam = wb.lam
    x = _x()
    t = _tx(1)
    damp = series_invert(TruncatedLaurentSeries([1, lam], 0, EXACT, "x"), roots.order + 2)
    y0, y1 = roots.y0, roots.y1
    a = t * (1 + y1) * damp
    b = t * (1 + y0) * damp
    c = _tx(-1, 1) + _x(1, lam) - 1
    return [("(x, Y0)", x, y0), ("(t(1+Y1)/(1+lam t), Y0)", a, y0),
            ("(t(1+Y0)/(1+lam t), Y1)", b, y1), ("(t(1+Y0)/(1+lam t), x/t+lam x-1)", b, c)]


def weighted_orbit_equations(wb: WeightedBoundary, roots: KernelRoots, order: int) -> Report:
    n = order + 2
    rep = Report(f"weighted-orbit[lambda={wb.lam}]", order)
    values = {}
    for name, xp, yp in weighted_pairs(wb, roots):
        rx = substitute_boundary(wb.r, xp, n)
        sy = substitute_s(wb, yp, n)
        values[name] = (rx, sy)
        rep.add(check_equal(f"x'y' = R(x') + S(y') at {name}", xp * yp, rx + sy, order))
    s_y0 = values["(x, Y0)"][1]
    s_y1 = values["(t(1+Y0)/(1+lam t), Y1)"][1]
    s_c = values["(t(1+Y0)/(1+lam t), x/t+lam x-1)"][1]
    rep.add(check_equal("S(Y0)+S(Y1)=xbar", s_y0 + s_y1, _x(-1), order))
    rep.add(check_equal("x=S(x/t+lam x-1)-R(x)", _x(), s_c - wb.r, order))
    return rep


def _mod_quadratic(p: LaurentPolynomial, lam: int) -> LaurentPolynomial:
    """Remainder of a polynomial modulo ``1 + lam x + x^2``."""
    if p.is_zero():
        return p
    if p.lo < 0:
        raise ValueError("expected a polynomial")
    rem = [p.coefficient(k) for k in range(p.hi + 1)]
    for k in range(len(rem) - 1, 1, -1):
        c = rem[k]
        if c:
            rem[k] = 0
            rem[k - 1] -= lam * c
            rem[k - 2] -= c
    return LaurentPolynomial(rem, 0, p.var)


def weighted_dde(wb: WeightedBoundary, roots: KernelRoots, order: int) -> Report:
    n = order + 2
    lam = wb.lam
    x, xb, inv_t = _x(), _x(-1), _tx(-1)
    r = wb.r.truncate(n)
    y0, y1 = roots.y0, roots.y1
    s_y0 = substitute_s(wb, y0, n)
    s_y1 = substitute_s(wb, y1, n)
    rhs = -r * (r + 2 * x + 2 * xb - inv_t)
    r1 = _lift(r.coefficient_series(1))
    rep = Report(f"weighted-dde[lambda={lam}]", order)
    rep.add(check_equal("(S(Y0)-xY0)(S(Y1)-xY1) = -R(R+2x+2xbar-1/t)", (s_y0 - x * y0) * (s_y1 - x * y1), rhs, order))
    rep.add(check_equal("lam x + x^2 = -R(R+2x+2xbar-1/t) + 2R'(0)", _x(1, lam) + _x(2), rhs + 2 * r1, order))
    q = wb.q00
    t = t_power(1)
    rep.add(check_equal("t^2 Q00^2 + (2 lam t + 1) Q00 = 2R'(0) + 1",
                        t * t * q * q + (2 * lam * t + 1) * q, 2 * r.coefficient_series(1) + 1, order))
    rem = wb.r.map_coefficients(lambda c: _mod_quadratic(c, lam))
    rep.add(check_equal("R = -tQ(0,0) mod (1 + lam x + x^2)", rem, _lift(-t * q), order))
    return rep


# ---------------------------------------------------------------------------
# other models


OTHER_MODELS = ("w-se-ne", "w-e-se-ne", "ky1", "ky2", "ky3")

_NOTES = {
    "w-se-ne": "D-finite and transcendental; no algebraic closed form claimed",
    "w-e-se-ne": "D-finite and transcendental; no algebraic closed form claimed",
    "ky1": "half-orbit-sum solution not implemented; enumeration only",
    "ky2": "half-orbit-sum solution not implemented; enumeration only",
    "ky3": "algebraic solution out of scope; enumeration only",
}


@dataclass
class ModelSummary:
    model: str
    steps: str
    symmetric_kernel: bool
    group_order: int
    functional_equation: CheckResult
    excursions: List[int]
    note: str


def enumerate_other_models(order: int) -> List[ModelSummary]:
    registry = {**UNWEIGHTED, **KAUERS_YATCHAK}
    out = []
    for name in OTHER_MODELS:
        m = registry[name]
        table = count_walks(m, order)
        out.append(ModelSummary(
            name, m.label(), classify_kernel_symmetry(m), group_order(m),
            verify_functional_equation(m, table),
            [table(0, 0, n) for n in range(order + 1)], _NOTES[name],
        ))
    return out
