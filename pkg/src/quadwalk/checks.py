"""Named verification runs over the Gessel and weighted models.

Each runner sizes its own walk table.  ``corrupt=(i, j, n)`` bumps one table
entry by one before anything is derived from it, which is how the fault
injection tests reach the verifiers.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

from . import gessel as G
from .kernel import build_kernel, kernel_roots
from .multistep import build_weighted_boundary, weighted_dde, weighted_orbit_equations
from .report import Report
from .walks import WalkTable, count_walks, verify_functional_equation, weighted_model

Fault = Optional[Tuple[int, int, int]]

GESSEL_CHECKS = (
    "functional-equation", "orbit", "sum", "reconstruct", "cubic", "critical",
    "annihilators", "discriminant", "theorem", "q0y-bridge",
)

DEFAULT_ORDERS = {
    "functional-equation": G.DEFAULT_CHAIN_ORDER,
    "orbit": G.DEFAULT_CHAIN_ORDER,
    "sum": G.DEFAULT_CHAIN_ORDER,
    "reconstruct": G.DEFAULT_CHAIN_ORDER,
    "cubic": G.DEFAULT_CHAIN_ORDER,
    "critical": 12,
    "annihilators": G.DEFAULT_ANNIHILATOR_ORDER,
    "discriminant": 20,
    "theorem": G.DEFAULT_Q00_ORDER,
    "q0y-bridge": 16,
}

WEIGHTED_CHECKS = ("orbit", "dde")


def _table(maxn: int, corrupt: Fault) -> WalkTable:
    if corrupt is None:
        return G.gessel_table(maxn)
    i, j, n = corrupt
    table = count_walks(G.GESSEL, maxn)
    if n > maxn:
        return table
    return table.with_count(i, j, n, table(i, j, n) + 1)


def _chain(order: int, corrupt: Fault):
    n = order + 2
    table = _table(2 * n + 2, corrupt)
    b = G.build_boundary(table)
    roots = kernel_roots(build_kernel(G.GESSEL), n + 2)
    return table, b, roots


def _functional_equation(order, corrupt):
    rep = Report("functional-equation", order)
    rep.add(verify_functional_equation(G.GESSEL, _table(order, corrupt)))
    return rep


def _orbit(order, corrupt):
    _, b, roots = _chain(order, corrupt)
    return G.verify_orbit_equations(b, roots, order)


def _sum(order, corrupt):
    _, b, roots = _chain(order, corrupt)
    return G.verify_sum_identity(b, roots, order)


def _reconstruct(order, corrupt):
    _, b, roots = _chain(order, corrupt)
    return G.verify_reconstructed_relation(b, roots, order)


def _cubic(order, corrupt):
    table, b, _ = _chain(order, corrupt)
    return G.verify_cubic_dde(b, G.boundary_invariants(table), order)


def _critical(order, corrupt):
    table = _table(order + 5, corrupt)
    return G.critical_series(order, G.build_boundary(table), G.boundary_invariants(table)).report


def _annihilators(order, corrupt):
    return G.verify_annihilators(G.boundary_invariants(_table(order + 2, corrupt)), order)


def _discriminant(order, corrupt):
    inv = G.boundary_invariants(_table(order + 6, corrupt))
    return G.derive_discriminant_conditions(order, inv).report


def _theorem(order, corrupt):
    # the closed forms divide by series of positive valuation
    table = _table(order + 2, corrupt)
    p = G.parametrize(order + 6)
    rep = G.verify_theorem(table, p, order)
    for item in G.verify_parametrization(p, order).results:
        rep.add(item)
    return rep


def _bridge(order, corrupt):
    return G.derive_q0y_from_kernel(_table(order + 4, corrupt), order)


_RUNNERS: Dict[str, Callable[[int, Fault], Report]] = {
    "functional-equation": _functional_equation,
    "orbit": _orbit,
    "sum": _sum,
    "reconstruct": _reconstruct,
    "cubic": _cubic,
    "critical": _critical,
    "annihilators": _annihilators,
    "discriminant": _discriminant,
    "theorem": _theorem,
    "q0y-bridge": _bridge,
}


def run_gessel_check(name: str, order: Optional[int] = None, corrupt: Fault = None) -> Report:
    if name not in _RUNNERS:
        raise KeyError(f"unknown check {name!r}")
    order = DEFAULT_ORDERS[name] if order is None else order
    if order < 0:
        raise ValueError("order must be non-negative")
    return _RUNNERS[name](order, corrupt)


def _run_packed(args):
    return run_gessel_check(*args)


def run_gessel_checks(names, order: Optional[int] = None, corrupt: Fault = None,
                      jobs: int = 1) -> List[Report]:
    """Reports in the order of ``names`` whatever the completion order."""
    work = [(name, order, corrupt) for name in names]
    if jobs <= 1 or len(work) <= 1:
        return [_run_packed(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_packed, work))


def run_weighted_check(name: str, lam: int, order: int) -> Report:
    if name not in WEIGHTED_CHECKS:
        raise KeyError(f"unknown check {name!r}")
    if order < 0:
        raise ValueError("order must be non-negative")
    n = order + 2
    table = count_walks(weighted_model(lam), 2 * n + 2)
    wb = build_weighted_boundary(table, lam)
    roots = kernel_roots(build_kernel(weighted_model(lam)), n + 2)
    if name == "orbit":
        return weighted_orbit_equations(wb, roots, order)
    return weighted_dde(wb, roots, order)
