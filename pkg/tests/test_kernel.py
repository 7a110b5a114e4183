import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quadwalk.kernel import (
    InvariantViolation,
    build_kernel,
    group_orbit,
    group_order,
    involutions,
    is_xbar_polynomial,
    kernel_roots,
    roots_have_symmetric_kernel,
    substitutability_certificate,
    symmetric_extract,
    symmetric_functions,
    verify_kernel_invariance,
    verify_substitutability,
)
from quadwalk.laurent import LaurentPolynomial, lp
from quadwalk.mpoly import MPoly, gens
from quadwalk.series import EXACT, TruncatedLaurentSeries
from quadwalk.walks import KAUERS_YATCHAK, StepModel, count_walks, get_model, registry, weighted_model

GESSEL = get_model("gessel")
x_, y_, t_ = sympy.symbols("x y t")


@pytest.fixture(scope="module")
def gessel_roots():
    return kernel_roots(build_kernel(GESSEL), 12)


def test_kernel_expressions():
    cases = {
        "gessel": 1 - t_ * (1 / x_ + 1 / (x_ * y_) + x_ + x_ * y_),
        "kreweras": 1 - t_ * (1 / x_ + 1 / y_ + x_ * y_),
    }
    for name, expected in cases.items():
        assert sympy.simplify(build_kernel(get_model(name)).to_sympy() - expected) == 0
    for k in (0, 1, 4):
        w = 1 - t_ * (1 / x_ + 1 / (x_ * y_) + k / y_ + x_ / y_ + 2 * x_ + x_ * y_)
        assert sympy.simplify(build_kernel(weighted_model(k)).to_sympy() - w) == 0


def test_kernel_rejects_non_quadratic():
    with pytest.raises(ValueError):
        build_kernel(StepModel.from_mapping("flat", {"E": 1, "W": 1}))
    with pytest.raises(ValueError):
        build_kernel(StepModel.from_mapping("up", {"E": 1, "N": 1}))


def test_gessel_root_expansions(gessel_roots):
    y0, y1 = gessel_roots.y0, gessel_roots.y1
    xb = LaurentPolynomial.monomial(-1)
    assert y0.valuation == 1 and y0[1] == xb
    assert y1.valuation == -1 and y1[-1] == xb


def test_gessel_symmetric_functions(gessel_roots):
    e1, e2 = symmetric_functions(gessel_roots)
    expected_e1 = TruncatedLaurentSeries([lp({-1: 1}), lp({-2: -1, 0: -1})], -1, EXACT)
    assert e1 == expected_e1
    assert e2 == TruncatedLaurentSeries([lp({-2: 1})], 0, EXACT)
    assert e1.order == 12 and e2.order == 11


def test_roots_cancel_the_kernel():
    for name, model in registry((0, 2)).items():
        roots = kernel_roots(build_kernel(model), 8)
        for res in roots.residuals():
            assert res.first_nonzero() is None or res.first_nonzero() > 8, name


def test_x_times_roots_are_symmetric(gessel_roots):
    for y in (gessel_roots.y0, gessel_roots.y1):
        xy = y.shift_var(1)
        for c in xy.coeffs:
            assert c == c.reflect()


def test_series_product_of_roots(gessel_roots):
    prod = gessel_roots.y0 * gessel_roots.y1
    assert prod == TruncatedLaurentSeries([lp({-2: 1})], 0, EXACT)


def test_symmetric_functions_match_predicate():
    for name, model in registry((0, 1, 3)).items():
        roots = kernel_roots(build_kernel(model), 10)
        only_ne_up = {s for s, _ in model.steps if s[1] == 1} == {(1, 1)}
        assert roots_have_symmetric_kernel(roots) == only_ne_up, name


def test_symmetric_functions_of_simple_walk_are_not_xbar_polynomials():
    roots = kernel_roots(build_kernel(get_model("simple")), 8)
    e1, e2 = symmetric_functions(roots)
    assert not (is_xbar_polynomial(e1) and is_xbar_polynomial(e2))


# -- group --------------------------------------------------------------------


def test_involutions_fix_the_kernel():
    for name, model in registry((0, 1, 2)).items():
        k = build_kernel(model)
        assert verify_kernel_invariance(k), name
        phi, psi = involutions(k)
        for f in (phi, psi):
            a, b = f(f((x_, y_)))
            assert sympy.simplify(a - x_) == 0 and sympy.simplify(b - y_) == 0


@pytest.mark.parametrize("name,order", [
    ("gessel", 8), ("kreweras", 6), ("simple", 4), ("reverse-kreweras", 6),
    ("gouyou-beauchamps", 8), ("ky1", 10), ("ky2", 10), ("ky3", 10),
])
def test_group_orders(name, order):
    assert group_order(get_model(name)) == order


@pytest.mark.parametrize("lam", [0, 1, 2, 3, 5])
def test_weighted_group_has_order_six(lam):
    assert group_order(weighted_model(lam)) == 6


def test_gessel_orbit_substitutable_pairs():
    orbit = group_orbit(build_kernel(GESSEL), order=8)
    assert len(orbit) == 8
    good = sorted(el.label for el in orbit if el.substitutable)
    assert good == sorted(["(x, Y0)", "(Y0*x, Y1)", "(1/x, Y0*x**2)", "(Y0*x, Y1*x**2)"])


def test_weighted_orbit_has_four_substitutable_pairs():
    for lam in (0, 1, 3):
        orbit = group_orbit(build_kernel(weighted_model(lam)), order=6)
        assert len(orbit) == 6
        assert sum(bool(el.substitutable) for el in orbit) == 4


def test_orbit_bound_is_enforced():
    with pytest.raises(ValueError):
        group_orbit(build_kernel(KAUERS_YATCHAK["ky1"]), bound=8)


# -- substitutability ---------------------------------------------------------


def test_certificate_examples():
    table = count_walks(GESSEL, 20)
    orbit = {el.label: el for el in group_orbit(build_kernel(GESSEL), order=8, table=table)}
    assert verify_substitutability(table, orbit["(x, Y0)"]).passed
    assert verify_substitutability(table, orbit["(Y0*x, Y1)"]).passed
    bad = verify_substitutability(table, orbit["(Y1*x, Y0)"])
    assert not bad.passed and bad.violation is not None


def test_certificate_slope_for_gessel():
    cert = substitutability_certificate(count_walks(GESSEL, 20), 1, -1)
    assert cert.passed and cert.slope == Fraction(1, 2)


# -- symmetric extraction -----------------------------------------------------

u, v = gens("u", "v")


@pytest.mark.parametrize("p,const", [(u + v, -1), (u * v, 0), (u**2 + v**2, 1)])
def test_extraction_examples(gessel_roots, p, const):
    _, c = symmetric_extract(p, gessel_roots)
    assert c == TruncatedLaurentSeries([const], 0, EXACT)


def test_extraction_rejects_non_symmetric(gessel_roots):
    with pytest.raises(ValueError):
        symmetric_extract(u**2 + v, gessel_roots)


def test_extraction_flags_positive_powers():
    roots = kernel_roots(build_kernel(get_model("simple")), 6)
    roots.e1 = roots.y0 + roots.y1
    roots.e2 = roots.y0 * roots.y1
    with pytest.raises(InvariantViolation):
        symmetric_extract(u + v, roots)


def random_symmetric(rng, degree=6):
    p = MPoly()
    for a in range(degree + 1):
        for b in range(a, degree + 1 - a):
            if rng.random() < 0.5:
                c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                term = u**a * v**b + (u**b * v**a if a != b else 0)
                p = p + c * term
    return p


@settings(max_examples=100)
@given(st.integers(0, 2**32))
def test_constant_term_is_the_value_at_0_minus_1(seed):
    roots = kernel_roots(build_kernel(GESSEL), 6)
    p = random_symmetric(random.Random(seed))
    value, const = symmetric_extract(p, roots)
    at = p.evaluate({"u": 0, "v": -1})
    assert const == TruncatedLaurentSeries([at], 0, EXACT)
    assert all(not c or c.hi <= 0 for c in value.coeffs)
