import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadwalk.kernel import build_kernel, kernel_roots, roots_have_symmetric_kernel
from quadwalk.laurent import LaurentPolynomial
from quadwalk.multistep import (
    OTHER_MODELS,
    TESTED_LAMBDAS,
    _mod_quadratic,
    build_weighted_boundary,
    classification_table,
    classify,
    classify_kernel_symmetry,
    enumerate_other_models,
    weighted_dde,
    weighted_inputs,
    weighted_orbit_equations,
)
from quadwalk.series import t_power
from quadwalk.walks import UNWEIGHTED, StepModel, count_walks, get_model, weighted_model

FLAGGED = {"gessel", "kreweras", "w-se-ne", "w-e-se-ne"}


# -- classification -------------------------------------------------------------


def test_predicate_examples():
    assert classify_kernel_symmetry(get_model("gessel"))
    assert classify_kernel_symmetry(get_model("kreweras"))
    assert not classify_kernel_symmetry(get_model("simple"))


def test_square_lattice_fails_both_tests():
    row = classify(get_model("simple"))
    assert not row.predicate and not row.roots_symmetric and row.agree


def test_multiplicity_of_the_up_step_does_not_matter():
    m = StepModel.from_mapping("double-ne", {"W": 1, "NE": 3, "SE": 1})
    assert classify_kernel_symmetry(m)
    assert roots_have_symmetric_kernel(kernel_roots(build_kernel(m), 10))


def test_classification_agrees_everywhere():
    rows = classification_table(order=10)
    assert rows and all(r.agree for r in rows)


def test_exactly_four_unweighted_models_are_flagged():
    rows = classification_table(UNWEIGHTED, order=10)
    assert {r.model for r in rows if r.predicate} == FLAGGED


def test_weighted_model_is_flagged():
    for lam in TESTED_LAMBDAS:
        row = classify(weighted_model(lam))
        assert row.predicate and row.roots_symmetric and row.group_order == 6


# -- weighted boundary ----------------------------------------------------------------


def test_weighted_boundary_shapes():
    wb = build_weighted_boundary(count_walks(weighted_model(2), 8), 2)
    assert wb.r.valuation >= 1 and wb.s.valuation == 1
    y1 = LaurentPolynomial([1, 1], 0, "y")
    assert all(c.divmod_poly(y1)[1].is_zero() for c in wb.s.coeffs if c)


def test_lambda_zero_excursions():
    wb, _ = weighted_inputs(0, 6)
    assert wb.q00.coefficient_list()[:3] == [1, 0, 3]


def test_mod_quadratic():
    # x^2 = -1 - lam x, so x^3 = -x - lam x^2 = lam + (lam^2 - 1) x
    x3 = LaurentPolynomial.monomial(3)
    assert _mod_quadratic(x3, 2) == LaurentPolynomial([2, 3], 0, "x")
    assert _mod_quadratic(LaurentPolynomial([1, 2, 1]), 2).is_zero()
    with pytest.raises(ValueError):
        _mod_quadratic(LaurentPolynomial.monomial(-1), 1)


@settings(max_examples=40)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=7), st.integers(0, 6))
def test_mod_quadratic_is_a_remainder(coeffs, lam):
    p = LaurentPolynomial(coeffs, 0, "x")
    rem = _mod_quadratic(p, lam)
    quad = LaurentPolynomial([1, lam, 1], 0, "x")
    assert rem.is_zero() or rem.hi <= 1
    assert (p - rem).divmod_poly(quad)[1].is_zero()


# -- weighted identities --------------------------------------------------------------


@pytest.fixture(scope="module", params=TESTED_LAMBDAS)
def weighted(request):
    lam = request.param
    return (lam,) + weighted_inputs(lam, 20)


def test_weighted_orbit_equations(weighted):
    _, wb, roots = weighted
    rep = weighted_orbit_equations(wb, roots, 20)
    assert rep.passed and len(rep.results) == 6


def test_weighted_dde(weighted):
    _, wb, roots = weighted
    rep = weighted_dde(wb, roots, 20)
    assert rep.passed and len(rep.results) == 4


def test_weighted_dde_detects_a_bad_excursion_count():
    wb, roots = weighted_inputs(1, 10)
    wb.q00 = wb.q00 + t_power(6)
    rep = weighted_dde(wb, roots, 10)
    assert not rep["t^2 Q00^2 + (2 lam t + 1) Q00 = 2R'(0) + 1"].passed


def test_weighted_orbit_detects_a_bad_table():
    lam = 2
    wb, roots = weighted_inputs(lam, 10)
    bad = count_walks(weighted_model(lam), wb.table.maxn).with_count(0, 2, 4, 1)
    bad_wb = build_weighted_boundary(bad, lam)
    assert not weighted_orbit_equations(bad_wb, roots, 10).passed


# -- other models ---------------------------------------------------------------------


@pytest.fixture(scope="module")
def others():
    return {s.model: s for s in enumerate_other_models(12)}


def test_other_models_are_listed(others):
    assert tuple(others) == OTHER_MODELS


def test_other_models_satisfy_the_functional_equation(others):
    assert all(s.functional_equation.passed for s in others.values())


def test_transcendental_models_have_symmetric_kernels(others):
    assert others["w-se-ne"].symmetric_kernel and others["w-e-se-ne"].symmetric_kernel


def test_ky_group_order(others):
    assert [others[n].group_order for n in ("ky1", "ky2", "ky3")] == [10, 10, 10]


def test_other_models_record_scope(others):
    assert "out of scope" in others["ky3"].note
    assert "not implemented" in others["ky1"].note
    assert all(s.excursions[0] == 1 for s in others.values())
