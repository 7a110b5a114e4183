import pytest
import sympy

from quadwalk import gessel as G
from quadwalk.checks import GESSEL_CHECKS, run_gessel_check
from quadwalk.kernel import build_kernel, kernel_roots
from quadwalk.laurent import LaurentPolynomial
from quadwalk.series import EXACT, TruncatedLaurentSeries, t_power

x0, x1, x2, x3, t, x = sympy.symbols("x0 x1 x2 x3 t x")

CHAIN = 12


@pytest.fixture(scope="module")
def chain():
    table, b, roots, _ = G.chain_inputs(CHAIN)
    return table, b, roots, G.boundary_invariants(table)


def _pol_sympy():
    """The cubic transcribed again, directly in sympy."""
    xb, tb = 1 / x, 1 / t
    return (x0**3 + (x1 + 3 * xb - tb) * x0**2
            + (2 * xb**2 - xb * tb + x * tb - x**2 - 2 * x2 + (2 * xb - tb) * x1) * x0
            - x3 - x2 * (2 * x1 + 2 * xb - tb) - x * x1 * (x - tb) - x)


# -- boundary series ------------------------------------------------------------


def test_boundary_examples():
    b = G.build_boundary(G.gessel_table(2), 3)
    X = LaurentPolynomial.monomial(1)
    assert b.r.order == 3
    assert b.r.coefficient_list(0) == [0, 0, X, X**2]
    y = LaurentPolynomial.monomial(1, 1, "y")
    assert b.s[1] == 1 + y and b.s[3] == (1 + y) * (2 + y)
    s0 = G.boundary_invariants(G.gessel_table(1)).s0
    assert s0.order == 2 and s0.coefficient_list() == [0, 1, 0]


def test_invariants_leading_terms():
    inv = G.boundary_invariants(G.gessel_table(8))
    assert inv.r1.coefficient_list()[:4] == [0, 0, 1, 0]
    assert inv.r2.coefficient_list()[:5] == [0, 0, 0, 2, 0]


def test_r_and_s_divisibility(chain):
    _, b, _, _ = chain
    assert b.r.valuation == 2
    assert all(not c or c.lo >= 1 for c in b.r.coeffs)
    assert b.s.valuation == 1
    y1 = LaurentPolynomial([1, 1], 0, "y")
    assert all(c.divmod_poly(y1)[1].is_zero() for c in b.s.coeffs if c)


# -- the chain of identities ------------------------------------------------------


def test_orbit_equations(chain):
    _, b, roots, _ = chain
    rep = G.verify_orbit_equations(b, roots, CHAIN)
    assert rep.passed and len(rep.results) == 4


def test_corrupted_s_fails_at_the_corruption_order(chain):
    _, b, roots, _ = chain
    bad_s = b.s + TruncatedLaurentSeries([1], 6, EXACT, "y")
    bad = G.BoundarySeries(b.r, bad_s, b.order, b.table)
    rep = G.verify_orbit_equations(bad, roots, CHAIN)
    assert not rep.passed
    assert rep["R(x)+S(Y0)=xY0"].first_failing_order == 6


def test_sum_identity(chain):
    _, b, roots, _ = chain
    rep = G.verify_sum_identity(b, roots, CHAIN)
    assert rep.passed
    assert rep["its constant term is -S(0)"].passed


def test_sum_identity_at_low_order(chain):
    _, b, roots, _ = chain
    assert G.verify_sum_identity(b, roots, 4).passed


def test_reconstructed_relation(chain):
    _, b, roots, _ = chain
    rep = G.verify_reconstructed_relation(b, roots, CHAIN)
    assert rep.passed
    assert rep["[xbar](Y0 S(Y1) + Y1 S(Y0)) = S(0)/t"].passed


def test_cubic(chain):
    _, b, _, inv = chain
    rep = G.verify_cubic_dde(b, inv, CHAIN)
    assert rep.passed
    assert rep["[x]P(x)=2R'(0)"].passed


def test_pol_matches_independent_transcription():
    assert sympy.expand(G.pol().to_sympy() - _pol_sympy()) == 0


# -- critical series and the discriminant ---------------------------------------


def test_factorization_identity_in_sympy():
    p = _pol_sympy()
    lhs = t * x**2 * (sympy.diff(p, x0) + x**2 * sympy.diff(p, x))
    rhs = (1 - x) * (1 + x) * (2 * t * x**2 + 2 * t - x) * (x0 * x + x1 * x + 1)
    assert sympy.expand(lhs - rhs) == 0
    lhs_m, rhs_m = G.factorization_identity()
    assert lhs_m == rhs_m


def test_critical_series():
    cs = G.critical_series(12)
    assert cs.x1 == 1 and cs.x2 == -1
    assert cs.x0.coefficient_list()[:6] == [0, 2, 0, 8, 0, 64]
    assert cs.identity_ring.startswith("Q[x0, x1, x2, x3, t")
    assert cs.report.passed


def test_discriminant_matches_sympy():
    disc, in_s = G.discriminant_in_s()
    cleared = sympy.Poly(sympy.expand(_pol_sympy() * t * x**2), x0)
    expected = sympy.expand(sympy.discriminant(cleared).as_expr() / (t * x**2) ** 4)
    assert sympy.expand(disc.to_sympy() - expected) == 0
    assert sympy.expand(expected - expected.subs(x, 1 / x)) == 0
    s = sympy.Symbol("s")
    assert sympy.expand(in_s.to_sympy().subs(s, x + 1 / x) - expected) == 0


def test_discriminant_conditions():
    dc = G.derive_discriminant_conditions(20)
    assert set(dc.relations) == {"s=2", "s=-2", "s=1/(2t)"}
    assert dc.report.passed


def test_annihilators():
    inv = G.boundary_invariants(G.gessel_table(42))
    assert G.verify_annihilators(inv, 40).passed


def test_annihilators_detect_a_wrong_invariant():
    inv = G.boundary_invariants(G.gessel_table(20))
    bad = G.BoundaryInvariants(inv.s0 + t_power(9), inv.r1, inv.r2)
    rep = G.verify_annihilators(bad, 18)
    assert not rep["octic in S(0)"].passed


# -- parametrization and closed forms --------------------------------------------


@pytest.fixture(scope="module")
def param():
    return G.parametrize(36)


def test_parametrization_leading_terms(param):
    assert param.T.coefficient_list()[:5] == [1, 0, 4, 0, 36]
    assert param.Z.coefficient_list()[:5] == [1, 0, 2, 0, 16]
    assert param.U[0] == 1 and param.V[0] == 0
    assert G.verify_parametrization(param, 30).passed


def _fixed_point(rhs, order):
    s = sympy.Integer(0)
    for _ in range(order):
        s = sympy.series(rhs(s), t, 0, order + 1).removeO()
    return [sympy.Rational(s.coeff(t, k)) for k in range(order + 1)]


def test_alternative_t_against_fixed_point(param):
    expected = _fixed_point(lambda A: t**2 * (1 - A) * (1 + 3 * A) ** 3, 8)
    assert param.T_alt.coefficient_list()[:9] == expected
    assert expected[:5] == [0, 0, 1, 0, 8]


def test_theorem_against_the_table(param):
    rep = G.verify_theorem(G.gessel_table(32), param, 30)
    assert rep.passed, [r.to_json() for r in rep.results if not r.passed]


def test_q00_closed_form_constant_term(param):
    q = G.q00_closed_form(param.Z)
    assert q[0] == 1 and q[2] == 2 and q[4] == 11


def test_r2_closed_form_leading_term(param):
    r2 = G.r2_closed_form(param.Z)
    assert r2.coefficient_list()[:5] == [0, 0, 0, 2, 0]


def test_theorem_detects_wrong_table(param):
    table = G.gessel_table(24)
    bad = table.with_count(0, 0, 10, table(0, 0, 10) + 1)
    rep = G.verify_theorem(bad, param, 20)
    assert rep["(a) Q(0,0) closed form"].first_failing_order == 10


# -- the kernel equation at xt ------------------------------------------------------


def test_bridge():
    rep = G.derive_q0y_from_kernel(G.gessel_table(20), 16)
    assert rep.passed


def test_y0_at_xt_agrees_with_kernel_roots():
    roots = kernel_roots(build_kernel(G.GESSEL), 16)
    y_w = G.y0_at_xt(6)
    assert G.compare_y0_at_xt(roots, y_w, 6, 8) is None


def test_y0_at_xt_mismatch_is_located():
    roots = kernel_roots(build_kernel(G.GESSEL), 16)
    y_w = G.y0_at_xt(6)
    bad = y_w + TruncatedLaurentSeries([LaurentPolynomial.monomial(-2, 1, "w")], 3, EXACT, "w")
    assert G.compare_y0_at_xt(roots, bad, 6, 8) is not None
    assert G.compare_y0_at_xt(roots, bad, 6, 8)[0] == 3


def test_xbar_expansion():
    # 1/(x-1) = xbar + xbar^2 + ...
    w_inv = LaurentPolynomial.monomial(-1, 1, "w")
    assert G.xbar_expansion(w_inv, 4) == {-1: 1, -2: 1, -3: 1, -4: 1}


# -- fault injection through the named checks ----------------------------------------


@pytest.mark.parametrize("fault", [(0, 0, 4), (2, 0, 6), (0, 3, 7), (1, 1, 3), (5, 2, 9)])
def test_every_single_fault_is_caught(fault):
    reports = [run_gessel_check(name, 14, fault) for name in GESSEL_CHECKS]
    assert not all(r.passed for r in reports)


def test_functional_equation_check_reports_order_three():
    rep = run_gessel_check("functional-equation", 12, (1, 1, 3))
    assert rep.first_failing_order == 3
