from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadwalk.laurent import LaurentPolynomial
from quadwalk.walks import (
    COMPASS,
    DEFAULT_LAMBDA_BOUND,
    KAUERS_YATCHAK,
    UNWEIGHTED,
    StepModel,
    ascending_factorial,
    boundary_corrections,
    boundary_sections,
    count_walks,
    enumerate_endpoints,
    get_model,
    gessel_closed_form,
    registry,
    verify_functional_equation,
    weighted_model,
)

GESSEL = get_model("gessel")


def brute_force(model, n):
    """Count quadrant words letter by letter, independent of the DP and the DFS."""
    letters = model.word_steps()
    ends = {}
    for word in product(letters, repeat=n):
        i = j = 0
        for dx, dy in word:
            i, j = i + dx, j + dy
            if i < 0 or j < 0:
                break
        else:
            ends[(i, j)] = ends.get((i, j), 0) + 1
    return ends


def test_model_validation():
    with pytest.raises(ValueError):
        StepModel("empty", ())
    with pytest.raises(ValueError):
        StepModel("big", (((2, 0), 1),))
    with pytest.raises(ValueError):
        StepModel("zero", (((0, 0), 1),))
    with pytest.raises(ValueError):
        StepModel.from_mapping("neg", {"E": -1})
    assert weighted_model(3).weights[COMPASS["S"]] == 3
    assert COMPASS["S"] not in weighted_model(0).weights


def test_registry_lookup():
    assert get_model("weighted", 2) == weighted_model(2)
    assert get_model("weighted-5") == weighted_model(5)
    assert set(KAUERS_YATCHAK) <= set(registry())
    with pytest.raises(KeyError):
        get_model("no-such-model")
    assert DEFAULT_LAMBDA_BOUND == 16


def test_small_counts():
    t = count_walks(GESSEL, 2)
    assert t(0, 0, 0) == 1 and t(0, 0, 2) == 2
    assert count_walks(get_model("kreweras"), 3)(0, 0, 3) == 2


def test_small_counts_match_words():
    assert brute_force(GESSEL, 2)[(0, 0)] == 2
    assert brute_force(get_model("kreweras"), 3)[(0, 0)] == 2


def test_table_invariants():
    t = count_walks(GESSEL, 12)
    assert t(0, 0, 0) == 1 and all(t(i, j, 0) == 0 for i in range(1, 3) for j in range(3))
    assert t(13, 0, 12) == 0 and t(0, 13, 12) == 0
    for n, i, j, v in t.nonzero():
        assert (i - n) % 2 == 0
        assert 2 * (n + i - j) >= n


def test_table_recurrence():
    for name in ("kreweras", "king"):
        m = get_model(name)
        t = count_walks(m, 6)
        for n in range(1, 7):
            for i in range(n + 1):
                for j in range(n + 1):
                    expected = sum(k * t(i - dx, j - dy, n - 1) for (dx, dy), k in m.steps)
                    assert t(i, j, n) == expected


@pytest.mark.parametrize("name", sorted(registry((0, 1, 3))))
def test_dp_matches_word_enumeration(name):
    model = registry((0, 1, 3))[name]
    t = count_walks(model, 8)
    for n in range(9):
        dfs = enumerate_endpoints(model, n)
        dp = {(i, j): v for m, i, j, v in t.nonzero() if m == n}
        assert dp == dict(dfs)


@pytest.mark.parametrize("name", ["gessel", "kreweras", "w-se-ne", "ky1"])
def test_dfs_matches_brute_force(name):
    model = get_model(name)
    for n in range(6):
        assert dict(enumerate_endpoints(model, n)) == brute_force(model, n)


def test_boundary_sections():
    qx0, q0y, q00 = boundary_sections(count_walks(GESSEL, 6))
    x = LaurentPolynomial.monomial(1)
    assert qx0[0] == 1 and qx0[1] == x and qx0[2] == 2 + x**2
    assert q0y[2] == LaurentPolynomial([2, 1], 0, "y")
    assert q00.coefficient_list()[:5] == [1, 0, 2, 0, 11]
    assert q00.order == 6


def test_ascending_factorial():
    assert ascending_factorial(Fraction(1, 2), 0) == 1
    assert ascending_factorial(Fraction(1, 2), 3) == Fraction(15, 8)


def test_closed_form_examples():
    assert [gessel_closed_form(n) for n in range(3)] == [1, 2, 11]
    with pytest.raises(ValueError):
        gessel_closed_form(-1)


def test_closed_form_matches_dp():
    t = count_walks(GESSEL, 24)
    for n in range(13):
        cf = gessel_closed_form(n)
        assert cf.denominator == 1
        assert cf == t(0, 0, 2 * n)


@given(st.integers(0, 40))
def test_closed_form_is_integral(n):
    assert gessel_closed_form(n).denominator == 1


def test_counts_exceed_machine_words():
    t = count_walks(GESSEL, 50)
    assert t(0, 0, 50) > 2**64


def test_boundary_correction_pattern():
    kinds = {s: k for s, _, k in boundary_corrections(GESSEL)}
    assert kinds == {(-1, -1): "both", (-1, 0): "0y"}


@pytest.mark.parametrize("name", sorted(registry((0, 1, 2, 3, 5))))
def test_functional_equation_holds(name):
    model = registry((0, 1, 2, 3, 5))[name]
    assert verify_functional_equation(model, count_walks(model, 12)).passed


def test_functional_equation_detects_corruption():
    t = count_walks(GESSEL, 12).with_count(1, 1, 3, 7)
    res = verify_functional_equation(GESSEL, t)
    assert not res.passed and res.first_failing_order == 3


@given(st.integers(0, 10), st.data())
def test_any_single_corruption_is_detected(n, data):
    t = count_walks(get_model("kreweras"), 10)
    i = data.draw(st.integers(0, n))
    j = data.draw(st.integers(0, n))
    bad = t.with_count(i, j, n, t(i, j, n) + data.draw(st.sampled_from([-2, -1, 1, 3])))
    res = verify_functional_equation(bad.model, bad)
    assert not res.passed
    assert res.first_failing_order in (n, n + 1)
