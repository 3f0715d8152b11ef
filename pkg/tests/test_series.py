import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from intervalhopf.algebra import Y
from intervalhopf.series import (
    FreeCoefficient,
    NCSeries,
    Polynomial,
    first_disagreement,
    left_inverse,
    pairing,
    polynomials_to_series,
    random_series,
    right_inverse,
    series_to_polynomials,
    substitute,
    substitute_general,
    verify_inverse,
)

from oracles import classical_reversion

DATA = Path(__file__).parent / "data"
sym = FreeCoefficient.symbol


def one_variable(coeffs: dict[int, FreeCoefficient], order: int) -> NCSeries:
    return NCSeries(1, order, {(1, (1,) * k): c for k, c in coeffs.items()})


def two_variable_example() -> NCSeries:
    return NCSeries.from_json((DATA / "two_variable.json").read_text())


def test_coefficient_arithmetic():
    a, b = sym("a"), sym("b")
    assert a * b != b * a
    assert (a * b).abelianize() == (b * a).abelianize()
    assert str(2 * a * a - sym("q")) == "-q + 2aa"
    assert (a + b).evaluate({"a": 2, "b": Fraction(1, 3)}) == Fraction(7, 3)
    assert FreeCoefficient.from_json_obj((a * b - 3).to_json_obj()) == a * b - 3


def test_series_basics():
    f = two_variable_example()
    assert f.n == 2 and f.order == 4
    assert f.coefficient(1, (1,)) == 1
    assert f.coefficient(2, (1,)) == 0
    assert f.coefficient(1, (1, 1)) == sym("a")
    assert f.coefficient(1, (2, 2)) == sym("b")
    with pytest.raises(ValueError):
        f.coefficient(1, (1,) * 5)
    with pytest.raises(ValueError):
        NCSeries(1, 3, {(1, (1,)): FreeCoefficient.one()})


def test_json_rejects_non_tangent_input():
    obj = {"n": 1, "order": 2, "coeffs": [{"i": 1, "w": "1", "value": [{"c": "2", "word": []}]}]}
    with pytest.raises(ValueError):
        NCSeries.from_json_obj(obj)


def test_json_round_trip():
    f = random_series(2, 4, random.Random(3))
    assert NCSeries.from_json(f.to_json()) == f


def test_pairing():
    f = two_variable_example()
    a, b = sym("a"), sym("b")
    assert pairing(Y(1, (1, 1)) * Y(1, (2, 2)), f) == a * b
    assert pairing(Y(1, (2, 2)) * Y(1, (1, 1)), f) == b * a
    assert pairing(Y(1, (1, 1)) * 3 + Y(1, (1, 2)), f) == a * 3
    assert pairing(Y(1, (1,)), f) == 1


def test_identity_is_neutral():
    f = random_series(2, 4, random.Random(1))
    ident = NCSeries.identity(2, 4)
    assert substitute(f, ident) == f
    assert substitute(ident, f) == f


def test_classical_reversion_symbolic():
    p, q = sym("p"), sym("q")
    g = left_inverse(one_variable({2: p, 3: q}, 3))
    assert g.coefficient(1, (1, 1)) == -p
    assert g.coefficient(1, (1, 1, 1)) == -q + 2 * p * p


def test_classical_reversion_numeric():
    values = {2: Fraction(3), 3: Fraction(-1, 2), 4: Fraction(5, 7), 5: Fraction(2)}
    f = one_variable({k: FreeCoefficient.scalar(v) for k, v in values.items()}, 5)
    expected = classical_reversion(values, 5)
    for side in (left_inverse(f), right_inverse(f)):
        for k in range(2, 6):
            assert side.coefficient(1, (1,) * k) == expected[k]


def test_example_inverses_and_disagreement():
    f = two_variable_example()
    left, right = left_inverse(f), right_inverse(f)
    assert verify_inverse(left, f, "left")
    assert verify_inverse(right, f, "right")
    assert first_disagreement(left, right) == 4
    # both sides agree once the constants commute
    for i in (1, 2):
        for w in f.words():
            assert left.coefficient(i, w).abelianize() == right.coefficient(i, w).abelianize()


def test_one_variable_sides_agree():
    a, b, c = sym("a"), sym("b"), sym("c")
    f = one_variable({2: a, 3: b, 4: c}, 4)
    assert verify_inverse(left_inverse(f), f, "left")
    assert verify_inverse(right_inverse(f), f, "right")


@pytest.mark.parametrize("seed", range(4))
def test_random_inverses(seed):
    f = random_series(2 if seed % 2 else 1, 4, random.Random(seed))
    assert verify_inverse(left_inverse(f), f, "left")
    assert verify_inverse(right_inverse(f), f, "right")


def test_verify_inverse_rejects_side():
    f = NCSeries.identity(1, 2)
    with pytest.raises(ValueError):
        verify_inverse(f, f, "middle")


@pytest.mark.parametrize("seed", range(5))
def test_substitution_matches_polynomial_expansion(seed):
    rng = random.Random(seed)
    f, g = random_series(2, 4, rng), random_series(2, 4, rng)
    gs = series_to_polynomials(g)
    expanded = [substitute_general(p, gs, order=4) for p in series_to_polynomials(f)]
    assert polynomials_to_series(expanded, 4) == substitute(f, g)


def test_polynomial_round_trip_and_checks():
    f = random_series(2, 3, random.Random(9))
    assert polynomials_to_series(series_to_polynomials(f), 3) == f
    bad = [Polynomial.variable(1) + Polynomial.constant(sym("a")), Polynomial.variable(2)]
    with pytest.raises(ValueError):
        substitute_general(Polynomial.variable(1), bad)
    with pytest.raises(ValueError):
        polynomials_to_series([Polynomial.variable(2), Polynomial.variable(1)], 2)


def test_substitution_is_not_associative_over_free_constants():
    f = one_variable({2: sym("a")}, 4)
    g = one_variable({2: sym("b")}, 4)
    h = one_variable({2: sym("c")}, 4)
    grouped_left = substitute(substitute(f, g), h)
    grouped_right = substitute(f, substitute(g, h))
    assert grouped_left != grouped_right
    for k in range(2, 5):
        lhs = grouped_left.coefficient(1, (1,) * k)
        rhs = grouped_right.coefficient(1, (1,) * k)
        assert lhs.abelianize() == rhs.abelianize()


def test_substitution_is_associative_over_scalars():
    rng = random.Random(11)
    series = []
    for _ in range(3):
        series.append(NCSeries(2, 4, {k: FreeCoefficient.scalar(rng.randint(-3, 3))
                                      for k in random_series(2, 4, rng).coeffs}))
    f, g, h = series
    assert substitute(substitute(f, g), h) == substitute(f, substitute(g, h))


def test_truncation_and_printing():
    f = two_variable_example()
    assert f.truncate(2).order == 2
    text = str(f)
    assert text.splitlines()[0] == "F^1 = z1 + (a) z_11 + (b) z_22"
    assert text.splitlines()[1] == "F^2 = z2"
    assert json.loads(f.to_json())["n"] == 2


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_series_is_right_inverse_of_its_left_inverse(seed):
    f = random_series(1, 4, random.Random(seed))
    g = left_inverse(f)
    assert verify_inverse(g, f, "left")
    # f undoes g from the right, and right inverses are unique
    assert right_inverse(g) == f
