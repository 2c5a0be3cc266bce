import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlotoeplitz.algebra import (AlgebraElement, ParseError, V, check_expectation, check_graded,
                                 check_ring_axioms, one, parse_element, zero)
from qlotoeplitz.monomials import Monomial
from qlotoeplitz.qlo import Divisibility, FreeAbelian, FreeMonoid
from qlotoeplitz.scalars import I, ONE, GaussianRational

F2 = FreeMonoid(2)


def p(text, inst=F2):
    return parse_element(inst, text)


def test_scalars():
    assert GaussianRational.parse("(1/2 - 3/2 i)") == GaussianRational(Fraction(1, 2), Fraction(-3, 2))
    assert GaussianRational.parse("2i") == 2 * I
    assert I * I == -1
    assert (GaussianRational(1, 1) / GaussianRational(1, -1)) == I
    assert str(GaussianRational(Fraction(1, 2), -1)) == "1/2-i"
    assert not GaussianRational(0)
    with pytest.raises(ValueError):
        GaussianRational.parse("1 2")
    with pytest.raises(ZeroDivisionError):
        ONE / 0


def test_parse_and_print():
    x = p("V(ab,b) + 2 V(a,a)")
    assert str(x) == "2 V(a,a) + V(ab,b)"
    assert p("(1/2+i)*V(a,b) - 3 V(e)") == V(F2, F2.parse("a"), F2.parse("b")).scale(
        GaussianRational(Fraction(1, 2), 1)) - V(F2, F2.identity()).scale(3)
    assert p("0") == 0
    assert p("V(a,b) - V(a,b)") == 0
    assert p("V(a) + 0") == p("V(a,a)")


@pytest.mark.parametrize("text, pos", [
    ("V(ab,b) +", 9), ("V(ab,b) + 2 V(a,", 12), ("V(ab,q)", 0), ("2 W(a)", 2),
])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        p(text)
    assert info.value.pos >= pos - 1
    assert "^" in str(info.value)


def test_grade_example():
    parts = p("V(ab,b) + 2 V(a,a)").grade()
    labels = {F2.format_label(g): str(c) for g, c in parts.items()}
    assert labels == {"a": "V(ab,b)", "e": "2 V(a,a)"}


def test_expectation_keeps_identity_degree():
    x = p("V(ab,b) + 2 V(a,a) - V(ba,ab)")
    assert x.expectation() == p("2 V(a,a)")
    assert x.expectation().expectation() == x.expectation()


def test_star_and_action():
    x = p("i V(a,b)")
    assert x.star() == p("(-i) V(b,a)")
    b, a = F2.parse("b"), F2.parse("a")
    assert x.act_basis(b) == {a: I}
    assert x.act_basis(a) == {}
    assert (x.star() * x).act_basis(F2.parse("bb")) == {F2.parse("bb"): ONE}


def test_identity_and_zero():
    x = p("V(ab,b) + 2 V(a,a)")
    assert one(F2) * x == x == x * one(F2)
    assert zero(F2) * x == 0


def test_records_roundtrip():
    x = p("(1/2-i) V(ab,b) + 2 V(a,a)")
    assert AlgebraElement.from_records(F2, x.to_records()) == x


def test_divisibility_grading():
    D = Divisibility()
    x = p("V(6,4) + V(3,2)", D)
    assert list(x.grade()) == [Fraction(3, 2)]
    assert x.is_homogeneous()


@pytest.mark.parametrize("inst, n", [(F2, 2), (FreeAbelian(2), 2), (Divisibility(), 6)])
def test_property_suites(inst, n):
    assert check_ring_axioms(inst, n, 30, random.Random(1)).verdict == "pass"
    assert check_graded(inst, n).verdict == "pass"
    assert check_expectation(inst, n).verdict == "pass"


word = st.text("ab", max_size=2).map(lambda s: F2.parse(s or "e"))
coef = st.builds(GaussianRational, st.integers(-3, 3), st.integers(-2, 2))
elements = st.dictionaries(st.builds(Monomial, word, word), coef, max_size=4).map(
    lambda d: AlgebraElement(F2, d))


@settings(max_examples=150, deadline=None)
@given(elements, elements, elements)
def test_star_algebra_laws(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).star() == y.star() * x.star()
    assert x.star().star() == x


@settings(max_examples=150, deadline=None)
@given(elements)
def test_grade_sums_back(x):
    total = zero(F2)
    for part in x.grade().values():
        assert part.is_homogeneous()
        total = total + part
    assert total == x


@settings(max_examples=100, deadline=None)
@given(elements)
def test_print_parse_roundtrip(x):
    assert parse_element(F2, str(x)) == x
