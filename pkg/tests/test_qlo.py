from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (div_le, half_line_grid, half_line_le, least_upper_bound, nat_vectors,
                     vec_le, word_le, words)
from qlotoeplitz.axioms import (check_axioms, check_join, check_labels, check_lub_in_P,
                                check_translated_joins)
from qlotoeplitz.qlo import (Divisibility, FreeAbelian, FreeMonoid, HalfLine, InstanceMismatch,
                             UnsupportedCapability, make_instance, parse_instance)

F2 = FreeMonoid(2)
N2 = FreeAbelian(2)
DIV = Divisibility()


def w(s):
    return F2.parse(s) if s else F2.identity()


def test_free_monoid_join_matches_bruteforce():
    universe = words("ab", 4)
    for p in words("ab", 2):
        for q in words("ab", 2):
            want = least_upper_bound(p, q, universe, word_le)
            got = F2.join(w(p), w(q))
            assert got == (None if want is None else w(want)), (p, q)


def test_free_abelian_join_matches_bruteforce():
    universe = nat_vectors(2, 6)
    for p in nat_vectors(2, 3):
        for q in nat_vectors(2, 3):
            assert N2.join(p, q) == least_upper_bound(p, q, universe, vec_le)


def test_divisibility_join_is_lcm():
    universe = range(1, 200)
    for p in range(1, 13):
        for q in range(1, 13):
            assert DIV.join(p, q) == least_upper_bound(p, q, universe, div_le) == lcm(p, q)


def test_half_line_join_is_not_a_least_upper_bound():
    H = HalfLine(4)
    a, b = Fraction(3, 2), Fraction(7, 4)
    assert H.join(a, b) == Fraction(11, 4)
    # a scan of the grid finds no least common upper bound at all
    grid = half_line_grid(6, 4)
    ubs = [u for u in grid if half_line_le(a, u) and half_line_le(b, u)]
    assert ubs and not [j for j in ubs if all(half_line_le(j, u) for u in ubs)]


def test_order_and_division():
    assert F2.leq(w("a"), w("ab"))
    assert not F2.leq(w("b"), w("ab"))
    assert F2.left_divide(w("a"), w("abb")) == w("bb")
    assert F2.left_divide(w("b"), w("abb")) is None
    assert N2.left_divide((1, 0), (2, 3)) == (1, 3)
    assert DIV.left_divide(3, 12) == 4
    assert DIV.left_divide(5, 12) is None


def test_quotient_labels():
    g = F2.quotient_label(w("a"), w("b"))
    assert F2.format_label(g) == "ab^-1"
    assert F2.lub_in_P(g) == w("a")
    assert F2.label_in_P(g) is None
    assert F2.label_in_P(F2.quotient_label(w("ab"), w("b"))) == w("a")
    assert DIV.quotient_label(6, 4) == Fraction(3, 2)
    assert N2.quotient_label((2, 0), (0, 1)) == (2, -1)


def test_label_mul_outside_products():
    # ab^-1 times ba^-1 reduces to e
    g = F2.quotient_label(w("a"), w("b"))
    h = F2.quotient_label(w("b"), w("a"))
    assert F2.label_mul(g, h) == F2.identity_label()


@pytest.mark.parametrize("inst, text", [
    (F2, "abba"), (F2, "e"), (N2, "(3,1)"), (DIV, "30"), (HalfLine(4), "7/4"),
])
def test_parse_format_roundtrip(inst, text):
    assert inst.format(inst.parse(text)) == text


def test_parse_rejects_foreign_elements():
    with pytest.raises(ValueError):
        F2.parse("abz")
    with pytest.raises(ValueError):
        N2.parse("(1,-1)")
    with pytest.raises(ValueError):
        DIV.parse("0")
    with pytest.raises(ValueError):
        HalfLine(4).parse("1/2")


def test_compose_checks_membership():
    with pytest.raises(InstanceMismatch):
        F2.compose(w("a"), (2,))


def test_instance_records():
    assert parse_instance("free_monoid:3") == FreeMonoid(3)
    assert parse_instance("half_line:2") == HalfLine(2)
    assert make_instance({"kind": "divisibility"}) == DIV
    assert make_instance(N2.config()) == N2
    with pytest.raises(ValueError):
        make_instance({"kind": "braid"})
    with pytest.raises(ValueError):
        make_instance({"kind": "free_monoid", "colour": 1})


def test_half_line_lacks_lub():
    H = HalfLine(4)
    with pytest.raises(UnsupportedCapability):
        H.lub_in_P(H.quotient_label(Fraction(1), Fraction(3, 2)))
    assert check_lub_in_P(H, 3).verdict == "skipped"


@pytest.mark.parametrize("inst, n", [(F2, 3), (N2, 3), (FreeAbelian(1), 5), (DIV, 12)])
def test_axiom_suites(inst, n):
    for rep in (check_axioms(inst, n), check_join(inst, n), check_labels(inst, n),
                check_lub_in_P(inst, n), check_translated_joins(inst, n)):
        assert rep.verdict == "pass", rep.witnesses


def test_half_line_join_check_fails():
    rep = check_join(HalfLine(4), 2)
    assert rep.verdict == "fail" and rep.witnesses


def test_sampled_mode_is_labelled():
    rep = check_axioms(F2, 3, limit=100)
    assert rep.mode.startswith("sampled 100/") and rep.cases == 100


letters = st.text("ab", max_size=5)


@settings(max_examples=200, deadline=None)
@given(letters, letters, letters)
def test_join_lattice_laws(p, q, r):
    p, q, r = w(p), w(q), w(r)
    j = F2.join(p, q)
    assert j == F2.join(q, p)
    if j is not None:
        assert F2.leq(p, j) and F2.leq(q, j)
        assert F2.join(F2.compose(r, p), F2.compose(r, q)) == F2.compose(r, j)
    assert F2.join_all([p, q, r]) == F2.join_all([r, q, p])


@settings(max_examples=200, deadline=None)
@given(st.tuples(st.integers(0, 6), st.integers(0, 6)), st.tuples(st.integers(0, 6), st.integers(0, 6)))
def test_free_abelian_join_is_max(p, q):
    assert N2.join(p, q) == tuple(map(max, p, q))
