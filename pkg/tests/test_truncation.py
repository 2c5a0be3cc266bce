from fractions import Fraction

import pytest

from oracles import rank_fraction
from qlotoeplitz.algebra import V, parse_element
from qlotoeplitz.inner import rank_one
from qlotoeplitz.qlo import Divisibility, FreeAbelian, FreeMonoid, HalfLine
from qlotoeplitz.truncation import (ExactMatrix, NotHereditary, Truncation, check_commutant,
                                    check_matrix_oracle, diagonal_commutant_dimension, elementary,
                                    hereditary_prefix, truncate, verify_against_matrices)

F2 = FreeMonoid(2)
AB = [F2.parse("a"), F2.parse("b")]


def commutant_rank_oracle(S):
    """n^2 - rank of the stacked [M, D_p] = 0 equations, with Fraction elimination."""
    els = S.elements
    n = len(els)
    rows = []
    for p in els:
        d = [[1 if i == j and S.inst.leq(p, t) else 0 for j in range(n)] for i, t in enumerate(els)]
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    row[i * n + k] += d[k][j]
                    row[k * n + j] -= d[i][k]
                rows.append(row)
    return n * n - rank_fraction(rows)


def test_hereditary_required():
    with pytest.raises(NotHereditary):
        Truncation(F2, [F2.parse("ab")])
    assert len(Truncation(F2, F2.enumerate_ball(2))) == 7


def test_truncate_shift_and_escapes():
    S = Truncation(F2, F2.enumerate_ball(1))
    M = truncate(V(F2, F2.parse("a"), F2.identity()), S)
    assert M.dump() == "0 0 0\n1 0 0\n0 0 0"
    assert M.escapes == {1, 2}


def test_rank_one_truncates_to_matrix_unit():
    S = Truncation(F2, F2.enumerate_ball(4))
    for x, y in [("a", "b"), ("ab", "e"), ("bba", "ab")]:
        R = rank_one(F2, F2.parse(x), F2.parse(y), AB)
        assert truncate(R, S) == elementary(S, F2.parse(x), F2.parse(y))


def test_matrix_product_and_adjoint():
    S = Truncation(F2, F2.enumerate_ball(3))
    x = parse_element(F2, "(1+i) V(a,b) + V(e)")
    y = parse_element(F2, "V(b,ab) - 1/2 V(ba,a)")
    rep = verify_against_matrices(x, y, S)
    assert rep.verdict == "pass" and rep.parameters["columns_compared"] > 0


def test_exact_matrix_ops():
    M = ExactMatrix(2, {(0, 1): Fraction(1, 2)})
    assert (M @ M).entries == {}
    assert M.conj_transpose()[1, 0] == Fraction(1, 2)


@pytest.mark.parametrize("inst, k, want", [
    (F2, 7, 7), (FreeAbelian(1), 5, 5), (FreeAbelian(2), 6, 6), (Divisibility(), 9, 9),
])
def test_commutant_dimension_matches_oracle(inst, k, want):
    S = hereditary_prefix(inst, k)
    assert diagonal_commutant_dimension(S) == commutant_rank_oracle(S) == want


@pytest.mark.parametrize("inst", [F2, FreeAbelian(2), Divisibility(), HalfLine(4)])
def test_commutant_suite(inst):
    assert check_commutant(inst).verdict == "pass"


def test_matrix_oracle_suite():
    assert check_matrix_oracle(F2, 2).verdict == "pass"
    assert check_matrix_oracle(Divisibility(), 12).verdict == "pass"
