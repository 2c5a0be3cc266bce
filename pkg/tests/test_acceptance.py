"""Acceptance criteria 1-11, one pass/fail line each.

Run under pytest (lines go straight to the terminal) or directly with
``python3 tests/test_acceptance.py``.
"""
import sys
import time
from fractions import Fraction

import pytest

from qlotoeplitz.axioms import check_translated_joins
from qlotoeplitz.indicator import (Counterexample, StructurallyVerified, half_line_probe, is_fesspe,
                                   verify_chi_formula)
from qlotoeplitz.inner import check_commutation, check_partitions, verify_ideal_J, verify_rank_one_system
from qlotoeplitz.monomials import check_monomial_oracle, check_nica
from qlotoeplitz.qlo import Divisibility, FreeAbelian, FreeMonoid, HalfLine
from qlotoeplitz.spectrum import enumerate_spectrum
from qlotoeplitz.truncation import check_commutant

F2 = FreeMonoid(2)
N1 = FreeAbelian(1)
N2 = FreeAbelian(2)
DIV = Divisibility()
AB = [F2.parse("a"), F2.parse("b")]
UNITS = [(1, 0), (0, 1)]
BUDGET = 60.0


@pytest.fixture
def report(capsys, request):
    """Yields a recorder; prints one line for the criterion on teardown."""
    state = {}

    def record(number, title, ok, detail=""):
        state.update(number=number, title=title, ok=ok, detail=detail)
        return ok

    t0 = time.perf_counter()
    yield record
    elapsed = time.perf_counter() - t0
    if not state:
        # the check raised before recording a result
        state.update(number=request.node.name[5:7], title=request.node.name, ok=False, detail="error")
    ok = state["ok"] and elapsed < BUDGET
    with capsys.disabled():
        print(f"\nACCEPTANCE {state['number']:>2} {'PASS' if ok else 'FAIL'}  {state['title']}"
              f"  [{state['detail']}] ({elapsed:.1f}s)")
    assert elapsed < BUDGET, f"criterion took {elapsed:.1f}s"


def _clean(reps):
    return all(r.verdict == "pass" and r.violations == 0 and r.mode == "exhaustive" for r in reps)


def test_01_nica_covariance(report):
    reps = [check_nica(F2, 4, 6), check_nica(N2, 4, 8), check_nica(DIV, 30, 60)]
    ok = _clean(reps)
    report(1, "Nica covariance", ok, ", ".join(f"{r.instance}: {r.cases}" for r in reps))
    assert ok, [r.witnesses for r in reps]


def test_02_monomial_oracle(report):
    rep = check_monomial_oracle(F2, 3, 6)
    ok = _clean([rep]) and rep.cases == 225 * 225 * 127
    report(2, "monomial partial-injection oracle", ok, f"{rep.cases} cases")
    assert ok, rep.witnesses


def test_03_translated_joins(report):
    reps = [check_translated_joins(N2, 4), check_translated_joins(DIV, 30)]
    ok = _clean(reps)
    report(3, "translated joins", ok, ", ".join(f"{r.instance}: {r.cases}" for r in reps))
    assert ok, [r.witnesses for r in reps]


def test_04_indicator_product(report):
    reps = [verify_chi_formula(F2, AB, 4), verify_chi_formula(N2, UNITS, 4)]
    ok = _clean(reps)
    report(4, "indicator product formula", ok, ", ".join(f"{r.instance}: {r.cases}" for r in reps))
    assert ok, [r.witnesses for r in reps]


def test_05_four_case_commutation(report):
    reps = [check_commutation(F2, AB, 3, 6), check_commutation(N1, [(1,)], 3, 6),
            check_commutation(N2, UNITS, 3, 6)]
    every_case = all(all(v > 0 for v in r.parameters["cases_by_lemma_case"].values()) for r in reps)
    ok = _clean(reps) and every_case
    report(5, "four-case commutation", ok,
           "; ".join(f"{r.instance}: {r.parameters['cases_by_lemma_case']}" for r in reps))
    assert ok, [r.witnesses for r in reps]


def test_06_rank_one_system(report):
    reps = [verify_rank_one_system(F2, AB, 2, 4), verify_rank_one_system(N2, UNITS, 2, 4)]
    ok = _clean(reps)
    report(6, "rank-one system", ok, ", ".join(f"{r.instance}: {r.cases}" for r in reps))
    assert ok, [r.witnesses for r in reps]


def test_07_ideal_J(report):
    reps = [verify_ideal_J(F2, AB, 2), verify_ideal_J(N2, UNITS, 2)]
    ok = _clean(reps)
    report(7, "ideal J closure and degrees", ok, ", ".join(f"{r.instance}: {r.cases}" for r in reps))
    assert ok, [r.witnesses for r in reps]


def test_08_partitions(report):
    rep = check_partitions(F2, 3)
    ok = _clean([rep]) and rep.cases > 1
    report(8, "converse partition checker", ok, f"1 singleton + {rep.cases - 1} perturbations")
    assert ok, rep.witnesses


def test_09_commutant(report):
    reps = [check_commutant(inst, range(5, 11)) for inst in (F2, N1, N2, DIV, HalfLine(4))]
    ok = _clean(reps) and all(r.cases == 6 for r in reps)
    report(9, "diagonal commutant dimension", ok, f"{len(reps)} instances x sizes 5..10")
    assert ok, [r.witnesses for r in reps]


def test_10_fesspe_verdicts(report):
    free = is_fesspe(F2, AB, 6)
    div = is_fesspe(DIV, [2, 3, 5], 10)
    probe = half_line_probe(HalfLine(4), [Fraction(1), Fraction(3, 2)], 4)
    fess = probe[0]
    gaps = [Fraction(g) for g in fess.parameters["gaps"]]
    ok = (isinstance(free, StructurallyVerified) and div == Counterexample(7)
          and fess.verdict == "flagged" and gaps and all(1 < g < 2 for g in gaps))
    report(10, "FESSPE verdicts", ok,
           f"F2+: {type(free).__name__}; divisibility: {div}; half_line: {fess.verdict}, gaps {fess.parameters['gaps']}")
    assert ok


def test_11_spectrum(report):
    n = len(enumerate_spectrum(N1, 3))
    f = len(enumerate_spectrum(F2, 1))
    ok = n == 4 and f == 3
    report(11, "spectrum census", ok, f"N ball 0..3: {n}, F2+ radius 1: {f}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
