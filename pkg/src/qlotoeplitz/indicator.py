"""Finite combinations of the indicator functions 1_s of s P on P.

Products follow the rule 1_s 1_t = 1_{s v t} (zero for an infinite join),
which is how ``chi_product`` expands prod_{a in F} (1_x - 1_{xa}).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from itertools import product as _product

from .qlo import FreeMonoid, QLOInstance
from .report import FLAGGED, CheckReport


class IndicatorElement:
    __slots__ = ("inst", "coeffs")

    def __init__(self, inst: QLOInstance, coeffs=None):
        self.inst = inst
        self.coeffs = {s: Fraction(c) for s, c in (coeffs or {}).items() if c}

    @classmethod
    def basis(cls, inst, s) -> IndicatorElement:
        inst.check(s)
        return cls(inst, {s: 1})

    def __add__(self, other):
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out.get(s, 0) + c
        return IndicatorElement(self.inst, out)

    def __neg__(self):
        return IndicatorElement(self.inst, {s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, IndicatorElement):
            return IndicatorElement(self.inst, {s: c * other for s, c in self.coeffs.items()})
        out: dict = {}
        for (s, c), (t, d) in _product(self.coeffs.items(), other.coeffs.items()):
            j = self.inst.join(s, t)
            if j is not None:
                out[j] = out.get(j, 0) + c * d
        return IndicatorElement(self.inst, out)

    __rmul__ = __mul__

    def evaluate(self, t) -> Fraction:
        return sum((c for s, c in self.coeffs.items() if self.inst.leq(s, t)), Fraction(0))

    __call__ = evaluate

    def __eq__(self, other):
        return isinstance(other, IndicatorElement) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        f = self.inst.format
        terms = sorted(self.coeffs.items(), key=lambda kv: self.inst.sort_key(kv[0]))
        return " + ".join(f"{c}*1_{f(s)}" for s, c in terms).replace("+ -", "- ")


def evaluate(x: IndicatorElement, t) -> Fraction:
    return x.evaluate(t)


def _check_F(inst, F):
    F = list(F)
    if not F:
        raise ValueError("F must be non-empty")
    inst.check(*F)
    if inst.identity() in F:
        raise ValueError("F must not contain the identity")
    return F


def chi_product(inst: QLOInstance, x, F) -> IndicatorElement:
    """prod_{a in F} (1_x - 1_{xa}), expanded with the join product rule."""
    F = _check_F(inst, F)
    one_x = IndicatorElement.basis(inst, x)
    out = one_x
    for a in F:
        out = out * (one_x - IndicatorElement.basis(inst, inst.compose(x, a)))
    return out


# -- FESSPE verdicts ---------------------------------------------------------

@dataclass(frozen=True)
class VerifiedUpTo:
    bound: object
    ok = True


@dataclass(frozen=True)
class Counterexample:
    element: object
    ok = False


@dataclass(frozen=True)
class StructurallyVerified:
    ok = True


def fesspe_gaps(inst: QLOInstance, F, bound) -> list:
    """Elements of the ball other than e with no lower bound in F."""
    F = _check_F(inst, F)
    e = inst.identity()
    return [p for p in inst.enumerate_ball(bound)
            if p != e and not any(inst.leq(f, p) for f in F)]


def is_fesspe(inst: QLOInstance, F, bound):
    F = _check_F(inst, F)
    if isinstance(inst, FreeMonoid) and set(inst.generators()) <= set(F):
        # every non-empty word starts with a generator
        return StructurallyVerified()
    gaps = fesspe_gaps(inst, F, bound)
    return Counterexample(gaps[0]) if gaps else VerifiedUpTo(bound)


def verify_chi_formula(inst: QLOInstance, F, bound) -> CheckReport:
    """chi_product(x, F) evaluated at y equals [y = x] for all x, y in the ball."""
    F = _check_F(inst, F)
    rep = CheckReport("chi-formula", inst.describe(),
                      {"F": [inst.format(a) for a in F], "radius": str(bound)})
    ball = inst.enumerate_ball(bound)
    for x in ball:
        chi = chi_product(inst, x, F)
        for y in ball:
            rep.cases += 1
            got = chi(y)
            want = 1 if y == x else 0
            if got != want:
                rep.fail({"x": inst.format(x), "y": inst.format(y), "eval": str(got), "expected": want})
    return rep


def check_product_rule(inst: QLOInstance, bound) -> CheckReport:
    """Pointwise 1_s(t) 1_u(t) against 1_{s v u}(t) over the ball."""
    rep = CheckReport("indicator-product-rule", inst.describe(), {"radius": str(bound)})
    ball = inst.enumerate_ball(bound)
    for s, u in _product(ball, ball):
        prod = IndicatorElement.basis(inst, s) * IndicatorElement.basis(inst, u)
        for t in ball:
            rep.cases += 1
            pointwise = int(inst.leq(s, t)) * int(inst.leq(u, t))
            if prod(t) != pointwise:
                rep.fail({"s": inst.format(s), "u": inst.format(u), "t": inst.format(t),
                          "join_rule": str(prod(t)), "pointwise": pointwise})
    return rep


def fesspe_report(inst: QLOInstance, F, bound, probe=False) -> CheckReport:
    """FESSPE verdict as a report; ``probe`` turns failures into flagged findings."""
    F = _check_F(inst, F)
    verdict = is_fesspe(inst, F, bound)
    rep = CheckReport("fesspe", inst.describe(),
                      {"F": [inst.format(a) for a in F], "radius": str(bound)})
    rep.cases = len(inst.enumerate_ball(bound))
    rep.parameters["result"] = type(verdict).__name__
    if isinstance(verdict, Counterexample):
        gaps = fesspe_gaps(inst, F, bound)
        rep.fail({"counterexample": inst.format(verdict.element)})
        rep.parameters["gaps"] = [inst.format(g) for g in gaps]
        if probe:
            rep.verdict = FLAGGED
            inside = inst.kind == "half_line" and all(1 < g < 2 for g in gaps)
            rep.reason = (f"{len(gaps)} ball elements have no lower bound in F"
                          + ("; all lie in (1,2)" if inside else "")
                          + "; claimed FESSPE not observed, flagged for inspection")
    return rep


def half_line_probe(inst: QLOInstance, F, bound) -> list:
    """Flagged findings on the half line: FESSPE gaps, chi formula, product rule."""
    reports = [fesspe_report(inst, F, bound, probe=True),
               verify_chi_formula(inst, F, bound),
               check_product_rule(inst, min(bound, 3))]
    for r in reports[1:]:
        if r.verdict != "pass":
            r.verdict = FLAGGED
            r.reason = "half_line probe: reported, not asserted"
    return reports


def find_fesspe(inst: QLOInstance, max_size: int, bound) -> CheckReport:
    """Smallest F in the ball, of size <= max_size, covering the ball.

    Minimal elements of the ball other than e have no other lower bound, so
    they are forced into F; only the remaining slots are searched.
    """
    e = inst.identity()
    pool = [p for p in inst.enumerate_ball(bound) if p != e]
    atoms = [p for p in pool if not any(q != p and inst.leq(q, p) for q in pool)]
    rep = CheckReport("find-fesspe", inst.describe(), {"max_size": max_size, "radius": str(bound)})
    rep.parameters["forced"] = [inst.format(a) for a in atoms]
    if len(atoms) > max_size:
        rep.fail({"forced_elements": len(atoms), "max_size": max_size})
        rep.reason = "more minimal elements than max_size"
        return rep
    rest = [p for p in pool if p not in atoms]
    for k in range(max_size - len(atoms) + 1):
        for extra in combinations(rest, k):
            rep.cases += 1
            F = atoms + list(extra)
            if not fesspe_gaps(inst, F, bound):
                rep.parameters["found"] = [inst.format(a) for a in F]
                rep.parameters["result"] = type(is_fesspe(inst, F, bound)).__name__
                return rep
    gaps = fesspe_gaps(inst, atoms, bound)
    rep.fail({"uncovered_by_forced": inst.format(gaps[0])})
    rep.reason = f"no candidate of size <= {max_size} covers the ball"
    return rep
