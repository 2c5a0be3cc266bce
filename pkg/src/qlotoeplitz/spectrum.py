"""Finite census of the Nica spectrum: non-empty hereditary directed subsets."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qlo import QLOInstance
from .report import CheckReport

MAX_BALL = 22


class BallTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SpectrumPoint:
    members: frozenset
    hereditary: bool
    directed: bool
    principal: bool
    generator: object = None  # t with members = [e, t] when principal


def _ball(inst, bound):
    ball = inst.enumerate_ball(bound)
    if len(ball) > MAX_BALL:
        raise BallTooLarge(f"ball of radius {bound} has {len(ball)} elements (limit {MAX_BALL})")
    return ball


def interval(inst: QLOInstance, t, ball) -> frozenset:
    """[e, t] cut down to the ball."""
    return frozenset(s for s in ball if inst.leq(s, t))


def _down_sets(inst, ball):
    """All non-empty down-closed subsets of ``ball`` by backtracking.

    Elements are visited in size order, so lower bounds are decided first.
    """
    below = {t: [s for s in ball if s != t and inst.leq(s, t)] for t in ball}
    out = []

    def walk(i, chosen):
        if i == len(ball):
            if chosen:
                out.append(frozenset(chosen))
            return
        t = ball[i]
        walk(i + 1, chosen)
        if all(s in chosen for s in below[t]):
            chosen.add(t)
            walk(i + 1, chosen)
            chosen.discard(t)

    walk(0, set())
    return out


def is_directed(inst: QLOInstance, A) -> bool:
    return all(any(inst.leq(p, u) and inst.leq(q, u) for u in A) for p in A for q in A)


def enumerate_spectrum(inst: QLOInstance, bound) -> list:
    ball = _ball(inst, bound)
    principal = {interval(inst, t, ball): t for t in ball}
    points = []
    for A in _down_sets(inst, ball):
        if not is_directed(inst, A):
            continue
        t = principal.get(A)
        points.append(SpectrumPoint(A, True, True, t is not None, t))
    return points


def principal_fraction(inst: QLOInstance, bound) -> Fraction:
    pts = enumerate_spectrum(inst, bound)
    return Fraction(sum(p.principal for p in pts), len(pts))


def census(inst: QLOInstance, bound) -> CheckReport:
    """Every point with its flags, plus sanity of t -> [e, t]."""
    rep = CheckReport("spectrum", inst.describe(), {"radius": str(bound)})
    ball = _ball(inst, bound)
    f = inst.format
    seen: dict = {}
    for t in ball:
        I = interval(inst, t, ball)
        if not (all(s in I for u in I for s in ball if inst.leq(s, u)) and is_directed(inst, I)):
            rep.fail({"interval_not_a_point": f(t)})
        if I in seen:
            rep.fail({"iota_not_injective": [f(seen[I]), f(t)]})
        seen[I] = t
    pts = enumerate_spectrum(inst, bound)
    rep.cases = len(pts)
    rep.parameters["points"] = [
        {"members": sorted((f(s) for s in p.members), key=str),
         "principal": p.principal,
         **({"generator": f(p.generator)} if p.principal else {})}
        for p in sorted(pts, key=lambda p: (len(p.members), sorted(map(repr, p.members))))]
    frac = Fraction(sum(p.principal for p in pts), len(pts))
    rep.parameters["principal_fraction"] = str(frac)
    return rep
