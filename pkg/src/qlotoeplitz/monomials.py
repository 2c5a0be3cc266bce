"""Normalized monomials V(s, t) = T_s T_t^* and the zero monomial.

V(s, t) acts on P as the partial injection tP -> sP, tu -> su.  Products are
renormalized at once through Nica covariance:

    V(s, t) V(u, v) = V(s t^-1 (t v u), v u^-1 (t v u))   if t v u < oo
                    = 0                                   otherwise
"""
from __future__ import annotations

from typing import NamedTuple

from .qlo import QLOInstance
from .report import CheckReport, cells


class Monomial(NamedTuple):
    s: object
    t: object


class _ZeroMonomial:
    __slots__ = ()

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return "ZERO"


ZERO = _ZeroMonomial()


def monomial_mul(inst: QLOInstance, m1, m2):
    if m1 is ZERO or m2 is ZERO:
        return ZERO
    s, t = m1
    u, v = m2
    j = inst.join(t, u)
    if j is None:
        return ZERO
    return Monomial(inst._compose(s, inst.left_divide(t, j)),
                    inst._compose(v, inst.left_divide(u, j)))


def adjoint(m):
    return m if m is ZERO else Monomial(m.t, m.s)


def apply(inst: QLOInstance, m, x):
    """Image of the basis point x, or None when x is outside the domain."""
    if m is ZERO or x is None:
        return None
    r = inst.left_divide(m.t, x)
    return None if r is None else inst._compose(m.s, r)


def degree(inst: QLOInstance, m):
    if m is ZERO:
        raise ValueError("the zero monomial has no degree")
    return inst.quotient_label(m.s, m.t)


def is_projection(m) -> bool:
    return m is not ZERO and m.s == m.t


def format_monomial(inst: QLOInstance, m) -> str:
    if m is ZERO:
        return "0"
    return f"V({inst.format(m.s)},{inst.format(m.t)})"


def split_args(text: str, start: int = 0) -> list:
    """Split on top-level commas; returns (offset, piece) pairs."""
    parts, depth, last = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((start + last, text[last:i]))
            last = i + 1
    parts.append((start + last, text[last:]))
    return parts


def parse_monomial(inst: QLOInstance, text: str):
    """Parse ``V(s,t)``, the projection shorthand ``V(u)``, or ``0``."""
    s = text.strip()
    if s == "0":
        return ZERO
    if not (s.startswith("V(") and s.endswith(")")):
        raise ValueError(f"expected V(s,t), got {text!r}")
    args = [a for _, a in split_args(s[2:-1])]
    if len(args) == 1:
        u = inst.parse(args[0])
        return Monomial(u, u)
    if len(args) != 2:
        raise ValueError(f"V takes one or two arguments, got {len(args)} in {text!r}")
    return Monomial(inst.parse(args[0]), inst.parse(args[1]))


# -- exhaustive checks -----------------------------------------------------------

def monomials_over(ball) -> list:
    return [Monomial(s, t) for s in ball for t in ball]


def check_nica(inst: QLOInstance, radius, semantic_radius=None):
    """V(s,s) V(t,t) = V(s v t, s v t) or 0; optionally pointwise on a ball.

    The pointwise test uses only the order: the product fixes w exactly when
    s <= w and t <= w.
    """
    ball = inst.enumerate_ball(radius)
    sem = inst.enumerate_ball(semantic_radius) if semantic_radius is not None else ()
    rep = CheckReport("nica", inst.describe(), {"radius": str(radius), "semantic_radius": str(semantic_radius)})
    f = inst.format
    for s in ball:
        for t in ball:
            rep.cases += 1
            m = monomial_mul(inst, Monomial(s, s), Monomial(t, t))
            j = inst.join(s, t)
            want = ZERO if j is None else Monomial(j, j)
            if m != want:
                rep.fail({"s": f(s), "t": f(t), "product": format_monomial(inst, m)})
                continue
            for w in sem:
                fixed = inst.leq(s, w) and inst.leq(t, w)
                if apply(inst, m, w) != (w if fixed else None):
                    rep.fail({"s": f(s), "t": f(t), "basis": f(w), "product": format_monomial(inst, m)})
                    break
    return rep


def check_monomial_oracle(inst: QLOInstance, radius, point_radius, limit=None, rng=None):
    """apply(m1 m2, t) = apply(m1, apply(m2, t)) over all monomial pairs and points."""
    monos = monomials_over(inst.enumerate_ball(radius))
    points = inst.enumerate_ball(point_radius)
    rep = CheckReport("monomial-oracle", inst.describe(),
                      {"radius": str(radius), "point_radius": str(point_radius), "monomials": len(monos)})
    table = {m: {} for m in monos}

    def act(m, x):
        row = table.get(m)
        if row is None:
            return apply(inst, m, x)
        if x not in row:
            row[x] = apply(inst, m, x)
        return row[x]

    f = inst.format
    if limit is not None and len(monos) ** 2 * len(points) > limit:
        for m1, m2, t in cells(rep, [monos, monos, points], limit, rng):
            rep.cases += 1
            m = monomial_mul(inst, m1, m2)
            if apply(inst, m, t) != act(m1, act(m2, t)):
                rep.fail({"m1": format_monomial(inst, m1), "m2": format_monomial(inst, m2), "t": f(t)})
        return rep
    for m2 in monos:
        images = [act(m2, t) for t in points]
        for m1 in monos:
            m = monomial_mul(inst, m1, m2)
            row1 = table[m1]
            for t, u in zip(points, images):
                want = None if u is None else (row1[u] if u in row1 else act(m1, u))
                if apply(inst, m, t) != want:
                    rep.fail({"m1": format_monomial(inst, m1), "m2": format_monomial(inst, m2), "t": f(t)})
            rep.cases += len(points)
    return rep


def check_monomial_laws(inst: QLOInstance, radius, limit=None, rng=None):
    """Associativity, (m1 m2)* = m2* m1*, and m m* m = m."""
    monos = monomials_over(inst.enumerate_ball(radius)) + [ZERO]
    rep = CheckReport("monomial-laws", inst.describe(), {"radius": str(radius)})
    g = lambda m: format_monomial(inst, m)  # noqa: E731
    mul = lambda a, b: monomial_mul(inst, a, b)  # noqa: E731
    for m in monos:
        if mul(mul(m, adjoint(m)), m) != m:
            rep.fail({"regularity": g(m)})
        if adjoint(adjoint(m)) != m:
            rep.fail({"involution": g(m)})
    for m1, m2 in cells(rep, [monos, monos]):
        if adjoint(mul(m1, m2)) != mul(adjoint(m2), adjoint(m1)):
            rep.fail({"adjoint_antimultiplicative": [g(m1), g(m2)]})
    for a, b, c in cells(rep, [monos, monos, monos], limit, rng):
        rep.cases += 1
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            rep.fail({"associativity": [g(a), g(b), g(c)]})
    return rep
