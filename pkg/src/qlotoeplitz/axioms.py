"""Exhaustive checks of the quasi-lattice axioms on finite balls."""
from __future__ import annotations

from .qlo import QLOInstance
from .report import CheckReport, cells, skipped


def check_axioms(inst: QLOInstance, n, limit=None, rng=None) -> CheckReport:
    """Associativity, identity, left division and left cancellation."""
    rep = CheckReport("qlo-axioms", inst.describe(), {"radius": str(n)})
    ball = inst.enumerate_ball(n)
    e = inst.identity()
    f = inst.format
    for p in ball:
        if inst.compose(e, p) != p or inst.compose(p, e) != p:
            rep.fail({"identity": f(p)})
    for p, q, r in cells(rep, [ball, ball, ball], limit, rng):
        rep.cases += 1
        pq = inst.compose(p, q)
        if inst.compose(pq, r) != inst.compose(p, inst.compose(q, r)):
            rep.fail({"associativity": [f(p), f(q), f(r)]})
        if inst.left_divide(p, pq) != q:
            rep.fail({"left_divide": [f(p), f(q)]})
        if q != r and pq == inst.compose(p, r):
            rep.fail({"cancellation": [f(p), f(q), f(r)]})
    return rep


def check_join(inst: QLOInstance, n, limit=None, rng=None) -> CheckReport:
    """Join is a least upper bound; infinite joins have no bound in a 2x ball."""
    big = inst.enumerate_ball(2 * n)
    rep = CheckReport("qlo-join", inst.describe(), {"radius": str(n), "margin_radius": str(2 * n)})
    ball = inst.enumerate_ball(n)
    e = inst.identity()
    f = inst.format
    ubs = {p: {u for u in big if inst.leq(p, u)} for p in ball}
    for p in ball:
        if inst.join(p, p) != p or inst.join(e, p) != p:
            rep.fail({"join_identity": f(p)})
    for p, q in cells(rep, [ball, ball], limit, rng):
        rep.cases += 1
        j = inst.join(p, q)
        if j != inst.join(q, p):
            rep.fail({"commutativity": [f(p), f(q)]})
        common = ubs[p] & ubs[q]
        if j is None:
            if common:
                u = min(common, key=inst.sort_key)
                rep.fail({"p": f(p), "q": f(q), "join": "inf", "upper_bound": f(u)})
            continue
        if not (inst.leq(p, j) and inst.leq(q, j)):
            rep.fail({"p": f(p), "q": f(q), "join": f(j), "problem": "not an upper bound"})
            continue
        for u in sorted(common, key=inst.sort_key):
            if not inst.leq(j, u):
                rep.fail({"p": f(p), "q": f(q), "join": f(j), "upper_bound_not_dominated": f(u)})
                break
    return rep


def check_labels(inst: QLOInstance, n, limit=None, rng=None) -> CheckReport:
    """label(s, s) = identity and right invariance label(su, tu) = label(s, t)."""
    rep = CheckReport("qlo-labels", inst.describe(), {"radius": str(n)})
    ball = inst.enumerate_ball(n)
    one = inst.identity_label()
    f = inst.format
    for s in ball:
        if inst.quotient_label(s, s) != one:
            rep.fail({"identity_label": f(s)})
    for s, t, u in cells(rep, [ball, ball, ball], limit, rng):
        rep.cases += 1
        if inst.quotient_label(inst.compose(s, u), inst.compose(t, u)) != inst.quotient_label(s, t):
            rep.fail({"s": f(s), "t": f(t), "u": f(u)})
    return rep


def check_lub_in_P(inst: QLOInstance, n) -> CheckReport:
    """sigma(g) dominates g and lies below every element of P dominating g."""
    if not inst.supports_lub_of_quotient:
        return skipped("qlo-lub", inst.describe(), "instance has no lub_in_P", radius=str(n))
    rep = CheckReport("qlo-lub", inst.describe(), {"radius": str(n), "margin_radius": str(2 * n)})
    ball = inst.enumerate_ball(n)
    big = inst.enumerate_ball(2 * n)
    e = inst.identity()
    labels = {inst.quotient_label(s, t) for s in ball for t in ball}
    for s in ball:
        if inst.lub_in_P(inst.quotient_label(s, e)) != s:
            rep.fail({"sigma_of_element": inst.format(s)})
    for g in sorted(labels, key=repr):
        rep.cases += 1
        sigma = inst.lub_in_P(g)
        inv = inst.label_inverse(g)
        if inst.label_act(inv, sigma) is None:
            rep.fail({"label": inst.format_label(g), "sigma": inst.format(sigma), "problem": "does not dominate"})
            continue
        for p in big:
            if inst.label_act(inv, p) is not None and not inst.leq(sigma, p):
                rep.fail({"label": inst.format_label(g), "sigma": inst.format(sigma), "smaller_bound": inst.format(p)})
                break
    return rep


def check_translated_joins(inst: QLOInstance, n, use_labels=True, limit=None, rng=None) -> CheckReport:
    """z(a v b) = za v zb, with joins finite on one side iff on the other.

    z runs over P and, when the instance can compute sigma, over quotient
    labels of ball pairs; triples violating the hypotheses are not counted.
    """
    rep = CheckReport("lub-products", inst.describe(), {"radius": str(n)})
    ball = inst.enumerate_ball(n)
    f = inst.format
    for z, a, b in cells(rep, [ball, ball, ball], limit, rng):
        rep.cases += 1
        ab = inst.join(a, b)
        zab = inst.join(inst.compose(z, a), inst.compose(z, b))
        if (ab is None) != (zab is None):
            rep.fail({"z": f(z), "a": f(a), "b": f(b), "a_join_b": "inf" if ab is None else f(ab),
                      "za_join_zb": "inf" if zab is None else f(zab)})
        elif ab is not None and inst.compose(z, ab) != zab:
            rep.fail({"z": f(z), "a": f(a), "b": f(b), "z_times_join": f(inst.compose(z, ab)), "za_join_zb": f(zab)})
    if not (use_labels and inst.supports_lub_of_quotient):
        if use_labels:
            rep.reason = "z restricted to P: instance has no lub_in_P"
        return rep
    e = inst.identity()
    labels = sorted({inst.quotient_label(s, t) for s in ball for t in ball}, key=repr)
    rep.parameters["label_z"] = str(len(labels))
    for z, a, b in cells(rep, [labels, ball, ball], limit, rng):
        za = inst.label_mul(z, inst.quotient_label(a, e))
        zb = inst.label_mul(z, inst.quotient_label(b, e))
        za_in = za is not None and inst.label_in_P(za) is not None
        zb_in = zb is not None and inst.label_in_P(zb) is not None
        if not (za_in or zb_in):
            continue
        rep.cases += 1
        ab = inst.join(a, b)
        rhs = inst.label_join(za, zb)
        if (ab is None) != (rhs is None):
            rep.fail({"z": inst.format_label(z), "a": f(a), "b": f(b), "finite_mismatch": True})
        elif ab is not None and inst.label_act(z, ab) != rhs:
            rep.fail({"z": inst.format_label(z), "a": f(a), "b": f(b), "za_join_zb": f(rhs)})
    return rep
