"""Projection families p_y, the commutation law c_x e_y = e_{xy} c_x, rank-one
elements R(x, y) = T_x p_e T_y^*, and the converse partition argument.

Everything is computed in the Toeplitz model: e_y and p_y are the same
element of the span algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .algebra import AlgebraElement, V, zero
from .monomials import Monomial
from .qlo import QLOInstance
from .report import CheckReport, cells
from .scalars import GaussianRational


def _dedupe(inst, F):
    F = list(dict.fromkeys(F))
    if not F:
        raise ValueError("F must be non-empty")
    inst.check(*F)
    if inst.identity() in F:
        raise ValueError("F must not contain the identity")
    return F


def projection(inst: QLOInstance, y, F) -> AlgebraElement:
    """p_y = sum over S in F with finite join of (-1)^|S| V(y (v S), y (v S))."""
    F = _dedupe(inst, F)
    inst.check(y)
    terms: dict = {}
    for k in range(len(F) + 1):
        sign = -1 if k % 2 else 1
        for S in combinations(F, k):
            j = inst.join_all(S)
            if j is None:
                continue
            z = inst._compose(y, j)
            m = Monomial(z, z)
            terms[m] = terms.get(m, 0) + sign
    return AlgebraElement(inst, terms)


def projection_by_product(inst: QLOInstance, y, F) -> AlgebraElement:
    """The same projection as the literal product of (V(y) - V(ya))."""
    F = _dedupe(inst, F)
    out = V(inst, y)
    for a in F:
        out = out * (V(inst, y) - V(inst, inst.compose(y, a)))
    return out


class ProjectionFamily:
    """y -> p_y for y in P, zero for y outside P (``None``); cached."""

    def __init__(self, inst: QLOInstance, F):
        self.inst = inst
        self.F = _dedupe(inst, F)
        self._cache: dict = {}

    def __call__(self, y) -> AlgebraElement:
        if y is None:
            return zero(self.inst)
        p = self._cache.get(y)
        if p is None:
            p = self._cache[y] = projection(self.inst, y, self.F)
        return p


@dataclass(frozen=True)
class OutsideP:
    """A group element y not in P, given by its quotient label."""

    label: object


@dataclass
class CommutationResult:
    ok: bool
    case: int
    lhs: AlgebraElement
    rhs: AlgebraElement
    witness: dict = field(default_factory=dict)


def verify_commutation(inst: QLOInstance, p, q, y, F, semantic_ball=None,
                       family: Optional[ProjectionFamily] = None) -> CommutationResult:
    """Check V(p,q) e_y = e_{xy} V(p,q) with x = pq^-1.

    ``y`` is an element of P or an ``OutsideP`` marker.  With
    ``semantic_ball`` both sides are also compared as operators on each basis
    vector of the ball, composing the actions rather than multiplying.
    """
    e = family or ProjectionFamily(inst, F)
    x = inst.quotient_label(p, q)
    c = V(inst, p, q)
    if isinstance(y, OutsideP):
        if inst.label_in_P(y.label) is not None:
            raise ValueError("OutsideP marker carries an element of P")
        ey = zero(inst)
        xy_label = inst.label_mul(x, y.label)
        xy = None if xy_label is None else inst.label_in_P(xy_label)
        case = 3 if xy is not None else 4
    else:
        ey = e(y)
        xy = inst.label_act(x, y)
        case = 1 if xy is not None else 2
    exy = e(xy)
    lhs, rhs = c * ey, exy * c
    if lhs != rhs:
        return CommutationResult(False, case, lhs, rhs, {"level": "symbolic", "lhs": str(lhs), "rhs": str(rhs)})
    for t in semantic_ball or ():
        left = c.act(ey.act_basis(t))
        right = exy.act(c.act_basis(t))
        if left != right or lhs.act_basis(t) != left:
            return CommutationResult(False, case, lhs, rhs, {"level": "operator", "basis": inst.format(t)})
    return CommutationResult(True, case, lhs, rhs)


def outside_markers(inst: QLOInstance, ball) -> list:
    """OutsideP markers for every label v u^-1 (u, v in the ball) not in P."""
    labels = {inst.quotient_label(v, u) for v in ball for u in ball}
    return [OutsideP(g) for g in sorted(labels, key=repr) if inst.label_in_P(g) is None]


def check_commutation(inst: QLOInstance, F, radius, semantic_radius=None,
                      limit=None, rng=None) -> CheckReport:
    ball = inst.enumerate_ball(radius)
    sem = inst.enumerate_ball(semantic_radius) if semantic_radius is not None else None
    fam = ProjectionFamily(inst, F)
    ys = list(ball) + outside_markers(inst, ball)
    rep = CheckReport("commutation", inst.describe(),
                      {"F": [inst.format(a) for a in fam.F], "radius": str(radius),
                       "semantic_radius": str(semantic_radius), "outside_markers": len(ys) - len(ball)})
    counts = {1: 0, 2: 0, 3: 0, 4: 0}
    for p, q, y in cells(rep, [ball, ball, ys], limit, rng):
        rep.cases += 1
        res = verify_commutation(inst, p, q, y, fam.F, sem, fam)
        counts[res.case] += 1
        if not res.ok:
            yy = inst.format_label(y.label) + " (not in P)" if isinstance(y, OutsideP) else inst.format(y)
            rep.fail({"p": inst.format(p), "q": inst.format(q), "y": yy, "case": res.case, **res.witness})
    rep.parameters["cases_by_lemma_case"] = {str(k): v for k, v in counts.items()}
    return rep


def check_intertwining(inst: QLOInstance, F, radius) -> CheckReport:
    """T_x p_e = p_x T_x for every x in the ball."""
    fam = ProjectionFamily(inst, F)
    rep = CheckReport("intertwining", inst.describe(), {"radius": str(radius)})
    e = inst.identity()
    for x in inst.enumerate_ball(radius):
        rep.cases += 1
        tx = V(inst, x, e)
        if tx * fam(e) != fam(x) * tx:
            rep.fail({"x": inst.format(x)})
    return rep


# -- rank-one elements ---------------------------------------------------------

def rank_one(inst: QLOInstance, x, y, F) -> AlgebraElement:
    """R(x, y) = V(x, e) p_e V(e, y), the operator sending e_y to e_x."""
    e = inst.identity()
    return V(inst, x, e) * projection(inst, e, F) * V(inst, e, y)


def resolve_rank_one(inst: QLOInstance, X: AlgebraElement, F) -> Optional[dict]:
    """Write X as a finite combination of R(x, y), or return None.

    Each R(x, y) is V(x, y) plus strictly larger monomials, so a smallest
    monomial of a member is the leading term of some R with the same
    coefficient.  Peeling stops once the smallest remaining monomial is
    larger than every monomial of X.
    """
    size = inst.size

    def key(m):
        return (size(m.s) + size(m.t), inst.sort_key(m.s), inst.sort_key(m.t))

    if not X:
        return {}
    cap = max(size(m.s) + size(m.t) for m in X.terms)
    cache: dict = {}
    rest, coeffs = X, {}
    while rest:
        m = min(rest.terms, key=key)
        if size(m.s) + size(m.t) > cap:
            return None
        c = rest.terms[m]
        R = cache.get(m)
        if R is None:
            R = cache[m] = rank_one(inst, m.s, m.t, F)
        rest = rest - R.scale(c)
        coeffs[(m.s, m.t)] = coeffs.get((m.s, m.t), 0) + c
    return coeffs


def verify_rank_one_system(inst: QLOInstance, F, bound, truncation_radius=None,
                           limit=None, rng=None) -> CheckReport:
    """Matrix-unit relations, adjoints, Phi(R^* R) = p_y and truncations."""
    from .truncation import Truncation, elementary, truncate

    ball = inst.enumerate_ball(bound)
    fam = ProjectionFamily(inst, F)
    R = {(x, y): rank_one(inst, x, y, fam.F) for x in ball for y in ball}
    rep = CheckReport("rank-one", inst.describe(),
                      {"F": [inst.format(a) for a in fam.F], "radius": str(bound)})
    f = inst.format
    e = inst.identity()
    if R[(e, e)] != fam(e):
        rep.fail({"relation": "R(e,e) = p_e"})
    for (x, y), r in R.items():
        if r.star() != R[(y, x)]:
            rep.fail({"relation": "R(x,y)* = R(y,x)", "x": f(x), "y": f(y)})
        if (r.star() * r).expectation() != fam(y):
            rep.fail({"relation": "Phi(X*X) = p_y", "x": f(x), "y": f(y)})
        if not r.is_homogeneous(inst.quotient_label(x, y)):
            rep.fail({"relation": "degree R(x,y) = label(x,y)", "x": f(x), "y": f(y)})
    for x, y, u, v in cells(rep, [ball, ball, ball, ball], limit, rng):
        rep.cases += 1
        want = R[(x, v)] if y == u else zero(inst)
        if R[(x, y)] * R[(u, v)] != want:
            rep.fail({"relation": "R(x,y)R(u,v) = [y=u]R(x,v)", "x": f(x), "y": f(y), "u": f(u), "v": f(v)})
    if truncation_radius is not None:
        S = Truncation(inst, inst.enumerate_ball(truncation_radius))
        rep.parameters["truncation_radius"] = str(truncation_radius)
        for (x, y), r in R.items():
            M = truncate(r, S)
            if M != elementary(S, x, y) or M.escapes:
                rep.fail({"relation": "truncation is elementary", "x": f(x), "y": f(y)})
    return rep


def verify_ideal_J(inst: QLOInstance, F, bound, limit=None, rng=None) -> CheckReport:
    """Products of monomials with rank-one elements resolve to rank-one sums.

    Closed forms checked alongside:  V(s,t) R(x,y) = R(s t^-1 x, y) when
    t <= x, and R(x,y) V(s,t) = R(x, t s^-1 y) when s <= y, zero otherwise.
    """
    ball = inst.enumerate_ball(bound)
    fam = ProjectionFamily(inst, F)
    R: dict = {}

    def r(x, y):
        if (x, y) not in R:
            R[(x, y)] = rank_one(inst, x, y, fam.F)
        return R[(x, y)]

    rep = CheckReport("ideal-J", inst.describe(),
                      {"F": [inst.format(a) for a in fam.F], "radius": str(bound)})
    f = inst.format
    for x, y in cells(rep, [ball, ball]):
        if not r(x, y).is_homogeneous(inst.quotient_label(x, y)):
            rep.fail({"relation": "degree", "x": f(x), "y": f(y)})
    for s, t, x, y in cells(rep, [ball, ball, ball, ball], limit, rng):
        rep.cases += 1
        m = V(inst, s, t)
        left, right = m * r(x, y), r(x, y) * m
        d = inst.left_divide(t, x)
        want_left = r(inst.compose(s, d), y) if d is not None else zero(inst)
        d = inst.left_divide(s, y)
        want_right = r(x, inst.compose(t, d)) if d is not None else zero(inst)
        for side, prod, want in (("left", left, want_left), ("right", right, want_right)):
            combo = resolve_rank_one(inst, prod, fam.F)
            if combo is None or prod != want:
                rep.fail({"side": side, "s": f(s), "t": f(t), "x": f(x), "y": f(y),
                          "product": str(prod), "resolved": combo is not None})
    return rep


def verify_sum_to_identity(inst: QLOInstance, F, bound) -> CheckReport:
    """p_y e_t = [y = t] e_t on the ball; p_y idempotent, self-adjoint, orthogonal."""
    ball = inst.enumerate_ball(bound)
    fam = ProjectionFamily(inst, F)
    rep = CheckReport("sum-to-identity", inst.describe(),
                      {"F": [inst.format(a) for a in fam.F], "radius": str(bound)})
    f = inst.format
    one = GaussianRational(1)
    for y in ball:
        p = fam(y)
        if p * p != p or p.star() != p:
            rep.fail({"projection": f(y), "problem": "not a self-adjoint idempotent"})
        for t in ball:
            rep.cases += 1
            want = {t: one} if y == t else {}
            if p.act_basis(t) != want:
                rep.fail({"y": f(y), "t": f(t), "image": {f(k): str(v) for k, v in p.act_basis(t).items()}})
    for y, z in combinations(ball, 2):
        rep.cases += 1
        if fam(y) * fam(z) or fam(z) * fam(y):
            rep.fail({"orthogonality": [f(y), f(z)]})
    return rep


# -- the converse: partitions covariant under T_p ------------------------------

@dataclass(frozen=True)
class PartitionCandidate:
    """y -> E(y), a family of pairwise disjoint subsets of a ball."""

    sets: dict

    def __post_init__(self):
        seen: dict = {}
        for y, E in self.sets.items():
            for u in E:
                if u in seen:
                    raise ValueError(f"E({seen[u]!r}) and E({y!r}) both contain {u!r}")
                seen[u] = y

    def E(self, y) -> frozenset:
        return self.sets.get(y, frozenset())

    def union(self) -> set:
        return set().union(*self.sets.values()) if self.sets else set()


def singleton_partition(ball) -> PartitionCandidate:
    return PartitionCandidate({y: frozenset([y]) for y in ball})


@dataclass
class PartitionResult:
    ok: bool
    covariant: bool
    partitions_ball: bool
    singletons: bool
    cases: int
    witness: dict = field(default_factory=dict)


def check_partition_covariance(inst: QLOInstance, C: PartitionCandidate, bound) -> PartitionResult:
    """Test T_p q_y = q_{py} T_p on basis vectors, then the forced structure.

    q_y is the diagonal indicator of E(y).  Only triples (p, y, u) with py and
    pu inside the ball are decidable at finite level.
    """
    ball = inst.enumerate_ball(bound)
    inside = set(ball)
    if not C.union() <= inside:
        raise ValueError("partition candidate reaches outside the ball")
    f = inst.format
    cases = 0
    for p in ball:
        for y in ball:
            py = inst.compose(p, y)
            if py not in inside:
                continue
            Ey, Epy = C.E(y), C.E(py)
            for u in ball:
                pu = inst.compose(p, u)
                if pu not in inside:
                    continue
                cases += 1
                lhs = pu if u in Ey else None
                rhs = pu if pu in Epy else None
                if lhs != rhs:
                    return PartitionResult(False, False, False, False, cases, {
                        "p": f(p), "y": f(y), "u": f(u),
                        "T_p q_y e_u": "0" if lhs is None else f"e_{f(lhs)}",
                        "q_py T_p e_u": "0" if rhs is None else f"e_{f(rhs)}"})
    partitions = C.union() == inside
    singles = all(C.E(y) == {y} for y in ball)
    witness = {}
    if partitions and not singles:
        y = next(y for y in ball if C.E(y) != {y})
        witness = {"structure": f"E({f(y)}) = {sorted(map(f, C.E(y)))}"}
    elif not partitions:
        missing = sorted(inside - C.union(), key=inst.sort_key)
        witness = {"not_covered": [f(u) for u in missing[:5]]}
    return PartitionResult(partitions and singles, True, partitions, singles, cases, witness)


def partition_perturbations(ball):
    """Non-singleton candidates: moves of one point and swaps of two points."""
    base = {y: {y} for y in ball}
    for u in ball:
        for y in ball:
            if y == u:
                continue
            sets = {k: set(v) for k, v in base.items()}
            sets[u].discard(u)
            sets[y].add(u)
            yield f"move {u!r} into E({y!r})", PartitionCandidate({k: frozenset(v) for k, v in sets.items()})
    for u, w in combinations(ball, 2):
        sets = {k: frozenset(v) for k, v in base.items()}
        sets[u], sets[w] = frozenset([w]), frozenset([u])
        yield f"swap {u!r} and {w!r}", PartitionCandidate(sets)


def check_partitions(inst: QLOInstance, bound) -> CheckReport:
    """Singletons pass; every perturbation must fail with a witness."""
    ball = inst.enumerate_ball(bound)
    rep = CheckReport("partition", inst.describe(), {"radius": str(bound)})
    res = check_partition_covariance(inst, singleton_partition(ball), bound)
    rep.cases += 1
    if not res.ok:
        rep.fail({"candidate": "singletons", **res.witness})
    for name, cand in partition_perturbations(ball):
        rep.cases += 1
        res = check_partition_covariance(inst, cand, bound)
        if res.ok or not res.witness:
            rep.fail({"candidate": name, "problem": "perturbation not rejected"})
    return rep
