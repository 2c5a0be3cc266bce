"""Exact matrices of algebra elements compressed to span{e_t : t in S}.

S is a finite hereditary subset of P.  A column t *escapes* when the image of
e_t has a non-zero part outside S; escapes are recorded, never padded.
"""
from __future__ import annotations

import random
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .algebra import AlgebraElement, V, random_element
from .qlo import QLOInstance
from .report import CheckReport
from .scalars import GaussianRational

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


class NotHereditary(ValueError):
    pass


class Truncation:
    def __init__(self, inst: QLOInstance, elements):
        self.inst = inst
        self.elements = list(dict.fromkeys(elements))
        self.index = {t: i for i, t in enumerate(self.elements)}
        for t in self.elements:
            for s in inst.lower_bounds(t):
                if s not in self.index:
                    raise NotHereditary(f"{inst.format(s)} <= {inst.format(t)} is missing from S")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, t):
        return t in self.index


def hereditary_prefix(inst: QLOInstance, k: int) -> Truncation:
    """The first k elements in size order, which is always a hereditary set."""
    n = 0
    while len(inst.enumerate_ball(n)) < k:
        n += 1
    return Truncation(inst, inst.enumerate_ball(n)[:k])


class ExactMatrix:
    """Sparse square matrix over the Gaussian rationals, indexed by S."""

    def __init__(self, n: int, entries=None, escapes=frozenset()):
        self.n = n
        self.entries = {k: v for k, v in (entries or {}).items() if v}
        self.escapes = frozenset(escapes)

    def __getitem__(self, ij):
        return self.entries.get(ij, _ZERO)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        by_row: dict = {}
        for (k, j), b in other.entries.items():
            by_row.setdefault(k, []).append((j, b))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), _ZERO) + a * b
        return ExactMatrix(self.n, out)

    def conj_transpose(self) -> ExactMatrix:
        return ExactMatrix(self.n, {(j, i): v.conjugate() for (i, j), v in self.entries.items()})

    def column(self, j) -> dict:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.n == other.n and self.entries == other.entries

    def dense(self) -> list:
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def dump(self) -> str:
        """Dense row-major dump with exact rational strings."""
        return "\n".join(" ".join(str(v) for v in row) for row in self.dense())


def truncate(x: AlgebraElement, S: Truncation) -> ExactMatrix:
    """Entry (u, t) collects coefficients of monomials sending t to u in S."""
    entries, escapes = {}, set()
    for j, t in enumerate(S.elements):
        for u, c in x.act_basis(t).items():
            i = S.index.get(u)
            if i is None:
                escapes.add(j)
            else:
                entries[(i, j)] = c
    return ExactMatrix(len(S), entries, escapes)


def elementary(S: Truncation, x, y) -> ExactMatrix:
    """The matrix unit sending e_y to e_x."""
    return ExactMatrix(len(S), {(S.index[x], S.index[y]): _ONE})


def verify_against_matrices(x: AlgebraElement, y: AlgebraElement, S: Truncation) -> CheckReport:
    """truncate(xy) against truncate(x) truncate(y), and x* against M^H.

    Products are compared on columns whose orbit under y, then x, stays in S;
    adjoints on every entry inside S.
    """
    inst = S.inst
    rep = CheckReport("oracle-matrices", inst.describe(), {"S": len(S)})
    Mx, My, Mxy = truncate(x, S), truncate(y, S), truncate(x * y, S)
    prod = Mx @ My
    for j, t in enumerate(S.elements):
        if j in My.escapes:
            continue
        col = My.column(j)
        if any(i in Mx.escapes for i in col):
            continue
        rep.cases += 1
        if j in Mxy.escapes or Mxy.column(j) != prod.column(j):
            rep.fail({"column": inst.format(t), "x": str(x), "y": str(y)})
    for a in (x, y):
        rep.cases += 1
        if truncate(a.star(), S) != truncate(a, S).conj_transpose():
            rep.fail({"adjoint": str(a)})
    rep.parameters["columns_compared"] = rep.cases - 2
    return rep


def diagonal_commutant_dimension(S: Truncation) -> int:
    """dim {M : M D = D M for D = truncate(V(p, p)), p in S}, by exact rank.

    Unknowns are the |S|^2 entries of M; each generator contributes the
    entries of M D - D M as linear equations over Q.
    """
    inst, n = S.inst, len(S)
    rows = []
    for p in S.elements:
        D = truncate(V(inst, p), S)
        d = {ij: Fraction(v.re) for ij, v in D.entries.items()}
        for i in range(n):
            for j in range(n):
                row = [QQ(0)] * (n * n)
                for k in range(n):
                    # (M D)_ij = sum_k M_ik D_kj ; (D M)_ij = sum_k D_ik M_kj
                    a = d.get((k, j))
                    if a:
                        row[i * n + k] += QQ(a.numerator, a.denominator)
                    b = d.get((i, k))
                    if b:
                        row[k * n + j] -= QQ(b.numerator, b.denominator)
                if any(row):
                    rows.append(row)
    if not rows:
        return n * n
    return n * n - DomainMatrix(rows, (len(rows), n * n), QQ).rank()


def check_commutant(inst: QLOInstance, sizes=range(5, 11)) -> CheckReport:
    rep = CheckReport("commutant", inst.describe(), {"sizes": [min(sizes), max(sizes)]})
    for k in sizes:
        S = hereditary_prefix(inst, k)
        rep.cases += 1
        dim = diagonal_commutant_dimension(S)
        if dim != len(S):
            rep.fail({"size": len(S), "dimension": dim})
    return rep


def check_matrix_oracle(inst: QLOInstance, radius, samples=20, rng=None) -> CheckReport:
    """verify_against_matrices on random pairs over the radius ball."""
    rng = rng or random.Random(0)
    ball = inst.enumerate_ball(radius)
    S = Truncation(inst, ball)
    rep = CheckReport("matrix-oracle", inst.describe(), {"radius": str(radius), "samples": samples})
    for _ in range(samples):
        x = random_element(inst, ball, rng)
        y = random_element(inst, ball, rng)
        sub = verify_against_matrices(x, y, S)
        rep.cases += sub.cases
        for w in sub.witnesses:
            rep.fail(w)
    return rep
