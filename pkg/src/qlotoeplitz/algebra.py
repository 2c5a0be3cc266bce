"""The dense *-algebra spanned by the monomials V(s, t).

Elements are finite maps Monomial -> GaussianRational.  The zero monomial and
zero coefficients are never stored, so equality of elements is equality of
dictionaries.
"""
from __future__ import annotations

import re
from collections import defaultdict
from fractions import Fraction

from .monomials import (ZERO, Monomial, adjoint, apply, degree, format_monomial,
                        monomial_mul, parse_monomial)
from .qlo import QLOInstance
from .report import CheckReport
from .scalars import GaussianRational

_coerce = GaussianRational.coerce


class AlgebraElement:
    __slots__ = ("inst", "terms")

    def __init__(self, inst: QLOInstance, terms=None):
        self.inst = inst
        clean = {}
        for m, c in (terms or {}).items():
            if m is ZERO:
                continue
            c = _coerce(c)
            if c:
                clean[m] = c
        self.terms = clean

    @classmethod
    def _raw(cls, inst, terms):
        obj = cls.__new__(cls)
        obj.inst = inst
        obj.terms = terms
        return obj

    # -- arithmetic ----------------------------------------------------------
    def _same(self, other):
        if not isinstance(other, AlgebraElement):
            return False
        if other.inst != self.inst:
            raise ValueError(f"cannot combine elements of {self.inst.describe()} and {other.inst.describe()}")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            d = out.get(m)
            d = c if d is None else d + c
            if d:
                out[m] = d
            else:
                out.pop(m, None)
        return AlgebraElement._raw(self.inst, out)

    def __neg__(self):
        return AlgebraElement._raw(self.inst, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self + (-other)

    def scale(self, k) -> AlgebraElement:
        k = _coerce(k)
        if not k:
            return AlgebraElement(self.inst)
        return AlgebraElement._raw(self.inst, {m: c * k for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._same(other)
        inst = self.inst
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(inst, m1, m2)
                if m is ZERO:
                    continue
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return AlgebraElement._raw(inst, {m: c for m, c in out.items() if c})

    def __rmul__(self, k):
        try:
            return self.scale(k)
        except TypeError:
            return NotImplemented

    def star(self) -> AlgebraElement:
        return AlgebraElement._raw(self.inst, {adjoint(m): c.conjugate() for m, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, AlgebraElement) and self.inst == other.inst and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- grading -------------------------------------------------------------
    def grade(self) -> dict:
        """Degree components keyed by quotient label; they sum back to self."""
        parts: dict = defaultdict(dict)
        for m, c in self.terms.items():
            parts[degree(self.inst, m)][m] = c
        return {g: AlgebraElement._raw(self.inst, t) for g, t in parts.items()}

    def is_homogeneous(self, label=None) -> bool:
        labels = {degree(self.inst, m) for m in self.terms}
        if label is None:
            return len(labels) <= 1
        return labels <= {label}

    def expectation(self) -> AlgebraElement:
        """The identity-degree component."""
        one = self.inst.identity_label()
        return AlgebraElement._raw(self.inst, {m: c for m, c in self.terms.items()
                                               if degree(self.inst, m) == one})

    # -- action on l^2(P) ------------------------------------------------------
    def act(self, vector: dict) -> dict:
        """Apply to a finitely supported vector {basis point: scalar}."""
        out: dict = {}
        for x, a in vector.items():
            for m, c in self.terms.items():
                y = apply(self.inst, m, x)
                if y is None:
                    continue
                v = out.get(y)
                v = c * a if v is None else v + c * a
                if v:
                    out[y] = v
                else:
                    del out[y]
        return out

    def act_basis(self, x) -> dict:
        """Image of the basis vector e_x."""
        out: dict = {}
        inst = self.inst
        for m, c in self.terms.items():
            y = apply(inst, m, x)
            if y is None:
                continue
            v = out.get(y)
            if v is None:
                out[y] = c
            else:
                v = v + c
                if v:
                    out[y] = v
                else:
                    del out[y]
        return out

    # -- text ------------------------------------------------------------------
    def sorted_terms(self):
        key = self.inst.sort_key
        return sorted(self.terms.items(), key=lambda mc: (key(mc[0].s), key(mc[0].t)))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = format_monomial(self.inst, m)
            if c == 1:
                piece = f"+ {mono}"
            elif c == -1:
                piece = f"- {mono}"
            elif not c.im and c.re < 0:
                piece = f"- {-c.re} {mono}"
            elif not c.im:
                piece = f"+ {c.re} {mono}"
            else:
                piece = f"+ ({c}) {mono}"
            out.append(piece)
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"AlgebraElement({str(self)!r})"

    def to_records(self) -> list:
        f = self.inst.format
        return [{"s": f(m.s), "t": f(m.t), "re": str(c.re), "im": str(c.im)}
                for m, c in self.sorted_terms()]

    @classmethod
    def from_records(cls, inst: QLOInstance, records) -> AlgebraElement:
        out = AlgebraElement(inst)
        for r in records:
            m = Monomial(inst.parse(r["s"]), inst.parse(r["t"]))
            c = GaussianRational(Fraction(r.get("re", "0")), Fraction(r.get("im", "0")))
            out = out + AlgebraElement(inst, {m: c})
        return out


def V(inst: QLOInstance, s, t=None) -> AlgebraElement:
    """The monomial T_s T_t^* (T_s T_s^* when t is omitted) as an element."""
    inst.check(s)
    t = s if t is None else t
    inst.check(t)
    return AlgebraElement._raw(inst, {Monomial(s, t): GaussianRational(1)})


def zero(inst: QLOInstance) -> AlgebraElement:
    return AlgebraElement._raw(inst, {})


def one(inst: QLOInstance) -> AlgebraElement:
    return V(inst, inst.identity())


def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def star(x: AlgebraElement) -> AlgebraElement:
    return x.star()


def grade(x: AlgebraElement) -> dict:
    return x.grade()


def expectation(x: AlgebraElement) -> AlgebraElement:
    return x.expectation()


# -- parsing -----------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message, self.text, self.pos = message, text, pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


_NUMBER = re.compile(r"(\d+(?:/\d+)?)?(i)?")


def _matching_paren(text: str, open_pos: int) -> int:
    depth = 0
    for i in range(open_pos, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise ParseError("unbalanced parenthesis", text, open_pos)


def parse_element(inst: QLOInstance, text: str) -> AlgebraElement:
    """Parse sums like ``V(ab,b) + 2 V(a,a) - (1/2+i)*V(e,a)``."""
    pos, n = 0, len(text)
    total = zero(inst)
    first = True

    def skip(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    pos = skip(pos)
    if pos == n:
        raise ParseError("empty expression", text, pos)
    while pos < n:
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = skip(pos + 1)
        elif not first:
            raise ParseError("expected '+' or '-'", text, pos)
        first = False
        coeff = GaussianRational(1)
        if pos < n and text[pos] == "(":
            end = _matching_paren(text, pos)
            try:
                coeff = GaussianRational.parse(text[pos:end + 1])
            except ValueError:
                raise ParseError("bad coefficient", text, pos) from None
            pos = skip(end + 1)
        else:
            m = _NUMBER.match(text, pos)
            if m.group(0):
                coeff = GaussianRational.parse(m.group(0))
                pos = skip(m.end())
        if pos < n and text[pos] == "*":
            pos = skip(pos + 1)
        if not coeff and (pos == n or text[pos] in "+-"):
            continue  # a bare 0 term
        if text.startswith("V(", pos):
            end = _matching_paren(text, pos + 1)
            try:
                mono = parse_monomial(inst, text[pos:end + 1])
            except ValueError as exc:
                raise ParseError(f"bad monomial ({exc})", text, pos) from None
            pos = skip(end + 1)
        else:
            raise ParseError("expected a monomial V(s,t)", text, pos)
        total = total + AlgebraElement(inst, {mono: coeff * sign})
    return total


# -- property checks -------------------------------------------------------------

def random_element(inst: QLOInstance, ball, rng, max_terms=3) -> AlgebraElement:
    """Small random element with Gaussian-integer coefficients in [-2, 2]."""
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        m = Monomial(rng.choice(ball), rng.choice(ball))
        terms[m] = GaussianRational(rng.randint(-2, 2), rng.randint(-1, 1))
    return AlgebraElement(inst, terms)


def check_ring_axioms(inst: QLOInstance, radius, samples, rng):
    """Associativity, distributivity and (xy)* = y* x* on random triples."""
    ball = inst.enumerate_ball(radius)
    rep = CheckReport("ring-axioms", inst.describe(), {"radius": str(radius), "samples": samples},
                      mode=f"random {samples}")
    for _ in range(samples):
        x, y, z = (random_element(inst, ball, rng) for _ in range(3))
        rep.cases += 1
        if (x * y) * z != x * (y * z):
            rep.fail({"associativity": [str(x), str(y), str(z)]})
        if x * (y + z) != x * y + x * z or (x + y) * z != x * z + y * z:
            rep.fail({"distributivity": [str(x), str(y), str(z)]})
        if (x * y).star() != y.star() * x.star() or x.star().star() != x:
            rep.fail({"star": [str(x), str(y)]})
    return rep


def check_graded(inst: QLOInstance, radius):
    """Homogeneous x (degree g) times y (degree h) is zero or has degree gh.

    Homogeneous inputs are the monomials over the ball together with the full
    degree components of the sum of all those monomials.
    """
    ball = inst.enumerate_ball(radius)
    rep = CheckReport("graded", inst.describe(), {"radius": str(radius)})
    everything = AlgebraElement(inst, {Monomial(s, t): 1 for s in ball for t in ball})
    comps = everything.grade()
    if sum(comps.values(), zero(inst)) != everything:
        rep.fail({"problem": "components do not sum back"})
    homog = [(degree(inst, m), AlgebraElement._raw(inst, {m: GaussianRational(1)})) for m in everything.terms]
    homog += list(comps.items())
    for g, x in homog:
        for h, y in homog:
            rep.cases += 1
            xy = x * y
            if not xy:
                continue
            gh = inst.label_mul(g, h)
            if gh is None or not xy.is_homogeneous(gh):
                rep.fail({"x": str(x), "y": str(y), "degree": None if gh is None else inst.format_label(gh)})
    return rep


def check_expectation(inst: QLOInstance, radius):
    """Phi is idempotent and Phi(d x d') = d Phi(x) d' for diagonal d, d'."""
    ball = inst.enumerate_ball(radius)
    rep = CheckReport("expectation", inst.describe(), {"radius": str(radius)})
    diag = [V(inst, u) for u in ball]
    for s in ball:
        for t in ball:
            x = V(inst, s, t) + V(inst, s) - V(inst, t).scale(GaussianRational(0, 1))
            px = x.expectation()
            if px.expectation() != px:
                rep.fail({"idempotent": str(x)})
            for d in diag:
                for d2 in diag:
                    rep.cases += 1
                    if (d * x * d2).expectation() != d * px * d2:
                        rep.fail({"d": str(d), "x": str(x), "d'": str(d2)})
    return rep
