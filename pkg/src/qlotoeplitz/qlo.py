"""Positive cones of quasi-lattice ordered groups (G, P).

Each instance owns its element payload and the group arithmetic needed for
degrees.  Elements are plain immutable Python values:

=================  ======================  ================================
kind               element of P            quotient label st^-1 in G
=================  ======================  ================================
``free_monoid``    tuple of generator ids  reduced pair ``(s', t')``
``free_abelian``   tuple of ints >= 0      tuple of ints (``s - t``)
``divisibility``   int >= 1                ``Fraction(s, t)``
``half_line``      ``Fraction`` in P       ``Fraction`` (``s - t``)
=================  ======================  ================================

``join`` returns ``None`` for an infinite join; ``left_divide`` returns
``None`` when the order relation fails.  Both are ordinary values, not errors.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Optional

Element = Any
Label = Any

LETTERS = "abcdfghijklmnopqrstuvwxyz"  # no "e": it names the identity


class InstanceMismatch(ValueError):
    pass


class UnsupportedCapability(NotImplementedError):
    pass


class QLOInstance:
    kind = "abstract"
    supports_lub_of_quotient = True
    supports_complete_enumeration = True

    # -- semigroup ----------------------------------------------------------
    def identity(self) -> Element:
        raise NotImplementedError

    def contains(self, p) -> bool:
        raise NotImplementedError

    def check(self, *elems) -> None:
        for p in elems:
            if not self.contains(p):
                raise InstanceMismatch(f"{p!r} is not an element of {self.describe()}")

    def compose(self, p, q) -> Element:
        self.check(p, q)
        return self._compose(p, q)

    def _compose(self, p, q):
        raise NotImplementedError

    def left_divide(self, p, q) -> Optional[Element]:
        """p^-1 q when p <= q, else None."""
        raise NotImplementedError

    def leq(self, p, q) -> bool:
        return self.left_divide(p, q) is not None

    def join(self, p, q) -> Optional[Element]:
        raise NotImplementedError

    def join_all(self, elems, start=None) -> Optional[Element]:
        j = self.identity() if start is None else start
        for p in elems:
            j = self.join(j, p)
            if j is None:
                return None
        return j

    # -- finite views --------------------------------------------------------
    def size(self, p) -> Any:
        raise NotImplementedError

    def enumerate_ball(self, n) -> list:
        """Hereditary finite set of elements of size <= n, sorted by size."""
        raise NotImplementedError

    def lower_bounds(self, t) -> list:
        """All s <= t inside the enumerable universe."""
        raise NotImplementedError

    def sort_key(self, p):
        return (self.size(p), p)

    # -- group side ------------------------------------------------------------
    def quotient_label(self, s, t) -> Label:
        raise NotImplementedError

    def identity_label(self) -> Label:
        e = self.identity()
        return self.quotient_label(e, e)

    def label_mul(self, g, h) -> Optional[Label]:
        """Label of g h, or None when g h falls outside P P^-1."""
        raise NotImplementedError

    def label_inverse(self, g) -> Label:
        raise NotImplementedError

    def label_in_P(self, g) -> Optional[Element]:
        raise NotImplementedError

    def label_act(self, g, p) -> Optional[Element]:
        """g p as an element of P, or None when g p is not in P."""
        gp = self.label_mul(g, self.quotient_label(p, self.identity()))
        return None if gp is None else self.label_in_P(gp)

    def lub_in_P(self, g) -> Optional[Element]:
        raise NotImplementedError

    def label_join(self, g, h) -> Optional[Element]:
        """Least upper bound in P of two group elements; None = infinity.

        Upper bounds of x in P form sigma(x) P, so x v y = sigma(x) v sigma(y).
        A ``None`` argument stands for an element with no upper bound in P.
        """
        if g is None or h is None:
            return None
        sg, sh = self.lub_in_P(g), self.lub_in_P(h)
        if sg is None or sh is None:
            return None
        return self.join(sg, sh)

    # -- text ------------------------------------------------------------------
    def format(self, p) -> str:
        return str(p)

    def parse(self, text: str) -> Element:
        raise NotImplementedError

    def format_label(self, g) -> str:
        return str(g)

    def parse_label(self, text: str) -> Label:
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind

    def config(self) -> dict:
        return {"kind": self.kind}


def _strip_suffix(s: tuple, t: tuple):
    k = 0
    while k < len(s) and k < len(t) and s[-1 - k] == t[-1 - k]:
        k += 1
    return (s[: len(s) - k], t[: len(t) - k])


@dataclass(frozen=True)
class FreeMonoid(QLOInstance):
    """The free monoid F_n^+ inside the free group F_n (prefix order)."""

    rank: int = 2
    kind = "free_monoid"

    def __post_init__(self):
        if not 1 <= self.rank <= len(LETTERS):
            raise ValueError(f"free monoid rank must lie in 1..{len(LETTERS)}")

    def identity(self):
        return ()

    def contains(self, p):
        return isinstance(p, tuple) and all(
            isinstance(g, int) and 0 <= g < self.rank for g in p)

    def _compose(self, p, q):
        return p + q

    def left_divide(self, p, q):
        n = len(p)
        return q[n:] if q[:n] == p else None

    def join(self, p, q):
        if len(p) <= len(q):
            return q if q[: len(p)] == p else None
        return p if p[: len(q)] == q else None

    def size(self, p):
        return len(p)

    def enumerate_ball(self, n):
        out = []
        for k in range(int(n) + 1):
            out.extend(product(range(self.rank), repeat=k))
        return out

    def lower_bounds(self, t):
        return [t[:k] for k in range(len(t) + 1)]

    def generators(self):
        return [(g,) for g in range(self.rank)]

    def quotient_label(self, s, t):
        return _strip_suffix(s, t)

    def label_mul(self, g, h):
        s, t = g
        u, v = h
        k = 0
        while k < len(t) and k < len(u) and t[k] == u[k]:
            k += 1
        t2, u2 = t[k:], u[k:]
        if not t2:
            return _strip_suffix(s + u2, v)
        if not u2:
            return _strip_suffix(s, v + t2)
        return None

    def label_inverse(self, g):
        return (g[1], g[0])

    def label_in_P(self, g):
        return g[0] if not g[1] else None

    def lub_in_P(self, g):
        # reduced s t^-1 has upper bounds exactly s P
        return g[0]

    def format(self, p):
        return "".join(LETTERS[i] for i in p) or "e"

    def parse(self, text):
        s = text.strip()
        if s in ("e", "", "1"):
            return ()
        try:
            p = tuple(LETTERS.index(c) for c in s)
        except ValueError:
            raise ValueError(f"bad word {text!r} for {self.describe()}") from None
        self.check(p)
        return p

    def format_label(self, g):
        s, t = g
        if not t:
            return self.format(s)
        inv = self.format(t)
        inv = f"{inv}^-1" if len(t) == 1 else f"({inv})^-1"
        return inv if not s else f"{self.format(s)}{inv}"

    def parse_label(self, text):
        m = re.fullmatch(r"\s*([a-z]*?)\s*(?:\(?([a-z]+)\)?\^-1)?\s*", text)
        if m is None:
            raise ValueError(f"bad label {text!r}")
        s = self.parse(m.group(1) or "e")
        t = self.parse(m.group(2) or "e")
        return self.quotient_label(s, t)

    def describe(self):
        return f"free_monoid(rank={self.rank})"

    def config(self):
        return {"kind": self.kind, "rank": self.rank}


@dataclass(frozen=True)
class FreeAbelian(QLOInstance):
    """N^k inside Z^k with the componentwise order."""

    rank: int = 2
    kind = "free_abelian"

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("free abelian rank must be positive")

    def identity(self):
        return (0,) * self.rank

    def contains(self, p):
        return (isinstance(p, tuple) and len(p) == self.rank
                and all(isinstance(c, int) and c >= 0 for c in p))

    def _compose(self, p, q):
        return tuple(a + b for a, b in zip(p, q))

    def left_divide(self, p, q):
        d = tuple(b - a for a, b in zip(p, q))
        return d if min(d) >= 0 else None

    def join(self, p, q):
        return tuple(max(a, b) for a, b in zip(p, q))

    def size(self, p):
        return sum(p)

    def enumerate_ball(self, n):
        n = int(n)
        out = [v for v in product(range(n + 1), repeat=self.rank) if sum(v) <= n]
        return sorted(out, key=self.sort_key)

    def lower_bounds(self, t):
        return list(product(*(range(c + 1) for c in t)))

    def generators(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def quotient_label(self, s, t):
        return tuple(a - b for a, b in zip(s, t))

    def label_mul(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def label_inverse(self, g):
        return tuple(-a for a in g)

    def label_in_P(self, g):
        return g if min(g) >= 0 else None

    def lub_in_P(self, g):
        return tuple(max(a, 0) for a in g)

    def format(self, p):
        if self.rank == 1:
            return str(p[0])
        return "(" + ",".join(str(c) for c in p) + ")"

    def parse(self, text):
        p = self.parse_label(text)
        self.check(p)
        return p

    format_label = format

    def parse_label(self, text):
        s = text.strip()
        if s == "e":
            return self.identity()
        s = s.strip("()")
        try:
            vec = tuple(int(c) for c in s.split(","))
        except ValueError:
            raise ValueError(f"bad vector {text!r}") from None
        if vec == (0,):
            return self.identity()
        if len(vec) != self.rank:
            raise ValueError(f"{text!r} does not have {self.rank} coordinates")
        return vec

    def describe(self):
        return f"free_abelian(rank={self.rank})"

    def config(self):
        return {"kind": self.kind, "rank": self.rank}


@dataclass(frozen=True)
class Divisibility(QLOInstance):
    """(Q_+^*, N^x) ordered by divisibility."""

    kind = "divisibility"

    def identity(self):
        return 1

    def contains(self, p):
        return isinstance(p, int) and not isinstance(p, bool) and p >= 1

    def _compose(self, p, q):
        return p * q

    def left_divide(self, p, q):
        return q // p if q % p == 0 else None

    def join(self, p, q):
        return p * q // math.gcd(p, q)

    def size(self, p):
        return p

    def enumerate_ball(self, n):
        return list(range(1, int(n) + 1))

    def lower_bounds(self, t):
        return [d for d in range(1, t + 1) if t % d == 0]

    def quotient_label(self, s, t):
        return Fraction(s, t)

    def label_mul(self, g, h):
        return g * h

    def label_inverse(self, g):
        return 1 / g

    def label_in_P(self, g):
        return g.numerator if g.denominator == 1 else None

    def lub_in_P(self, g):
        # n/d in lowest terms divides p exactly when n | p
        return g.numerator

    def parse(self, text):
        s = text.strip()
        p = 1 if s == "e" else int(s)
        self.check(p)
        return p

    def parse_label(self, text):
        s = text.strip()
        return Fraction(1) if s == "e" else Fraction(s)


def _half_line_in_P(x) -> bool:
    return x == 0 or x >= 1


@dataclass(frozen=True)
class HalfLine(QLOInstance):
    """P = {0} u [1, oo) inside (Q, +), enumerated on a bounded-denominator grid.

    Joins use the closed form ``y`` when ``y - x`` is in P, otherwise
    ``y + 1`` (for x < y).  That value is the least common upper bound in the
    numeric order; whether it is least in the order of P is left to the
    probes in ``checks``.
    """

    denominator_bound: int = 4
    kind = "half_line"
    supports_lub_of_quotient = False
    supports_complete_enumeration = False

    def __post_init__(self):
        if self.denominator_bound < 1:
            raise ValueError("denominator bound must be positive")

    def identity(self):
        return Fraction(0)

    def contains(self, p):
        return isinstance(p, (int, Fraction)) and not isinstance(p, bool) and _half_line_in_P(p)

    def _compose(self, p, q):
        return p + q

    def left_divide(self, p, q):
        d = q - p
        return d if _half_line_in_P(d) else None

    def join(self, p, q):
        x, y = (p, q) if p <= q else (q, p)
        return y if _half_line_in_P(y - x) else y + 1

    def size(self, p):
        return p

    def on_grid(self, p) -> bool:
        return Fraction(p).denominator <= self.denominator_bound

    def enumerate_ball(self, n):
        n = Fraction(n)
        vals = {Fraction(0)}
        for b in range(1, self.denominator_bound + 1):
            a = b
            while Fraction(a, b) <= n:
                vals.add(Fraction(a, b))
                a += 1
        return sorted(vals)

    def lower_bounds(self, t):
        t = Fraction(t)
        return [s for s in self.enumerate_ball(t) if self.leq(s, t)]

    def sort_key(self, p):
        return (p,)

    def quotient_label(self, s, t):
        return Fraction(s) - Fraction(t)

    def label_mul(self, g, h):
        return g + h

    def label_inverse(self, g):
        return -g

    def label_in_P(self, g):
        return g if _half_line_in_P(g) else None

    def lub_in_P(self, g):
        raise UnsupportedCapability("half_line has no least upper bound map on G")

    def parse(self, text):
        s = text.strip()
        p = Fraction(0) if s == "e" else Fraction(s)
        self.check(p)
        return p

    def parse_label(self, text):
        s = text.strip()
        return Fraction(0) if s == "e" else Fraction(s)

    def describe(self):
        return f"half_line(denominator_bound={self.denominator_bound})"

    def config(self):
        return {"kind": self.kind, "denominator_bound": self.denominator_bound}


KINDS = {
    "free_monoid": FreeMonoid,
    "free_abelian": FreeAbelian,
    "divisibility": Divisibility,
    "half_line": HalfLine,
}


def make_instance(record: dict) -> QLOInstance:
    """Build an instance from ``{kind, rank?, denominator_bound?}``."""
    if not isinstance(record, dict) or "kind" not in record:
        raise ValueError("instance record needs a 'kind'")
    kind = record["kind"]
    if kind not in KINDS:
        raise ValueError(f"unknown instance kind {kind!r}; expected one of {sorted(KINDS)}")
    extra = set(record) - {"kind", "rank", "denominator_bound"}
    if extra:
        raise ValueError(f"unexpected instance fields {sorted(extra)}")
    if kind in ("free_monoid", "free_abelian"):
        return KINDS[kind](rank=int(record.get("rank", 2)))
    if kind == "half_line":
        return HalfLine(denominator_bound=int(record.get("denominator_bound", 4)))
    return Divisibility()


def parse_instance(text: str) -> QLOInstance:
    """Shorthand ``free_monoid:2``, ``free_abelian:1``, ``divisibility``, ``half_line:4``."""
    kind, _, arg = text.partition(":")
    record: dict = {"kind": kind.strip()}
    if arg:
        key = "denominator_bound" if record["kind"] == "half_line" else "rank"
        record[key] = int(arg)
    return make_instance(record)
