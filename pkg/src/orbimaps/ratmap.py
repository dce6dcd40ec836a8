"""Rational maps of the projective line over Q.

Points of the sphere are represented by :class:`Infinity`, :class:`Finite` and
:class:`AlgebraicClass`. A class stands for all roots of a squarefree monic
polynomial without rational roots; every computation below treats the roots of
a class uniformly and splits the class when that would be wrong.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from .exactnum import (
    DivisionByZero,
    Tower,
    UniPoly,
    dispatch,
    format_poly,
    minimal_polynomial,
    coprime_basis,
    poly_gcd,
    squarefree_decomposition,
    strip_rational_roots,
    tower_squarefree,
)

__all__ = [
    "Infinity",
    "INF",
    "Finite",
    "AlgebraicClass",
    "Place",
    "place_key",
    "place_size",
    "Mobius",
    "RationalMap",
    "make_map",
    "compose",
    "mobius_conjugate",
    "local_degree",
    "fiber",
    "critical_values",
    "critical_values_wronskian",
    "branch_data",
    "compose_all",
    "format_map",
    "as_place",
    "fiber_size",
    "passport",
    "Passport",
    "image",
    "ZeroOverZero",
    "InvariantViolation",
]


class ZeroOverZero(ValueError):
    pass


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


# ---------------------------------------------------------------------------
# places


@dataclass(frozen=True)
class Infinity:
    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"


INF = Infinity()


@dataclass(frozen=True)
class Finite:
    value: Fraction

    def __post_init__(self):
        if type(self.value) is not Fraction:
            object.__setattr__(self, "value", Fraction(self.value))

    def __repr__(self) -> str:
        return f"Finite({self.value})"

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class AlgebraicClass:
    """All roots of ``poly`` (monic, squarefree, degree >= 2, no rational roots)."""

    poly: UniPoly
    index: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.poly.degree < 2:
            raise ValueError("an algebraic class needs degree at least 2")
        if self.poly.lc != 1:
            object.__setattr__(self, "poly", self.poly.monic())

    @property
    def size(self) -> int:
        return self.poly.degree

    def __repr__(self) -> str:
        return f"AlgebraicClass({format_poly(self.poly)})"

    def __str__(self) -> str:
        return f"root of {format_poly(self.poly)}"


Place = Union[Infinity, Finite, AlgebraicClass]


def as_place(x) -> Place:
    if isinstance(x, (Infinity, Finite, AlgebraicClass)):
        return x
    if x is None or x == "inf":
        return INF
    return Finite(Fraction(x))


def place_key(p: Place) -> tuple:
    if isinstance(p, Infinity):
        return (0,)
    if isinstance(p, Finite):
        return (1, p.value)
    return (2, p.poly.degree, p.poly.coeffs)


def place_size(p: Place) -> int:
    return p.size if isinstance(p, AlgebraicClass) else 1


def places_from_poly(part: UniPoly) -> list[Place]:
    """Finite places for the rational roots of a squarefree polynomial plus one class for the rest."""
    roots, rest = strip_rational_roots(part)
    out: list[Place] = [Finite(r) for r in roots]
    if rest.degree >= 2:
        out.append(AlgebraicClass(rest))
    return out


def place_factor(p: Place) -> UniPoly:
    """The monic polynomial vanishing exactly at a finite place."""
    if isinstance(p, Finite):
        return UniPoly((-p.value, 1))
    if isinstance(p, AlgebraicClass):
        return p.poly
    raise ValueError("infinity has no defining polynomial")


# ---------------------------------------------------------------------------
# polynomial helpers


def _root_multiplicity(f: UniPoly, a: Fraction) -> int:
    k = 0
    lin = UniPoly((-a, 1))
    while f and f(a) == 0:
        f = f.exquo(lin)
        k += 1
    return k


def _invmod(a: UniPoly, m: UniPoly) -> UniPoly:
    """Inverse of ``a`` modulo ``m``; they must be coprime."""
    r0, r1 = m, a % m
    s0, s1 = UniPoly(), UniPoly.constant(1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise DivisionByZero("not invertible modulo the given polynomial")
    return (s0 * (1 / r0.lc)) % m


def _split_parts(f: UniPoly) -> list[tuple[Place, int]]:
    out: list[tuple[Place, int]] = []
    for part, k in squarefree_decomposition(f):
        out.extend((p, k) for p in places_from_poly(part))
    return out


# ---------------------------------------------------------------------------
# Mobius transformations


def _canonical_ints(vals: Sequence[Fraction]) -> tuple[int, ...]:
    vals = [Fraction(v) for v in vals]
    m = reduce(math.lcm, (v.denominator for v in vals), 1)
    ints = [int(v * m) for v in vals]
    g = reduce(math.gcd, ints)
    if g == 0:
        raise ValueError("all entries are zero")
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return tuple(x // g for x in ints)


class Mobius:
    """The transformation ``z -> (a z + b) / (c z + d)`` in canonical integer form."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = _canonical_ints((a, b, c, d))
        if a * d - b * c == 0:
            raise ValueError("degenerate Mobius transformation")
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(1, 0, 0, 1)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other) -> bool:
        return isinstance(other, Mobius) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"Mobius{self.entries}"

    def __matmul__(self, other: "Mobius") -> "Mobius":
        """Composition ``self ∘ other``."""
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Mobius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def as_map(self) -> "RationalMap":
        return make_map(UniPoly((self.b, self.a)), UniPoly((self.d, self.c)))

    def apply(self, p) -> Place:
        p = as_place(p)
        a, b, c, d = self.entries
        if isinstance(p, Infinity):
            return INF if c == 0 else Finite(Fraction(a, c))
        if isinstance(p, Finite):
            den = c * p.value + d
            return INF if den == 0 else Finite((a * p.value + b) / den)
        # roots theta of g go to w with theta = (d w - b) / (-c w + a)
        g = p.poly
        r = g.degree
        num = UniPoly((-b, d))
        den = UniPoly((a, -c))
        img = UniPoly()
        for i, coef in enumerate(g.coeffs):
            img = img + (num**i) * (den ** (r - i)) * coef
        return AlgebraicClass(img.monic())

    @classmethod
    def from_points(cls, p, q, r) -> "Mobius":
        """The transformation sending 0, ∞, 1 to the rational places p, q, r."""
        hp, hq, hr = (_homog(as_place(x)) for x in (p, q, r))
        det = hq[0] * hp[1] - hp[0] * hq[1]
        if det == 0:
            raise ValueError("points must be distinct")
        alpha = (hr[0] * hp[1] - hp[0] * hr[1]) / det
        beta = (hq[0] * hr[1] - hr[0] * hq[1]) / det
        if alpha == 0 or beta == 0:
            raise ValueError("points must be distinct")
        return cls(alpha * hq[0], beta * hp[0], alpha * hq[1], beta * hp[1])

    @classmethod
    def sending(cls, p, q, r) -> "Mobius":
        """The transformation sending the rational places p, q, r to 0, ∞, 1."""
        return cls.from_points(p, q, r).inverse()


def _homog(p: Place) -> tuple[Fraction, Fraction]:
    if isinstance(p, Infinity):
        return (Fraction(1), Fraction(0))
    if isinstance(p, Finite):
        return (p.value, Fraction(1))
    raise ValueError("only rational places have homogeneous coordinates")


# ---------------------------------------------------------------------------
# rational maps


class RationalMap:
    """``num / den`` with coprime integer coefficients overall and ``lc(den) > 0``."""

    __slots__ = ("num", "den", "_cache")

    def __init__(self, num: UniPoly, den: UniPoly, _canonical: bool = False):
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._cache: dict = {}

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMap) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalMap({format_map(self)})"

    def __str__(self) -> str:
        return format_map(self)

    def __call__(self, x):
        """Value at a rational number or a rational place."""
        if isinstance(x, (int, Fraction)):
            q = self.den(Fraction(x))
            return INF if q == 0 else Finite(self.num(Fraction(x)) / q)
        p = as_place(x)
        if isinstance(p, AlgebraicClass):
            imgs = image(self, p)
            if len(imgs) != 1:
                raise ValueError("class does not map onto a single class")
            return imgs[0]
        if isinstance(p, Infinity):
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return INF
            if dn < dd:
                return Finite(0)
            return Finite(self.num.lc / self.den.lc)
        return self(p.value)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def wronskian(self) -> UniPoly:
        if "wronskian" not in self._cache:
            P, Q = self.num, self.den
            self._cache["wronskian"] = P.derivative() * Q - P * Q.derivative()
        return self._cache["wronskian"]

    def __sub__(self, c) -> "RationalMap":
        return make_map(self.num - self.den * Fraction(c), self.den)


def _canonicalize(num: UniPoly, den: UniPoly) -> tuple[UniPoly, UniPoly]:
    if not isinstance(num, UniPoly):
        num = UniPoly(num)
    if not isinstance(den, UniPoly):
        den = UniPoly(den)
    if not den:
        if not num:
            raise ZeroOverZero("0/0 does not define a map")
        raise DivisionByZero("denominator is the zero polynomial")
    if not num:
        return UniPoly(), UniPoly.constant(1)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num.exquo(g), den.exquo(g)
    allc = num.coeffs + den.coeffs
    m = reduce(math.lcm, (c.denominator for c in allc), 1)
    content = reduce(math.gcd, (int(c * m) for c in allc))
    scale = Fraction(m, content)
    if den.lc < 0:
        scale = -scale
    return num * scale, den * scale


def make_map(num, den=None) -> RationalMap:
    if den is None:
        den = UniPoly.constant(1)
    return RationalMap(num, den)


def format_map(A: RationalMap) -> str:
    if A.den.degree == 0:
        return format_poly(A.num * (1 / A.den.lc))
    return f"({format_poly(A.num)})/({format_poly(A.den)})"


def compose(outer: RationalMap, inner: RationalMap) -> RationalMap:
    """``outer ∘ inner``."""
    n = outer.degree
    p, q = inner.num, inner.den
    ppow = [UniPoly.constant(1)]
    qpow = [UniPoly.constant(1)]
    for _ in range(n):
        ppow.append(ppow[-1] * p)
        qpow.append(qpow[-1] * q)
    num = UniPoly()
    den = UniPoly()
    for i in range(n + 1):
        term = ppow[i] * qpow[n - i]
        if outer.num[i]:
            num = num + term * outer.num[i]
        if outer.den[i]:
            den = den + term * outer.den[i]
    return make_map(num, den)


def compose_all(parts: Iterable[RationalMap]) -> RationalMap:
    """Left-to-right composition ``parts[0] ∘ parts[1] ∘ ...``."""
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to compose")
    return reduce(compose, parts)


def mobius_conjugate(A: RationalMap, left: Mobius, right: Mobius) -> RationalMap:
    """``left ∘ A ∘ right``."""
    return compose(left.as_map(), compose(A, right.as_map()))


# ---------------------------------------------------------------------------
# images, local degrees and fibers


def image(A: RationalMap, p: Place) -> list[Place]:
    """The places covering ``A(p)``; a class may map onto several."""
    if not isinstance(p, AlgebraicClass):
        return [A(p)]
    memo = A._cache.setdefault("image", {})
    if p not in memo:
        memo[p] = tuple(_class_image(A, p))
    return list(memo[p])


def _class_image(A: RationalMap, p: AlgebraicClass) -> list[Place]:
    g = p.poly
    out: list[Place] = []
    pole = poly_gcd(g, A.den)
    if pole.degree > 0:
        out.append(INF)
        g = g.exquo(pole)
    if g.degree > 0:
        v = (A.num * _invmod(A.den, g)) % g
        out.extend(places_from_poly(minimal_polynomial(v, g)))
    return sorted(out, key=place_key)


def local_degree(A: RationalMap, p) -> int:
    p = as_place(p)
    P, Q = A.num, A.den
    if A.degree < 1:
        raise ValueError("constant maps have no local degrees")
    if isinstance(p, Infinity):
        dp, dq = P.degree, Q.degree
        if dp != dq:
            return abs(dp - dq)
        return A.degree - (P - Q * (P.lc / Q.lc)).degree
    if isinstance(p, Finite):
        a = p.value
        if Q(a) == 0:
            return _root_multiplicity(Q, a)
        return _root_multiplicity(P - Q * (P(a) / Q(a)), a)
    W = A.wronskian()
    g = p.poly
    k = 0
    while True:
        q, r = divmod(W, g)
        if r:
            break
        W = q
        k += 1
    if poly_gcd(W, g).degree > 0:
        raise ValueError("local degree is not constant on this class")
    return k + 1


def fiber(A: RationalMap, v) -> list[tuple[Place, int]]:
    """Preimage of ``v`` with local degrees, sorted by place.

    Over a rational value the local degrees sum to ``deg A``; over a class of
    size r they sum to ``r * deg A`` when class sizes are counted.
    """
    v = as_place(v)
    if A.degree < 1:
        raise ValueError("constant maps have no fibers")
    memo = A._cache.setdefault("fiber", {})
    if v not in memo:
        memo[v] = tuple(_fiber(A, v))
    return list(memo[v])


def _fiber(A: RationalMap, v: Place) -> list[tuple[Place, int]]:
    d = A.degree
    P, Q = A.num, A.den
    out: list[tuple[Place, int]] = []
    if isinstance(v, Infinity):
        if Q.degree > 0:
            out.extend(_split_parts(Q))
        if P.degree > Q.degree:
            out.append((INF, P.degree - Q.degree))
    elif isinstance(v, Finite):
        F = P - Q * v.value
        if F.degree > 0:
            out.extend(_split_parts(F))
        if F.degree < d:
            out.append((INF, d - F.degree))
    else:
        c = v.poly
        r = c.degree
        N = UniPoly()
        Ppow = UniPoly.constant(1)
        for i in range(r + 1):
            N = N + Ppow * (Q ** (r - i)) * c[i]
            Ppow = Ppow * P
        out.extend(_split_parts(N))
    return sorted(out, key=lambda t: place_key(t[0]))


def fiber_size(points: Iterable[tuple[Place, int]]) -> int:
    return sum(place_size(p) for p, _ in points)


# ---------------------------------------------------------------------------
# critical values and passports


def _partition(points: Iterable[tuple[Place, int]]) -> tuple[int, ...]:
    parts: list[int] = []
    for p, k in points:
        parts.extend([k] * place_size(p))
    return tuple(sorted(parts, reverse=True))


def _class_shapes(A: RationalMap, c: UniPoly) -> list[tuple[UniPoly, tuple[int, ...]]]:
    """Split a family of algebraic values into sub-families with a common fiber shape."""
    P, Q = A.num, A.den

    def shape(tower: Tower):
        K = tower.top
        theta = tower.generator().value
        poly = []
        for i in range(max(P.degree, Q.degree) + 1):
            term = K.sub(K.embed(P[i]), K.mul(theta, K.embed(Q[i])))
            poly.append(term)
        poly = tuple(poly)
        while poly and not poly[-1]:
            poly = poly[:-1]
        return tower_squarefree(poly, tower)

    out = []
    for tower, sq in dispatch(Tower([c]), shape):
        parts: list[int] = []
        for k, n in sq:
            parts.extend([k] * n)
        out.append((tower.moduli[0], tuple(sorted(parts, reverse=True))))
    return out


def _ramification(partition: Sequence[int]) -> int:
    return sum(k - 1 for k in partition)


def branch_data(A: RationalMap) -> dict[Place, tuple[int, ...]]:
    """Partition of ``deg A`` over every critical value (each class listed once).

    Rational values that are likely to be critical are examined first; the
    Wronskian is searched only while the Riemann-Hurwitz budget is not exhausted.
    """
    if "branch" in A._cache:
        return A._cache["branch"]
    d = A.degree
    data: dict[Place, tuple[int, ...]] = {}
    if d <= 1:
        A._cache["branch"] = data
        return data
    budget = 2 * d - 2
    seeds: list[Place] = []
    for s in (INF, Finite(0), Finite(1), A(INF)):
        if s not in seeds:
            seeds.append(s)
    W = A.wronskian()
    for s in seeds:
        pts = fiber(A, s)
        part = _partition(pts)
        ram = _ramification(part)
        if ram:
            data[s] = part
            budget -= ram
            for p, k in pts:
                if k > 1 and not isinstance(p, Infinity):
                    W = W.exquo(place_factor(p) ** (k - 1))
    if budget:
        classes: list[tuple[UniPoly, int, bool]] = []
        rational: set[Fraction] = set()
        for h, j in squarefree_decomposition(W):
            if poly_gcd(h, A.den).degree > 0:
                raise InvariantViolation("pole left in reduced Wronskian")
            v = (A.num * _invmod(A.den, h)) % h
            m = minimal_polynomial(v, h)
            roots, rest = strip_rational_roots(m)
            rational.update(roots)
            if rest.degree > 0:
                # distinct roots of h have distinct values exactly when deg m == deg h
                classes.append((rest, j, m.degree == h.degree))
        for r in sorted(rational):
            part = _partition(fiber(A, Finite(r)))
            data[Finite(r)] = part
            budget -= _ramification(part)
        basis = coprime_basis(c for c, _, _ in classes)
        if all(injective for _, _, injective in classes):
            # each value in c has one critical point of local degree j + 1 per part hitting it
            shapes = []
            for c in basis:
                parts = [j + 1 for rest, j, _ in classes if not rest % c]
                shapes.append((c, tuple(parts + [1] * (d - sum(parts)))))
        else:
            shapes = [sh for c in basis for sh in _class_shapes(A, c)]
        for sub, part in shapes:
            part = tuple(sorted(part, reverse=True))
            if _ramification(part):
                data[AlgebraicClass(sub)] = part
                budget -= sub.degree * _ramification(part)
    if budget != 0:
        raise InvariantViolation(f"Riemann-Hurwitz budget off by {budget} for {A}")
    A._cache["branch"] = data
    return data


def critical_values(A: RationalMap) -> list[Place]:
    return sorted(branch_data(A), key=place_key)


def critical_values_wronskian(A: RationalMap) -> list[Place]:
    """Critical values read off the Wronskian alone, without the seeded search.

    Used to cross-check :func:`branch_data`; classes are not split by fiber shape.
    """
    d = A.degree
    if d <= 1:
        return []
    out: set[Place] = set()
    if local_degree(A, INF) > 1:
        out.add(A(INF))
    W = A.wronskian()
    classes: list[UniPoly] = []
    for h, _ in squarefree_decomposition(W) if W.degree > 0 else []:
        pole = poly_gcd(h, A.den)
        if pole.degree > 0:
            out.add(INF)
            h = h.exquo(pole)
        for value in (Fraction(0), Fraction(1)):
            g = poly_gcd(h, A.num - A.den * value)
            if g.degree > 0:
                out.add(Finite(value))
                h = h.exquo(g)
        if h.degree > 0:
            v = (A.num * _invmod(A.den, h)) % h
            roots, rest = strip_rational_roots(minimal_polynomial(v, h))
            out.update(Finite(r) for r in roots)
            if rest.degree > 0:
                classes.append(rest)
    out.update(AlgebraicClass(c) for c in coprime_basis(classes))
    return sorted(out, key=place_key)


def _lcm(parts: Iterable[int]) -> int:
    return reduce(math.lcm, parts, 1)


@dataclass(frozen=True)
class Passport:
    degree: int
    entries: tuple[tuple[Place, tuple[int, ...]], ...]

    def partitions(self) -> list[tuple[int, ...]]:
        """Partitions as a sorted multiset, one copy per conjugate critical value."""
        out = []
        for p, part in self.entries:
            out.extend([part] * place_size(p))
        return sorted(out, reverse=True)

    def __str__(self) -> str:
        if not self.entries:
            return "()"
        items = ["{" + ",".join(map(str, sorted(part))) + "}_" + str(p) for p, part in self.entries]
        return "(" + ", ".join(items) + ")"


def passport_key(entry: tuple[Place, tuple[int, ...]]) -> tuple:
    p, part = entry
    return (-_lcm(part), tuple(-k for k in part), place_key(p))


def passport(A: RationalMap) -> Passport:
    entries = sorted(branch_data(A).items(), key=passport_key)
    return Passport(A.degree, tuple(entries))
