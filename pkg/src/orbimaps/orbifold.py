"""Orbifolds on the sphere and covering maps between them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .exactnum import UniPoly, coprime_basis, poly_gcd
from .ratmap import (
    AlgebraicClass,
    Place,
    RationalMap,
    as_place,
    branch_data,
    fiber,
    image,
    place_key,
    place_size,
)

__all__ = [
    "Orbifold",
    "NotDominating",
    "NonUniform",
    "CoveringCheck",
    "euler_char",
    "signature",
    "leq",
    "ramification_orbifolds",
    "is_covering",
    "pullback_orbifold",
    "rh_check",
]


class NotDominating(ValueError):
    pass


class NonUniform(ValueError):
    """A class place straddles orbifold entries with different ramification."""


@dataclass(frozen=True)
class Orbifold:
    """Ramification ``ν >= 2`` on finitely many places; ``ν = 1`` elsewhere."""

    support: tuple[tuple[Place, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for p, nu in self.support:
            if nu < 2:
                raise ValueError(f"ramification must be at least 2, got {nu}")
            if p in seen:
                raise ValueError(f"place {p} listed twice")
            seen.add(p)
        classes = [p.poly for p, _ in self.support if isinstance(p, AlgebraicClass)]
        for i, a in enumerate(classes):
            for b in classes[i + 1 :]:
                if poly_gcd(a, b).degree > 0:
                    raise ValueError("class places must be disjoint")
        ordered = tuple(sorted(self.support, key=lambda e: place_key(e[0])))
        object.__setattr__(self, "support", ordered)

    @classmethod
    def of(cls, entries: Mapping | Iterable = ()) -> "Orbifold":
        """Build from ``{place: ν}`` or ``[(place, ν)]``; entries with ``ν == 1`` are dropped."""
        items = entries.items() if isinstance(entries, Mapping) else entries
        return cls(tuple((as_place(p), int(nu)) for p, nu in items if nu != 1))

    def __bool__(self) -> bool:
        return bool(self.support)

    def __str__(self) -> str:
        if not self.support:
            return "{}"
        return "{" + ", ".join(f"{p}: {nu}" for p, nu in self.support) + "}"

    def places(self) -> list[Place]:
        return [p for p, _ in self.support]

    def as_dict(self) -> dict[Place, int]:
        return dict(self.support)

    def nu(self, p) -> int:
        """Ramification at a place; a class must lie inside one entry or outside all."""
        p = as_place(p)
        if not isinstance(p, AlgebraicClass):
            return self.as_dict().get(p, 1)
        found = None
        covered = 0
        for q, nu in self.support:
            if isinstance(q, AlgebraicClass):
                g = poly_gcd(p.poly, q.poly)
                if g.degree > 0:
                    if found is not None and found != nu:
                        raise NonUniform(f"{p} meets entries with different ramification")
                    found = nu
                    covered += g.degree
        if found is None:
            return 1
        if covered != p.size:
            raise NonUniform(f"{p} lies partly outside the support")
        return found

    def signature(self) -> list[int]:
        return signature(self)

    def euler_char(self) -> Fraction:
        return euler_char(self)


def signature(o: Orbifold) -> list[int]:
    """Multiset of ramification values, one per point (class entries repeated by size)."""
    out = []
    for p, nu in o.support:
        out.extend([nu] * place_size(p))
    return sorted(out)


def euler_char(o: Orbifold) -> Fraction:
    chi = Fraction(2)
    for p, nu in o.support:
        chi += place_size(p) * (Fraction(1, nu) - 1)
    return chi


def _class_polys(places: Iterable[Place]) -> list[UniPoly]:
    return [p.poly for p in places if isinstance(p, AlgebraicClass)]


def _refine_places(places: Iterable[Place], polys: Iterable[UniPoly]) -> list[Place]:
    """Rational places as given, class places replaced by a common coprime refinement."""
    places = list(places)
    basis = coprime_basis(list(_class_polys(places)) + list(polys))
    out: set[Place] = {p for p in places if not isinstance(p, AlgebraicClass)}
    class_polys = _class_polys(places)
    for b in basis:
        if any(not c % b for c in class_polys):
            out.add(AlgebraicClass(b))
    return sorted(out, key=place_key)


def leq(o1: Orbifold, o2: Orbifold) -> bool:
    """Whether ν1 divides ν2 at every place."""
    for p in _refine_places(o1.places() + o2.places(), ()):
        if o2.nu(p) % o1.nu(p):
            return False
    return True


def ramification_orbifolds(A: RationalMap) -> tuple[Orbifold, Orbifold]:
    """The minimal pair ``(O1, O2)`` making ``A`` a covering map."""
    data = branch_data(A)
    o2 = {v: math.lcm(*part) for v, part in data.items()}
    o1: dict[Place, int] = {}
    for v, nu2 in o2.items():
        for p, k in fiber(A, v):
            if nu2 // k > 1:
                o1[p] = nu2 // k
    return Orbifold.of(o1), Orbifold.of(o2)


@dataclass(frozen=True)
class CoveringCheck:
    """Outcome of :func:`is_covering`; falsy with a witness place when the condition fails."""

    ok: bool
    place: Place | None = None
    nu2: int = 1
    nu1: int = 1
    local_degree: int = 1

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "covering"
        return (
            f"fails at {self.place}: nu2(A(z)) = {self.nu2} but "
            f"nu1(z) * deg_z A = {self.nu1} * {self.local_degree}"
        )


def _split_by(p: Place, o: Orbifold) -> list[tuple[Place, int]]:
    """Cut a class into pieces on which ``o`` is constant."""
    if not isinstance(p, AlgebraicClass):
        return [(p, o.nu(p))]
    rest = p.poly
    out = []
    for q, nu in o.support:
        if isinstance(q, AlgebraicClass):
            g = poly_gcd(rest, q.poly)
            if g.degree > 0:
                out.append((AlgebraicClass(g), nu))
                rest = rest.exquo(g)
    if rest.degree > 0:
        out.append((AlgebraicClass(rest), 1))
    return out


def _targets(A: RationalMap, o1: Orbifold, o2: Orbifold) -> list[Place]:
    """Every value whose fiber can violate the covering condition, support of ``o2`` first."""
    values: list[Place] = list(o2.places()) + list(branch_data(A))
    for p in o1.places():
        values.extend(image(A, p))
    return sorted(_refine_places(values, ()), key=lambda v: (o2.nu(v) == 1, place_key(v)))


def is_covering(A: RationalMap, o1: Orbifold, o2: Orbifold) -> CoveringCheck:
    """Check ``ν2(A(z)) == ν1(z) * deg_z A`` at every point of the sphere.

    Only fibers over the support of ``o2``, the critical values and the images
    of the support of ``o1`` can fail; everywhere else both sides are 1.
    """
    for v in _targets(A, o1, o2):
        for piece, nu2 in _split_by(v, o2):
            for p, k in fiber(A, piece):
                for q, nu1 in _split_by(p, o1):
                    if nu1 * k != nu2:
                        return CoveringCheck(False, q, nu2, nu1, k)
    return CoveringCheck(True)


def pullback_orbifold(A: RationalMap, o2: Orbifold) -> Orbifold:
    """The unique ``o1`` with ``ν1(z) = ν2(A(z)) / deg_z A``."""
    o1: dict[Place, int] = {}
    for v in _targets(A, Orbifold(), o2):
        for piece, nu2 in _split_by(v, o2):
            for p, k in fiber(A, piece):
                if nu2 % k:
                    raise NotDominating(f"local degree {k} at {p} does not divide {nu2}")
                if nu2 // k > 1:
                    o1[p] = nu2 // k
    return Orbifold.of(o1)


def rh_check(A: RationalMap, o1: Orbifold, o2: Orbifold) -> bool:
    """Riemann-Hurwitz for orbifolds: ``χ(o1) == deg A * χ(o2)``."""
    return euler_char(o1) == A.degree * euler_char(o2)
