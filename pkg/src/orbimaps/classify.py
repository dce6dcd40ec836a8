"""Genus of the Galois closure, catalog membership and genus-one structure."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .catalog import CatalogEntry, fixed_entries, parametric_entry
from .exactnum import UniPoly, poly_gcd, rational_roots
from .orbifold import (
    Orbifold,
    euler_char,
    is_covering,
    pullback_orbifold,
    ramification_orbifolds,
    signature,
)
from .ratmap import (
    INF,
    AlgebraicClass,
    Finite,
    InvariantViolation,
    Mobius,
    Place,
    RationalMap,
    branch_data,
    compose,
    compose_all,
    critical_values_wronskian,
    fiber,
    image,
    mobius_conjugate,
    passport,
    place_key,
    place_size,
)

__all__ = [
    "GenusClass",
    "genus_class",
    "BelyiCertificate",
    "is_belyi",
    "Unsupported",
    "NoMatch",
    "mu_equivalent",
    "Match",
    "catalog_match",
    "verify_decomposition",
    "left_factor_constraint",
    "Unbounded",
    "UNBOUNDED",
    "OrbitLeavesGroundField",
    "postcritical_set",
    "ZERO_CHI_FORCED",
    "CoveringWitness",
    "CASE_TABLE",
    "zero_chi_witnesses",
    "zero_chi_analysis",
    "LattesResult",
    "is_lattes",
]


class GenusClass(enum.Enum):
    ZERO = "zero"
    ONE = "one"
    HIGHER = "higher"


def genus_class(A: RationalMap) -> GenusClass:
    """Genus class of the Galois closure from the sign of ``χ(O2^A)``."""
    if A.degree <= 1:
        return GenusClass.ZERO
    chi = euler_char(ramification_orbifolds(A)[1])
    if chi > 0:
        return GenusClass.ZERO
    if chi == 0:
        return GenusClass.ONE
    return GenusClass.HIGHER


# ---------------------------------------------------------------------------
# Belyi maps


@dataclass(frozen=True)
class BelyiCertificate:
    flag: bool
    preimage_count: int
    degree: int

    def __bool__(self) -> bool:
        return self.flag


def is_belyi(A: RationalMap) -> BelyiCertificate:
    """Critical values within {0, 1, ∞}, decided twice.

    One route reads the critical values off the Wronskian; the other counts the
    points over 0, 1 and ∞, which number ``deg A + 2`` exactly for Belyi maps and
    more otherwise. Disagreement is an internal error.
    """
    d = A.degree
    if d < 1:
        raise ValueError("constant maps are not coverings")
    special = {INF, Finite(0), Finite(1)}
    by_wronskian = set(critical_values_wronskian(A)) <= special
    count = sum(place_size(p) for v in special for p, _ in fiber(A, v))
    by_count = count == d + 2
    if by_wronskian != by_count:
        raise InvariantViolation(f"Belyi routes disagree for {A}: count {count}, degree {d}")
    return BelyiCertificate(by_count, count, d)


# ---------------------------------------------------------------------------
# Möbius equivalence


class Unsupported(ValueError):
    """The maps do not expose enough rational structure for the search."""


class NoMatch(RuntimeError):
    """A genus-zero map matched no catalog family."""


def _as_mobius(A: RationalMap) -> Mobius:
    return Mobius(A.num[1], A.num[0], A.den[1], A.den[0])


def _rational_data(A: RationalMap):
    """Rational critical values and rational anchor points with their types.

    The type of a point records its local degree and the partition over its
    value; both are preserved by ``z -> μ1(A(μ2(z)))``.
    """
    data = branch_data(A)
    values = {v: part for v, part in data.items() if not isinstance(v, AlgebraicClass)}
    anchors: dict[Place, tuple] = {}
    for v, part in values.items():
        for p, k in fiber(A, v):
            if not isinstance(p, AlgebraicClass):
                anchors[p] = (k, part)
    return values, anchors


def _sample_points() -> Iterable[Place]:
    yield INF
    yield Finite(0)
    k = 1
    while True:
        yield Finite(k)
        yield Finite(-k)
        yield Finite(Fraction(1, k + 1))
        k += 1


def _solve_left(A1: RationalMap, C: RationalMap) -> Mobius | None:
    """The Möbius ``μ`` with ``A1 == μ ∘ C``, if any."""
    src: list[Place] = []
    dst: list[Place] = []
    for z in _sample_points():
        c, a = C(z), A1(z)
        if c in src:
            if dst[src.index(c)] != a:
                return None
            continue
        if a in dst:
            return None
        src.append(c)
        dst.append(a)
        if len(src) == 3:
            break
    mu = Mobius.from_points(*dst) @ Mobius.sending(*src)
    return mu if compose(mu.as_map(), C) == A1 else None


def _three_point(src: Sequence[Place], dst: Sequence[Place]) -> Mobius:
    """The Möbius sending ``src[i]`` to ``dst[i]``."""
    return Mobius.from_points(*dst) @ Mobius.sending(*src)


def _pick_anchors(anchors1: dict, anchors2: dict, k: int) -> list[Place]:
    """``k`` anchors of the first map whose types are rarest in the second."""
    def count(p):
        return sum(1 for t in anchors2.values() if t == anchors1[p])

    return sorted(anchors1, key=lambda p: (count(p), place_key(p)))[:k]


def _lambda_candidates(G: RationalMap, H: RationalMap) -> list[Fraction]:
    """Nonzero rational ``λ`` with ``G(z) == H(λ z)``."""
    N1, D1, N2, D2 = G.num, G.den, H.num, H.den
    top = max(N1.degree + D2.degree, N2.degree + D1.degree)
    g = UniPoly()
    for k in range(top + 1):
        coeffs = [Fraction(0)] * (k + 1)
        for j in range(k + 1):
            coeffs[j] = N1[k - j] * D2[j] - N2[j] * D1[k - j]
        g = poly_gcd(g, UniPoly(coeffs))
        if g.degree == 0:
            return []
    if not g:
        raise InvariantViolation("λ equations vanish identically")
    return [r for r, _ in rational_roots(g) if r != 0]


def _two_value_route(A1: RationalMap, A2: RationalMap) -> tuple[Mobius, Mobius] | None:
    """Both maps have exactly two critical values, so each is ``σ ∘ z^n ∘ τ``."""

    def normal_form(A: RationalMap):
        values = sorted(branch_data(A), key=place_key)
        if any(isinstance(v, AlgebraicClass) for v in values):
            raise Unsupported("critical values are not rational")
        points = [fiber(A, v) for v in values]
        if any(len(f) != 1 or isinstance(f[0][0], AlgebraicClass) for f in points):
            return None
        p1, p2 = points[0][0][0], points[1][0][0]
        r = next(z for z in _sample_points() if z not in (p1, p2))
        tau = _three_point((Finite(0), INF, Finite(1)), (p1, p2, r))
        sigma = _three_point((values[0], values[1], A(r)), (Finite(0), INF, Finite(1)))
        return sigma, tau

    n1, n2 = normal_form(A1), normal_form(A2)
    if n1 is None or n2 is None:
        return None
    (s1, t1), (s2, t2) = n1, n2
    mu1 = s1.inverse() @ s2
    mu2 = t2 @ t1.inverse()
    return (mu1, mu2) if mobius_conjugate(A2, mu1, mu2) == A1 else None


def mu_equivalent(A1: RationalMap, A2: RationalMap) -> tuple[Mobius, Mobius] | None:
    """Rational Möbius maps with ``A1 == μ1 ∘ A2 ∘ μ2``, or None when none exist.

    The search runs over Möbius maps with rational coefficients. It is complete
    for maps that expose three rational anchor points, or two anchors and three
    rational critical values, or exactly two critical values. Raises
    :class:`Unsupported` otherwise. Maps equivalent only over a proper extension
    of Q (the doubling map and ``½(z^2 + z^-2)``, say) come back as None.
    """
    d = A1.degree
    if d != A2.degree:
        return None
    if d < 1:
        raise ValueError("constant maps are not considered")
    if d == 1:
        return _as_mobius(A1) @ _as_mobius(A2).inverse(), Mobius.identity()
    if passport(A1).partitions() != passport(A2).partitions():
        return None
    if sum(place_size(v) for v in branch_data(A1)) == 2:
        return _two_value_route(A1, A2)
    values1, anchors1 = _rational_data(A1)
    values2, anchors2 = _rational_data(A2)
    if sorted(anchors1.values()) != sorted(anchors2.values()):
        return None
    if len(anchors1) >= 3:
        chosen = _pick_anchors(anchors1, anchors2, 3)
        options = [[q for q, t in anchors2.items() if t == anchors1[p]] for p in chosen]
        for targets in itertools.product(*options):
            if len(set(targets)) < 3:
                continue
            mu2 = _three_point(chosen, targets)
            mu1 = _solve_left(A1, compose(A2, mu2.as_map()))
            if mu1 is not None:
                return mu1, mu2
        return None
    if len(anchors1) == 2 and len(values1) >= 3:
        return _anchor_pair_route(A1, A2, values1, values2, anchors1, anchors2)
    raise Unsupported("too few rational anchors to pin down the Möbius maps")


def _anchor_pair_route(A1, A2, values1, values2, anchors1, anchors2):
    """Fix μ1 from critical values, then solve ``μ2 = T2 ∘ λz ∘ T1^{-1}`` or its flip."""
    pick = sorted(values2, key=lambda v: (sum(1 for w in values1.values() if w == values2[v]), place_key(v)))[:3]
    options = [[w for w, part in values1.items() if part == values2[v]] for v in pick]
    a, b = sorted(anchors1, key=place_key)
    t1 = _three_point((Finite(0), INF, Finite(1)), (a, b, next(z for z in _sample_points() if z not in (a, b))))
    for images in itertools.product(*options):
        if len(set(images)) < 3:
            continue
        mu1 = _three_point(pick, images)
        B = compose(mu1.inverse().as_map(), A1)
        G = compose(B, t1.as_map())
        for a2, b2 in itertools.permutations(sorted(anchors2, key=place_key), 2):
            if anchors2[a2] != anchors1[a] or anchors2[b2] != anchors1[b]:
                continue
            t2 = _three_point(
                (Finite(0), INF, Finite(1)), (a2, b2, next(z for z in _sample_points() if z not in (a2, b2)))
            )
            H = compose(A2, t2.as_map())
            for lam in _lambda_candidates(G, H):
                mu2 = t2 @ Mobius(lam, 0, 0, 1) @ t1.inverse()
                if mobius_conjugate(A2, mu1, mu2) == A1:
                    return mu1, mu2
    return None


# ---------------------------------------------------------------------------
# catalog matching


@dataclass(frozen=True)
class Match:
    entry: CatalogEntry
    mu_left: Mobius
    mu_right: Mobius


def _candidates(d: int) -> list[CatalogEntry]:
    out = [parametric_entry("Cyclic", d)]
    if d % 2 == 0 and d >= 4:
        out.append(parametric_entry("DihedralHalf", d // 2))
    if d >= 2:
        out.append(parametric_entry("Chebyshev", d))
    out.extend(e for e in fixed_entries() if e.degree == d)
    return out


def catalog_match(A: RationalMap) -> list[Match]:
    """Every catalog family equivalent to ``A`` over Q, with verified witnesses.

    Raises :class:`NoMatch` when no family shares the passport partitions, which
    no genus-zero map can do. Raises :class:`Unsupported` when families share
    them but no rational Möbius pair was found.
    """
    parts = passport(A).partitions()
    out = []
    compatible = []
    for e in _candidates(A.degree):
        if passport(e.map).partitions() != parts:
            continue
        compatible.append(e.name)
        try:
            found = mu_equivalent(A, e.map)
        except Unsupported:
            found = None
        if found is not None:
            out.append(Match(e, *found))
    if not compatible:
        raise NoMatch(f"no catalog family shares the passport of {A}")
    if not out:
        raise Unsupported(f"no rational Möbius pair to {', '.join(compatible)}")
    return out


def verify_decomposition(F: RationalMap, parts: Sequence[RationalMap]) -> bool:
    """Whether ``F == parts[0] ∘ parts[1] ∘ ...`` exactly."""
    return F == compose_all(parts)


_POSITIVE_TRIPLES = {(2, 3, 3), (2, 3, 4), (2, 3, 5)}


def _is_positive_signature(sig: tuple[int, ...]) -> bool:
    if len(sig) == 2:
        return sig[0] == sig[1] >= 2
    if len(sig) == 3:
        return sig[:2] == (2, 2) or sig in _POSITIVE_TRIPLES
    return False


def left_factor_constraint(nu_theta: Iterable[int], nu_A: Iterable[int]) -> bool:
    """Whether a left factor of a universal covering may have the given signature."""
    th = tuple(sorted(nu_theta))
    a = tuple(sorted(nu_A))
    if not _is_positive_signature(th):
        raise ValueError(f"{list(th)} is not a signature of positive Euler characteristic")
    if a == th:
        return True
    if len(th) == 2:
        return len(a) == 2 and a[0] == a[1] >= 2 and th[0] % a[0] == 0
    if th[:2] == (2, 2):
        if a == (2, 2):
            return True
        return len(a) == 3 and a[:2] == (2, 2) and th[2] % a[2] == 0
    if th == (2, 3, 3):
        return a == (3, 3)
    if th == (2, 3, 4):
        return a in {(2, 2, 3), (2, 2)}
    return False


# ---------------------------------------------------------------------------
# postcritical orbits


class OrbitLeavesGroundField(ValueError):
    """An orbit would need algebraic numbers beyond the supported tower depth."""


class Unbounded:
    """Marker for a postcritical set that outgrew the cap."""

    def __repr__(self) -> str:
        return "UNBOUNDED"

    def __bool__(self) -> bool:
        return False


UNBOUNDED = Unbounded()


def _height_bits(p: Place) -> int:
    if isinstance(p, Finite):
        return max(abs(p.value.numerator).bit_length(), p.value.denominator.bit_length())
    if isinstance(p, AlgebraicClass):
        _, ints = p.poly.primitive_int()
        return max(abs(c).bit_length() for c in ints)
    return 0


def postcritical_set(A: RationalMap, cap: int = 64, max_bits: int = 2048) -> frozenset[Place] | Unbounded:
    """Forward orbit closure of the critical values, or UNBOUNDED past the caps.

    The search gives up after ``cap`` points, or once a point needs more than
    ``max_bits`` bits to write down; orbits of escaping points grow in height
    geometrically, so the second cap keeps the cost bounded.

    Algebraic values are carried as classes over Q; their images are computed
    with minimal polynomials, so no nested extension is ever needed.
    """
    if A.degree < 2:
        raise ValueError("postcritical sets need degree at least 2")
    found: set[Place] = set()
    union = UniPoly.constant(1)  # product of all class polynomials found so far
    size = 0
    frontier = list(branch_data(A))
    while frontier:
        nxt: list[Place] = []
        for p in frontier:
            if isinstance(p, AlgebraicClass):
                new = p.poly.exquo(poly_gcd(p.poly, union))
                if new.degree == 0:
                    continue
                p = AlgebraicClass(new)
                union = union * new
            elif p in found:
                continue
            found.add(p)
            size += place_size(p)
            if size > cap or _height_bits(p) > max_bits:
                return UNBOUNDED
            nxt.extend(image(A, p))
        frontier = nxt
    return frozenset(found)


# ---------------------------------------------------------------------------
# zero Euler characteristic coverings

ZERO_CHI_FORCED = "ZeroChiForced"

ZERO_CHI_SIGNATURES = ((2, 2, 2, 2), (2, 3, 6), (2, 4, 4), (3, 3, 3))

# case -> (signature of O2^A, degree, signature of O1, signature of O2)
CASE_TABLE: dict[int, tuple[tuple[int, ...], int, tuple[int, ...], tuple[int, ...]]] = {
    1: ((2, 2), 2, (2, 2, 2, 2), (2, 2, 2, 2)),
    2: ((2, 2), 2, (2, 4, 4), (2, 4, 4)),
    3: ((2, 2), 2, (2, 2, 2, 2), (2, 4, 4)),
    4: ((2, 2), 2, (3, 3, 3), (2, 3, 6)),
    5: ((3, 3), 3, (3, 3, 3), (3, 3, 3)),
    6: ((3, 3), 3, (2, 2, 2, 2), (2, 3, 6)),
    7: ((4, 4), 4, (2, 2, 2, 2), (2, 4, 4)),
    8: ((2, 2, 2), 4, (2, 2, 2, 2), (2, 2, 2, 2)),
    9: ((2, 2, 2), 4, (2, 2, 2, 2), (2, 4, 4)),
    10: ((2, 2, 3), 6, (3, 3, 3), (2, 3, 6)),
    11: ((2, 2, 3), 3, (2, 3, 6), (2, 3, 6)),
    12: ((2, 2, 4), 8, (2, 2, 2, 2), (2, 4, 4)),
    13: ((2, 2, 4), 4, (2, 2, 2, 2), (2, 4, 4)),
    14: ((2, 2, 4), 4, (2, 4, 4), (2, 4, 4)),
    15: ((2, 3, 3), 4, (2, 3, 6), (2, 3, 6)),
    16: ((2, 3, 3), 6, (2, 2, 2, 2), (2, 3, 6)),
    17: ((2, 3, 3), 12, (2, 2, 2, 2), (2, 3, 6)),
}


@dataclass(frozen=True)
class CoveringWitness:
    """``A: o1 -> o2`` is a covering with ``χ(o1) == χ(o2) == 0``."""

    o1: Orbifold
    o2: Orbifold
    case: int | str


def _free_places(A: RationalMap, taken: Iterable[Place], count: int) -> list[Place]:
    """The ``count`` smallest non-negative integers that are neither critical nor taken."""
    blocked = set(taken) | set(branch_data(A))
    out = []
    k = 0
    while len(out) < count:
        if Finite(k) not in blocked:
            out.append(Finite(k))
        k += 1
    return out


def _arrangements(entries: list[tuple[Place, int]], slots: tuple[int, ...]):
    """Ways to give each entry a slot value divisible by its ν, consuming ``size`` slots."""
    if not entries:
        yield {}, list(slots)
        return
    (p, nu), rest = entries[0], entries[1:]
    size = place_size(p)
    for value in sorted(set(slots)):
        if value % nu or list(slots).count(value) < size:
            continue
        remaining = list(slots)
        for _ in range(size):
            remaining.remove(value)
        for chosen, left in _arrangements(rest, tuple(remaining)):
            yield {p: value, **chosen}, left


def zero_chi_witnesses(A: RationalMap) -> list[CoveringWitness]:
    """One witness per reachable case, lowest case first."""
    if A.degree < 2:
        raise ValueError("needs degree at least 2")
    o1a, o2a = ramification_orbifolds(A)
    chi = euler_char(o2a)
    if chi < 0:
        return []
    if chi == 0:
        return [CoveringWitness(o1a, o2a, ZERO_CHI_FORCED)]
    key = tuple(signature(o2a))
    found: dict[int, CoveringWitness] = {}
    for sig in ZERO_CHI_SIGNATURES:
        for chosen, left in _arrangements(list(o2a.support), sig):
            free = _free_places(A, chosen, len(left))
            o2 = Orbifold.of({**chosen, **dict(zip(free, sorted(left)))})
            o1 = pullback_orbifold(A, o2)
            if euler_char(o1) != 0 or not is_covering(A, o1, o2):
                raise InvariantViolation(f"pullback of {o2} is not a zero-χ covering")
            row = (key, A.degree, tuple(signature(o1)), tuple(signature(o2)))
            case = next((c for c, r in CASE_TABLE.items() if r == row), None)
            if case is None:
                raise InvariantViolation(f"zero-χ covering outside the case table: {row}")
            found.setdefault(case, CoveringWitness(o1, o2, case))
    return [found[c] for c in sorted(found)]


def zero_chi_analysis(A: RationalMap) -> CoveringWitness | None:
    """A covering between zero-χ orbifolds, forced or constructed; None if impossible."""
    witnesses = zero_chi_witnesses(A)
    return witnesses[0] if witnesses else None


# ---------------------------------------------------------------------------
# Lattès maps


@dataclass(frozen=True)
class LattesResult:
    flag: bool
    orbifold: Orbifold | None = None

    def __bool__(self) -> bool:
        return self.flag


def is_lattes(A: RationalMap, cap: int = 64) -> LattesResult:
    """Whether ``A: O -> O`` is a covering for some orbifold ``O`` with ``χ(O) == 0``."""
    if A.degree < 2:
        raise ValueError("needs degree at least 2")
    o1a, o2a = ramification_orbifolds(A)
    chi = euler_char(o2a)
    if chi < 0:
        return LattesResult(False)
    if chi == 0:
        return LattesResult(True, o2a) if o1a == o2a else LattesResult(False)
    post = postcritical_set(A, cap)
    if isinstance(post, Unbounded):
        return LattesResult(False)
    critical = set(branch_data(A))
    points = sorted(post, key=place_key)
    for r in range(1, len(points) + 1):
        for support in itertools.combinations(points, r):
            if not critical <= set(support):
                continue
            if sum(place_size(p) for p in support) not in (3, 4):
                continue
            for sig in ZERO_CHI_SIGNATURES:
                for chosen, left in _arrangements([(p, 1) for p in support], sig):
                    if left:
                        continue
                    o = Orbifold.of(chosen)
                    if is_covering(A, o, o):
                        return LattesResult(True, o)
    return LattesResult(False)
