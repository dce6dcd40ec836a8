from fractions import Fraction

import pytest

from orbimaps.exactnum import UniPoly
from orbimaps.expr import parse_map
from orbimaps.ratmap import (
    INF,
    AlgebraicClass,
    Finite,
    InvariantViolation,
    Mobius,
    branch_data,
    compose,
    critical_values,
    critical_values_wronskian,
    fiber,
    fiber_size,
    format_map,
    image,
    local_degree,
    make_map,
    mobius_conjugate,
    passport,
    place_key,
)

z = UniPoly.z()
T3 = parse_map("4*z^3 - 3*z")
A4 = parse_map("-1/64*z^3*(z^3 - 8)^3/(z^3 + 1)^3")
DOUBLING = parse_map("(z^2 + 1)^2/(4*z*(z^2 - 1))")


def test_canonical_form():
    A = make_map(2 * z**2 - 2, 4 * z - 4)
    assert A == make_map(z + 1, UniPoly.constant(2))
    assert A.den.lc > 0
    assert format_map(A) == "1/2*z + 1/2"


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        make_map(z, UniPoly())


def test_evaluation_at_places():
    A = parse_map("(z^2 + 1)/(z - 1)")
    assert A(1) == INF
    assert A(INF) == INF
    assert A(0) == Finite(-1)
    assert parse_map("(2*z + 1)/(3*z - 1)")(INF) == Finite(Fraction(2, 3))


def test_compose():
    assert compose(parse_map("z^2"), parse_map("z + 1")) == parse_map("z^2 + 2*z + 1")
    assert compose(parse_map("1/z"), parse_map("1/z")) == parse_map("z")


def test_mobius_canonical_and_inverse():
    mu = Mobius(2, 4, 0, 2)
    assert mu.entries == (1, 2, 0, 1)
    assert mu @ mu.inverse() == Mobius.identity()
    with pytest.raises(ValueError):
        Mobius(1, 2, 2, 4)


def test_mobius_three_points():
    mu = Mobius.from_points(Finite(2), Finite(-1), INF)
    assert mu.apply(Finite(0)) == Finite(2)
    assert mu.apply(INF) == Finite(-1)
    assert mu.apply(Finite(1)) == INF


def test_mobius_moves_classes():
    c = AlgebraicClass(z**2 - 2)
    assert Mobius(1, 1, 0, 1).apply(c) == AlgebraicClass(z**2 - 2 * z - 1)


def test_local_degrees():
    assert local_degree(A4, INF) == 3
    assert local_degree(T3, Finite(Fraction(1, 2))) == 2
    assert local_degree(T3, INF) == 3
    assert local_degree(A4, AlgebraicClass(z**6 + 20 * z**3 - 8)) == 2


def test_fiber_over_rational_value():
    pts = fiber(T3, 1)
    assert pts == [(Finite(Fraction(-1, 2)), 2), (Finite(1), 1)]
    assert sum(k for _, k in pts) == 3


def test_fiber_over_class_sums_to_size_times_degree():
    c = AlgebraicClass(z**2 - 2)
    pts = fiber(T3, c)
    assert sum(k * (p.size if isinstance(p, AlgebraicClass) else 1) for p, k in pts) == 2 * 3


def test_fiber_of_tetrahedral_map_over_one():
    pts = fiber(A4, 1)
    assert pts == [(AlgebraicClass(z**6 + 20 * z**3 - 8), 2)]
    assert fiber_size(pts) == 6


def test_image_of_class():
    assert image(parse_map("z^2"), AlgebraicClass(z**2 - 2)) == [Finite(2)]
    assert image(parse_map("z + 1"), AlgebraicClass(z**2 - 2)) == [AlgebraicClass(z**2 - 2 * z - 1)]


def test_passport_chebyshev():
    assert str(passport(T3)) == "({3}_inf, {1,2}_-1, {1,2}_1)"


def test_passport_algebraic_value():
    A = parse_map("z^4*(z - 1)")
    data = branch_data(A)
    assert data[Finite(Fraction(-256, 3125))] == (2, 1, 1, 1)
    assert data[Finite(0)] == (4, 1)
    assert data[INF] == (5,)


def test_doubling_map_branch_data():
    data = branch_data(DOUBLING)
    assert data == {Finite(-1): (2, 2), Finite(0): (2, 2), Finite(1): (2, 2)}


def test_class_critical_values():
    A = parse_map("z^3 - 3*z + z^2")
    values = critical_values(A)
    assert sum(v.size if isinstance(v, AlgebraicClass) else 1 for v in values) == 3
    assert set(values) == set(critical_values_wronskian(A))


def test_two_routes_agree_on_samples():
    for src in ["z^5 - 5*z", "(z^3 + 2)/(z^2 - 3)", "z^4*(z - 1)", "(z^2 + z + 1)/(z^2 - 2*z)"]:
        A = parse_map(src)
        assert sorted(critical_values(A), key=place_key) == sorted(critical_values_wronskian(A), key=place_key)


def test_mobius_conjugate():
    A = parse_map("z^2")
    B = mobius_conjugate(A, Mobius(2, -1, 0, 1), Mobius.identity())
    assert B == parse_map("2*z^2 - 1")


def test_invariant_violation_is_runtime_error():
    assert issubclass(InvariantViolation, RuntimeError)
