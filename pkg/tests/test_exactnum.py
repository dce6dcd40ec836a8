from fractions import Fraction

import pytest

from orbimaps.exactnum import (
    DepthExceeded,
    DivisionByZero,
    Split,
    Tower,
    UniPoly,
    ZeroPolynomial,
    coprime_basis,
    dispatch,
    format_poly,
    minimal_polynomial,
    poly_gcd,
    rational_roots,
    squarefree_decomposition,
    squarefree_part,
    strip_rational_roots,
    tower_invert,
    tower_squarefree,
)

z = UniPoly.z()


def P(*coeffs):
    return UniPoly(coeffs)


def test_degree_and_zero():
    assert UniPoly().degree == -1
    assert not UniPoly()
    assert P(0, 0, 3).degree == 2
    assert P(1, 2, 0, 0) == P(1, 2)


def test_arithmetic():
    a = z**2 - 1
    b = z + 1
    assert a.exquo(b) == z - 1
    q, r = divmod(z**3 + 2, z - 1)
    assert q * (z - 1) + r == z**3 + 2
    assert r == P(3)
    assert (z**2 + 1)(Fraction(1, 2)) == Fraction(5, 4)
    assert (z**2).compose(z + 1) == z**2 + 2 * z + 1
    assert (z**3).derivative() == 3 * z**2


def test_exquo_rejects_remainder():
    with pytest.raises(ValueError):
        (z**2 + 1).exquo(z - 1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        divmod(z, UniPoly())


def test_format():
    assert format_poly(P(1, -5, 0, 0, Fraction(3, 2))) == "3/2*z^4 - 5*z + 1"
    assert format_poly(UniPoly()) == "0"


def test_primitive_int():
    content, ints = P(Fraction(1, 2), Fraction(-3, 4)).primitive_int()
    assert ints[-1] > 0
    assert UniPoly(ints) * content == P(Fraction(1, 2), Fraction(-3, 4))


def test_gcd_basic():
    assert poly_gcd(z**2 - 1, z**3 - 1) == z - 1
    assert poly_gcd(UniPoly(), UniPoly()) == UniPoly()
    assert poly_gcd(z**2 + 1, z - 3) == P(1)
    assert poly_gcd(UniPoly(), 2 * z - 4) == z - 2


def test_gcd_large_common_factor():
    f = z**6 + 20 * z**3 - 8
    a = f**2 * (z - 5)
    b = f * (z**3 + 1) ** 3
    assert poly_gcd(a, b) == f


def test_squarefree_decomposition():
    assert squarefree_decomposition(z**3 + 2 * z**2 + z) == [(z, 1), (z + 1, 2)]
    a = (z**6 + 20 * z**3 - 8) ** 2
    assert squarefree_decomposition(a) == [(z**6 + 20 * z**3 - 8, 2)]
    assert squarefree_part(a) == z**6 + 20 * z**3 - 8
    with pytest.raises(ZeroPolynomial):
        squarefree_decomposition(UniPoly())


def test_rational_roots():
    assert rational_roots(z**3 * (z - 8) ** 3) == [(Fraction(0), 3), (Fraction(8), 3)]
    a = (2 * z - 1) * (3 * z - 2) ** 2 * (z**2 + 1)
    assert rational_roots(a) == [(Fraction(1, 2), 1), (Fraction(2, 3), 2)]
    assert rational_roots(z**2 - 2) == []


def test_strip_rational_roots():
    roots, rest = strip_rational_roots((z - 3) * (z**2 - 2))
    assert roots == [Fraction(3)]
    assert rest == z**2 - 2


def test_coprime_basis():
    basis = coprime_basis([(z - 1) * (z - 2), (z - 2) * (z - 3)])
    assert sorted(basis, key=lambda p: p.coeffs) == sorted([z - 1, z - 2, z - 3], key=lambda p: p.coeffs)


def test_minimal_polynomial():
    # t^2 over Q[t]/(t^4 - 2) generates sqrt 2
    assert minimal_polynomial(z**2, z**4 - 2) == z**2 - 2
    assert minimal_polynomial(P(3), z**2 - 5) == z - 3


def test_tower_inverse():
    t = Tower([z**2 - 2])
    x = t.generator()
    assert x.inverse() == t.element([0, Fraction(1, 2)])


def test_tower_split_on_zero_divisor():
    t = Tower([z**2 - 3 * z + 2])
    x = t.generator() - 1
    result = tower_invert(x)
    assert isinstance(result, Split)
    left, right = result.contexts
    assert left.moduli[0] == z - 1
    assert right.moduli[0] == z - 2


def test_dispatch_runs_each_branch():
    t = Tower([z**2 - 3 * z + 2])

    def invert(ctx):
        x = ctx.generator() - 1
        return x.inverse() if not x.is_zero() else None

    results = dispatch(t, invert)
    assert [ctx.moduli[0] for ctx, _ in results] == [z - 1, z - 2]
    assert results[0][1] is None


def test_depth_limit():
    with pytest.raises(DepthExceeded):
        Tower([z**2 - 2, (0, 0, 1), (0, 0, 1)])


def test_tower_squarefree_shape():
    t = Tower([z**2 - 2])
    a = t.generator()
    # (x - a)^2 (x + 1) over Q(sqrt 2), as raw top-level coefficients
    root = t.top
    lin = (root.neg(a.value), root.embed(1))
    sq = (root.mul(lin[0], lin[0]), root.add(lin[0], lin[0]), root.embed(1))
    cub = (
        sq[0],
        root.add(sq[0], sq[1]),
        root.add(sq[1], sq[2]),
        sq[2],
    )
    assert tower_squarefree(cub, t) == [(1, 1), (2, 1)]
