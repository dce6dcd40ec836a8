"""Exact rationals, dense univariate polynomials over Q, and dynamic-evaluation towers.

Polynomials are stored as tuples of :class:`fractions.Fraction`, lowest degree
first, with the leading coefficient nonzero. The zero polynomial is ``()``.

Algebraic numbers are never isolated numerically. A conjugate family of numbers
is carried by a squarefree (not necessarily irreducible) defining polynomial,
and arithmetic modulo that polynomial splits the family whenever a zero divisor
shows up (see :class:`Tower`).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Sequence

ExactRational = Fraction

__all__ = [
    "ExactRational",
    "UniPoly",
    "ZeroPolynomial",
    "DivisionByZero",
    "DepthExceeded",
    "poly_gcd",
    "squarefree_decomposition",
    "squarefree_part",
    "rational_roots",
    "coprime_basis",
    "minimal_polynomial",
    "Tower",
    "TowerElement",
    "Split",
    "tower_invert",
    "dispatch",
]

MAX_TOWER_DEPTH = 2


class ZeroPolynomial(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class DepthExceeded(ValueError):
    pass


def _frac(c) -> Fraction:
    return c if type(c) is Fraction else Fraction(c)


def _strip(cs: list) -> tuple:
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


class UniPoly:
    """Dense polynomial in one variable with rational coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([_frac(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "UniPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def z(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, n: int, c=1) -> "UniPoly":
        return cls([0] * n + [c])

    # -- basic structure ------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([_frac(other)])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return format_poly(self)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # -- ring operations ------------------------------------------------
    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,))
        raise TypeError(f"cannot coerce {type(other).__name__} to UniPoly")

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return UniPoly._raw(())
            return UniPoly._raw(tuple(c * other for c in self.coeffs))
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly._raw((Fraction(1),))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        other = self._coerce(other)
        if not other.coeffs:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lc_inv = 1 / other.lc
        bc = other.coeffs
        if len(rem) <= db:
            return UniPoly._raw(()), self
        quo = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * lc_inv
            quo[k - db] = q
            for j in range(db + 1):
                rem[k - db + j] -= q * bc[j]
        return UniPoly._raw(_strip(quo)), UniPoly._raw(_strip(rem[:db]))

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def exquo(self, other) -> "UniPoly":
        """Exact quotient; raises ``ValueError`` if ``other`` does not divide ``self``."""
        q, r = divmod(self, other)
        if r:
            raise ValueError("inexact polynomial division")
        return q

    def divides(self, other: "UniPoly") -> bool:
        return not (other % self)

    # -- calculus and evaluation ---------------------------------------
    def derivative(self) -> "UniPoly":
        return UniPoly._raw(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else UniPoly._raw(())
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly._raw(())
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> "UniPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = 1 / self.coeffs[-1]
        return UniPoly._raw(tuple(c * inv for c in self.coeffs))

    def reverse(self, n: int | None = None) -> "UniPoly":
        """Coefficients of ``z**n * self(1/z)``; ``n`` defaults to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return UniPoly(cs[::-1])

    def shift_scale(self, a, b) -> "UniPoly":
        """``self(a*z + b)``."""
        return self.compose(UniPoly((b, a)))

    # -- integer views --------------------------------------------------
    def denominator_lcm(self) -> int:
        return reduce(math.lcm, (c.denominator for c in self.coeffs), 1)

    def primitive_int(self) -> tuple[Fraction, list[int]]:
        """Return ``(content, ints)`` with ``self == content * ints`` and ``ints`` primitive, lc > 0."""
        if not self.coeffs:
            return Fraction(0), []
        m = self.denominator_lcm()
        ints = [int(c * m) for c in self.coeffs]
        g = reduce(math.gcd, ints)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, m), [c // g for c in ints]

    @classmethod
    def from_ints(cls, ints: Sequence[int]) -> "UniPoly":
        return cls._raw(_strip([Fraction(c) for c in ints]))


def format_poly(p: UniPoly, var: str = "z") -> str:
    """Render as an expression the CLI parser reads back exactly."""
    if not p.coeffs:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# integer polynomial helpers (lists of int, lowest degree first)


def _int_eval(f: list[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _int_exquo(f: list[int], g: list[int]) -> list[int] | None:
    """Exact quotient over Z, or None when g does not divide f."""
    rem = list(f)
    dg = len(g) - 1
    lg = g[-1]
    if len(rem) - 1 < dg:
        return None if any(rem) else []
    quo = [0] * (len(rem) - dg)
    for k in range(len(rem) - 1, dg - 1, -1):
        c = rem[k]
        if not c:
            continue
        q, r = divmod(c, lg)
        if r:
            return None
        quo[k - dg] = q
        for j in range(dg + 1):
            rem[k - dg + j] -= q * g[j]
    if any(rem[:dg]):
        return None
    return quo


def _int_primitive(f: list[int]) -> list[int]:
    g = reduce(math.gcd, f)
    if f[-1] < 0:
        g = -g
    return [c // g for c in f]


def _heugcd(f: list[int], g: list[int]) -> list[int] | None:
    """Heuristic gcd of primitive integer polynomials; None when it gives up."""
    norm = min(max(abs(c) for c in f), max(abs(c) for c in g))
    xi = 2 * norm + 29
    for _ in range(8):
        h = math.gcd(_int_eval(f, xi), _int_eval(g, xi))
        if h:
            coeffs = []
            half = xi // 2
            while h:
                c = h % xi
                if c > half:
                    c -= xi
                coeffs.append(c)
                h = (h - c) // xi
            coeffs = list(_strip(coeffs))
            if coeffs:
                cand = _int_primitive(coeffs)
                if _int_exquo(f, cand) is not None and _int_exquo(g, cand) is not None:
                    return cand
        xi = xi * 73794 // 27011 + 1
    return None


def _euclid_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while b:
        a, b = b, a % b
        b = b.monic() if b else b
    return a.monic()


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor; ``gcd(0, 0) == 0``."""
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return UniPoly._raw((Fraction(1),))
    _, fa = a.primitive_int()
    _, fb = b.primitive_int()
    h = _heugcd(fa, fb)
    if h is not None:
        return UniPoly.from_ints(h).monic()
    return _euclid_gcd(a, b)


def poly_exquo(a: UniPoly, b: UniPoly) -> UniPoly:
    """Exact division, going through Z when the inputs are large."""
    if a.degree > 24:
        ca, fa = a.primitive_int()
        cb, fb = b.primitive_int()
        q = _int_exquo(fa, fb)
        if q is not None:
            return UniPoly.from_ints(q) * (ca / cb)
    return a.exquo(b)


def squarefree_decomposition(a: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic pairwise coprime squarefree ``g_k`` with ``a = lc(a) * prod g_k**k``.

    Only factors of positive degree are returned, ordered by multiplicity.
    """
    if not a:
        raise ZeroPolynomial("squarefree decomposition of the zero polynomial")
    if a.degree == 0:
        return []
    f = a.monic()
    df = f.derivative()
    c = poly_gcd(f, df)
    w = poly_exquo(f, c)
    y = poly_exquo(df, c)
    z = y - w.derivative()
    out = []
    k = 1
    while w.degree > 0:
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, k))
        w = poly_exquo(w, g)
        y = poly_exquo(z, g)
        z = y - w.derivative()
        k += 1
    return out


def squarefree_part(a: UniPoly) -> UniPoly:
    if not a:
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    if a.degree <= 0:
        return UniPoly.constant(1)
    return poly_exquo(a.monic(), poly_gcd(a, a.derivative()))


# ---------------------------------------------------------------------------
# rational roots


_SMALL_PRIMES = (101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157)


def _has_root_mod(f: list[int], p: int) -> bool:
    fm = [c % p for c in f]
    for x in range(p):
        acc = 0
        for c in reversed(fm):
            acc = (acc * x + c) % p
        if not acc:
            return True
    return False


def _taylor_shift1(f: list[int]) -> list[int]:
    g = list(f)
    n = len(g)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            g[j] += g[j + 1]
    return g


def _sign_variations(f: list[int]) -> int:
    signs = [c > 0 for c in f if c]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _deflate_at_one(f: list[int]) -> list[int]:
    """``f(x) / (x - 1)`` for integer ``f`` with ``f(1) == 0``."""
    n = len(f) - 1
    q = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc += f[i]
        q[i - 1] = acc
    return q


def _roots_unit_interval(f: list[int], lo: Fraction, width: Fraction, out: list):
    """Descartes bisection; f(x) corresponds to the original on lo + width*x, x in (0, 1)."""
    stack = [(f, lo, width)]
    while stack:
        g, a, w = stack.pop()
        v = _sign_variations(_taylor_shift1(g[::-1]))
        if v == 0:
            continue
        if v == 1:
            out.append((a, a + w))
            continue
        n = len(g) - 1
        left = [c * (1 << (n - i)) for i, c in enumerate(g)]  # 2^n g(x/2)
        half = w / 2
        right = _taylor_shift1(left)  # 2^n g((x+1)/2)
        if right[0] == 0:
            # the midpoint is a root: record it and deflate both halves
            out.append((a + half, a + half))
            right = right[1:]
            left = _deflate_at_one(left)
        stack.append((left, a, half))
        stack.append((right, a + half, half))


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Fraction with the smallest denominator in the closed interval [lo, hi]."""
    fl = math.floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    return fl + 1 / _simplest_between(1 / (hi - fl), 1 / (lo - fl))


def _squarefree_rational_roots(f: list[int]) -> list[Fraction]:
    roots: list[Fraction] = []
    if f[0] == 0:
        roots.append(Fraction(0))
        f = f[1:]
        while f and f[0] == 0:  # squarefree input: cannot happen
            f = f[1:]
    if len(f) <= 1:
        return roots
    if len(f) == 2:
        return roots + [Fraction(-f[0], f[1])]
    for p in _SMALL_PRIMES:
        if f[-1] % p and not _has_root_mod(f, p):
            return roots
    lc = abs(f[-1])
    bound = 1 + max(abs(c) for c in f[:-1]) // lc + 1
    big = 1 << bound.bit_length()
    intervals: list[tuple[Fraction, Fraction]] = []
    for sgn in (1, -1):
        g = [c * (sgn**i) * (big**i) for i, c in enumerate(f)]  # f(sgn*big*x)
        found: list = []
        _roots_unit_interval(g, Fraction(0), Fraction(1), found)
        for a, b in found:
            lo, hi = sorted((sgn * big * a, sgn * big * b))
            intervals.append((lo, hi))
    fp = UniPoly.from_ints(f)
    dfp = fp.derivative()
    tol = Fraction(1, 2 * lc * lc)
    for lo, hi in intervals:
        if lo == hi:
            if fp(lo) == 0:
                roots.append(lo)
            continue
        # the root inside is simple; an endpoint may be a neighbouring root
        flo = fp(lo) or dfp(lo)
        while hi - lo > tol:
            mid = (lo + hi) / 2
            fm = fp(mid)
            if fm == 0:
                lo = hi = mid
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        cand = lo if lo == hi else _simplest_between(lo, hi)
        if cand.denominator <= lc and fp(cand) == 0:
            roots.append(cand)
    return roots


def rational_roots(a: UniPoly) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicities, in increasing order."""
    if not a:
        raise ZeroPolynomial("rational roots of the zero polynomial")
    out = []
    for part, k in squarefree_decomposition(a):
        _, ints = part.primitive_int()
        out.extend((r, k) for r in set(_squarefree_rational_roots(ints)))
    return sorted(out)


def strip_rational_roots(part: UniPoly) -> tuple[list[Fraction], UniPoly]:
    """Split a squarefree polynomial into its rational roots and the monic cofactor."""
    _, ints = part.primitive_int()
    roots = sorted(set(_squarefree_rational_roots(ints)))
    rest = part.monic()
    for r in roots:
        rest = rest.exquo(UniPoly((-r, 1)))
    return roots, rest


# ---------------------------------------------------------------------------
# coprime bases and minimal polynomials


def coprime_basis(polys: Iterable[UniPoly]) -> list[UniPoly]:
    """Pairwise coprime monic refinement of squarefree polynomials.

    Every input is the product of the basis elements dividing it.
    """
    basis: list[UniPoly] = []
    for p in polys:
        rest = p.monic()
        if rest.degree < 1:
            continue
        out = []
        for b in basis:
            if rest.degree < 1:
                out.append(b)
                continue
            g = poly_gcd(b, rest)
            if g.degree < 1:
                out.append(b)
                continue
            out.append(g)
            bg = b.exquo(g)
            if bg.degree > 0:
                out.append(bg)
            rest = rest.exquo(g)
        if rest.degree > 0:
            out.append(rest.monic())
        basis = out
    return sorted(basis, key=lambda q: (q.degree, q.coeffs))


def minimal_polynomial(v: UniPoly, modulus: UniPoly) -> UniPoly:
    """Monic minimal polynomial of ``v(t)`` in ``Q[t]/(modulus)`` (modulus squarefree).

    Its roots are exactly the distinct values ``v(r)`` over the roots ``r`` of the modulus.
    """
    n = modulus.degree
    v = v % modulus
    # incremental echelon form of the Krylov vectors 1, v, v^2, ...
    rows: list[tuple[int, list[Fraction], list[Fraction]]] = []  # (pivot, vector, combination)
    power = UniPoly.constant(1)
    for k in range(n + 1):
        vec = [power[i] for i in range(n)]
        comb = [Fraction(0)] * (k + 1)
        comb[k] = Fraction(1)
        for piv, rv, rc in rows:
            c = vec[piv]
            if c:
                vec = [x - c * y for x, y in zip(vec, rv)]
                for i, y in enumerate(rc):
                    comb[i] -= c * y
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            return UniPoly(comb).monic()
        inv = 1 / vec[piv]
        rows.append((piv, [x * inv for x in vec], [x * inv for x in comb]))
        power = (power * v) % modulus
    raise AssertionError("Krylov sequence failed to become dependent")


# ---------------------------------------------------------------------------
# dynamic evaluation towers
#
# A level-k value is a tuple of level-(k-1) values reduced modulo the level-k
# defining polynomial. Level 0 values are Fractions.


class Split(Exception):
    """A zero divisor was met; the context splits into two coprime branches.

    ``level`` is 1-based. ``factors`` is ``(vanishing, other)``: the defining
    polynomial at that level where the offending element is zero, and the
    cofactor where it is invertible. ``contexts`` is filled in by :class:`Tower`.
    """

    def __init__(self, level: int, factors: tuple, contexts: tuple = ()):
        super().__init__(level, factors)
        self.level = level
        self.factors = factors
        self.contexts = contexts


class _Q:
    depth = 0
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if not a:
            raise DivisionByZero("division by zero")
        return 1 / a

    @staticmethod
    def is_zero(a) -> bool:
        return not a

    @staticmethod
    def embed(c):
        return _frac(c)


def _p_strip(a: list, K) -> tuple:
    n = len(a)
    while n and K.is_zero(a[n - 1]):
        n -= 1
    return tuple(a[:n])


def _p_add(a, b, K):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return _p_strip(out, K)


def _p_neg(a, K):
    return tuple(K.neg(c) for c in a)


def _p_sub(a, b, K):
    return _p_add(a, _p_neg(b, K), K)


def _p_mul(a, b, K):
    if not a or not b:
        return ()
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return _p_strip(out, K)


def _p_scale(a, c, K):
    return _p_strip([K.mul(x, c) for x in a], K)


def _p_divmod(a, b, K, monic=False):
    """Division by b over the level K; inverting lc(b) may raise Split."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    db = len(b) - 1
    rem = list(a)
    if len(rem) <= db:
        return (), _p_strip(rem, K)
    inv = K.one if monic else K.inv(b[-1])
    quo = [K.zero] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if K.is_zero(c):
            continue
        q = K.mul(c, inv)
        quo[k - db] = q
        for j in range(db + 1):
            rem[k - db + j] = K.sub(rem[k - db + j], K.mul(q, b[j]))
    return _p_strip(quo, K), _p_strip(rem[:db], K)


def _p_monic(a, K):
    if not a:
        return a
    return _p_scale(a, K.inv(a[-1]), K)


def _p_deriv(a, K):
    return _p_strip([K.mul(K.embed(i), c) for i, c in enumerate(a)][1:], K)


def _p_gcd(a, b, K):
    """Monic gcd over a tower level; the Euclidean steps may raise Split."""
    while b:
        a, b = b, _p_divmod(a, b, K)[1]
    return _p_monic(a, K)


def _p_exquo(a, b, K):
    q, r = _p_divmod(a, b, K)
    if r:
        raise ValueError("inexact division over tower")
    return q


class _Ext:
    """Q[t1][t2]... / (m1, m2, ...) at some level; elements are tuples over ``base``."""

    def __init__(self, base, modulus: tuple):
        self.base = base
        self.modulus = modulus
        self.depth = base.depth + 1
        self.zero = ()
        self.one = (base.one,)

    def reduce(self, a) -> tuple:
        a = _p_strip(list(a), self.base)
        if len(a) < len(self.modulus):
            return a
        return _p_divmod(a, self.modulus, self.base, monic=True)[1]

    def embed(self, c) -> tuple:
        c = self.base.embed(c)
        return () if self.base.is_zero(c) else (c,)

    def add(self, a, b):
        return _p_add(a, b, self.base)

    def sub(self, a, b):
        return _p_sub(a, b, self.base)

    def neg(self, a):
        return _p_neg(a, self.base)

    def mul(self, a, b):
        return self.reduce(_p_mul(a, b, self.base))

    def is_zero(self, a) -> bool:
        return not a

    def inv(self, a):
        K = self.base
        if not a:
            raise DivisionByZero("division by zero in tower")
        r0, r1 = self.modulus, a
        s0, s1 = (), (K.one,)
        while r1:
            q, r = _p_divmod(r0, r1, K)
            r0, r1 = r1, r
            s0, s1 = s1, _p_sub(s0, _p_mul(q, s1, K), K)
        if len(r0) == 1:
            return self.reduce(_p_scale(s0, K.inv(r0[0]), K))
        g = _p_monic(r0, K)
        other = _p_exquo(self.modulus, g, K)
        raise Split(self.depth, (g, other))


def _project(value, src_levels: list, dst_levels: list, depth: int):
    """Reduce a raw value of the given depth into a refined context."""
    if depth == 0:
        return value
    lower = [_project(c, src_levels, dst_levels, depth - 1) for c in value]
    return dst_levels[depth].reduce(lower)


class Tower:
    """A context of at most two nested squarefree monic defining polynomials.

    ``moduli[0]`` is a :class:`UniPoly` over Q. ``moduli[1]``, when present, is a
    tuple of coefficients that are raw level-1 values (or rationals).
    """

    __slots__ = ("moduli", "_levels")

    def __init__(self, moduli: Sequence):
        if len(moduli) > MAX_TOWER_DEPTH:
            raise DepthExceeded(f"tower depth {len(moduli)} exceeds {MAX_TOWER_DEPTH}")
        if not moduli:
            raise ValueError("a tower needs at least one defining polynomial")
        m1 = moduli[0] if isinstance(moduli[0], UniPoly) else UniPoly(moduli[0])
        if m1.degree < 1:
            raise ValueError("defining polynomial must have positive degree")
        m1 = m1.monic()
        if poly_gcd(m1, m1.derivative()).degree > 0:
            raise ValueError("defining polynomial is not squarefree")
        levels: list = [_Q]
        levels.append(_Ext(_Q, m1.coeffs))
        mods: list = [m1]
        if len(moduli) == 2:
            L1 = levels[1]
            raw = tuple(L1.reduce(c) if isinstance(c, tuple) else L1.embed(c) for c in moduli[1])
            raw = _p_strip(list(raw), L1)
            if len(raw) < 2:
                raise ValueError("defining polynomial must have positive degree")
            raw = _p_monic(raw, L1)
            levels.append(_Ext(L1, raw))
            mods.append(raw)
        self.moduli = tuple(mods)
        self._levels = levels

    @property
    def depth(self) -> int:
        return len(self.moduli)

    @property
    def top(self) -> _Ext:
        return self._levels[-1]

    def level(self, k: int):
        return self._levels[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, Tower) and self.moduli == other.moduli

    def __hash__(self) -> int:
        return hash(self.moduli)

    def __repr__(self) -> str:
        return f"Tower({list(self.moduli)!r})"

    def element(self, value) -> "TowerElement":
        """Element from a raw value: a rational, a list/UniPoly of coefficients."""
        if isinstance(value, UniPoly):
            value = value.coeffs
        top = self.top
        if isinstance(value, (int, Fraction)):
            raw = top.embed(value)
        else:
            raw = top.reduce([self._lift(c) for c in value])
        return TowerElement(self, raw)

    def _lift(self, c):
        if self.depth == 1:
            return _frac(c)
        L1 = self._levels[1]
        if isinstance(c, TowerElement):
            return c.value
        if isinstance(c, (int, Fraction)):
            return L1.embed(c)
        return L1.reduce([_frac(x) for x in c])

    def generator(self) -> "TowerElement":
        return self.element([0, 1])

    def refine(self, split: Split) -> tuple["Tower", "Tower"]:
        """The two branch contexts described by ``split``."""
        out = []
        for factor in split.factors:
            if split.level == 1:
                m1 = UniPoly(factor)
                if self.depth == 1:
                    out.append(Tower([m1]))
                else:
                    t1 = Tower([m1])
                    m2 = tuple(t1.level(1).reduce(c) for c in self.moduli[1])
                    out.append(Tower([m1, m2]))
            else:
                out.append(Tower([self.moduli[0], factor]))
        return tuple(out)

    def project(self, raw, target: "Tower"):
        return _project(raw, self._levels, target._levels, self.depth)


class TowerElement:
    """An element of ``Q[t1]/(m1)`` or ``Q[t1][t2]/(m1, m2)``."""

    __slots__ = ("tower", "value")

    def __init__(self, tower: Tower, value: tuple):
        self.tower = tower
        self.value = value

    def _wrap(self, v) -> "TowerElement":
        return TowerElement(self.tower, v)

    def _other(self, other):
        if isinstance(other, TowerElement):
            if other.tower != self.tower:
                raise ValueError("elements live in different towers")
            return other.value
        return self.tower.top.embed(other)

    def __add__(self, other):
        return self._wrap(self.tower.top.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.tower.top.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.tower.top.sub(self._other(other), self.value))

    def __mul__(self, other):
        return self._wrap(self.tower.top.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.tower.top.neg(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, TowerElement):
            return self.tower == other.tower and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.tower.top.embed(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.tower, self.value))

    def __repr__(self) -> str:
        return f"TowerElement({self.value!r} in {self.tower!r})"

    def is_zero(self) -> bool:
        return not self.value

    def inverse(self) -> "TowerElement":
        """Multiplicative inverse; raises :class:`Split` on a zero divisor."""
        if not self.value:
            raise DivisionByZero("element is zero on every branch")
        try:
            return self._wrap(self.tower.top.inv(self.value))
        except Split as s:
            s.contexts = self.tower.refine(s)
            raise

    def project(self, target: Tower) -> "TowerElement":
        return TowerElement(target, self.tower.project(self.value, target))


def tower_invert(x: TowerElement) -> TowerElement | Split:
    """Inverse of ``x`` or the :class:`Split` of its context (zero part first)."""
    try:
        return x.inverse()
    except Split as s:
        return s


def dispatch(tower: Tower, fn: Callable[[Tower], object]) -> list[tuple[Tower, object]]:
    """Run ``fn`` on ``tower``, re-running on both branches whenever it raises Split."""
    done = []
    todo = [tower]
    while todo:
        t = todo.pop(0)
        try:
            done.append((t, fn(t)))
        except Split as s:
            if not s.contexts:
                s.contexts = t.refine(s)
            todo[:0] = list(s.contexts)
    return done


def tower_squarefree(f: tuple, tower: Tower) -> list[tuple[int, int]]:
    """Yun's algorithm over the top level of ``tower``.

    ``f`` is a raw polynomial with top-level coefficients. Returns ``(multiplicity,
    degree)`` pairs. The shape is uniform over the tower's roots; a :class:`Split`
    is raised when it would not be.
    """
    K = tower.top
    f = _p_monic(f, K)
    df = _p_deriv(f, K)
    c = _p_gcd(f, df, K)
    w = _p_exquo(f, c, K)
    y = _p_exquo(df, c, K)
    z = _p_sub(y, _p_deriv(w, K), K)
    out = []
    k = 1
    while len(w) > 1:
        g = _p_gcd(w, z, K) if z else w
        if len(g) > 1:
            out.append((k, len(g) - 1))
        w = _p_exquo(w, g, K)
        y = _p_exquo(z, g, K) if z else ()
        z = _p_sub(y, _p_deriv(w, K), K)
        k += 1
    return out
