"""Rational functions whose Galois closure has genus zero, up to Möbius equivalence.

Fixed entries are stored as expression strings so that the coefficients read
exactly as printed and round-trip through the CLI parser.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .exactnum import UniPoly
from .expr import parse_map
from .ratmap import RationalMap, make_map

__all__ = [
    "BadParameter",
    "CatalogEntry",
    "FIXED_FORMULAS",
    "cyclic",
    "chebyshev",
    "dihedral_half",
    "parametric_entry",
    "fixed_entries",
    "catalog",
    "entry",
    "PLATONIC_SIGNATURES",
]


class BadParameter(ValueError):
    pass


PLATONIC_SIGNATURES = {
    "Tetra": (2, 3, 3),
    "Octa": (2, 3, 4),
    "Icosa": (2, 3, 5),
}

FIXED_FORMULAS: dict[str, str] = {
    "Tetra_a": "-1/2^6 * z^3*(z^3 - 8)^3 / (z^3 + 1)^3",
    "Tetra_b": "-1/2^6 * z*(z - 8)^3 / (z + 1)^3",
    "Tetra_c": "-1/2^6 * ((z^2 - 4)/(z - 1))^3",
    "Octa_a": "1/(2^2*3^3) * (z^8 + 14*z^4 + 1)^3 / (z^4*(z^4 - 1)^4)",
    "Octa_b": "1/(2^2*3^3) * (z^2 + 14*z + 1)^3 / (z*(z - 1)^4)",
    "Octa_c": "-1/3^3 * (z^2 - 4)^3 / z^4",
    "Octa_d": "2^2/3^3 * (z^4 - z^2 + 1)^3 / (z^4*(z^2 - 1)^2)",
    "Octa_e": "-1/27 * (2*z^2 + 1)^3*(2*z^2 - 3)^3 / (2*z^2 - 1)^4",
    "Octa_f": "-2^8/3^3 * z^3*(z - 1)",
    "Octa_g": "2^8 * z*(z^2 - 7*z - 8)^3 / (z^2 + 20*z - 8)^4",
    "Icosa_a": (
        "1/(2^6*3^3) * (z^20 + 228*z^15 + 494*z^10 - 228*z^5 + 1)^3"
        " / ((z^10 - 11*z^5 - 1)^5*z^5)"
    ),
    "Icosa_b": "-1/(2^11*3) * (3*z + 5)^3*(z^2 + 15)",
    "Icosa_c": "1/(2^6*3^3) * (z^2 - 20)^3 / (z - 5)",
    "Icosa_d": "2^9*5^4/3^2 * (20*z^3 - 87*z - 95)^3 / (20*z^2 + 140*z + 101)^5",
    "Icosa_e": (
        "1/(2^6*3^3) * (z^4 + 228*z^3 + 494*z^2 - 228*z + 1)^3"
        " / ((z^2 - 11*z - 1)^5*z)"
    ),
    "Icosa_f": (
        "5^4/3^3 * (-40*z^2 - 20*z - 4)^3*z^3*(5*z^2 + 5*z + 1)^3"
        " / (20*z^2 + 10*z + 1)^5"
    ),
    "Icosa_g": (
        "5^3/2^6 * z*(z^2 + 5*z + 40)^3*(z^2 - 40*z - 5)^3*(8*z^2 - 5*z + 5)^3"
        " / (z^4 + 55*z^3 - 165*z^2 - 275*z + 25)^5"
    ),
    "Icosa_h": (
        "1/(2^6*3^3) * (z^2 + 3*z + 1)^3*(z^4 - 4*z^3 + 11*z^2 - 14*z + 31)^3"
        "*(z^4 + z^3 + 11*z^2 - 4*z + 16)^3"
        " / ((z - 1)^5*(z^4 + z^3 + 6*z^2 + 6*z + 11)^5)"
    ),
}

# entries that are universal coverings, i.e. Galois themselves
GALOIS_FIXED = ("Tetra_a", "Octa_a", "Icosa_a")


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    map: RationalMap
    signature: tuple[int, ...]
    n: int | None = None
    galois: bool = False

    @property
    def name(self) -> str:
        return self.family if self.n is None else f"{self.family}({self.n})"

    @property
    def degree(self) -> int:
        return self.map.degree


def cyclic(n: int) -> RationalMap:
    """``z^n`` for ``n >= 1``."""
    if n < 1:
        raise BadParameter(f"cyclic family needs n >= 1, got {n}")
    return make_map(UniPoly.monomial(n))


def chebyshev(n: int) -> RationalMap:
    """``T_n`` from ``T_n = 2 z T_{n-1} - T_{n-2}``, ``T_0 = 1``, ``T_1 = z``; ``n >= 2``."""
    if n < 2:
        raise BadParameter(f"Chebyshev family needs n >= 2, got {n}")
    z = UniPoly.z()
    prev, cur = UniPoly.constant(1), z
    for _ in range(n - 1):
        prev, cur = cur, z * cur * 2 - prev
    return make_map(cur)


def chebyshev_poly(n: int) -> UniPoly:
    """``T_n`` for any ``n >= 0`` as a polynomial."""
    z = UniPoly.z()
    prev, cur = z, UniPoly.constant(1)
    for _ in range(n):
        prev, cur = cur, z * cur * 2 - prev
    return cur


def dihedral_half(n: int) -> RationalMap:
    """``(z^{2n} + 1) / (2 z^n)`` for ``n >= 2``."""
    if n < 2:
        raise BadParameter(f"dihedral family needs n >= 2, got {n}")
    return make_map(UniPoly.monomial(2 * n) + 1, UniPoly.monomial(n, 2))


def parametric_entry(family: str, n: int) -> CatalogEntry:
    if family == "Cyclic":
        sig = (n, n) if n >= 2 else ()
        return CatalogEntry("Cyclic", cyclic(n), sig, n, galois=True)
    if family == "DihedralHalf":
        return CatalogEntry("DihedralHalf", dihedral_half(n), tuple(sorted((2, 2, n))), n, galois=True)
    if family == "Chebyshev":
        # T_2 is z^2 up to Möbius maps, so one of its three branch values drops out
        sig = (2, 2) if n == 2 else tuple(sorted((2, 2, n)))
        return CatalogEntry("Chebyshev", chebyshev(n), sig, n)
    raise BadParameter(f"unknown parametric family {family!r}")


_lock = threading.Lock()
_fixed: list[CatalogEntry] | None = None


def fixed_entries() -> list[CatalogEntry]:
    """The eighteen fixed entries, built once."""
    global _fixed
    with _lock:
        if _fixed is None:
            out = []
            for name, src in FIXED_FORMULAS.items():
                solid = name.split("_")[0]
                out.append(
                    CatalogEntry(name, parse_map(src), PLATONIC_SIGNATURES[solid], galois=name in GALOIS_FIXED)
                )
            _fixed = out
        return list(_fixed)


def entry(name: str) -> CatalogEntry:
    for e in fixed_entries():
        if e.family == name:
            return e
    raise KeyError(name)


def catalog(max_n: int = 0) -> list[CatalogEntry]:
    """Fixed entries, followed by the parametric families for ``n <= max_n``."""
    out = fixed_entries()
    for n in range(1, max_n + 1):
        out.append(parametric_entry("Cyclic", n))
    for family in ("DihedralHalf", "Chebyshev"):
        for n in range(2, max_n + 1):
            out.append(parametric_entry(family, n))
    return out
