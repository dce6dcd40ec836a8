"""Built-in decomposition and factorization identities among catalog functions.

Each identity states ``lhs == parts[0] ∘ parts[1] ∘ ...`` with every side an
expression string; a single part is a plain equality of rational functions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import FIXED_FORMULAS as F
from .catalog import chebyshev_poly
from .exactnum import format_poly
from .ratmap import compose_all
from .expr import parse_map

__all__ = ["Identity", "IdentityResult", "identities", "check", "run_all"]

# 1/54 (z+7)^3/(z-1)^2, the octahedral left factor over the D8 quotient
L_OCTA = "1/54*(z + 7)^3/(z - 1)^2"


def _half(k: int, eps: int = 1) -> str:
    """``½(eps z^k + 1/(eps z^k))``."""
    if eps == 1:
        return f"1/2*(z^{k} + z^-{k})"
    return f"1/2*({eps}*z^{k} + 1/({eps}*z^{k}))"


def _cheb(d: int, sign: int = 1) -> str:
    body = format_poly(chebyshev_poly(d))
    return f"({body})" if sign == 1 else f"-({body})"


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: str
    parts: tuple[str, ...]


@dataclass(frozen=True)
class IdentityResult:
    name: str
    ok: bool


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def identities() -> list[Identity]:
    out: list[Identity] = []
    for n in range(2, 9):
        for d in _divisors(n):
            out.append(Identity(f"ega n={n} d={d}", f"z^{n}", (f"z^{d}", f"z^{n // d}")))
    for n in range(2, 9):
        for d in _divisors(n):
            out.append(Identity(f"ega1 n={n} d={d}", _half(n), (_half(d), f"z^{n // d}")))
    for n in range(2, 9):
        for d in _divisors(n):
            for eps in (1, -1):
                outer = _cheb(d, eps**d)
                out.append(Identity(f"ega2 n={n} d={d} eps={eps}", _half(n), (outer, _half(n // d, eps))))
    for d in range(1, 9):
        out.append(Identity(f"chebyshev d={d}", _half(d), (_cheb(d), _half(1))))
    tetra_a = F["Tetra_a"]
    out += [
        Identity("a4 cube", tetra_a, (F["Tetra_b"], "z^3")),
        Identity("dee", tetra_a, ("-1/64*z^3", "(z^2 - 4)/(z - 1)", "(z^2 + 2)/(z + 1)")),
        Identity("fa4 sextic", tetra_a, (F["Tetra_c"], "(z^2 + 2)/(z + 1)")),
        Identity("egik", f"{tetra_a} - 1", ("-1/64*(z^6 + 20*z^3 - 8)^2/(z^3 + 1)^3",)),
        Identity("xorr", F["Octa_a"], (L_OCTA, _half(4))),
        Identity("theta D8", _half(4), (_half(1), "z^4")),
        Identity("xlop", F["Octa_b"], (L_OCTA, _half(1))),
        Identity("T2 quarter", _half(4), (_cheb(2), _half(2))),
        Identity("ep", "1/27*(z^2 + 3)^3/(z^2 - 1)^2", (L_OCTA, _cheb(2))),
        Identity("ep minus one", "1/27*(z^2 + 3)^3/(z^2 - 1)^2 - 1", ("1/27*z^2*(z^2 - 9)^2/(z^2 - 1)^2",)),
        Identity("epp", F["Octa_c"], (L_OCTA, _cheb(2, -1))),
        Identity("prev", F["Octa_d"], (L_OCTA, _cheb(4))),
        Identity("prevv", F["Octa_e"], (L_OCTA, _cheb(4, -1))),
        Identity(
            "esz",
            "-1/432*(16*z^8 - 56*z^4 + 1)^3/(z^4*(4*z^4 + 1)^4)",
            (F["Octa_f"], "1/8*(2*z^2 + 2*z - 1)*(4*z^4 + 8*z^2 + 1)/(z*(4*z^4 + 1))"),
        ),
        Identity(
            "esz rotation",
            "-1/432*(16*z^8 - 56*z^4 + 1)^3/(z^4*(4*z^4 + 1)^4)",
            (F["Octa_b"], "-4*z^4"),
        ),
        Identity(
            "bs4",
            "256*z^3*(z^6 - 7*z^3 - 8)^3/(z^6 + 20*z^3 - 8)^4",
            ("-4*z/(z^2 + 1 - 2*z)", tetra_a),
        ),
        Identity(
            "bs4 minus one",
            "256*z^3*(z^6 - 7*z^3 - 8)^3/(z^6 + 20*z^3 - 8)^4 - 1",
            (
                "-(z^2 + 2)^2*(z^4 - 2*z^2 + 4)^2*(z^2 - 4*z - 2)^2*(z^4 + 4*z^3 + 18*z^2 - 8*z + 4)^2"
                "/(z^6 + 20*z^3 - 8)^4",
            ),
        ),
        Identity("bs4 left factor", F["Octa_g"], ("-4*z/(z^2 + 1 - 2*z)", F["Tetra_b"])),
        Identity("icosa quintic", F["Icosa_a"], (F["Icosa_e"], "z^5")),
    ]
    minus_one = {
        "a": "1/1728*(z^30 - 522*z^25 - 10005*z^20 - 10005*z^10 + 522*z^5 + 1)^2"
        "/(z^5*(z^10 - 11*z^5 - 1)^5)",
        "b": "-1/6144*(3*z + 11)*(3*z^2 + 2*z + 27)^2",
        "c": "1/1728*(z^2 + 12*z + 40)*(z^2 - 6*z + 4)^2/(z - 5)",
        "d": "-1/9*(180*z^2 + 380*z + 229)*(20*z^2 + 20*z + 41)^2*(20*z^2 - 580*z - 979)^2"
        "/(20*z^2 + 140*z + 101)^5",
        "e": "1/1728*(z^6 - 522*z^5 - 10005*z^4 - 10005*z^2 + 522*z + 1)^2/(z*(z^2 - 11*z - 1)^5)",
        "f": "-1/27*(10*z + 3)*(20*z^2 + 20*z + 1)*(10*z^2 + 10*z + 3)^2"
        "*(500*z^4 + 300*z^3 + 70*z^2 + 10*z + 1)^2/(20*z^2 + 10*z + 1)^5",
        "g": "-1/64*(z^2 + 5)^2*(8*z^4 - 100*z^3 + 2055*z^2 + 500*z + 200)^2"
        "*(z^4 - 350*z^3 - 2190*z^2 + 1750*z + 25)^2/(z^4 + 55*z^3 - 165*z^2 - 275*z + 25)^5",
        "h": "1/1728*(z^2 + 4)*(z^2 - 2*z - 4)^2*(z^4 + 3*z^2 + 1)^2"
        "*(z^4 + 6*z^3 + 21*z^2 + 36*z + 61)^2*(z^4 - 4*z^3 + 21*z^2 - 34*z + 41)^2"
        "/((z - 1)^5*(z^4 + z^3 + 6*z^2 + 6*z + 11)^5)",
    }
    for letter, display in minus_one.items():
        out.append(Identity(f"Icosa_{letter} minus one", f"({F['Icosa_' + letter]}) - 1", (display,)))
    return out


def check(identity: Identity) -> bool:
    lhs = parse_map(identity.lhs)
    rhs = compose_all(parse_map(p) for p in identity.parts)
    return lhs == rhs


def run_all(items: list[Identity] | None = None) -> list[IdentityResult]:
    """Check every identity in order."""
    return [IdentityResult(i.name, check(i)) for i in (identities() if items is None else items)]
