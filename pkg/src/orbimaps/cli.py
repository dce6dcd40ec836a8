"""Command-line front end: ``orbimaps <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import identities as identity_suite
from .catalog import BadParameter, CatalogEntry, fixed_entries, parametric_entry
from .classify import (
    ZERO_CHI_FORCED,
    NoMatch,
    Unsupported,
    catalog_match,
    genus_class,
    is_lattes,
    mu_equivalent,
    verify_decomposition,
    zero_chi_analysis,
)
from .exactnum import UniPoly, format_poly
from .expr import ParseError, parse_map
from .orbifold import Orbifold, euler_char, ramification_orbifolds, signature
from .ratmap import (
    AlgebraicClass,
    Infinity,
    InvariantViolation,
    Mobius,
    Place,
    RationalMap,
    compose_all,
    format_map,
    make_map,
    passport,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

PARAMETRIC = {"cyclic": "Cyclic", "dihedral": "DihedralHalf", "chebyshev": "Chebyshev"}
SOLIDS = {"tetra": "Tetra", "octa": "Octa", "icosa": "Icosa"}
MAX_N = 1000


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# serialization


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def place_json(p: Place):
    if isinstance(p, Infinity):
        return "inf"
    if isinstance(p, AlgebraicClass):
        return {"minpoly": [fraction_str(c) for c in p.poly.coeffs], "index": p.index}
    return fraction_str(p.value)


def orbifold_json(o: Orbifold) -> list:
    return [[place_json(p), nu] for p, nu in o.support]


def mobius_str(mu: Mobius) -> str:
    return format_map(mu.as_map())


def passport_json(A: RationalMap) -> list:
    return [[place_json(p), sorted(part)] for p, part in passport(A).entries]


def signature_str(sig) -> str:
    return "{" + ",".join(map(str, sig)) + "}"


# ---------------------------------------------------------------------------
# input


def read_map(args, expr_attr: str = "expr") -> RationalMap:
    src = getattr(args, expr_attr, None)
    num = getattr(args, "num", None)
    den = getattr(args, "den", None)
    if src is not None and (num is not None or den is not None):
        raise UsageError("give either an expression or --num/--den, not both")
    if src is not None:
        return parse_map(src)
    if num is None:
        raise UsageError("missing expression (or --num/--den)")
    den_poly = UniPoly(den) if den is not None else UniPoly.constant(1)
    if not den_poly:
        raise UsageError("denominator is zero")
    return make_map(UniPoly(num), den_poly)


# ---------------------------------------------------------------------------
# commands


def build_report(A: RationalMap) -> dict:
    if A.degree < 1:
        raise UsageError("constant maps are not classified")
    o1, o2 = ramification_orbifolds(A)
    genus = genus_class(A)
    matches = []
    if genus.value == "zero":
        try:
            found = catalog_match(A)
        except Unsupported as exc:
            print(f"warning: catalog search skipped: {exc}", file=sys.stderr)
            found = []
        for m in found:
            item = {"family": m.entry.family}
            if m.entry.n is not None:
                item["n"] = m.entry.n
            item["mu_left"] = mobius_str(m.mu_left)
            item["mu_right"] = mobius_str(m.mu_right)
            matches.append(item)
    witness = None
    lattes = {"flag": False, "orbifold": None}
    if A.degree >= 2:
        w = zero_chi_analysis(A)
        if w is not None:
            witness = {"case": w.case, "o1": orbifold_json(w.o1), "o2": orbifold_json(w.o2)}
        result = is_lattes(A)
        if result:
            lattes = {"flag": True, "orbifold": orbifold_json(result.orbifold)}
    return {
        "degree": A.degree,
        "passport": passport_json(A),
        "signature": signature(o2),
        "chi": fraction_str(euler_char(o2)),
        "genus": genus.value,
        "matches": matches,
        "zero_chi_witness": witness,
        "lattes": lattes,
    }


def _orbifold_text(o) -> str:
    if not o:
        return "{}"
    parts = []
    for p, nu in o:
        if isinstance(p, str):
            shown = p.removesuffix("/1")
        else:
            shown = "root of " + format_poly(UniPoly([Fraction(c) for c in p["minpoly"]]))
        parts.append(f"{shown}: {nu}")
    return "{" + ", ".join(parts) + "}"


def report_text(A: RationalMap, r: dict) -> str:
    lines = [
        f"map: {format_map(A)}",
        f"degree: {r['degree']}",
        f"passport: {passport(A)}",
        f"signature: {signature_str(r['signature'])}",
        f"chi: {r['chi']}",
        f"genus: {r['genus']}",
    ]
    if r["matches"]:
        for m in r["matches"]:
            name = m["family"] + (f"({m['n']})" if "n" in m else "")
            lines.append(f"match: {name} with mu_left = {m['mu_left']}, mu_right = {m['mu_right']}")
    elif r["genus"] == "zero":
        lines.append("match: none found")
    w = r["zero_chi_witness"]
    if w is None:
        lines.append("zero-chi witness: none")
    else:
        case = w["case"] if w["case"] == ZERO_CHI_FORCED else f"case {w['case']}"
        lines.append(f"zero-chi witness: {case}, o1 = {_orbifold_text(w['o1'])}, o2 = {_orbifold_text(w['o2'])}")
    lat = r["lattes"]
    if lat["flag"]:
        lines.append(f"lattes: true, orbifold = {_orbifold_text(lat['orbifold'])}")
    else:
        lines.append("lattes: false")
    return "\n".join(lines)


def cmd_classify(args) -> int:
    A = read_map(args)
    report = build_report(A)
    emit(args, report, lambda: report_text(A, report))
    return EXIT_OK


def cmd_passport(args) -> int:
    A = read_map(args)
    if A.degree < 1:
        raise UsageError("constant maps have no passport")
    emit(args, passport_json(A), lambda: str(passport(A)))
    return EXIT_OK


def cmd_mu_equiv(args) -> int:
    A1 = parse_map(args.first)
    A2 = parse_map(args.second)
    if A1.degree < 1 or A2.degree < 1:
        raise UsageError("constant maps are not compared")
    try:
        found = mu_equivalent(A1, A2)
    except Unsupported as exc:
        reason = str(exc)
        emit(args, {"equivalent": None, "reason": reason}, lambda: f"undecided: {reason}")
        return EXIT_FAILED
    if found is None:
        emit(args, {"equivalent": False}, lambda: "not equivalent over Q")
        return EXIT_FAILED
    mu1, mu2 = found
    data = {"equivalent": True, "mu_left": mobius_str(mu1), "mu_right": mobius_str(mu2)}
    emit(args, data, lambda: f"equivalent: mu_left = {data['mu_left']}, mu_right = {data['mu_right']}")
    return EXIT_OK


def cmd_compose(args) -> int:
    parts = [parse_map(src) for src in args.parts]
    result = compose_all(parts)
    data = {"result": format_map(result)}
    code = EXIT_OK
    if args.check is not None:
        ok = verify_decomposition(parse_map(args.check), parts)
        data["check"] = ok
        code = EXIT_OK if ok else EXIT_FAILED

    def text():
        out = format_map(result)
        if "check" in data:
            out += "\ncheck: " + ("equal" if data["check"] else "NOT equal")
        return out

    emit(args, data, text)
    return code


def _entry_json(e: CatalogEntry) -> dict:
    item = {"name": e.name, "family": e.family}
    if e.n is not None:
        item["n"] = e.n
    item.update(
        degree=e.degree,
        numerator=[fraction_str(c) for c in e.map.num.coeffs],
        denominator=[fraction_str(c) for c in e.map.den.coeffs],
        expression=format_map(e.map),
        signature=list(e.signature),
    )
    return item


def select_entries(family: str | None, n: int | None) -> list[CatalogEntry]:
    if family is None:
        if n is not None:
            raise UsageError("--n needs a parametric --family")
        return fixed_entries()
    if family in PARAMETRIC:
        if n is None:
            raise UsageError(f"--family {family} needs --n")
        if not 1 <= n <= MAX_N:
            raise BadParameter(f"--n must lie in [1, {MAX_N}], got {n}")
        return [parametric_entry(PARAMETRIC[family], n)]
    if n is not None:
        raise UsageError(f"--n does not apply to --family {family}")
    prefix = SOLIDS[family] + "_"
    return [e for e in fixed_entries() if e.family.startswith(prefix)]


def cmd_catalog(args) -> int:
    entries = select_entries(args.family, args.n)
    data = [_entry_json(e) for e in entries]
    emit(
        args,
        data,
        lambda: "\n".join(
            f"{e['name']}  degree {e['degree']}  signature {signature_str(e['signature'])}  {e['expression']}"
            for e in data
        ),
    )
    return EXIT_OK


def cmd_verify_identities(args) -> int:
    results = identity_suite.run_all()
    failed = [r for r in results if not r.ok]
    data = [{"identity": r.name, "status": "pass" if r.ok else "fail"} for r in results]

    def text():
        lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.name}" for r in results]
        lines.append(f"{len(results) - len(failed)}/{len(results)} identities verified")
        return "\n".join(lines)

    emit(args, data, text)
    if failed:
        print(f"identity failed: {failed[0].name}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def emit(args, data, text) -> None:
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    elif not args.quiet:
        print(text())


# ---------------------------------------------------------------------------
# argument parsing


def _add_map_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("expr", nargs="?", help="rational function in z, e.g. '1/2*(z^3 + z^-3)'")
    p.add_argument("--num", type=int, nargs="+", help="numerator coefficients, lowest degree first")
    p.add_argument("--den", type=int, nargs="+", help="denominator coefficients, lowest degree first")


def _global_flags() -> argparse.ArgumentParser:
    # a fresh parent per use: argparse shares action objects with its children
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="suppress normal output")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbimaps",
        description="Classify rational functions by the genus of their Galois closure.",
        parents=[_global_flags()],
    )
    parser.set_defaults(json=False, quiet=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[_global_flags()], help="full report for one map")
    _add_map_input(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("passport", parents=[_global_flags()], help="branch data of one map")
    _add_map_input(p)
    p.set_defaults(func=cmd_passport)

    p = sub.add_parser("mu-equiv", parents=[_global_flags()], help="search for A1 = mu1 . A2 . mu2")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_mu_equiv)

    p = sub.add_parser("compose", parents=[_global_flags()], help="compose maps, outermost first")
    p.add_argument("parts", nargs="+")
    p.add_argument("--check", metavar="EXPR", help="verify that the composition equals EXPR")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("catalog", parents=[_global_flags()], help="list catalog entries")
    p.add_argument("--family", choices=sorted([*PARAMETRIC, *SOLIDS]))
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify-identities", parents=[_global_flags()], help="check the built-in identity suite")
    p.set_defaults(func=cmd_verify_identities)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, BadParameter) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantViolation, NoMatch) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
