"""Acceptance criteria, one test each, at exact tolerance.

Every test prints a single ``PASS`` or ``FAIL`` line before asserting, so the
verdicts show up in the terminal even when output capture is on.
"""

import random
import time

import pytest

from orbimaps.catalog import (
    PLATONIC_SIGNATURES,
    cyclic,
    dihedral_half,
    entry,
    fixed_entries,
    parametric_entry,
)
from orbimaps.classify import (
    CASE_TABLE,
    GenusClass,
    catalog_match,
    genus_class,
    is_belyi,
    is_lattes,
    zero_chi_analysis,
    zero_chi_witnesses,
)
from orbimaps.exactnum import UniPoly
from orbimaps.expr import parse_map
from orbimaps.identities import identities, run_all
from orbimaps.orbifold import (
    Orbifold,
    euler_char,
    is_covering,
    leq,
    pullback_orbifold,
    ramification_orbifolds,
    signature,
)
from orbimaps.ratmap import (
    Finite,
    Mobius,
    branch_data,
    compose,
    fiber,
    make_map,
    mobius_conjugate,
    place_size,
)

DOUBLING = parse_map("(z^2 + 1)^2/(4*z*(z^2 - 1))")
TRIPLING = parse_map("z - 8*(z^3 - z)*(z^6 - 5*z^4 - 5*z^2 + 1)/(3*z^4 - 6*z^2 - 1)^2")


@pytest.fixture
def verdict(capsys):
    def say(number, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}" + (f": {detail}" if detail else "")
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return say


def family_signature(family, n):
    """Signature the family is listed with: {n,n} for cyclic, {2,2,n} for the dihedral families."""
    if family == "Cyclic":
        return [n, n]
    return sorted([2, 2, n])


def test_catalog_signature_table(verdict):
    start = time.perf_counter()
    problems = []
    for e in fixed_entries():
        solid = e.family.split("_")[0]
        sig = signature(ramification_orbifolds(e.map)[1])
        if genus_class(e.map) is not GenusClass.ZERO or sig != list(PLATONIC_SIGNATURES[solid]):
            problems.append(f"{e.name}: {sig}")
    for n in range(2, 26):
        for family in ("Cyclic", "DihedralHalf", "Chebyshev"):
            e = parametric_entry(family, n)
            sig = signature(ramification_orbifolds(e.map)[1])
            if genus_class(e.map) is not GenusClass.ZERO or sig != family_signature(family, n):
                problems.append(f"{e.name}: computed {sig}, listed {family_signature(family, n)}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 30
    verdict(1, ok, "; ".join(problems) or f"{elapsed:.1f}s")


def test_belyi_certificates(verdict):
    start = time.perf_counter()
    problems = []
    for e in fixed_entries():
        cert = is_belyi(e.map)
        if not cert or cert.preimage_count != e.degree + 2:
            problems.append(f"{e.name}: {cert.preimage_count} points, degree {e.degree}")
    tetra = is_belyi(entry("Tetra_a").map).preimage_count
    elapsed = time.perf_counter() - start
    ok = not problems and tetra == 14 and elapsed < 10
    verdict(2, ok, "; ".join(problems) or f"Tetra_a has {tetra} points, {elapsed:.1f}s")


def test_galois_covering_law(verdict):
    maps = [cyclic(n) for n in range(2, 26)] + [dihedral_half(n) for n in range(2, 26)]
    maps += [entry(name).map for name in ("Tetra_a", "Octa_a", "Icosa_a")]
    problems = []
    for A in maps:
        o1, o2 = ramification_orbifolds(A)
        if o1 or euler_char(o2) * A.degree != 2:
            problems.append(str(A))
    degrees = [entry(name).degree for name in ("Tetra_a", "Octa_a", "Icosa_a")]
    ok = not problems and degrees == [12, 24, 60]
    verdict(3, ok, "; ".join(problems) or f"{len(maps)} Galois coverings")


def test_identity_suite(verdict):
    start = time.perf_counter()
    results = run_all()
    failed = [r.name for r in results if not r.ok]
    names = {i.name for i in identities()}
    required = {f"chebyshev d={d}" for d in range(1, 9)}
    required |= {f"Icosa_{c} minus one" for c in "abcdefgh"}
    required |= {"dee", "xlop", "ep", "epp", "prev", "prevv", "esz", "bs4", "egik"}
    required |= {f"ega1 n={n} d={d}" for n in range(2, 9) for d in range(1, n + 1) if n % d == 0}
    missing = sorted(required - names)
    elapsed = time.perf_counter() - start
    ok = not failed and not missing and len(results) >= 20 and elapsed < 60
    verdict(4, ok, f"failed {failed}, missing {missing}" if failed or missing else f"{len(results)} identities, {elapsed:.1f}s")


REPRESENTATIVES = [
    "z^2",
    "z^3",
    "z^4",
    "(z^4 + 1)/(2*z^2)",
    "1/2*(z^3 + z^-3)",
    "1/2*(z^4 + z^-4)",
    "4*z^3 - 3*z",
    "8*z^4 - 8*z^2 + 1",
]


def test_zero_chi_case_table(verdict):
    start = time.perf_counter()
    maps = [parse_map(s) for s in REPRESENTATIVES] + [entry(n).map for n in ("Tetra_a", "Tetra_b", "Tetra_c")]
    problems = []
    reached = set()
    for A in maps:
        w = zero_chi_analysis(A)
        if w is None:
            problems.append(f"{A}: no witness")
            continue
        for cand in zero_chi_witnesses(A):
            row = CASE_TABLE[cand.case]
            sig_pair = (tuple(signature(cand.o1)), tuple(signature(cand.o2)))
            good = (
                is_covering(A, cand.o1, cand.o2)
                and euler_char(cand.o1) == 0
                and euler_char(cand.o2) == 0
                and sig_pair == row[2:]
                and A.degree == row[1]
            )
            if not good:
                problems.append(f"{A}: case {cand.case}")
            reached.add(cand.case)
    t3 = zero_chi_analysis(parse_map("4*z^3 - 3*z"))
    case11 = t3.case == 11 and signature(t3.o1) == signature(t3.o2) == [2, 3, 6]
    elapsed = time.perf_counter() - start
    ok = not problems and reached == set(CASE_TABLE) and case11 and elapsed < 10
    verdict(5, ok, "; ".join(problems) or f"cases {sorted(reached)}, {elapsed:.1f}s")


def test_lattes_boundary(verdict):
    start = time.perf_counter()
    problems = []
    if not is_lattes(DOUBLING):
        problems.append("doubling map not Lattès")
    if genus_class(DOUBLING) is not GenusClass.ONE:
        problems.append(f"doubling map has genus class {genus_class(DOUBLING).value}, listed as one")
    for n in range(2, 7):
        if is_lattes(cyclic(n)):
            problems.append(f"z^{n} Lattès")
        if is_lattes(parametric_entry("Chebyshev", n).map):
            problems.append(f"T_{n} Lattès")
    corpus = [DOUBLING, TRIPLING, compose(DOUBLING, DOUBLING)] + [e.map for e in fixed_entries() if e.degree <= 12]
    corpus += [cyclic(n) for n in range(2, 7)] + [dihedral_half(n) for n in range(2, 5)]
    for A in corpus:
        if A.degree > 4 and is_lattes(A) and genus_class(A) is not GenusClass.ONE:
            problems.append(f"{A}: Lattès of degree {A.degree} but not genus one")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 10
    verdict(6, ok, "; ".join(problems) or f"{elapsed:.1f}s")


def _random_map(rng):
    while True:
        dn, dd = rng.randint(0, 6), rng.randint(0, 6)
        num = UniPoly([rng.randint(-5, 5) for _ in range(dn + 1)])
        den = UniPoly([rng.randint(-5, 5) for _ in range(dd + 1)])
        if not den:
            continue
        A = make_map(num, den)
        if A.degree >= 2:
            return A


def _random_dominating(rng, A, o2a):
    entries = {p: nu * rng.choice([1, 1, 2, 3]) for p, nu in o2a.support}
    critical = set(branch_data(A))
    for _ in range(rng.randint(0, 2)):
        p = Finite(rng.randint(-20, 20))
        if p not in critical:
            entries[p] = rng.randint(2, 5)
    return Orbifold.of(entries)


def test_structural_invariants(verdict):
    start = time.perf_counter()
    rng = random.Random(20261016)
    problems = []
    for _ in range(100):
        A = _random_map(rng)
        d = A.degree
        data = branch_data(A)
        for v in list(data) + [Finite(rng.randint(-9, 9))]:
            if sum(k * place_size(p) for p, k in fiber(A, v)) != d * place_size(v):
                problems.append(f"{A}: fiber sum over {v}")
        if sum(place_size(v) * sum(k - 1 for k in part) for v, part in data.items()) != 2 * d - 2:
            problems.append(f"{A}: Riemann-Hurwitz count")
        o1a, o2a = ramification_orbifolds(A)
        if euler_char(o1a) != d * euler_char(o2a):
            problems.append(f"{A}: Euler characteristics")
        for _ in range(20):
            o2 = _random_dominating(rng, A, o2a)
            o1 = pullback_orbifold(A, o2)
            if not (is_covering(A, o1, o2) and leq(o1a, o1) and leq(o2a, o2)):
                problems.append(f"{A}: minimality against {o2}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 60
    verdict(7, ok, "; ".join(problems[:5]) or f"100 maps, {elapsed:.1f}s")


def _random_mobius(rng):
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c:
            return Mobius(a, b, c, d)


def test_mobius_invariance(verdict):
    start = time.perf_counter()
    rng = random.Random(8)
    problems = []
    for A in (parametric_entry("Chebyshev", 5).map, entry("Octa_b").map, entry("Icosa_e").map):
        genus = genus_class(A)
        families = {m.entry.name for m in catalog_match(A)}
        for _ in range(20):
            B = mobius_conjugate(A, _random_mobius(rng), _random_mobius(rng))
            matches = catalog_match(B)
            if genus_class(B) is not genus or {m.entry.name for m in matches} != families:
                problems.append(str(B))
            for m in matches:
                if mobius_conjugate(m.entry.map, m.mu_left, m.mu_right) != B:
                    problems.append(f"{B}: bad witness")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 30
    verdict(8, ok, "; ".join(problems[:5]) or f"60 conjugates, {elapsed:.1f}s")
