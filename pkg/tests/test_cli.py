import json
import subprocess
import sys

import pytest

from orbimaps import cli
from orbimaps import identities as identity_suite
from orbimaps.identities import Identity

DOUBLING = "(z^2+1)^2 / (4*z*(z^2-1))"
TRIPLING = "z - 8*(z^3 - z)*(z^6 - 5*z^4 - 5*z^2 + 1)/(3*z^4 - 6*z^2 - 1)^2"
SCHEMA = ["degree", "passport", "signature", "chi", "genus", "matches", "zero_chi_witness", "lattes"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_chebyshev(capsys):
    code, out, _ = run(capsys, "--json", "classify", "4*z^3 - 3*z")
    assert code == 0
    report = json.loads(out)
    assert list(report) == SCHEMA
    assert report["genus"] == "zero"
    assert report["signature"] == [2, 2, 3]
    assert report["chi"] == "1/3"
    assert [m["family"] for m in report["matches"]] == ["Chebyshev"]
    assert report["matches"][0]["n"] == 3
    assert report["zero_chi_witness"]["case"] == 11
    assert report["lattes"] == {"flag": False, "orbifold": None}
    assert report["passport"][0] == ["inf", [3]]


def test_classify_doubling_map(capsys):
    code, out, err = run(capsys, "--json", "classify", DOUBLING)
    assert code == 0
    report = json.loads(out)
    assert report["genus"] == "zero"
    assert report["signature"] == [2, 2, 2]
    assert report["lattes"]["flag"] is True
    assert report["lattes"]["orbifold"] == [["inf", 2], ["-1/1", 2], ["0/1", 2], ["1/1", 2]]
    assert "rational" in err


def test_classify_genus_one(capsys):
    code, out, _ = run(capsys, "--json", "classify", TRIPLING)
    assert code == 0
    report = json.loads(out)
    assert report["genus"] == "one"
    assert report["chi"] == "0/1"
    assert report["zero_chi_witness"]["case"] == "ZeroChiForced"
    assert report["lattes"]["flag"] is True


def test_classify_higher(capsys):
    code, out, _ = run(capsys, "classify", "z^4*(z-1)")
    assert code == 0
    assert "genus: higher" in out
    assert "chi: -1/20" in out


def test_classify_class_places_in_json(capsys):
    code, out, _ = run(capsys, "--json", "classify", "z^3 + z")
    report = json.loads(out)
    classes = [p for p, _ in report["passport"] if isinstance(p, dict)]
    assert classes == [{"minpoly": ["4/27", "0/1", "1/1"], "index": 0}]


def test_flags_after_the_command(capsys):
    code, out, _ = run(capsys, "classify", "--json", "z^2")
    assert json.loads(out)["degree"] == 2


def test_coefficient_input(capsys):
    code, out, _ = run(capsys, "passport", "--num", "0", "-3", "0", "4")
    assert code == 0
    assert out.strip() == "({3}_inf, {1,2}_-1, {1,2}_1)"
    code, out, _ = run(capsys, "passport", "--num", "1", "0", "1", "--den", "0", "1")
    assert code == 0


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "classify", "z^(1/2)")
    assert code == 2
    assert "position" in err


def test_usage_errors(capsys):
    assert run(capsys, "classify")[0] == 2
    assert run(capsys, "classify", "z", "--num", "1")[0] == 2
    assert run(capsys, "classify", "3")[0] == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["no-such-command"])
    assert info.value.code == 2


def test_catalog_icosahedral(capsys):
    code, out, _ = run(capsys, "--json", "catalog", "--family", "icosa")
    entries = json.loads(out)
    assert [e["degree"] for e in entries] == [60, 5, 6, 10, 12, 15, 20, 30]


def test_catalog_cyclic(capsys):
    code, out, _ = run(capsys, "catalog", "--family", "cyclic", "--n", "7")
    assert code == 0
    assert out.split()[-1] == "z^7"


@pytest.mark.parametrize("n", ["0", "1001"])
def test_catalog_range(capsys, n):
    assert run(capsys, "catalog", "--family", "cyclic", "--n", n)[0] == 2


def test_catalog_json_is_stable(capsys):
    _, first, _ = run(capsys, "--json", "catalog")
    _, second, _ = run(capsys, "--json", "catalog")
    assert first == second
    assert len(json.loads(first)) == 18


def test_mu_equiv(capsys):
    code, out, _ = run(capsys, "mu-equiv", "2*z^2 - 1", "z^2")
    assert code == 0
    assert out.strip() == "equivalent: mu_left = 2*z - 1, mu_right = z"
    code, out, _ = run(capsys, "mu-equiv", "z^4", "8*z^4 - 8*z^2 + 1")
    assert code == 1


def test_mu_equiv_undecided_json(capsys):
    code, out, _ = run(capsys, "--json", "mu-equiv", "z^4 + z^2 + 3*z", "z^4 + z^2 + 3*z")
    assert code == 1
    report = json.loads(out)
    assert report["equivalent"] is None
    assert "anchors" in report["reason"]


def test_compose(capsys):
    code, out, _ = run(capsys, "compose", "z^2", "z + 1")
    assert out.strip() == "z^2 + 2*z + 1"
    code, out, _ = run(capsys, "--json", "compose", "1/2*(z^3 + z^-3)", "z^2", "--check", "1/2*(z^6 + z^-6)")
    assert code == 0
    assert json.loads(out)["check"] is True
    code, _, _ = run(capsys, "compose", "z^2", "--check", "z^3")
    assert code == 1


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify-identities")
    assert code == 0
    assert "FAIL" not in out
    code, out, _ = run(capsys, "--json", "verify-identities")
    items = json.loads(out)
    assert {i["status"] for i in items} == {"pass"}
    assert set(items[0]) == {"identity", "status"}


def test_verify_identities_negative_control(capsys, monkeypatch):
    original = identity_suite.identities

    def perturbed():
        items = original()
        i = next(k for k, item in enumerate(items) if item.name == "xlop")
        bad = items[i]
        items[i] = Identity(bad.name, bad.lhs.replace("14*z", "15*z", 1), bad.parts)
        return items

    monkeypatch.setattr(identity_suite, "identities", perturbed)
    code, _, err = run(capsys, "verify-identities")
    assert code == 1
    assert "xlop" in err


def test_quiet(capsys):
    code, out, _ = run(capsys, "--quiet", "classify", "z^2")
    assert code == 0
    assert out == ""


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "orbimaps", "--json", "classify", "1/2*(z^3 + z^-3)"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["zero_chi_witness"]["case"] == 10
