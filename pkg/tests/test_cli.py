"""Command-line interface: target parsing, output formats, exit codes,
and the verification suites."""

import json
import subprocess
import sys

import pytest

from latzeta.cli import parse_group, parse_lattice_target, run
from latzeta.cosetlike import load_fixture
from latzeta.errors import UsageError
from latzeta.lattice import Lattice, is_isomorphic


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----------------------------------------------------------------------
# spec parsing


def test_parse_lattice_targets():
    assert parse_lattice_target("boolean:3").n == 8
    assert parse_lattice_target("chain:4").n == 4
    assert parse_lattice_target("divisor:12").n == 6
    assert parse_lattice_target("subspace:2,2").n == 5
    assert parse_lattice_target("partition:4").n == 15
    assert parse_lattice_target("ddiv:2,2").n == 5
    assert parse_lattice_target("fixture:ten_point").n == 10
    assert parse_lattice_target("group:cyclic:2").n == 4


def test_parse_lattice_target_errors():
    for bad in ("nonsense", "boolean:x", "subspace:2", "mystery:3"):
        with pytest.raises(UsageError):
            parse_lattice_target(bad)
    with pytest.raises(UsageError):
        parse_lattice_target("boolean:4", max_elements=10)
    with pytest.raises(UsageError):
        parse_lattice_target("file:/no/such/file.lat")


def test_parse_group():
    assert parse_group("cyclic:6").n == 6
    assert parse_group("sym:3").n == 6
    assert parse_group("dihedral:5").n == 10
    assert parse_group("prod:cyclic:2,cyclic:3").n == 6
    assert parse_group("prod:cyclic:2,cyclic:2,cyclic:2").n == 8
    for bad in ("cyclic", "weird:3", "prod:cyclic:2"):
        with pytest.raises(UsageError):
            parse_group(bad)


# ----------------------------------------------------------------------
# subcommands


def test_zeta_human(capsys):
    code, out, _ = invoke(capsys, "zeta", "boolean:2")
    assert code == 0
    assert "P(L, s) = 1 - 1/2^(s-1)" in out  # 2/2^s in collapsed form
    assert "join-irreducibles: 2" in out


def test_zeta_json_stable(capsys):
    code1, out1, _ = invoke(capsys, "zeta", "partition:4", "--format", "json")
    code2, out2, _ = invoke(capsys, "zeta", "partition:4", "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["command"] == "zeta" and doc["n"] == 15
    assert doc["series"]["terms"][0] == {"q": "1/1", "c": "1"}


def test_classify(capsys):
    code, out, _ = invoke(capsys, "classify", "fixture:ten_point")
    assert code == 0
    assert "strong: False   weak: True" in out
    code, out, _ = invoke(
        capsys, "classify", "boolean:3", "--format", "json"
    )
    doc = json.loads(out)
    assert doc["weak"] is False and doc["coatom_witness"] is not None


def test_mobius(capsys):
    code, out, _ = invoke(capsys, "mobius", "chain:3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["mobius_top"] == [0, -1, 1]


def test_group_brown_coprime(capsys):
    code, out, _ = invoke(
        capsys, "group", "cyclic:6", "--brown", "--smax", "4",
        "--coprime", "cyclic:5",
    )
    assert code == 0
    assert "brown identity: OK (s=0..4)" in out
    assert "lattices isomorphic: True" in out


def test_group_json(capsys):
    code, out, _ = invoke(capsys, "group", "sym:3", "--format", "json")
    doc = json.loads(out)
    assert doc["order"] == 6
    assert {"q": "3/1", "c": "-3"} in doc["series"]["terms"]


def test_family_closed_form_check(capsys):
    for family in ("boolean:4", "chain:5", "divisor:30", "subspace:3,2",
                   "partition:4"):
        code, out, _ = invoke(
            capsys, "family", family, "--closed-form-check"
        )
        assert code == 0
        assert "closed form matches the engine series" in out


def test_family_ddiv(capsys):
    code, out, _ = invoke(capsys, "family", "ddiv:2,4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["shape_strong_check"]["strong"] is False


def test_family_unknown(capsys):
    code, _, err = invoke(capsys, "family", "mystery:1")
    assert code == 2 and "error" in err


def test_search(capsys):
    code, out, _ = invoke(capsys, "search", "--max-n", "6", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["levels"][-1]["total"] == 15
    assert doc["weak_not_strong"] == {str(n): [] for n in range(2, 7)}


def test_search_catalog_resume(capsys, tmp_path):
    path = str(tmp_path / "cat.txt")
    code, out1, _ = invoke(
        capsys, "search", "--max-n", "5", "--catalog", path, "--format", "json"
    )
    assert code == 0
    code, out2, _ = invoke(
        capsys, "search", "--max-n", "5", "--catalog", path, "--format", "json"
    )
    assert code == 0 and out1 == out2


def test_fixture_roundtrip(capsys):
    code, out, _ = invoke(capsys, "fixture", "eleven_point")
    assert code == 0
    rebuilt = Lattice.from_lat(out.split("# P(L, s)")[0])
    assert is_isomorphic(rebuilt, load_fixture("eleven_point"))


def test_output_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = invoke(
        capsys, "zeta", "chain:3", "--format", "json", "--output", str(path)
    )
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["n"] == 3


def test_file_target(capsys, tmp_path):
    path = tmp_path / "lat.lat"
    path.write_text(load_fixture("ten_point").to_lat())
    code, out, _ = invoke(capsys, "zeta", f"file:{path}")
    assert code == 0
    assert "1 - 1/2^s - 2/4^s" in out


# ----------------------------------------------------------------------
# exit codes


def test_usage_exit_codes(capsys):
    assert invoke(capsys, "zeta", "nonsense")[0] == 2
    assert invoke(capsys, "verify", "--suite", "mystery")[0] == 2
    assert run([]) == 2  # no subcommand
    assert run(["zeta"]) == 2  # missing target


def test_domain_error_exit_code(capsys):
    # coprime check on groups with a common factor: domain error -> 1
    code, out, _ = invoke(
        capsys, "group", "cyclic:2", "--coprime", "cyclic:4"
    )
    assert code == 1
    assert "NotCoprimeOrders" in out


def test_verify_suites(capsys):
    for suite in ("fixtures", "stirling", "limits"):
        code, out, _ = invoke(capsys, "verify", "--suite", suite)
        assert code == 0
        assert f"suite {suite}: OK" in out
        assert "FAIL" not in out


def test_verify_json(capsys):
    code, out, _ = invoke(
        capsys, "verify", "--suite", "fixtures", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert all(c["ok"] for c in doc["checks"])


def test_console_entry_point():
    # the installed script must agree with the in-process runner
    proc = subprocess.run(
        [sys.executable, "-m", "latzeta.cli", "zeta", "boolean:2",
         "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["j_count"] == 2
