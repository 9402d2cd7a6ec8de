import dataclasses
import io
import json
from pathlib import Path

import pytest

from corings import cli
from corings.comatrix import DescentReport
from corings.workspace import WorkspaceError, encode, loads, parse_workspace

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture(name):
    return str(FIXTURES / f"{name}.json")


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def write(tmp_path, doc, name="doc.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


# -- parsing ----------------------------------------------------------------------

def test_parse_minimal_f1():
    ws = parse_workspace((FIXTURES / "f1.json").read_text())
    assert ws.algebra.dim == 1


def test_parse_graded_f2():
    ws = parse_workspace((FIXTURES / "f2.json").read_text())
    assert ws.graded is not None and ws.coring.dim == 4
    assert sorted(ws.grouplikes) == ["e", "s"]


def test_zero_denominator_is_located():
    doc = json.loads((FIXTURES / "f1.json").read_text())
    doc["algebra"]["structure"][0][0][0] = "1/0"
    with pytest.raises(WorkspaceError) as err:
        parse_workspace(json.dumps(doc))
    assert err.value.errors[0][0] == "algebra.structure[0][0][0]"


def test_json_syntax_error_has_line(tmp_path, capsys):
    code, _ = run("check", write(tmp_path, '{"field": "Q",\n  "algebra": }'))
    assert code == cli.EXIT_INPUT
    assert "line 2" in capsys.readouterr().err


def test_dimension_mismatch_is_located():
    doc = json.loads((FIXTURES / "f1.json").read_text())
    doc["algebra"]["unit"] = ["1", "0"]
    with pytest.raises(WorkspaceError) as err:
        parse_workspace(json.dumps(doc))
    assert any(loc.startswith("algebra") for loc, _ in err.value.errors)


def test_dangling_family_reference(tmp_path, capsys):
    code, _ = run("galois", fixture("f2"), "--family", "nope")
    assert code == cli.EXIT_INPUT
    assert "nope" in capsys.readouterr().err


def test_invalid_subgroup(capsys):
    code, _ = run("galois", fixture("f3"), "--subgroup", "s")
    assert code == cli.EXIT_INPUT
    assert "--subgroup" in capsys.readouterr().err


# -- check -----------------------------------------------------------------------

@pytest.mark.parametrize("name", ["f1", "f2", "f3", "f4"])
def test_check_fixtures(name):
    code, out = run("check", fixture(name))
    assert code == cli.EXIT_OK
    assert "coring axioms: pass" in out


def test_check_corrupted_comultiplication(tmp_path):
    code, out = run("build", fixture("f2"))
    doc = json.loads(out)
    row = doc["coring"]["comult"][0]
    row[0] = str(int(row[0]) + 1)
    code, out = run("check", write(tmp_path, doc))
    assert code == cli.EXIT_NEGATIVE
    assert "coring axioms: FAIL" in out
    assert "counit law" in out and "not left linear" in out


def test_check_empty_document(tmp_path):
    code, out = run("check", write(tmp_path, ""))
    assert code == cli.EXIT_NEGATIVE
    assert out.strip() == "nothing to check"


# -- galois ---------------------------------------------------------------------

@pytest.mark.parametrize("name,args,line,code", [
    ("f2", ["--subgroup", "e"], "GALOIS: yes (rank 4/4)", 0),
    ("f2", [], "GALOIS: yes (rank 4/4)", 0),
    ("f3", ["--subgroup", "e,s"], "GALOIS: yes (rank 4/4)", 0),
    ("f3", ["--subgroup", "e"], "GALOIS: no (rank 3/4)", 1),
    ("f1", [], "GALOIS: yes (rank 1/1)", 0),
    ("f4", [], "GALOIS: yes (rank 4/4)", 0),
])
def test_galois(name, args, line, code):
    got, out = run("galois", fixture(name), *args)
    assert got == code
    assert line in out.splitlines()


def test_galois_dimensions_f2():
    _, out = run("galois", fixture("f2"))
    for line in ("dim P = 8", "dim J = 4", "dim r = 4", "dim Sigma^dagger (x)_R Sigma = 4"):
        assert line in out.splitlines()


# -- descent ---------------------------------------------------------------------

def test_descent_f2_all_true():
    code, out = run("descent", fixture("f2"), "--json")
    assert code == cli.EXIT_OK
    flags = json.loads(out)["report"]
    assert all(flags[k] for k in ("flat", "fg_projective", "can_bijective", "sigma_faithfully_flat",
                                  "s_faithfully_flat", "lambda_bijective", "generates", "projective_certificate"))


def test_descent_f1_all_true():
    code, out = run("descent", fixture("f1"))
    assert code == cli.EXIT_OK and "consistent with the descent equivalences" in out


def test_descent_f3_singleton():
    code, out = run("descent", fixture("f3"), "--subgroup", "e", "--json")
    assert code == cli.EXIT_NEGATIVE
    doc = json.loads(out)
    rep = doc["report"]
    assert not rep["can_bijective"] and not rep["generates"]
    assert doc["conditions"] == {"i": False, "iii": False, "iv": False}
    assert doc["inconsistencies"] == []


def test_descent_divergence_exits_3(monkeypatch):
    real = cli.descent_report

    def skewed(fam, probes):
        return dataclasses.replace(real(fam, probes), s_faithfully_flat=False)

    monkeypatch.setattr(cli, "descent_report", skewed)
    code, out = run("descent", fixture("f2"))
    assert code == cli.EXIT_INCONSISTENT
    assert "INCONSISTENT" in out


# -- build and machine-readable output --------------------------------------------------

@pytest.mark.parametrize("construct", ["P", "r", "dagger", "star"])
def test_build_round_trip(tmp_path, construct):
    target = tmp_path / f"{construct}.json"
    code, _ = run("build", fixture("f3"), "--construct", construct, "-o", str(target))
    assert code == cli.EXIT_OK
    code, out = run("check", str(target))
    assert code == cli.EXIT_OK and "coring axioms: pass" in out


@pytest.mark.parametrize("argv", [["check", "f2"], ["galois", "f3", "--subgroup", "e"], ["descent", "f2"]])
def test_report_round_trip(argv):
    argv = [argv[0], fixture(argv[1])] + argv[2:] + ["--json"]
    _, out = run(*argv)
    doc = json.loads(out)
    obj = loads(out)
    assert encode(obj) == doc


def test_descent_report_decodes_to_dataclass():
    _, out = run("descent", fixture("f2"), "--json")
    obj = loads(out)
    assert isinstance(obj.report, DescentReport)
    assert obj.report.all_true
