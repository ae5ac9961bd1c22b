import json
import math
import pathlib
import subprocess
import sys

import jsonschema
import pytest
from referencing import Registry, Resource

from mixeq.cli import parse_tuple_document, run, tuple_to_document
from mixeq.errors import InputError
from mixeq.fixtures import FIXTURE_NAMES, PROP4, PROP4_B, PROP4_C, CYCLIC_2X2, fixture

DOCS = pathlib.Path(__file__).resolve().parents[1] / "docs"


def _schema(name):
    return json.loads((DOCS / name).read_text())


@pytest.fixture(scope="module")
def validator():
    tuple_schema, report_schema = _schema("tuple_document.schema.json"), _schema("report.schema.json")
    reg = Registry().with_resources([
        (tuple_schema["$id"], Resource.from_contents(tuple_schema)),
        (report_schema["$id"], Resource.from_contents(report_schema)),
    ])
    return jsonschema.Draft202012Validator(report_schema, registry=reg)


def report(*argv):
    code, out, err = run(list(argv))
    assert code == 0, err
    return json.loads(out)


def failure(*argv):
    code, out, err = run(list(argv))
    assert out == ""
    return code, json.loads(err)


# -- pressure ---------------------------------------------------------------------

def test_pressure_prop4():
    r = report("pressure", "prop4", "--s", "1", "--n-max", "10")
    assert abs(r["results"]["extrapolated"] - 0.5 * math.log(18)) < 0.1
    assert r["results"]["norm"] == "operator"


def test_s2_requires_s_two():
    code, err = failure("pressure", "cyclic2x2", "--s", "1", "--method", "s2")
    assert code == 1 and "--s 2" in err["message"]
    r = report("pressure", "cyclic2x2", "--s", "2", "--method", "s2")
    assert abs(r["results"]["pressure"] - math.log(5)) < 1e-9


def test_vector_method():
    r = report("pressure", "cyclic2x2", "--method", "vector", "--vector", "1,0", "--n-max", "2")
    assert r["results"]["values"][1][1] == pytest.approx(math.log(3))


def test_budget_exit_code(monkeypatch):
    monkeypatch.setenv("MT_BUDGET", "64")
    code, err = failure("pressure", "prop4", "--n-max", "8")
    assert code == 2 and err["budget"] == 64 and err["requested"] == 128


# -- classify ----------------------------------------------------------------------

def test_classify_cyclic_pair():
    r = report("classify", "cyclic2x2")
    assert r["results"]["verdict"] == "NotMixing"
    assert (r["results"]["ell"], r["results"]["k"]) == (2, 1)
    assert r["certificates"]["cyclic"]["X"] == [["1", "0"], ["0", "1"]]
    assert r["certificates"]["witness"]["word"] == [2]


def test_classify_prop4():
    r = report("classify", "prop4")
    assert r["results"]["verdict"] == "UnsupportedRegime"
    assert any("invertible" in n for n in r["results"]["notes"])


def test_classify_rejects_reducible_and_float(tmp_path):
    code, err = failure("classify", "diag-reducible")
    assert code == 1 and "triangularize" in err["message"]
    doc = tuple_to_document(fixture("cyclic2x2").to_float())
    path = tmp_path / "f.json"
    path.write_text(json.dumps(doc))
    code, err = failure("classify", str(path))
    assert code == 1 and "exact" in err["message"]


# -- structure ----------------------------------------------------------------------

def test_triangularize_square():
    r = report("structure", "prop4-squared", "--action", "triangularize")
    assert r["results"]["dims"] == [1, 2]
    assert r["certificates"]["diagonal_blocks"][0] == [[["4"]], [["5"]], [["5"]], [["4"]]]


def test_cyclic_action():
    r = report("structure", "cyclic2x2", "--action", "cyclic", "--ell", "2")
    assert r["results"]["found"] and r["certificates"]["k"] == 1
    code, err = failure("structure", "cyclic2x2", "--action", "cyclic", "--ell", "3")
    assert code == 1 and "divide" in err["message"]
    code, _ = failure("structure", "cyclic2x2", "--action", "cyclic")
    assert code == 1


def test_irreducible_action_on_float(tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"d": 2, "N": 2, "mode": "float",
                                "matrices": [[[1, 1], [0, 1]], [[1.0, 0], [1, 1]]]}))
    r = report("structure", str(path), "--action", "irreducible")
    assert r["results"]["status"] == "Irreducible"
    assert r["certificates"]["heuristic"] is True


# -- documents and reports -------------------------------------------------------

ARGVS = [
    ("pressure", "prop4"),
    ("pressure", "prop4-C", "--norm", "frobenius", "--n-max", "4"),
    ("pressure", "cyclic2x2", "--method", "vector"),
    ("pressure", "prop4-B", "--s", "2", "--method", "s2"),
    ("classify", "cyclic2x2"),
    ("classify", "rotations"),
    ("classify", "shears"),
    ("classify", "prop4"),
    ("structure", "prop4-squared", "--action", "triangularize"),
    ("structure", "prop4-squared", "--action", "irreducible"),
    ("structure", "cyclic2x2", "--action", "cyclic", "--ell", "2"),
    ("structure", "shears", "--action", "cyclic", "--ell", "2"),
]


@pytest.mark.parametrize("argv", ARGVS, ids=lambda a: "-".join(a))
def test_reports_validate_and_round_trip(argv, validator):
    code, out, _ = run(list(argv))
    assert code == 0
    r = json.loads(out)
    validator.validate(r)
    assert json.loads(json.dumps(r)) == r


@pytest.mark.parametrize("argv", [("classify", "cyclic2x2", "--seed", "17"),
                                  ("structure", "prop4-squared", "--action", "triangularize")])
def test_reports_are_reproducible(argv):
    assert run(list(argv)) == run(list(argv))


def test_fixtures_match_published_matrices():
    assert report_fixture("prop4")["matrices"] == _strings(PROP4)
    assert report_fixture("cyclic2x2")["matrices"] == _strings(CYCLIC_2X2)
    assert report_fixture("prop4-B")["matrices"] == _strings(PROP4_B)
    assert report_fixture("prop4-C")["matrices"] == _strings(PROP4_C)
    sq = report_fixture("prop4-squared")["matrices"]
    assert sq[2] == [["5", "0", "0"], ["0", "4", "2"], ["0", "2", "1"]]


def report_fixture(name):
    code, out, _ = run(["fixture", name])
    assert code == 0
    return json.loads(out)


def _strings(mats):
    return [[[str(x) for x in row] for row in m] for m in mats]


def test_fixture_listing():
    assert report_fixture_list() == list(FIXTURE_NAMES)


def report_fixture_list():
    return json.loads(run(["fixture"])[1])["fixtures"]


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_documents_round_trip(name):
    t = fixture(name)
    doc = tuple_to_document(t)
    jsonschema.validate(doc, _schema("tuple_document.schema.json"))
    assert parse_tuple_document(json.loads(json.dumps(doc))) == t


@pytest.mark.parametrize("doc, where", [
    ({"d": 2, "N": 1, "matrices": [[[1, 2], [3]]]}, "matrices[0][1]"),
    ({"d": 1, "N": 1, "matrices": [[["1/0"]]]}, "zero denominator"),
    ({"d": 1, "N": 1, "matrices": [[["x"]]]}, "matrices[0][0][0]"),
    ({"d": 1, "N": 1, "matrices": [[[0.5]]]}, "exact mode"),
    ({"d": 1, "N": 2, "matrices": [[[1]]]}, "N=2"),
    ({"d": 1, "N": 1, "matrices": [[[1]]], "mode": "complex"}, "mode"),
    ({"d": 1, "N": 1, "matrices": [[[1]]], "colour": 3}, "unknown field"),
    ({"N": 1, "matrices": [[[1]]]}, "missing field 'd'"),
])
def test_document_errors_name_the_field(doc, where):
    with pytest.raises(InputError, match=where.replace("[", r"\[")):
        parse_tuple_document(doc)


def test_rational_strings_parse():
    t = parse_tuple_document({"d": 2, "N": 1, "matrices": [[["1/3", "0.25"], [-2, "7"]]]})
    assert str(t[1][0, 0]) == "1/3" and str(t[1][0, 1]) == "1/4"


def test_json_syntax_error_has_line(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"d": 1,\n "N": 1,\n "matrices": [[[1]]\n}')
    code, err = failure("pressure", str(path))
    assert code == 1 and "line" in err["message"]


def test_usage_errors_exit_one():
    assert run(["pressure"])[0] == 1
    assert run(["pressure", "prop4", "--s", "-1"])[0] == 1
    assert run(["frobnicate"])[0] == 1
    assert run(["pressure", "no-such-thing"])[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mixeq", "classify", "cyclic2x2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["verdict"] == "NotMixing"
