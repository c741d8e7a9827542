import io
import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from conftest import FIXTURES
from ksplit import cli
from ksplit.approx import ConcurrentResult
from ksplit.core import parse_instance

SCHEMA = json.loads(resources.files("ksplit").joinpath("schema/result.schema.json").read_text())


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def doc_of(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return doc


def fx(name):
    return FIXTURES / name


def test_solve_cut():
    doc = doc_of("solve", "--mode", "cut", "-i", fx("c4.biflow"))
    assert doc["outputs"]["value"] == "1/1"
    assert doc["outputs"]["witness"]["members"] == [1]
    assert doc["timing"] is None


def test_solve_tuhalf():
    out = doc_of("solve", "--mode", "tuhalf", "-i", fx("disjoint46.biflow"))["outputs"]
    assert (out["total"], out["upper_bound"]) == ("4/1", "8/1")


@pytest.mark.parametrize("mode", ["cut", "tu2k", "tuhalf", "evenk", "concurrent"])
def test_solve_modes_validate(mode):
    doc_of("solve", "--mode", mode, "-i", fx("disjoint46_k22.biflow"), "-d1", "1/1", "-d2", "1/1")


def test_solve_text_output():
    code, out, _ = run("solve", "--mode", "tu2k", "-i", fx("c4.biflow"), "-o", "text")
    assert code == 0
    assert "total = 2/1" in out


def test_exit_codes(tmp_path):
    assert run("solve", "--mode", "concurrent", "-i", fx("c4.biflow"), "-d1", "1/1", "-d2", "2/1")[0] == 3
    assert run("solve", "--mode", "concurrent", "-i", fx("c4.biflow"))[0] == 2
    assert run("solve", "--mode", "evenk", "-i", fx("c4.biflow"))[0] == 3
    bad = tmp_path / "bad.biflow"
    bad.write_text("p biflow 2 1\nt 1 1 2 1\nt 2 1 2 1\ne 1 1 3\n")
    code, _, err = run("solve", "--mode", "cut", "-i", bad)
    assert code == 2 and "line 4" in err
    assert run("solve", "--mode", "cut", "-i", tmp_path / "missing")[0] == 2
    with pytest.raises(SystemExit) as info:
        run("solve", "--mode", "nope", "-i", bad)
    assert info.value.code == 2


def test_oracle_examples():
    assert doc_of("oracle", "--mode", "tu", "-i", fx("c4.biflow"))["outputs"]["path_value"] == "1/2"
    out = doc_of("oracle", "--mode", "bi", "-i", fx("disjoint46.biflow"))["outputs"]
    assert (out["x"], out["y"]) == ("4/1", "6/1")
    out = doc_of("oracle", "--mode", "concurrent", "-i", fx("c4_demands.biflow"))["outputs"]
    assert out["lambda"] == "1/2"
    out = doc_of("oracle", "--mode", "cutbound", "-i", fx("c4.biflow"))["outputs"]
    assert (out["min_tu"], out["min_bi"]) == ("1/1", "2/1")
    out = doc_of("oracle", "--mode", "cutbound", "-i", fx("c4.biflow"), "--cut", "1,2")["outputs"]
    assert out["bi"] == "2/1"


def test_oracle_limit_exit():
    code, _, err = run("oracle", "--mode", "tu", "-i", fx("c4.biflow"), "--max-paths", "1")
    assert code == 4 and "too large" in err


def test_timing_flag():
    doc = doc_of("solve", "--mode", "cut", "-i", fx("c4.biflow"), "--timing")
    assert doc["timing"]["seconds"] >= 0


def test_bench_stream_and_csv(tmp_path):
    csv_path = tmp_path / "summary.csv"
    code, out, _ = run(
        "bench", "--count", 12, "--vertices", 6, "--edges", 9, "--max-cap", 8, "--k1", 2, "--k2", 1,
        "--seed", 7, "--csv", csv_path, "--dump-dir", tmp_path,
    )
    assert code == 0
    docs = [json.loads(line) for line in out.splitlines()]
    for d in docs:
        jsonschema.validate(d, SCHEMA)
    assert [d["command"] for d in docs] == ["bench"] * 12 + ["bench-summary"]
    summary = docs[-1]["outputs"]
    assert summary["violations"] == 0
    assert Fraction(summary["ratio_tu"]["min"]) >= Fraction(1, 2)
    rows = csv_path.read_text().splitlines()
    assert rows[0].split(",") == cli.CSV_COLUMNS
    assert len(rows) == 13


def test_bench_jobs_match_serial(tmp_path):
    args = ["bench", "--count", 6, "--vertices", 5, "--edges", 7, "--max-cap", 5, "--k1", 1, "--k2", 1, "--csv", ""]
    assert run(*args)[1] == run(*args, "--jobs", 3)[1]


def test_bench_empty():
    code, out, _ = run("bench", "--count", 0, "--vertices", 5, "--edges", 7, "--max-cap", 5, "--k1", 1, "--k2", 1, "--csv", "")
    assert code == 0
    assert json.loads(out)["outputs"]["instances"] == 0


def test_bench_dumps_counterexample(tmp_path, monkeypatch):
    def broken(inst, d1, d2):
        return ConcurrentResult(Fraction(0), None, d1, d2)

    monkeypatch.setattr(cli, "concurrent_quarter", broken)
    code, out, _ = run(
        "bench", "--count", 3, "--vertices", 4, "--edges", 6, "--max-cap", 5, "--k1", 1, "--k2", 1,
        "--csv", "", "--dump-dir", tmp_path,
    )
    summary = json.loads(out.splitlines()[-1])["outputs"]
    assert code == 5 and summary["dumped"]
    for path in summary["dumped"]:
        parse_instance(open(path, "rb").read())


def test_generate(tmp_path):
    target = tmp_path / "g.biflow"
    assert run("generate", "--vertices", 5, "--edges", 6, "--max-cap", 4, "--k1", 1, "--k2", 2, "--seed", 1, "-o", target)[0] == 0
    assert parse_instance(target.read_bytes()).k2 == 2
