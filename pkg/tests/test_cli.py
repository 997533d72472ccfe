import json
import subprocess
import sys

import pytest

from affcanon import RatFn
from affcanon.cli import JobConfig, main, matrix_from_json, run
from affcanon.solver import canonical_in_pbw


def call(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_roots(capsys):
    code, out, _ = call(["roots", "--bound", "4"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["word"] == [1, 2, 1, 0]
    assert doc["meta"]["conventions"]["order_on_I"] == [1, 2, 0]
    assert len(doc["result"]["beta"]) == 8


def test_index_delta(capsys):
    code, out, _ = call(["index", "--weight", "1,1,1"], capsys)
    doc = json.loads(out)
    assert code == 0 and len(doc["result"]["indices"]) == 6 and len(doc["result"]["classes"]) == 5


def test_canon_simple_root(capsys):
    code, out, _ = call(["canon", "--weight", "0,1,0", "--jobs", "1"], capsys)
    doc = json.loads(out)["result"]
    assert code == 0
    assert matrix_from_json(doc["P"]) == [[RatFn(1)]]
    assert all(v["ok"] for v in doc["verification"].values())


def test_canon_roundtrip(a2, capsys):
    code, out, _ = call(["canon", "--weight", "1,2,1", "--jobs", "1"], capsys)
    doc = json.loads(out)["result"]
    res = canonical_in_pbw((1, 2, 1), a2, jobs=1)
    for name in ("H", "D", "P", "Q", "Qinv"):
        assert matrix_from_json(doc[name]) == getattr(res, name).rows()
    assert matrix_from_json(doc["Lambda"]) == [list(r) for r in res.gram.entries]


def test_byte_determinism(tmp_path):
    outs = []
    for j, jobs in enumerate(("1", "2")):
        path = tmp_path / f"run{j}.json"
        r = subprocess.run([sys.executable, "-m", "affcanon", "canon", "--weight", "1,2,1",
                            "--jobs", jobs, "--out", str(path)])
        assert r.returncode == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_config_errors(capsys):
    assert call(["canon", "--weight", "1,1"], capsys)[0] == 2
    assert call(["canon", "--weight", "1,-1,0"], capsys)[0] == 2
    assert call(["canon", "--type", "Q", "--weight", "1,0,0"], capsys)[0] == 2
    assert call(["canon", "--rank", "9", "--weight", "1,0,0"], capsys)[0] == 2
    assert call(["canon", "--engine", "nope", "--weight", "1,0,0"], capsys)[0] == 2
    assert call(["bogus"], capsys)[0] == 2


def test_degenerate_fibre_exit_code(capsys):
    code, _, err = call(["canon", "--weight", "1,1,2", "--jobs", "1"], capsys)
    assert code == 3
    assert "monomial_words_linearly_independent" in err


def test_verify(capsys):
    code, out, _ = call(["verify", "--weight", "1,1,1", "--jobs", "1"], capsys)
    assert code == 0 and json.loads(out)["result"]["ok"]
    code, out, _ = call(["verify", "--weight", "2,1,1", "--jobs", "1"], capsys)
    doc = json.loads(out)["result"]
    assert code == 1 and not doc["checks"]["monomial_words_linearly_independent"]["ok"]


def test_oracle_check_and_csv(capsys):
    code, out, _ = call(["gram", "--weight", "1,1,1", "--engine", "oracle-check", "--format", "csv", "--jobs", "1"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "matrix,row,col,value" and len(lines) == 1 + 36


def test_strata_csv(capsys):
    code, out, _ = call(["strata", "--weight", "1,1,1", "--format", "csv"], capsys)
    assert code == 0 and len(out.strip().splitlines()) == 7


def test_jobconfig_validate():
    with pytest.raises(ValueError):
        JobConfig("canon", weight=(1, 0)).validate()
    assert JobConfig("roots").validate().type == "A"
    assert run(JobConfig("index", weight=(0, 1, 0), out="/dev/null")) == 0
