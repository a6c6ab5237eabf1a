import io
import json
import subprocess
import sys

import pytest

from simplexpoly.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_gram_example():
    code, out, _ = call("gram", "--family", "jacobi", "--alpha", "1,1,1", "--max-degree", "2", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["diagonal"] == ["1/1", "1/6", "1/8", "1/15", "1/144", "1/27"]
    assert rep["off_diagonal_nonzero"] == [] and rep["discrepancies"] == []


def test_gram_printed_constants_exit_three():
    code, out, err = call("gram", "--family", "jacobi", "--alpha", "1,1,1", "--max-degree", "2", "--constants", "printed")
    assert code == 3
    assert json.loads(out)["discrepancies"]
    assert "discrepanc" in err


def test_esf_example():
    code, out, _ = call("esf", "--theta", "1", "--n", "2")
    assert code == 0
    assert json.loads(out) == {"[2]": "1/2", "[1,1]": "1/2"}


def test_poly_example():
    code, out, _ = call("poly", "--family", "jacobi", "--alpha", "1,1", "--n", "0")
    assert code == 0
    assert json.loads(out)["poly"]["terms"] == [{"index": [0], "coeff": "1/1"}]


def test_poly_csv():
    code, out, _ = call("poly", "--family", "laguerre", "--alpha", "2", "--n", "1", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["index,coeff", "0,2/1", "1,-1/1"]


@pytest.mark.parametrize(
    "argv",
    [
        ("frobnicate",),
        ("gram", "--family", "nope", "--alpha", "1,1", "--max-degree", "1"),
        ("poly", "--family", "jacobi", "--alpha", "0.5,1", "--n", "1"),
        ("poly", "--family", "hahn", "--alpha", "1,1", "--n", "1"),
        ("poly", "--family", "jacobi", "--alpha", "1", "--n", "1"),
        ("esf", "--theta", "0", "--n", "2"),
    ],
)
def test_validation_errors_exit_two(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == "" and "error" in err


def test_connect_reports_method_comparison():
    code, out, _ = call("connect", "--alpha", "2,1", "--n", "1,1", "--p", "1/3")
    data = json.loads(out)
    assert code == 3
    assert set(data["laguerre"]["methods"]) == {"oracle", "lauricella", "hahn"}
    assert all(d["method"] == "hahn" for d in data["laguerre"]["discrepancies"])
    assert {d["method"] for d in data["meixner"]["discrepancies"]} == {"printed"}


def test_expand_residual():
    code, out, _ = call("expand", "--family", "jacobi", "--alpha", "1,1", "--f", "1@1")
    assert code == 0
    data = json.loads(out)
    assert data["coefficients"]["1"] == "1/6" and data["residual_zero"] is True


def test_limit_csv():
    code, out, _ = call("limit", "--alpha", "1", "--beta", "2", "--n", "2", "--N", "100,1000", "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "N,n,sup_error,constant_gap"
    assert [l.split(",")[0] for l in lines[1:]] == ["100", "1000"]


def test_output_is_byte_stable():
    argv = ("gram", "--family", "hahn", "--alpha", "1,2,1/2", "--total", "3", "--max-degree", "2")
    assert call(*argv)[1] == call(*argv)[1]
    assert call(*argv)[1] == call(*argv, "--threads", "3")[1]


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("SIMPLEXPOLY_OUTPUT_DIR", str(tmp_path))
    code, out, err = call("esf", "--theta", "2", "--n", "3", "--output", "esf.json")
    assert code == 0 and out == ""
    assert json.loads((tmp_path / "esf.json").read_text())["[3]"] == "1/6"


@pytest.mark.parametrize(
    "family,extra",
    [
        ("hahn-hypergeometric", ("--eps", "2,3", "--total", "3")),
        ("laguerre-star", ("--alpha", "2,1")),
        ("meixner", ("--alpha", "1,2", "--p", "1/3")),
        ("meixner-star", ("--alpha", "1,2", "--p", "1/3")),
        ("gem-jacobi", ("--theta", "1/2", "--depth", "3")),
        ("gem-laguerre", ("--theta", "1", "--depth", "2")),
    ],
)
def test_every_family_gram_is_diagonal(family, extra):
    code, out, _ = call("gram", "--family", family, *extra, "--max-degree", "2")
    assert code == 0
    assert json.loads(out)["off_diagonal_nonzero"] == []


def test_laguerre_star_printed_constants_flagged():
    code, _, _ = call("gram", "--family", "laguerre-star", "--alpha", "2,1", "--max-degree", "2", "--constants", "printed")
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "simplexpoly", "esf", "--theta", "1", "--n", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"[1]": "1/1"}
