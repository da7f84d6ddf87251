"""
End-to-end tests for the etale command line
"""

import io
import json

import pytest

from src.cli import run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_so_chain_family_is_etale():
    code, out, _ = invoke("family", "--name", "so-chain", "--n", "4")
    assert code == 0
    data = json.loads(out)
    assert data["report"]["verdict"] == "etale"
    assert data["report"]["dim_g"] == data["report"]["dim_v"] == 20


def test_sp_chain_report():
    code, out, _ = invoke("family", "--name", "sp-chain", "--n", "2", "--chain-report")
    assert code == 0
    chain = json.loads(out)["chain_report"]
    assert [level["kernel_dim"] for level in chain["levels"]] == [3, 3, 0]
    assert chain["passed"] is True


def test_helmstetter_family():
    code, out, _ = invoke("family", "--name", "helmstetter")
    assert code == 0
    assert json.loads(out)["report"]["dim_v"] == 25


def test_two_lines_are_not_prehomogeneous():
    code, out, _ = invoke("verify", "--spec", "gl(1) : std(1) + std(1)")
    assert code == 1
    data = json.loads(out)
    assert data["verdict"] == "not-prehomogeneous-at-point"
    assert data["stabilizer_dim"] == 0


def test_verify_family_text():
    code, out, _ = invoke("verify", "--spec", "so(3) x gl(2) x gl(1) : chain")
    assert code == 0
    assert json.loads(out)["det_nonzero"] is True


def test_parse_error_is_a_usage_error():
    code, out, err = invoke("verify", "--spec", "gl(2) x : std(1)")
    assert code == 2
    assert out == ""
    assert "line 1, column 9" in err


def test_unknown_family_is_a_usage_error():
    code, _, err = invoke("family", "--name", "e8-chain", "--n", "2")
    assert code == 2
    assert "unknown family" in err


def test_missing_arguments():
    code, _, _ = invoke("verify")
    assert code == 2


def test_castle_round_trip():
    code, out, _ = invoke("castle", "--spec", "sl(3) x gl(1) : std(1) * std(2)", "--twice")
    assert code == 0
    data = json.loads(out)
    assert data["target"]["gl_size"] == 2
    assert data["involution_holds"] is True
    assert data["generic_draws"] >= 4


def test_castle_undefined():
    code, _, err = invoke("castle", "--spec", "sl(2) x gl(2) : std(1) * std(2)")
    assert code == 2
    assert "castling" in err


def test_stabilizer_with_line():
    code, out, _ = invoke("stabilizer", "--spec", "gl(2) : std(1)", "--point", "1,0", "--line")
    assert code == 0
    data = json.loads(out)
    assert data["stabilizer_dim"] == 2
    assert data["line_stabilizer_dim"] == 3


def test_dims():
    code, out, _ = invoke("dims", "--n-max", "8")
    assert code == 0
    data = json.loads(out)
    assert data["all_hold"] is True
    so_rows = [row["parameter"] for row in data["rows"] if row["identity"] == "so-chain"]
    assert so_rows == list(range(2, 9))


def test_sweep():
    code, out, _ = invoke("family", "--name", "so-chain", "--sweep", "2,3,4")
    assert code == 0
    assert [item["n"] for item in json.loads(out)] == [2, 3, 4]


@pytest.mark.slow
def test_sp_chain_four():
    code, out, _ = invoke("family", "--name", "sp-chain", "--n", "4")
    assert code == 0
    assert json.loads(out)["report"]["dim_v"] == 176


def test_negative_seed_is_a_usage_error():
    code, out, _ = invoke("verify", "--spec", "gl(2) : std(1)", "--point", "random", "--seed", "-1")
    assert code == 2
    assert out == ""


def test_factors_may_be_written_without_spaces():
    code, out, _ = invoke("verify", "--spec", "so(3)xgl(2)xgl(1):chain")
    assert code == 0
    assert json.loads(out)["verdict"] == "etale"
