import json

import pytest

from clifflike.cli import main, run


def call(*argv):
    status, text = run(list(argv))
    return status, json.loads(text)


def test_nf1_example():
    status, out = call("nf1", "Y[0]*Y[0]")
    assert status == 0
    assert out["result"]["normal_form"] == [{"coeff": "-1/1", "word": ["Y[1]", "Y[-1]"]}]
    assert out["command"] == "nf1" and out["params"] == {"expr": "Y[0]*Y[0]"}


def test_gram_example():
    status, out = call("gram", "--degree", "2")
    assert status == 0
    assert out["result"]["matrix"] == [["1/1", "0/1"], ["0/1", "1/1"]]
    assert out["result"]["labels"] == [[2], [1, 1]]


def test_gdim_example():
    status, out = call("gdim", "--max", "5")
    assert status == 0 and out["ok"] is True
    assert out["result"]["dimensions"] == [1, 1, 2, 3, 5, 7]


def test_nf2_and_pi():
    status, out = call("nf2", "Ys[0]*Y[0]")
    assert status == 0 and out["result"]["text"] == "1 - Y[-1]*Ys[1]"
    status, out = call("pi", "Y[0]*Ys[0]")
    assert out["result"]["image"] == [{"a": [0], "b": [-1], "sigma": 0, "coeff": "1/1"}]


def test_confluence_and_suites():
    status, out = call("confluence", "--window", "2")
    assert status == 0 and out["ok"] and out["result"]["disagreements"] == 0
    status, out = call("fock", "relations", "--window", "2", "--degree", "2", "--mu", "2", "--mu=-1/3")
    assert status == 0 and out["result"]["mu"] == ["2/1", "-1/3"]
    status, out = call("fock", "duality", "--max-weight", "4")
    assert status == 0 and out["result"]["partitions_checked"] == 12
    status, out = call("tilde", "verify", "--energy", "2", "--window", "2")
    assert status == 0 and out["result"]["failures"] == 0
    status, out = call("ybe", "--order", "3")
    assert status == 0 and out["result"]["unitary_entries"] == ["aa", "bb"]


def test_fock_apply():
    status, out = call("fock", "apply", "--word", "Y[-2]")
    assert out["result"]["vector"] == [{"coeff": "1/2", "monomial": {"2": 1}},
                                       {"coeff": "1/2", "monomial": {"1": 2}}]
    status, out = call("fock", "apply", "--word", "Y[-1]", "--mu", "3")
    assert out["result"]["vector"] == [{"coeff": "3/1", "monomial": {"1": 1}}]


def test_tilde_sc():
    status, out = call("tilde", "sc", "--u", "a", "--n", "0", "--w", "b")
    assert status == 0 and out["result"]["vector"] == [{"a": [], "b": [], "coeff": "1/1"}]


def test_parse_error_reports_position():
    status, out = call("nf1", "Y[0]*+")
    assert status == 2 and "position 5" in out["error"]


def test_zero_mu_rejected():
    status, out = call("gram", "--degree", "1", "--mu", "0")
    assert status == 2 and "nonzero" in out["error"]
    status, out = call("fock", "apply", "--word", "Y[0]", "--mu", "x")
    assert status == 2


def test_unknown_command_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_failed_identity_sets_status(monkeypatch):
    from clifflike import bform

    monkeypatch.setattr(bform, "gdim", lambda N, mu: [1] * (N + 1))
    status, out = call("gdim", "--max", "3")
    assert status == 1 and out["ok"] is False
    assert out["first_counterexample"] == {"degree": 2, "dimension": 1, "partitions": 2}


def test_deterministic_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["-o", str(a), "suite", "all", "--quick"]) == 0
    assert main(["-o", str(b), "suite", "all", "--quick"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["ok"] is True
