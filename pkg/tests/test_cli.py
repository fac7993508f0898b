import json

import pytest

from tomescu.cli import main, parse_graph
from tomescu.families import make_G_nk
from tomescu.graph6 import from_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_graph_shorthand():
    assert parse_graph("G6,4") == make_G_nk(6, 4)
    assert parse_graph("K2,3").m == 6
    assert parse_graph("g6:C~").n == 4


def test_eval(capsys):
    assert run(capsys, "eval", "K4", "4")[:2] == (0, "24\n")
    assert run(capsys, "eval", "G6,4", "4")[1] == "168\n"
    code, out, _ = run(capsys, "eval", "C5", "3", "--oracle", "--json", "--poly")
    d = json.loads(out)
    assert code == 0 and d["P"] == d["oracle"] == "30"
    assert d["coefficients"] == ["0", "4", "-10", "10", "-5", "1"]


def test_eval_parse_error(capsys):
    code, _, err = run(capsys, "eval", "D??x", "3")
    assert code == 2 and "byte 3" in err


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "Gnk", "--n", "6", "--k", "4")
    assert code == 0 and from_graph6(out.strip()) == make_G_nk(6, 4)
    code, out, _ = run(capsys, "construct", "gstar-lconn", "--n", "20", "--k", "4", "--ell", "7", "--validate")
    assert code == 0 and from_graph6(out.strip()).n == 20
    code, _, err = run(capsys, "construct", "type", "--type", "2", "--k", "4", "--delta", "2", "--n", "12")
    assert code == 2 and "k - 1 <= delta" in err


def test_decompose(capsys, tmp_path):
    g6 = run(capsys, "construct", "g1", "--n", "10", "--k", "4", "--delta", "3")[1].strip()
    out_path = tmp_path / "d.json"
    code, out, _ = run(capsys, "decompose", g6, "--k", "4", "--out", str(out_path))
    d = json.loads(out)
    assert code == 0 and d["type"] == "1" and d["P_terms"][0] == "24"
    assert json.loads(out_path.read_text()) == d


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "second-order", "--type", "4", "--n", "13", "--k", "4", "--delta", "3")
    assert code == 0 and json.loads(out)[0]["value"] == "48384"
    code, out, _ = run(capsys, "bounds", "c-max", "--r", "3", "--s", "6", "--t", "4")
    assert json.loads(out)["value"] == "48"
    code, out, _ = run(capsys, "bounds", "all", "--n", "12", "--k", "4")
    names = {x["name"] for x in json.loads(out)}
    assert {"tomescu", "ear-clique", "four-critical"} <= names
    code, _, err = run(capsys, "bounds", "c-max", "--r", "9", "--s", "14", "--t", "7")
    assert code == 3 and "budget" in err


def test_search(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--n", "7", "--k", "4", "--objective", "two-connected", "--no-survivors")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "holds" and d["equality_witnesses"] == [d["max_witnesses"][0]]
    code, out, _ = run(capsys, "search", "--n", "5", "--k", "3", "--objective", "two-connected",
                       "--mode", "find-counterexample")
    assert code == 1 and json.loads(out)["counterexample"]
    ck = str(tmp_path / "ck.json")
    code, out, _ = run(capsys, "search", "--n", "6", "--filter", "connected", "--checkpoint", ck)
    first = json.loads(out)
    code, out, _ = run(capsys, "search", "--n", "6", "--filter", "connected", "--resume", ck)
    assert json.loads(out) == first and first["survivor_count"] == "112"
    assert run(capsys, "search", "--n", "11")[0] == 3
    assert run(capsys, "search", "--n", "5", "--filter", "nope")[0] == 2
    code, out, _ = run(capsys, "search", "--claim", "cycle-max")
    assert code == 0


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "two-connected-max", "--n", "7", "--k", "4")
    assert code == 0 and json.loads(out)["verdict"] == "holds"
    code, out, _ = run(capsys, "verify", "xyz-series", "--family", "G1", "--n", "10", "--k", "4", "--delta", "3")
    assert code == 0
    code, out, _ = run(capsys, "verify", "k4-lconn-l5")
    assert code == 1 and json.loads(out)["values"]["p3"] == "25"
    code, _, err = run(capsys, "verify", "no-such-claim")
    assert code == 2 and "two-connected-max" in err


def test_report(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "report", "--claims", "g1-count,second-order", "--out", str(path))
    d = json.loads(path.read_text())
    assert code == 0 and [r["claim_id"] for r in d["reports"]] == ["g1-count", "second-order"]
    assert run(capsys, "report", "--claims", "k4-lconn-l6")[0] == 1


def test_usage_errors():
    with pytest.raises(SystemExit) as e:
        main(["search"])
    assert e.value.code == 2
    with pytest.raises(SystemExit):
        main(["bounds", "nonsense"])
