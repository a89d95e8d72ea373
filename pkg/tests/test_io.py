import json
import math
from fractions import Fraction

import numpy as np
import pytest

import qwjoin.transfer as transfer
from qwjoin import (
    WeightedGraph,
    family,
    from_jsonable,
    join_pst,
    load_graph,
    report_from_json,
    report_to_json,
    save_graph,
    to_jsonable,
)
from qwjoin.cli import main
from qwjoin.graphio import AnalysisReport, graph_from_dict, graph_to_dict
from qwjoin.transfer import SupportPartition, SymbolicTime


def test_graph_round_trip(tmp_path):
    g = WeightedGraph(4, [(0, 1, 1.5), (2, 3, 1.0)], loops=[(1, -3.0)])
    path = tmp_path / "g.json"
    save_graph(g, path)
    again = load_graph(path)
    assert again == g
    # a second dump is byte-identical
    first = path.read_text()
    save_graph(again, path)
    assert path.read_text() == first


def test_graph_dict_validation():
    good = graph_to_dict(family("P", 3))
    assert good["simple"] is True
    with pytest.raises(ValueError):
        graph_from_dict({**good, "mystery": 1})
    with pytest.raises(ValueError):
        graph_from_dict({**good, "simple": True, "loops": [[0, 2.0]]})
    with pytest.raises(ValueError):
        graph_from_dict({"order": 2, "simple": True, "edges": [[0, 1]]})


def test_jsonable_scalars():
    payload = {
        "fraction": Fraction(3, 7),
        "complexval": 1 + 2j,
        "time": SymbolicTime(1, 2, 6),
        "graph": family("K", 2),
        "array": np.arange(3.0),
        "npint": np.int64(5),
    }
    encoded = json.loads(json.dumps(to_jsonable(payload)))
    decoded = from_jsonable(encoded)
    assert decoded["fraction"] == Fraction(3, 7)
    assert decoded["complexval"] == 1 + 2j
    assert decoded["time"] == SymbolicTime(1, 2, 6)
    assert decoded["graph"] == family("K", 2)
    assert np.array_equal(decoded["array"], np.arange(3.0))
    assert decoded["npint"] == 5


def test_certificate_report_round_trip():
    cert = join_pst(family("O", 2), family("O", 2), 0, 1)
    report = AnalysisReport(kind="join-pst", payload={"certificate": cert})
    text = report_to_json(report)
    back = report_from_json(text)
    assert back.kind == "join-pst"
    assert back.payload["certificate"] == cert
    assert report_to_json(back) == text


def test_partition_survives_json():
    part = SupportPartition([4.0, 0.0], [2.0])
    report = AnalysisReport(kind="partition", payload={"partition": part})
    assert report_from_json(report_to_json(report)).payload["partition"] == part


def test_cli_analyze_exits_cleanly(capsys):
    assert main(["analyze", "--family", "C4", "--pair", "0", "2"]) == 0
    out = capsys.readouterr().out
    assert "perfect state transfer" in out
    assert "pi/2" in out


def test_cli_join_modes(capsys, tmp_path):
    assert main(["join", "--left", "K 4", "--right", "K 4", "--pair", "0", "1", "--ratio"]) == 0
    out = capsys.readouterr().out
    assert "connected-single-special" in out
    report_path = tmp_path / "report.json"
    assert main([
        "join", "--left", "O2", "--right", "O2", "--pair", "0", "1",
        "--out", str(report_path),
    ]) == 0
    report = report_from_json(report_path.read_text())
    assert report.payload["pst"].pst


def test_cli_self_and_iterated(capsys):
    assert main(["join", "--left", "P3", "--self", "4", "--pair", "0", "2"]) == 0
    assert "pi/2" in capsys.readouterr().out
    assert main([
        "join", "--iterated", "C4 v O2 u O4 v O2", "--part", "1", "--pair", "0", "2",
    ]) == 0
    out = capsys.readouterr().out
    assert "False" in out
    assert "more than one dyadic valuation" in out


def test_cli_join_mode_exclusivity(capsys):
    code = main([
        "join", "--left", "K2", "--right", "K2", "--self", "3", "--pair", "0", "1",
    ])
    assert code == 2


def test_cli_pst_search_jsonl(capsys):
    assert main(["pst-search", "--mode", "double-cone", "--n-min", "1", "--n-max", "8"]) == 0
    out = capsys.readouterr().out
    lines = [json.loads(line) for line in out.splitlines() if line.strip()]
    assert [rec["n"] for rec in lines] == [2, 6]
    assert all(rec["pst"] and rec["time"] == [1, 2, 1] for rec in lines)


def test_cli_bound_sweep_csv(tmp_path, capsys):
    csv_path = tmp_path / "sweep.csv"
    assert main([
        "bound-sweep", "--left", "C4", "--right", "O2", "--pair", "0", "1",
        "--samples", "64", "--csv", str(csv_path),
    ]) == 0
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "t,mag_join,mag_base,F"
    assert len(rows) >= 65
    # every row parses as four floats
    for row in rows[1:4]:
        assert len([float(cell) for cell in row.split(",")]) == 4


def test_cli_precondition_exit_code(capsys):
    # unknown family token
    assert main(["analyze", "--family", "Z9"]) == 2
    assert "precondition violated" in capsys.readouterr().err
    # laplacian join with a loop graph on the left
    assert main([
        "join", "--left", "O_loops 2 1.0", "--right", "O2", "--pair", "0", "1",
    ]) == 2


def test_cli_inconsistency_exit_code(capsys, monkeypatch):
    def wrong_formula(fracs, m, n, connected):
        return "connected-general", Fraction(9)

    monkeypatch.setattr(transfer, "_laplacian_ratio_formula", wrong_formula)
    code = main([
        "join", "--left", "K 4", "--right", "K 4", "--pair", "0", "1", "--ratio",
    ])
    assert code == 3
    assert "internal cross-check failed" in capsys.readouterr().err
