import io
import json

import pytest

from app.config import get_settings
from app.graph6 import from_graph6, to_graph6
from app.services import theorems
from app.services.patterns import complete, petersen
from app.services.theorems import HOLDS, GraphOutcome
from heavycycle import _jobs, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_json(capsys):
    code, out, _ = run(capsys, "gen", "--family", "G1", "--r", "4", "--k", "10", "--out", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 22
    assert from_graph6(doc["graph6"]).n == 22


def test_gen_invalid_parameters(capsys):
    code, out, err = run(capsys, "gen", "--family", "G1", "--r", "4", "--k", "9")
    assert code == 2
    assert out == ""
    assert "❌ ExtremalParamsError" in err


def test_heavycycle(capsys):
    code, out, _ = run(capsys, "heavycycle", "--graph", "C~")
    assert code == 0
    doc = json.loads(out)
    assert doc["heavy_set"] == [0, 1, 2, 3]
    assert sorted(doc["cycle"]) == [0, 1, 2, 3]
    assert doc["certificate"] is None


def test_circumference(capsys):
    code, out, _ = run(capsys, "circumference", "--graph", to_graph6(petersen()))
    assert code == 0
    assert json.loads(out)["length"] == 9

    code, out, _ = run(capsys, "circumference", "--graph", "C~", "--all")
    assert len(json.loads(out)["cycles"]) == 3


def test_realize(capsys):
    k4_minus = to_graph6(complete(4).remove_edge(0, 1))
    code, out, _ = run(capsys, "realize", "--graph", k4_minus, "--ocycle", "0,1,2")
    assert code == 0
    doc = json.loads(out)
    assert doc["initial_deficit"] == 1
    assert doc["steps"] == [{"case": "A", "deficit_before": 1, "pivot": 3}]


def test_realize_rejects_non_ocycle(capsys):
    code, _, err = run(capsys, "realize", "--graph", "C~", "--ocycle", "0,1")
    assert code == 2
    assert "InvalidSequenceError" in err


def test_obstruction(capsys):
    code, out, _ = run(capsys, "obstruction", "--graph", "C~")
    assert code == 0
    assert json.loads(out)["name"] == "K3"


def test_graph6_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("\nBg\n"))
    code, out, _ = run(capsys, "obstruction", "--graph", "-")
    assert code == 0
    assert json.loads(out) == {"kind": "special", "name": "P3", "mapping": None}


def test_malformed_graph6(capsys):
    code, _, err = run(capsys, "heavycycle", "--graph", "C!")
    assert code == 2
    assert "❌ GraphFormatError" in err and "byte offset 1" in err


def test_verify_guard(capsys):
    code, out, err = run(capsys, "verify", "--theorem", "1", "--max-n", "9")
    assert code == 2
    assert "--opt-in-n9" in err


def test_verify_theorem(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "3", "--max-n", "5")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "holds"
    assert report["corpus"] == "connected graphs 1 <= n <= 5"


def test_verify_corpus_file(capsys, tmp_path):
    corpus = tmp_path / "k.g6"
    corpus.write_text("C~\nBw\n")
    code, out, _ = run(capsys, "verify", "--theorem", "1", "--corpus", str(corpus))
    assert code == 0
    assert json.loads(out)["stats"]["graphs"] == 2


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4")
    assert code == 0
    assert len(out.splitlines()) == 6
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--min-n", "1")
    assert len(out.splitlines()) == 1 + 1 + 2 + 6


def test_analyze_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("C~\nBg\n"))
    code, out, _ = run(capsys, "analyze", "-", "--format", "g6")
    assert code == 0
    assert sorted(out.split()) == ["Bg", "C~"]


def test_jobs_environment_wins(monkeypatch):
    assert _jobs(2) == 2
    assert _jobs(None) == 1
    monkeypatch.setenv("HEAVYCYCLE_JOBS", "3")
    get_settings.cache_clear()
    assert _jobs(2) == 3


def test_sweep_config(capsys, tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"task": "verify", "theorem": "2", "max_n": 4, "format": "json"}))
    code, out, _ = run(capsys, "sweep", "--config", str(config))
    assert code == 0
    assert json.loads(out)["theorem"] == "2"

    code, _, err = run(capsys, "sweep", "--config", str(config), "--max-n", "12")
    assert code == 2
    assert "configuration invalide" in err


def test_missing_config_file(capsys, tmp_path):
    code, _, err = run(capsys, "sweep", "--config", str(tmp_path / "absent.json"))
    assert code == 2
    assert "erreur d'entrée/sortie" in err


def test_verify_family(capsys):
    code, out, _ = run(capsys, "verify-family", "--family", "T2", "--n", "8")
    assert code == 0
    assert json.loads(out)["passed"]


def test_graph_option(capsys):
    code, out, _ = run(capsys, "heavycycle", "--graph", "A_")
    assert code == 0
    doc = json.loads(out)
    assert doc["heavy_set"] == [0, 1]
    assert doc["certificate"]["kind"] == "bridge"

    code, out, _ = run(capsys, "circumference", "--graph", "Dhc", "--all")
    assert code == 0
    doc = json.loads(out)
    assert doc["length"] == 5
    assert len(doc["cycles"]) == 1


def test_graph_option_is_required():
    with pytest.raises(SystemExit) as info:
        main(["heavycycle", "C~"])
    assert info.value.code == 2


def test_verify_passes_budget(capsys, monkeypatch):
    seen = []

    def recording(g, budget=None):
        seen.append(budget)
        return GraphOutcome(HOLDS, to_graph6(g))

    monkeypatch.setitem(theorems.CHECKS, "3", recording)
    code, _, _ = run(capsys, "verify", "--theorem", "3", "--max-n", "3", "--budget-seconds", "0.5")
    assert code == 0
    assert len(seen) == 4
    assert all(b.time_limit == 0.5 for b in seen)
