import io
import json
import random

import pytest
from pydantic import ValidationError

from app.exceptions import GraphError, GraphFormatError
from app.graph6 import from_graph6, to_graph6
from app.schemas import SweepConfig
from app.services import theorems
from app.services.enumeration import canonical_graph6
from app.services.extremal import ExtremalParams, generate
from app.services.patterns import NAMED_PATTERNS, complete, cycle, path, petersen
from app.services.sweep import analyze, compile_filters, read_corpus, run_sweep, run_verify, write_g6
from app.services.theorems import COUNTEREXAMPLE, GraphOutcome


def test_read_corpus_reports_line_numbers():
    lines = ["C~\n", "\n", "C!\n", "Bg\n"]
    with pytest.raises(GraphFormatError) as info:
        list(read_corpus(lines, source="mix.g6"))
    assert "mix.g6, line 3" in info.value.detail
    assert [g.n for g in read_corpus(lines, on_error="skip")] == [4, 3]


def test_analyze_records():
    c5 = analyze(cycle(5))
    assert (c5.circumference, c5.heavy_set, c5.exhausted) == (5, [], True)
    assert c5.heavy_cycle is not None and c5.certificate is None
    assert set(c5.patterns) == set(NAMED_PATTERNS)
    assert c5.patterns["k3"].free

    t1 = analyze(generate(ExtremalParams("T1", n=8)).graph)
    assert t1.heavy_cycle is None
    assert t1.certificate.kind == "bridge"
    assert t1.circumference == 0

    assert analyze(petersen()).circumference == 9


def test_filters():
    accept = compile_filters(["2-connected", "pattern-free:k3"])
    assert all(f(cycle(5)) for f in accept)
    assert not all(f(complete(4)) for f in accept)
    assert not all(f(path(4)) for f in accept)


def test_empty_corpus_exits_cleanly():
    out = io.StringIO()
    assert run_sweep(SweepConfig(source="stdin"), stdin=io.StringIO(""), stdout=out) == 0
    assert out.getvalue() == ""


def test_output_is_deterministic():
    corpus = [to_graph6(g) for g in (cycle(5), complete(4), path(4), petersen())]
    outputs = []
    for seed in range(3):
        random.Random(seed).shuffle(corpus)
        out = io.StringIO()
        code = run_sweep(SweepConfig(source="stdin"), stdin=io.StringIO("\n".join(corpus)), stdout=out)
        assert code == 0
        outputs.append(out.getvalue())
    assert outputs[0] == outputs[1] == outputs[2]
    assert len(outputs[0].splitlines()) == 4


def test_verify_with_filters():
    cfg = SweepConfig(task="verify", theorem="4", max_n=5, filters=["2-connected"], format="json")
    out = io.StringIO()
    assert run_sweep(cfg, stdout=out) == 0
    report = json.loads(out.getvalue())
    assert report["verdict"] == "holds"
    assert report["stats"]["graphs"] == 1 + 3 + 10
    assert "elapsed_seconds" not in report
    assert report["corpus"] == "connected graphs 1 <= n <= 5 [2-connected]"


def test_counterexample_sets_exit_code(monkeypatch):
    def broken(g):
        return GraphOutcome(COUNTEREXAMPLE, to_graph6(g), reason="injected")

    monkeypatch.setitem(theorems.CHECKS, "1", broken)
    out = io.StringIO()
    cfg = SweepConfig(task="verify", theorem="1", max_n=3, format="g6")
    assert run_sweep(cfg, stdout=out) == 1
    assert out.getvalue() == "@\n"


def test_unknown_theorem():
    with pytest.raises(GraphError):
        run_verify("6", [], "explicit")


def test_family_task():
    out = io.StringIO()
    assert run_sweep(SweepConfig(task="family", families=["T1:8"]), stdout=out) == 0
    (report,) = json.loads(out.getvalue())
    assert report["label"] == "T1(n=8)" and report["passed"]


def test_output_file(tmp_path):
    target = tmp_path / "c.jsonl"
    assert run_sweep(SweepConfig(max_n=3, output=str(target))) == 0
    assert len(target.read_text().splitlines()) == 4


def test_write_g6_sorts_by_canonical_key():
    out = io.StringIO()
    assert write_g6([path(3), cycle(3), path(3).relabel([1, 0, 2])], out) == 3
    keys = [canonical_graph6(from_graph6(line)) for line in out.getvalue().splitlines()]
    assert keys == sorted(keys)


@pytest.mark.parametrize(
    "fields",
    [
        {"max_n": 10},
        {"filters": ["planar"]},
        {"filters": ["pattern-free"]},
        {"jobs": 0},
        {"task": "verify"},
        {"source": "file"},
        {"min_n": 5, "max_n": 4},
    ],
)
def test_invalid_configs(fields):
    with pytest.raises(ValidationError):
        SweepConfig(**fields)
