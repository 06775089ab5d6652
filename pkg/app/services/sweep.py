"""
Balayages de corpus: lecture graph6, filtres, analyse par graphe et écriture des rapports.

L'ordre de sortie est celui de la clé graph6 canonique, si bien qu'un même
balayage produit des fichiers identiques octet pour octet, quel que soit `jobs`.
"""
import json
import logging
import sys
from functools import partial
from typing import Callable, Iterable, Iterator, List, Optional, TextIO, Tuple

from app.exceptions import GraphError, GraphFormatError
from app.graph import Graph, is_connected, is_two_connected
from app.graph6 import from_graph6, to_graph6
from app.schemas import AnalysisRecord, PatternFlags, SweepConfig, TheoremReport
from app.services.circumference import Budget, circumference
from app.services.enumeration import canonical_graph6, enumerate_connected
from app.services.extremal import family_report_to_schema, parse_family, verify_family
from app.services.heavy import heavy_vertices, is_pattern_free, is_pattern_heavy
from app.services.ocycle import CycleSeq, certificate_to_schema, heavy_cycle_or_certificate
from app.services.patterns import NAMED_PATTERNS, parse_pattern
from app.services.theorems import CHECKS, parallel_map, verify_corpus, verify_lemma1, verify_theorem5_necessity

logger = logging.getLogger(__name__)

GraphFilter = Callable[[Graph], bool]


def read_corpus(lines: Iterable[str], on_error: str = "abort", source: str = "corpus") -> Iterator[Graph]:
    """Un graphe par ligne graph6 non vide; les erreurs citent le numéro de ligne"""
    for number, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            g = from_graph6(text)
        except GraphFormatError as exc:
            message = f"{source}, line {number}: {exc.detail}"
            if on_error == "abort":
                raise GraphFormatError(message) from exc
            logger.warning(f"⚠️ ligne ignorée ({message})")
            continue
        yield g


def iter_source(cfg: SweepConfig, stdin: Optional[TextIO] = None) -> Iterator[Graph]:
    if cfg.source == "enumerate":
        for n in range(cfg.min_n, cfg.max_n + 1):
            yield from enumerate_connected(n)
    elif cfg.source == "file":
        with open(cfg.corpus_path, "r", encoding="ascii") as handle:
            yield from read_corpus(handle, cfg.on_error, cfg.corpus_path)
    else:
        yield from read_corpus(stdin or sys.stdin, cfg.on_error, "<stdin>")


def compile_filters(filters: Iterable[str]) -> List[GraphFilter]:
    compiled: List[GraphFilter] = []
    for item in filters:
        head, _, argument = item.partition(":")
        if head == "connected":
            compiled.append(is_connected)
        elif head == "2-connected":
            compiled.append(is_two_connected)
        elif head == "pattern-free":
            pattern = parse_pattern(argument)
            compiled.append(lambda g, p=pattern: is_pattern_free(g, p))
        elif head == "pattern-heavy":
            pattern = parse_pattern(argument)
            compiled.append(lambda g, p=pattern: bool(is_pattern_heavy(g, p)))
    return compiled


def filtered(corpus: Iterable[Graph], filters: List[GraphFilter]) -> Iterator[Graph]:
    for g in corpus:
        if all(accept(g) for accept in filters):
            yield g


def analyze(g: Graph, budget: Optional[Budget] = None) -> AnalysisRecord:
    connected = is_connected(g)
    result = circumference(g, budget)
    heavy_cycle = certificate = None
    if connected:
        outcome = heavy_cycle_or_certificate(g)
        if isinstance(outcome, CycleSeq):
            heavy_cycle = list(outcome.verts)
        else:
            certificate = certificate_to_schema(outcome)
    patterns = {
        name: PatternFlags(free=is_pattern_free(g, pattern), heavy=bool(is_pattern_heavy(g, pattern)))
        for name, pattern in NAMED_PATTERNS.items()
    }
    return AnalysisRecord(
        graph6=to_graph6(g),
        n=g.n,
        edges=g.edge_count,
        connected=connected,
        two_connected=is_two_connected(g),
        heavy_set=sorted(heavy_vertices(g)),
        circumference=result.length,
        exhausted=result.exhausted,
        heavy_cycle=heavy_cycle,
        certificate=certificate,
        patterns=patterns,
    )


def _analyze_item(g: Graph, budget_seconds: Optional[float] = None) -> Tuple[str, AnalysisRecord]:
    budget = Budget.default(budget_seconds) if budget_seconds else None
    return canonical_graph6(g), analyze(g, budget)


def _canonical_item(g: Graph) -> Tuple[str, str]:
    return canonical_graph6(g), to_graph6(g)


# ---- tâches ----

def _run_analyze(cfg: SweepConfig, corpus: Iterable[Graph], out: TextIO) -> int:
    task = partial(_analyze_item, budget_seconds=cfg.budget_seconds)
    items = []
    for index, item in enumerate(parallel_map(task, corpus, cfg.jobs), start=1):
        items.append(item)
        if index % 1000 == 0:
            logger.info(f"🔄 {index} graphes analysés")
    items.sort(key=lambda pair: (pair[0], pair[1].graph6))
    records = [record for _, record in items]
    if cfg.format == "json":
        out.write(json.dumps([r.model_dump(mode="json") for r in records], indent=2) + "\n")
    elif cfg.format == "jsonl":
        for record in records:
            out.write(record.model_dump_json() + "\n")
    else:
        for record in records:
            out.write(record.graph6 + "\n")
    unproven = sum(1 for r in records if not r.exhausted)
    if unproven:
        logger.warning(f"⚠️ {unproven} circonférences non prouvées")
    logger.info(f"✅ {len(records)} graphes analysés")
    return 1 if unproven else 0


def _write_report(report: TheoremReport, cfg: SweepConfig, out: TextIO) -> int:
    if cfg.format == "g6":
        if report.counterexample is not None:
            out.write(report.counterexample.graph6 + "\n")
    elif cfg.format == "jsonl":
        out.write(report.model_dump_json() + "\n")
    else:
        out.write(report.model_dump_json(indent=2) + "\n")
    return 0 if report.verdict == "holds" else 1


def run_verify(
    theorem: str, corpus: Iterable[Graph], description: str, jobs: int = 1, budget: Optional[Budget] = None
) -> TheoremReport:
    """Lance le vérificateur d'un théorème; '5n' et 'lemma1' ignorent le corpus"""
    if theorem == "5n":
        return verify_theorem5_necessity(budget)
    if theorem == "lemma1":
        return verify_lemma1()
    if theorem not in CHECKS:
        raise GraphError(f"unknown theorem id {theorem!r} (expected 1, 2, 3, 4, 5n, lemma1, remark)")
    return verify_corpus(theorem, corpus, description, jobs, budget)


def _run_family(cfg: SweepConfig, out: TextIO) -> int:
    budget = Budget.default(cfg.budget_seconds)
    reports = [family_report_to_schema(verify_family(parse_family(spec), budget)) for spec in cfg.families]
    reports.sort(key=lambda r: r.label)
    if cfg.format == "jsonl":
        for report in reports:
            out.write(report.model_dump_json() + "\n")
    else:
        out.write(json.dumps([r.model_dump(mode="json") for r in reports], indent=2) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def describe(cfg: SweepConfig) -> str:
    if cfg.source == "enumerate":
        text = f"connected graphs {cfg.min_n} <= n <= {cfg.max_n}"
    elif cfg.source == "file":
        text = f"graph6 file {cfg.corpus_path}"
    else:
        text = "graph6 stream <stdin>"
    if cfg.filters:
        text += f" [{', '.join(cfg.filters)}]"
    return text


def run_sweep(cfg: SweepConfig, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> int:
    """Exécute un balayage; code de sortie 0 si aucun contre-exemple ni résultat non concluant"""
    out = stdout or sys.stdout
    handle = None
    if cfg.output:
        handle = open(cfg.output, "w", encoding="utf-8")
        out = handle
    logger.info(f"🔄 balayage {cfg.task}: {describe(cfg)}")
    try:
        if cfg.task == "family":
            return _run_family(cfg, out)
        corpus = filtered(iter_source(cfg, stdin), compile_filters(cfg.filters))
        if cfg.task == "analyze":
            return _run_analyze(cfg, corpus, out)
        budget = None if cfg.budget_seconds is None else Budget.default(cfg.budget_seconds)
        report = run_verify(cfg.theorem, corpus, describe(cfg), cfg.jobs, budget)
        return _write_report(report, cfg, out)
    finally:
        if handle is not None:
            handle.close()


def write_g6(corpus: Iterable[Graph], out: TextIO, jobs: int = 1) -> int:
    """Écrit un corpus en graph6, trié par clé canonique; renvoie le nombre de graphes"""
    items = sorted(parallel_map(_canonical_item, corpus, jobs))
    for _, text in items:
        out.write(text + "\n")
    return len(items)
