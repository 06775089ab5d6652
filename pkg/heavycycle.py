#!/usr/bin/env python3
"""
Interface en ligne de commande de heavycycle.

Les documents JSON sont écrits sur la sortie standard, les journaux sur la sortie
d'erreur. Codes de sortie: 0 succès, 1 contre-exemple ou résultat non concluant,
2 entrée invalide ou garde de complexité dépassée.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.config import get_settings
from app.exceptions import GuardError, HeavyCycleError
from app.graph import Graph
from app.graph6 import from_graph6, to_graph6
from app.schemas import (
    CircumferenceResponse,
    HeavyCycleResponse,
    ObstructionOut,
    RealizeResponse,
    RealizeStepOut,
    SweepConfig,
)
from app.services.circumference import Budget, all_longest_cycles, circumference
from app.services.enumeration import enumerate_connected
from app.services.extremal import (
    ExtremalParams,
    extremal_graph_to_schema,
    family_report_to_schema,
    generate,
    verify_family,
)
from app.services.heavy import heavy_vertices
from app.services.ocycle import CycleSeq, certificate_to_schema, heavy_cycle_or_certificate, realize_steps
from app.services.sweep import read_corpus, run_sweep, run_verify, write_g6
from app.services.theorems import connected_corpus, find_obstruction, verify_lemma1, verify_theorem5_necessity

logger = logging.getLogger("heavycycle")

THEOREMS = ("1", "2", "3", "4", "5n", "lemma1", "remark")


def _read_graph(text: str) -> Graph:
    """graph6 en argument, ou '-' pour la première ligne non vide de l'entrée standard"""
    if text == "-":
        text = next((line for line in sys.stdin if line.strip()), "")
    return from_graph6(text.strip())


def _emit(model) -> None:
    sys.stdout.write(model.model_dump_json(indent=2) + "\n")


def _jobs(requested: Optional[int]) -> int:
    settings = get_settings()
    if "jobs" in settings.model_fields_set:
        return settings.jobs
    return requested or settings.jobs


def _params(args) -> ExtremalParams:
    return ExtremalParams(args.family, n=args.n, r=args.r, k=args.k)


# ---- sous-commandes ----

def cmd_analyze(args) -> int:
    source = "stdin" if args.corpus == "-" else "file"
    cfg = SweepConfig(
        source=source,
        corpus_path=None if source == "stdin" else args.corpus,
        task="analyze",
        format=args.format,
        output=args.output,
        budget_seconds=args.budget_seconds,
        jobs=_jobs(args.jobs),
        on_error=args.on_error,
    )
    return run_sweep(cfg)


def cmd_realize(args) -> int:
    g = _read_graph(args.graph)
    ocycle = [int(v) for v in args.ocycle.split(",") if v.strip()]
    trace = realize_steps(g, ocycle)
    _emit(RealizeResponse(
        cycle=list(trace.cycle.verts),
        initial_deficit=trace.initial_deficit,
        steps=[RealizeStepOut(case=s.case, deficit_before=s.deficit_before, pivot=s.pivot) for s in trace.steps],
    ))
    return 0


def cmd_heavycycle(args) -> int:
    g = _read_graph(args.graph)
    outcome = heavy_cycle_or_certificate(g)
    response = HeavyCycleResponse(graph6=to_graph6(g), heavy_set=sorted(heavy_vertices(g)))
    if isinstance(outcome, CycleSeq):
        response.cycle = list(outcome.verts)
    else:
        response.certificate = certificate_to_schema(outcome)
    _emit(response)
    return 0


def cmd_circumference(args) -> int:
    g = _read_graph(args.graph)
    result = circumference(g, Budget.default(args.budget_seconds), engine=args.engine)
    if args.all and result.length:
        cycles = [list(c.verts) for c in all_longest_cycles(g)]
    else:
        cycles = [list(result.witness.verts)] if result.witness else []
    _emit(CircumferenceResponse(
        length=result.length,
        exhausted=result.exhausted,
        upper_bound=result.upper_bound,
        engine=result.engine,
        cycles=cycles,
    ))
    return 0 if result.exhausted else 1


def cmd_gen(args) -> int:
    built = generate(_params(args))
    if args.out == "g6":
        sys.stdout.write(to_graph6(built.graph) + "\n")
    else:
        _emit(extremal_graph_to_schema(built))
    return 0


def cmd_verify_family(args) -> int:
    report = family_report_to_schema(verify_family(_params(args), Budget.default(args.budget_seconds)))
    _emit(report)
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    settings = get_settings()
    if args.theorem == "lemma1":
        report = verify_lemma1(args.instances, args.max_n, seed=args.seed)
    elif args.theorem == "5n":
        report = verify_theorem5_necessity(Budget.default(args.budget_seconds))
    else:
        if args.corpus:
            with open(args.corpus, "r", encoding="ascii") as handle:
                graphs = list(read_corpus(handle, "abort", args.corpus))
            description = f"graph6 file {args.corpus}"
        else:
            max_n = args.max_n or settings.default_max_n
            if max_n > settings.default_max_n and not args.opt_in_n9:
                raise GuardError(
                    f"exhaustive sweeps above n = {settings.default_max_n} take hours; pass --opt-in-n9"
                )
            graphs = connected_corpus(max_n, min_n=args.min_n)
            description = f"connected graphs {args.min_n} <= n <= {max_n}"
        budget = None if args.budget_seconds is None else Budget.default(args.budget_seconds)
        report = run_verify(args.theorem, graphs, description, _jobs(args.jobs), budget)
    _emit(report)
    return 0 if report.verdict == "holds" else 1


def cmd_enumerate(args) -> int:
    min_n = args.min_n or args.n
    graphs = (g for n in range(min_n, args.n + 1) for g in enumerate_connected(n))
    count = write_g6(graphs, sys.stdout, _jobs(args.jobs))
    logger.info(f"✅ {count} graphes connexes pour {min_n} <= n <= {args.n}")
    return 0


def cmd_obstruction(args) -> int:
    found = find_obstruction(_read_graph(args.graph))
    _emit(ObstructionOut(
        kind=found.kind,
        name=found.name,
        mapping=list(found.witness.mapping) if found.witness else None,
    ))
    return 0


SWEEP_FLAGS = (
    "source", "min_n", "max_n", "corpus_path", "task", "theorem", "budget_seconds",
    "output", "format", "jobs", "on_error",
)


def cmd_sweep(args) -> int:
    values = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as handle:
            values = json.load(handle)
    for name in SWEEP_FLAGS:
        given = getattr(args, name)
        if given is not None:
            values[name] = given
    if args.filter:
        values["filters"] = args.filter
    if args.family:
        values["families"] = args.family
    values["jobs"] = _jobs(values.get("jobs"))
    return run_sweep(SweepConfig(**values))


# ---- analyse des arguments ----

def _add_family_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", required=True, help="T1, T2, G1, G2 ou G3")
    parser.add_argument("--n", type=int, help="ordre (T1, T2)")
    parser.add_argument("--r", type=int, help="paramètre r (G1, G2, G3)")
    parser.add_argument("--k", type=int, help="paramètre k (G1, G2, G3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heavycycle", description="Cycles lourds et plus longs cycles")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="fiche d'analyse pour chaque graphe d'un corpus graph6")
    p.add_argument("corpus", nargs="?", default="-", help="fichier graph6 ('-' pour l'entrée standard)")
    p.add_argument("--format", choices=["json", "jsonl", "g6"], default="jsonl")
    p.add_argument("--output")
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--jobs", type=int)
    p.add_argument("--on-error", choices=["skip", "abort"], default="abort")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("realize", help="réalise un o-cycle en cycle")
    p.add_argument("--graph", required=True, help="graphe en graph6 ('-' pour l'entrée standard)")
    p.add_argument("--ocycle", required=True, help="sommets séparés par des virgules")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("heavycycle", help="cycle lourd ou certificat d'absence")
    p.add_argument("--graph", required=True, help="graphe en graph6 ('-' pour l'entrée standard)")
    p.set_defaults(func=cmd_heavycycle)

    p = sub.add_parser("circumference", help="longueur d'un plus long cycle")
    p.add_argument("--graph", required=True, help="graphe en graph6 ('-' pour l'entrée standard)")
    p.add_argument("--all", action="store_true", help="énumère tous les plus longs cycles (n <= 14)")
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--engine", choices=["auto", "dp", "bnb"], default="auto")
    p.set_defaults(func=cmd_circumference)

    p = sub.add_parser("gen", help="construit un graphe extrémal")
    _add_family_args(p)
    p.add_argument("--out", choices=["g6", "json"], default="g6")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify-family", help="vérifie les propriétés d'une famille extrémale")
    _add_family_args(p)
    p.add_argument("--budget-seconds", type=float)
    p.set_defaults(func=cmd_verify_family)

    p = sub.add_parser("verify", help="vérifie un énoncé sur un corpus")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--max-n", type=int)
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--corpus", help="fichier graph6 à la place de l'énumération")
    p.add_argument("--jobs", type=int)
    p.add_argument("--opt-in-n9", action="store_true", help="autorise l'énumération jusqu'à n = 9")
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--instances", type=int, help="lemma1: nombre d'instances")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="graphes connexes non isomorphes, en graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--min-n", type=int)
    p.add_argument("--jobs", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("obstruction", help="graphe exceptionnel ou obstruction induite")
    p.add_argument("--graph", required=True, help="graphe en graph6 ('-' pour l'entrée standard)")
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("sweep", help="balayage décrit par un fichier de configuration JSON")
    p.add_argument("--config")
    p.add_argument("--source", choices=["enumerate", "file", "stdin"])
    p.add_argument("--min-n", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--corpus", dest="corpus_path")
    p.add_argument("--filter", action="append", help="connected, 2-connected, pattern-free:<p>, pattern-heavy:<p>")
    p.add_argument("--task", choices=["analyze", "verify", "family"])
    p.add_argument("--theorem", choices=THEOREMS)
    p.add_argument("--family", action="append", help="par exemple G1:4:10 ou T1:8")
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--output")
    p.add_argument("--format", choices=["json", "jsonl", "g6"])
    p.add_argument("--jobs", type=int)
    p.add_argument("--on-error", choices=["skip", "abort"])
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(
        level=settings.log_level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HeavyCycleError as e:
        print(f"❌ {type(e).__name__}: {e.detail}", file=sys.stderr)
        return 2
    except ValidationError as e:
        print(f"❌ configuration invalide: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"❌ erreur d'entrée/sortie: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
