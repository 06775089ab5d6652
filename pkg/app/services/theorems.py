"""
Vérificateurs au niveau des énoncés: cycles lourds (théorèmes 1 et 2), condition de
Fan (théorème 3), plus longs cycles des graphes K_{1,4}-heavy (théorème 4), nécessité
des motifs (théorème 5) et fait de réduction, lemme de réalisation et remarque sur
les o-chemins longs.

Chaque vérificateur produit un TheoremReport; un contre-exemple embarque son graphe
(graph6) et un témoin que l'on peut revérifier avec `recheck`.
"""
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import networkx as nx

from app.config import get_settings
from app.exceptions import GraphError, InvariantViolation
from app.graph import Graph, bits, is_connected, is_two_connected
from app.graph6 import from_graph6, to_graph6
from app.schemas import Counterexample, TheoremReport
from app.services.circumference import Budget, circumference, every_longest_cycle_heavy
from app.services.enumeration import enumerate_connected
from app.services.extremal import ExtremalParams, FAIL, INCONCLUSIVE, generate, verify_family
from app.services.heavy import PatternWitness, heavy_mask, induced_occurrences, is_pattern_heavy
from app.services.ocycle import (
    CycleSeq,
    certificate_pattern,
    certificate_to_schema,
    ebar_masks,
    has_heavy_cycle_exhaustive,
    heavy_cycle_or_certificate,
    long_opath_violations,
    realize_steps,
    validate_certificate,
)
from app.services.patterns import C4, K1_3, K1_4, K1_5, K3, P3, P4

logger = logging.getLogger(__name__)

HOLDS, SKIPPED, COUNTEREXAMPLE = "holds", "skipped", "counterexample"


@dataclass(frozen=True)
class GraphOutcome:
    status: str
    graph6: str
    reason: str = ""
    witness: Dict[str, Any] = field(default_factory=dict)
    tags: Tuple[str, ...] = ()


def _outcome(g: Graph, status: str, reason: str = "", witness=None, tags=()) -> GraphOutcome:
    return GraphOutcome(status=status, graph6=to_graph6(g), reason=reason, witness=witness or {}, tags=tuple(tags))


# ---- vérifications par graphe (fonctions de module: sérialisables pour le pool) ----

def check_theorem1(g: Graph, budget: Optional[Budget] = None) -> GraphOutcome:
    if not is_two_connected(g):
        return _outcome(g, SKIPPED, tags=["not_two_connected"])
    result = heavy_cycle_or_certificate(g)
    if not isinstance(result, CycleSeq):
        cert = certificate_to_schema(result).model_dump(exclude_none=True)
        return _outcome(g, COUNTEREXAMPLE, "2-connected graph without heavy cycle", {"certificate": cert})
    if heavy_mask(g) & ~result.mask:
        return _outcome(g, COUNTEREXAMPLE, "returned cycle misses a heavy vertex", {"cycle": list(result.verts)})
    return _outcome(g, HOLDS, witness={"cycle": list(result.verts)})


def check_theorem2(g: Graph, budget: Optional[Budget] = None) -> GraphOutcome:
    if not is_connected(g):
        return _outcome(g, SKIPPED, tags=["not_connected"])
    if g.n > get_settings().theorem2_max_n:
        return _outcome(g, SKIPPED, tags=["over_guard"])
    brute = has_heavy_cycle_exhaustive(g)
    pattern = certificate_pattern(g)
    pattern_valid = pattern is not None and bool(validate_certificate(g, pattern))
    produced = heavy_cycle_or_certificate(g)
    heavy_count = heavy_mask(g).bit_count()

    if brute is None:
        tags = ["no_heavy_cycle"]
        if heavy_count > 2:
            return _outcome(g, COUNTEREXAMPLE, f"no heavy cycle but {heavy_count} heavy vertices", tags=tags)
        if not pattern_valid:
            return _outcome(g, COUNTEREXAMPLE, "no heavy cycle and no valid certificate", tags=tags)
        if isinstance(produced, CycleSeq):
            return _outcome(
                g, COUNTEREXAMPLE, "constructor returned a cycle the exhaustive search missed",
                {"cycle": list(produced.verts)}, tags,
            )
        cert = certificate_to_schema(pattern).model_dump(exclude_none=True)
        return _outcome(g, HOLDS, witness={"certificate": cert}, tags=tags + [f"case_{pattern.kind}"])

    if pattern_valid:
        cert = certificate_to_schema(pattern).model_dump(exclude_none=True)
        return _outcome(
            g, COUNTEREXAMPLE, "valid certificate although a heavy cycle exists",
            {"certificate": cert, "cycle": list(brute.verts)},
        )
    if not isinstance(produced, CycleSeq):
        return _outcome(g, COUNTEREXAMPLE, "constructor returned a certificate although a heavy cycle exists",
                        {"cycle": list(brute.verts)})
    return _outcome(g, HOLDS, witness={"cycle": list(produced.verts)}, tags=["heavy_cycle"])


def fan_condition(g: Graph) -> bool:
    """max(d(u), d(v)) >= n/2 pour toute paire à distance exactement 2"""
    if not is_connected(g):
        raise GraphError("fan_condition needs a connected graph")
    adj, deg, n = g.masks, g.degrees, g.n
    for u in range(n):
        for v in range(u + 1, n):
            if adj[u] >> v & 1 or not adj[u] & adj[v]:
                continue
            if 2 * max(deg[u], deg[v]) < n:
                return False
    return True


def check_theorem3(g: Graph, budget: Optional[Budget] = None) -> GraphOutcome:
    if not is_two_connected(g):
        return _outcome(g, SKIPPED, tags=["not_two_connected"])
    if not fan_condition(g):
        return _outcome(g, SKIPPED, tags=["fan_fails"])
    result = circumference(g, budget)
    if not result.exhausted:
        return _outcome(g, INCONCLUSIVE, f"circumference search stopped at {result.length}")
    if result.length != g.n:
        witness = {"cycle": list(result.witness.verts)} if result.witness else {}
        return _outcome(g, COUNTEREXAMPLE, f"Fan condition holds but circumference is {result.length}", witness)
    return _outcome(g, HOLDS, witness={"cycle": list(result.witness.verts)}, tags=["fan_holds"])


def check_theorem4(g: Graph, budget: Optional[Budget] = None) -> GraphOutcome:
    if not is_two_connected(g):
        return _outcome(g, SKIPPED, tags=["not_two_connected"])
    k14 = is_pattern_heavy(g, K1_4)
    k13 = is_pattern_heavy(g, K1_3)
    p3 = is_pattern_heavy(g, P3)
    if (k13 and not k14) or (p3 and not k13):
        return _outcome(g, COUNTEREXAMPLE, "heaviness is not monotone along P3, K1,3, K1,4")
    if not k14:
        return _outcome(g, SKIPPED, tags=["not_k1_4_heavy"])
    tags = ["k1_4_heavy"] + (["k1_3_heavy"] if k13 else []) + (["p3_heavy"] if p3 else [])
    check = every_longest_cycle_heavy(g, budget)
    if not check.exhausted:
        return _outcome(g, INCONCLUSIVE, "longest-cycle search exhausted its budget", tags=tags)
    if not check.holds:
        return _outcome(
            g, COUNTEREXAMPLE, f"longest cycle of length {check.length} misses a heavy vertex",
            {"cycle": list(check.counterexample.verts)}, tags,
        )
    return _outcome(g, HOLDS, tags=tags)


def check_opath_remark(g: Graph, budget: Optional[Budget] = None) -> GraphOutcome:
    if not is_connected(g):
        return _outcome(g, SKIPPED, tags=["not_connected"])
    result = circumference(g, budget)
    if not result.exhausted:
        return _outcome(g, INCONCLUSIVE, f"circumference search stopped at {result.length}")
    longest = result.length
    violations = long_opath_violations(g, longest, limit=1)
    if violations:
        return _outcome(
            g, COUNTEREXAMPLE, f"o-path longer than the circumference {longest} has Ē-related ends",
            {"opath": list(violations[0].verts)},
        )
    return _outcome(g, HOLDS)


CHECKS: Dict[str, Callable[..., GraphOutcome]] = {
    "1": check_theorem1,
    "2": check_theorem2,
    "3": check_theorem3,
    "4": check_theorem4,
    "remark": check_opath_remark,
}


# ---- agrégation ----

def parallel_map(func: Callable[[Graph], Any], corpus: Iterable[Graph], jobs: int) -> Iterator[Any]:
    """Applique `func` à chaque graphe, dans l'ordre du corpus, sur `jobs` processus"""
    if jobs <= 1:
        for g in corpus:
            yield func(g)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(func, corpus, chunksize=32)


def aggregate(theorem: str, corpus: str, outcomes: Iterable[GraphOutcome]) -> TheoremReport:
    """Réduction indépendante de l'ordre: le contre-exemple retenu est le plus petit graph6"""
    stats: Dict[str, int] = {"graphs": 0, "checked": 0, "skipped": 0}
    worst: Optional[GraphOutcome] = None
    inconclusive: List[str] = []
    for index, outcome in enumerate(outcomes, start=1):
        stats["graphs"] += 1
        stats["skipped" if outcome.status == SKIPPED else "checked"] += 1
        for tag in outcome.tags:
            stats[tag] = stats.get(tag, 0) + 1
        if outcome.status == COUNTEREXAMPLE and (worst is None or outcome.graph6 < worst.graph6):
            worst = outcome
        elif outcome.status == INCONCLUSIVE:
            inconclusive.append(outcome.graph6)
        if index % 1000 == 0:
            logger.info(f"🔄 théorème {theorem}: {index} graphes traités")

    if worst is not None:
        verdict = "counterexample"
        counterexample = Counterexample(graph6=worst.graph6, reason=worst.reason, witness=worst.witness)
        logger.error(f"❌ théorème {theorem}: contre-exemple {worst.graph6} ({worst.reason})")
    else:
        verdict = "inconclusive" if inconclusive else "holds"
        counterexample = None
    stats["inconclusive"] = len(inconclusive)
    return TheoremReport(
        theorem=theorem,
        corpus=corpus,
        verdict=verdict,
        counterexample=counterexample,
        stats=dict(sorted(stats.items())),
        details=[f"inconclusive: {key}" for key in sorted(inconclusive)],
    )


VERDICT_MARKERS = {"holds": "✅", "inconclusive": "⚠️", "counterexample": "❌"}


def verify_corpus(
    theorem: str, corpus: Iterable[Graph], description: str, jobs: int, budget: Optional[Budget] = None
) -> TheoremReport:
    """`budget` borne chaque recherche de plus long cycle (théorèmes 3, 4 et remarque)"""
    started = time.monotonic()
    check = CHECKS[theorem] if budget is None else partial(CHECKS[theorem], budget=budget)
    report = aggregate(theorem, description, parallel_map(check, corpus, jobs))
    report.elapsed_seconds = round(time.monotonic() - started, 3)
    marker = VERDICT_MARKERS[report.verdict]
    logger.info(f"{marker} théorème {theorem}: {report.verdict} en {report.elapsed_seconds}s ({report.stats})")
    return report


def connected_corpus(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from enumerate_connected(n)


def verify_theorem1(
    corpus: Iterable[Graph], description: str = "explicit", jobs: int = 1, budget: Optional[Budget] = None
) -> TheoremReport:
    return verify_corpus("1", corpus, description, jobs, budget)


def verify_theorem2(
    corpus: Iterable[Graph], description: str = "explicit", jobs: int = 1, budget: Optional[Budget] = None
) -> TheoremReport:
    return verify_corpus("2", corpus, description, jobs, budget)


def verify_theorem3(
    corpus: Iterable[Graph], description: str = "explicit", jobs: int = 1, budget: Optional[Budget] = None
) -> TheoremReport:
    return verify_corpus("3", corpus, description, jobs, budget)


def verify_theorem4(
    corpus: Iterable[Graph], description: str = "explicit", jobs: int = 1, budget: Optional[Budget] = None
) -> TheoremReport:
    return verify_corpus("4", corpus, description, jobs, budget)


def verify_opath_remark(
    corpus: Iterable[Graph], description: str = "explicit", jobs: int = 1, budget: Optional[Budget] = None
) -> TheoremReport:
    return verify_corpus("remark", corpus, description, jobs, budget)


def recheck(report: TheoremReport) -> bool:
    """Le contre-exemple embarqué échoue-t-il toujours au prédicat du théorème?"""
    if report.counterexample is None or report.theorem not in CHECKS:
        return False
    g = from_graph6(report.counterexample.graph6)
    return CHECKS[report.theorem](g).status == COUNTEREXAMPLE


# ---- lemme de réalisation ----

def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for v in range(n) for u in range(v) if rng.random() < p])


def plant_ocycle(g: Graph, rng: random.Random, attempts: int = 30) -> Optional[List[int]]:
    """o-cycle aléatoire (marche sans répétition dans Ē(G), refermée), ou None"""
    if g.n < 3:
        return None
    bar = ebar_masks(g)
    for _ in range(attempts):
        target = rng.randint(3, g.n)
        path = [rng.randrange(g.n)]
        visited = 1 << path[0]
        while len(path) < target:
            options = list(bits(bar[path[-1]] & ~visited))
            if not options:
                break
            nxt = rng.choice(options)
            path.append(nxt)
            visited |= 1 << nxt
        for size in range(len(path), 2, -1):
            if bar[path[size - 1]] >> path[0] & 1:
                return path[:size]
    return None


def verify_lemma1(instances: Optional[int] = None, max_n: Optional[int] = None, seed: int = 0) -> TheoremReport:
    settings = get_settings()
    instances = settings.lemma1_instances if instances is None else instances
    max_n = settings.lemma1_max_n if max_n is None else max_n
    rng = random.Random(seed)
    stats = {"instances": 0, "case_a": 0, "case_b": 0, "max_steps": 0, "positive_deficit": 0, "attempts": 0}
    counterexample = None
    while stats["instances"] < instances and counterexample is None:
        stats["attempts"] += 1
        g = random_graph(rng, rng.randint(3, max_n), rng.uniform(0.15, 0.85))
        planted = plant_ocycle(g, rng)
        if planted is None:
            continue
        stats["instances"] += 1
        try:
            trace = realize_steps(g, planted)
            CycleSeq.of(g, trace.cycle.verts)
            if not set(planted) <= trace.cycle.vertex_set:
                raise InvariantViolation("realized cycle lost a planted vertex")
            if len(trace.steps) > trace.initial_deficit:
                raise InvariantViolation(f"{len(trace.steps)} steps for deficit {trace.initial_deficit}")
        except (InvariantViolation, GraphError) as exc:
            counterexample = Counterexample(graph6=to_graph6(g), reason=exc.detail, witness={"ocycle": planted})
            break
        stats["case_a"] += sum(1 for s in trace.steps if s.case == "A")
        stats["case_b"] += sum(1 for s in trace.steps if s.case == "B")
        stats["max_steps"] = max(stats["max_steps"], len(trace.steps))
        stats["positive_deficit"] += int(trace.initial_deficit > 0)
    return TheoremReport(
        theorem="lemma1",
        corpus=f"{instances} random planted o-cycles, n <= {max_n}, seed {seed}",
        verdict="counterexample" if counterexample else "holds",
        counterexample=counterexample,
        stats=dict(sorted(stats.items())),
    )


# ---- fait de réduction et nécessité ----

SPECIAL_GRAPHS = (("P3", P3), ("K1_3", K1_3), ("K1_4", K1_4))
OBSTRUCTIONS = (("K3", K3), ("C4", C4), ("P4", P4), ("K1_5", K1_5))


@dataclass(frozen=True)
class Obstruction:
    kind: str  # "special" ou "witness"
    name: str
    witness: Optional[PatternWitness] = None


def find_obstruction(s: Graph) -> Obstruction:
    """Graphe exceptionnel (P3, K1,3, K1,4) ou copie induite de K3, C4, P4 ou K1,5"""
    if s.n < 3 or not is_connected(s):
        raise GraphError("find_obstruction needs a connected graph on at least 3 vertices")
    host = s.to_networkx()
    for name, special in SPECIAL_GRAPHS:
        if nx.is_isomorphic(host, special.to_networkx()):
            return Obstruction(kind="special", name=name)
    for name, pattern in OBSTRUCTIONS:
        witness = next(induced_occurrences(s, pattern), None)
        if witness is not None:
            return Obstruction(kind="witness", name=name, witness=witness)
    raise InvariantViolation(f"{to_graph6(s)} contains none of K3, C4, P4, K1,5 and is not exceptional")


def verify_reduction_fact(min_n: int = 3, max_n: int = 7) -> TheoremReport:
    stats: Dict[str, int] = {"graphs": 0}
    counterexample = None
    for g in connected_corpus(max_n, min_n=max(3, min_n)):
        stats["graphs"] += 1
        try:
            found = find_obstruction(g)
        except InvariantViolation as exc:
            counterexample = Counterexample(graph6=to_graph6(g), reason=exc.detail)
            break
        if found.witness is not None and not found.witness.is_valid():
            counterexample = Counterexample(graph6=to_graph6(g), reason=f"invalid {found.name} witness",
                                            witness={"mapping": list(found.witness.mapping)})
            break
        key = f"{found.kind}_{found.name.lower()}"
        stats[key] = stats.get(key, 0) + 1
    return TheoremReport(
        theorem="reduction",
        corpus=f"connected graphs {max(3, min_n)} <= n <= {max_n}",
        verdict="counterexample" if counterexample else "holds",
        counterexample=counterexample,
        stats=dict(sorted(stats.items())),
    )


NECESSITY_FAMILIES = (
    ExtremalParams("G1", r=4, k=10),
    ExtremalParams("G2", r=4, k=7),
    ExtremalParams("G3", r=11, k=8),
)


def verify_theorem5_necessity(budget: Optional[Budget] = None, max_n: int = 7) -> TheoremReport:
    """G1, G2, G3: sans leur motif, 2-connexes, un plus long cycle non lourd, et pas K1,4-heavy"""
    started = time.monotonic()
    details: List[str] = []
    stats: Dict[str, int] = {}
    counterexample = None
    inconclusive = False
    for params in NECESSITY_FAMILIES:
        built = generate(params)
        report = verify_family(params, budget)
        for check in report.checks:
            details.append(f"{params.label} {check.name}: {check.status} {check.detail}".rstrip())
        sharp = is_pattern_heavy(built.graph, K1_4)
        details.append(f"{params.label} not_k1_4_heavy: {'fail' if sharp else 'pass'}")
        failed = [c for c in report.checks if c.status == FAIL]
        if (failed or sharp) and counterexample is None:
            reason = failed[0].name if failed else "K1,4-heavy"
            counterexample = Counterexample(
                graph6=to_graph6(built.graph), reason=f"{params.label}: {reason}", witness={"family": params.label}
            )
        if any(c.status == INCONCLUSIVE for c in report.checks):
            inconclusive = True
        stats[f"{params.family.lower()}_passed"] = int(report.passed and not sharp)

    reduction = verify_reduction_fact(3, max_n)
    stats.update({f"reduction_{key}": value for key, value in reduction.stats.items()})
    details.append(f"reduction fact for 3 <= n <= {max_n}: {reduction.verdict}")
    if reduction.counterexample is not None and counterexample is None:
        counterexample = reduction.counterexample

    verdict = "counterexample" if counterexample else ("inconclusive" if inconclusive else "holds")
    report = TheoremReport(
        theorem="5n",
        corpus=f"G1(4,10), G2(4,7), G3(11,8); connected S with 3 <= n <= {max_n}",
        verdict=verdict,
        counterexample=counterexample,
        stats=dict(sorted(stats.items())),
        details=details,
    )
    report.elapsed_seconds = round(time.monotonic() - started, 3)
    logger.info(f"{VERDICT_MARKERS[verdict]} théorème 5 (nécessité): {verdict} en {report.elapsed_seconds}s")
    return report
