"""
Familles extrémales T1, T2 (deux sommets lourds, aucun cycle lourd) et G1, G2, G3
(plus longs cycles non lourds), avec vérification structurelle.

Disposition des indices (fixe, pour des témoins reproductibles):

- T1, T2 (n pair): x = 0, côté X = 0..n/2-1, y = n/2, côté Y = n/2..n-1, arête xy.
  T1 est la double étoile, T2 deux cliques K_{n/2} reliées par xy.
- G1(r, k): cycle extérieur 0..2r+1 avec u = 0, v_r..v_1 = 1..r, v = r+1,
  v_{-1}..v_{-r} = r+2..2r+1; x = 2r+2, y = 2r+3, z_i = 2r+3+i. xy n'est pas une arête.
- G2(r, k): u = 0, v = 1, x = 2, z_i = 2+i, cliques A = k+3..k+r+2 et B = k+r+3..k+2r+2;
  u et v sont universels.
- G3(r, k): cycle extérieur comme G1, x = 2r+2, y = 2r+3, trois cliques K_k à partir de 2r+4.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from app.config import get_settings
from app.exceptions import ExtremalParamsError
from app.graph import Graph, is_connected, is_two_connected
from app.graph6 import to_graph6
from app.schemas import ExtremalGraphOut, FamilyCheckOut, FamilyReportOut
from app.services.circumference import Budget, circumference, every_longest_cycle_omits
from app.services.heavy import heavy_vertices, is_pattern_free
from app.services.ocycle import (
    CycleSeq,
    TwoHeavyBridge,
    has_heavy_cycle_exhaustive,
    heavy_cycle_or_certificate,
    validate_certificate,
)
from app.services.patterns import C4, K1_5, K3, P4

logger = logging.getLogger(__name__)

FAMILIES = ("T1", "T2", "G1", "G2", "G3")

Role = Union[int, Tuple[int, ...]]


@dataclass(frozen=True)
class ExtremalParams:
    family: str
    n: Optional[int] = None
    r: Optional[int] = None
    k: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "family", self.family.upper())

    def violations(self) -> List[str]:
        family, n, r, k = self.family, self.n, self.r, self.k
        if family not in FAMILIES:
            return [f"unknown family {self.family!r} (expected one of {', '.join(FAMILIES)})"]
        if family in ("T1", "T2"):
            if n is None:
                return [f"{family} needs n"]
            if n < 4 or n % 2:
                return [f"{family} requires n even and n >= 4 (got n={n})"]
            return []
        if r is None or k is None:
            return [f"{family} needs r and k"]
        out = []
        if family == "G1":
            if r < 4 or k < 2 * r + 2:
                out.append(f"G1 requires r >= 4 and k >= 2r+2 (got r={r}, k={k})")
        elif family == "G2":
            if r < 4 or k < 2 * r - 1:
                out.append(f"G2 requires r >= 4 and k >= 2r-1 (got r={r}, k={k})")
        elif family == "G3":
            if r < 11 or 3 * k < 2 * r + 2 or k > r - 3:
                out.append(f"G3 requires r >= 11 and (2r+2)/3 <= k <= r-3 (got r={r}, k={k})")
        return out

    def validate(self) -> "ExtremalParams":
        problems = self.violations()
        if problems:
            raise ExtremalParamsError("; ".join(problems))
        return self

    @property
    def label(self) -> str:
        if self.family in ("T1", "T2"):
            return f"{self.family}(n={self.n})"
        return f"{self.family}(r={self.r}, k={self.k})"


@dataclass(frozen=True)
class ExtremalGraph:
    params: ExtremalParams
    graph: Graph
    roles: Dict[str, Role]

    def role(self, name: str) -> Role:
        return self.roles[name]


def _outer_cycle(r: int) -> List[Tuple[int, int]]:
    size = 2 * r + 2
    return [(i, (i + 1) % size) for i in range(size)]


def _clique(members: range) -> List[Tuple[int, int]]:
    items = list(members)
    return [(a, b) for i, a in enumerate(items) for b in items[i + 1:]]


def _build_t(family: str, n: int) -> ExtremalGraph:
    half = n // 2
    x, y = 0, half
    side_x, side_y = range(0, half), range(half, n)
    edges = [(x, y)]
    if family == "T1":
        edges += [(x, v) for v in side_x if v != x] + [(y, v) for v in side_y if v != y]
    else:
        edges += _clique(side_x) + _clique(side_y)
    roles = {"x": x, "y": y, "side_x": tuple(side_x), "side_y": tuple(side_y)}
    return ExtremalGraph(ExtremalParams(family, n=n), Graph(n, edges), roles)


def _outer_roles(r: int) -> Dict[str, Role]:
    return {
        "u": 0,
        "v": r + 1,
        "outer": tuple(range(2 * r + 2)),
        "v_plus": tuple(r + 1 - i for i in range(1, r + 1)),
        "v_minus": tuple(r + 1 + i for i in range(1, r + 1)),
    }


def _build_g1(r: int, k: int) -> ExtremalGraph:
    x, y = 2 * r + 2, 2 * r + 3
    zs = tuple(2 * r + 3 + i for i in range(1, k + 1))
    n = 2 * r + k + 4
    edges = _outer_cycle(r) + [(x, 0), (y, r + 1)]
    edges += [(x, z) for z in zs] + [(y, z) for z in zs]
    roles = dict(_outer_roles(r), x=x, y=y, z=zs)
    return ExtremalGraph(ExtremalParams("G1", r=r, k=k), Graph(n, edges), roles)


def _build_g2(r: int, k: int) -> ExtremalGraph:
    u, v, x = 0, 1, 2
    zs = tuple(2 + i for i in range(1, k + 1))
    clique_a = range(k + 3, k + 3 + r)
    clique_b = range(k + 3 + r, k + 3 + 2 * r)
    n = 2 * r + k + 3
    edges = [(x, z) for z in zs] + _clique(clique_a) + _clique(clique_b)
    edges += [(hub, w) for hub in (u, v) for w in range(n) if w != hub]
    roles = {"u": u, "v": v, "x": x, "z": zs, "clique_a": tuple(clique_a), "clique_b": tuple(clique_b)}
    return ExtremalGraph(ExtremalParams("G2", r=r, k=k), Graph(n, edges), roles)


def _build_g3(r: int, k: int) -> ExtremalGraph:
    x, y = 2 * r + 2, 2 * r + 3
    start = 2 * r + 4
    cliques = [range(start + j * k, start + (j + 1) * k) for j in range(3)]
    n = 2 * r + 3 * k + 4
    edges = _outer_cycle(r) + [(x, 0), (y, r + 1)]
    for members in cliques:
        edges += _clique(members)
        edges += [(x, w) for w in members] + [(y, w) for w in members]
    roles = dict(_outer_roles(r), x=x, y=y)
    for j, members in enumerate(cliques, start=1):
        roles[f"clique_{j}"] = tuple(members)
    return ExtremalGraph(ExtremalParams("G3", r=r, k=k), Graph(n, edges), roles)


def build(params: ExtremalParams) -> ExtremalGraph:
    """Construit sans vérifier les contraintes des paramètres (tests de frontière)"""
    family = params.family
    if family not in FAMILIES:
        raise ExtremalParamsError(f"unknown family {params.family!r} (expected one of {', '.join(FAMILIES)})")
    if family in ("T1", "T2"):
        if params.n is None or params.n < 2 or params.n % 2:
            raise ExtremalParamsError(f"{family} needs an even n >= 2")
        return _build_t(family, params.n)
    if params.r is None or params.k is None or params.r < 1 or params.k < 1:
        raise ExtremalParamsError(f"{family} needs positive r and k")
    if family == "G1":
        return _build_g1(params.r, params.k)
    if family == "G2":
        return _build_g2(params.r, params.k)
    return _build_g3(params.r, params.k)


def generate(params: ExtremalParams) -> ExtremalGraph:
    return build(params.validate())


def boundary_equivalence(params: ExtremalParams) -> Tuple[bool, bool]:
    """(x est lourd, la contrainte de construction sur k est satisfaite), sans valider les paramètres"""
    built = build(params)
    g = built.graph
    x = built.roles["x"]
    is_heavy = 2 * g.degree(x) >= g.n
    r, k = params.r, params.k
    formula = {
        "G1": k >= 2 * r + 2,
        "G2": k >= 2 * r - 1,
        "G3": 3 * k >= 2 * r + 2,
    }[params.family]
    return is_heavy, formula


# ---- vérification ----

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class FamilyCheck:
    name: str
    status: str
    detail: str = ""


@dataclass
class FamilyReport:
    params: ExtremalParams
    n: int
    checks: List[FamilyCheck] = field(default_factory=list)
    circumference: Optional[int] = None
    upper_bound: Optional[int] = None
    exhausted: bool = True
    longest_cycle: Optional[Tuple[int, ...]] = None

    @property
    def passed(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    @property
    def inconclusive(self) -> bool:
        return any(c.status == INCONCLUSIVE for c in self.checks) and not any(
            c.status == FAIL for c in self.checks
        )

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(FamilyCheck(name=name, status=PASS if ok else FAIL, detail=detail))


def _verify_bridge_family(built: ExtremalGraph, report: FamilyReport) -> None:
    g = built.graph
    x, y = built.roles["x"], built.roles["y"]
    heavy = heavy_vertices(g)
    report.add("connected", is_connected(g))
    report.add("heavy_set", heavy == frozenset([x, y]), f"heavy set {sorted(heavy)}")
    outcome = heavy_cycle_or_certificate(g)
    if isinstance(outcome, CycleSeq):
        report.add("no_heavy_cycle", False, f"heavy cycle {list(outcome.verts)}")
        return
    check = validate_certificate(g, outcome)
    report.add(
        "certificate",
        isinstance(outcome, TwoHeavyBridge) and bool(check),
        f"{outcome.kind}: {'; '.join(check.reasons) or 'valid'}",
    )
    if g.n <= get_settings().fallback_max_n:
        report.add("no_heavy_cycle", has_heavy_cycle_exhaustive(g) is None, "exhaustive search")


def verify_family(params: ExtremalParams, budget: Optional[Budget] = None) -> FamilyReport:
    """Vérifie les propriétés annoncées de la famille sur l'instance donnée"""
    built = generate(params)
    g = built.graph
    report = FamilyReport(params=built.params, n=g.n)
    logger.info(f"🔄 vérification de {built.params.label} (n={g.n})")

    if built.params.family in ("T1", "T2"):
        _verify_bridge_family(built, report)
        logger.info(f"{'✅' if report.passed else '❌'} {built.params.label}")
        return report

    family, r = built.params.family, built.params.r
    x = built.roles["x"]
    heavy = heavy_vertices(g)
    if family == "G1":
        report.add("k3_free", is_pattern_free(g, K3))
    elif family == "G2":
        report.add("p4_free", is_pattern_free(g, P4))
        report.add("c4_free", is_pattern_free(g, C4))
    else:
        report.add("k1_5_free", is_pattern_free(g, K1_5))
    report.add("two_connected", is_two_connected(g))
    if family == "G2":
        report.add("x_heavy", x in heavy, f"heavy set {sorted(heavy)}")
        omitted = [x]
    else:
        y = built.roles["y"]
        report.add("heavy_set", heavy == frozenset([x, y]), f"heavy set {sorted(heavy)}")
        omitted = [x, y]

    target = 2 * r + 2
    if family != "G2":
        outer = CycleSeq.of(g, built.roles["outer"])
        report.add("lower_bound", len(outer) == target, f"outer cycle of length {len(outer)}")

    result = circumference(g, budget)
    report.circumference = result.length
    report.upper_bound = result.upper_bound
    report.exhausted = result.exhausted
    report.longest_cycle = result.witness.verts if result.witness else None
    if not result.exhausted:
        lower = max(result.length, target) if family != "G2" else result.length
        report.checks.append(
            FamilyCheck(
                name="circumference",
                status=INCONCLUSIVE if result.length <= target <= result.upper_bound else FAIL,
                detail=f"{lower} <= c <= {result.upper_bound}",
            )
        )
        logger.warning(f"⚠️ {built.params.label}: circonférence non prouvée (borne {result.upper_bound})")
        return report
    report.add("circumference", result.length == target, f"c = {result.length}, expected {target}")

    omits = every_longest_cycle_omits(g, omitted, budget=budget, longest=result.length)
    if not omits.exhausted:
        report.checks.append(FamilyCheck("longest_cycles_omit", INCONCLUSIVE, "budget exhausted"))
    else:
        detail = f"omits {omitted}"
        if omits.counterexample is not None:
            detail = f"longest cycle {list(omits.counterexample.verts)} meets {omitted}"
        report.add("longest_cycles_omit", omits.holds, detail)
    logger.info(f"{'✅' if report.passed else '❌'} {built.params.label}: c = {result.length}")
    return report


# ---- sérialisation ----

def parse_family(text: str) -> ExtremalParams:
    """Lit "G1:4:10" comme G1(r=4, k=10); "T1:8" donne T1(n=8)"""
    parts = text.strip().split(":")
    family = parts[0].upper()
    try:
        numbers = [int(p) for p in parts[1:]]
    except ValueError:
        raise ExtremalParamsError(f"invalid family spec {text!r} (expected e.g. G1:4:10 or T1:8)")
    if family in ("T1", "T2") and len(numbers) == 1:
        return ExtremalParams(family, n=numbers[0])
    if family in ("G1", "G2", "G3") and len(numbers) == 2:
        return ExtremalParams(family, r=numbers[0], k=numbers[1])
    raise ExtremalParamsError(f"invalid family spec {text!r} (expected e.g. G1:4:10 or T1:8)")


def extremal_graph_to_schema(built: ExtremalGraph) -> ExtremalGraphOut:
    return ExtremalGraphOut(
        family=built.params.family,
        label=built.params.label,
        n=built.graph.n,
        edges=built.graph.edge_count,
        graph6=to_graph6(built.graph),
        roles={name: role if isinstance(role, int) else list(role) for name, role in built.roles.items()},
    )


def family_report_to_schema(report: FamilyReport) -> FamilyReportOut:
    return FamilyReportOut(
        family=report.params.family,
        label=report.params.label,
        n=report.n,
        passed=report.passed,
        inconclusive=report.inconclusive,
        circumference=report.circumference,
        upper_bound=report.upper_bound,
        exhausted=report.exhausted,
        longest_cycle=list(report.longest_cycle) if report.longest_cycle else None,
        checks=[FamilyCheckOut(name=c.name, status=c.status, detail=c.detail) for c in report.checks],
    )
