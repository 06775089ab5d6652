"""
Bibliothèque de motifs (petits graphes nommés) et constructeurs usuels
"""
from typing import Dict

from app.exceptions import GraphError, GuardError
from app.graph import Graph

MAX_PATTERN_N = 8


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for v in range(n) for u in range(v)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(k: int) -> Graph:
    """K_{1,k}: centre 0, feuilles 1..k"""
    if k < 1:
        raise GraphError(f"a star needs at least one leaf, got {k}")
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def empty(n: int) -> Graph:
    return Graph(n)


def disjoint_union(first: Graph, second: Graph) -> Graph:
    shift = first.n
    return Graph(first.n + second.n, first.edges() + [(u + shift, v + shift) for u, v in second.edges()])


def prism(k: int) -> Graph:
    """C_k x K_2 (hamiltonien)"""
    edges = []
    for i in range(k):
        edges += [(i, (i + 1) % k), (k + i, k + (i + 1) % k), (i, k + i)]
    return Graph(2 * k, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


P3 = path(3)
P4 = path(4)
K3 = complete(3)
C4 = cycle(4)
K1_3 = star(3)
K1_4 = star(4)
K1_5 = star(5)

NAMED_PATTERNS: Dict[str, Graph] = {
    "p3": P3,
    "p4": P4,
    "k3": K3,
    "c4": C4,
    "k1_3": K1_3,
    "k1_4": K1_4,
    "k1_5": K1_5,
}


def parse_pattern(name: str) -> Graph:
    """Noms acceptés: p3, p4, k3, c4, k1_3, k1_4, k1_5, k1_k:<k>"""
    key = name.strip().lower()
    if key in NAMED_PATTERNS:
        return NAMED_PATTERNS[key]
    if key.startswith("k1_k:"):
        try:
            k = int(key.split(":", 1)[1])
        except ValueError:
            raise GraphError(f"invalid star size in pattern {name!r}")
        if k + 1 > MAX_PATTERN_N:
            raise GuardError(f"pattern K1,{k} has more than {MAX_PATTERN_N} vertices")
        return star(k)
    raise GraphError(f"unknown pattern {name!r} (expected one of {', '.join(NAMED_PATTERNS)}, k1_k:<k>)")
