"""
Sommets lourds, relation Ē(G) et détection de motifs induits (H-free, H-heavy).

Un sommet est lourd si 2·d(v) >= n (arithmétique entière). Les degrés sont
toujours ceux du graphe hôte complet.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

from app.exceptions import GraphError, GuardError
from app.graph import Graph, VertexSet, bits, lowest
from app.services.patterns import MAX_PATTERN_N

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeavyProfile:
    n: int
    heavy_set: VertexSet

    @property
    def count(self) -> int:
        return len(self.heavy_set)


@dataclass(frozen=True)
class PatternWitness:
    """Copie induite: `mapping[a]` est l'image du sommet a du motif"""

    pattern: Graph
    host: Graph
    mapping: Tuple[int, ...]

    @property
    def image(self) -> VertexSet:
        return frozenset(self.mapping)

    def is_valid(self) -> bool:
        if len(self.mapping) != self.pattern.n or len(set(self.mapping)) != len(self.mapping):
            return False
        if any(v < 0 or v >= self.host.n for v in self.mapping):
            return False
        for b in range(self.pattern.n):
            for a in range(b):
                if self.pattern.has_edge(a, b) != self.host.has_edge(self.mapping[a], self.mapping[b]):
                    return False
        return True


@dataclass(frozen=True)
class PatternCheck:
    """Résultat de is_pattern_heavy; faux avec la première copie fautive"""

    holds: bool
    witness: Optional[PatternWitness] = None

    def __bool__(self) -> bool:
        return self.holds


def heavy_mask(g: Graph) -> int:
    n = g.n
    mask = 0
    for v, d in enumerate(g.degrees):
        if 2 * d >= n:
            mask |= 1 << v
    return mask


def heavy_vertices(g: Graph) -> VertexSet:
    return frozenset(bits(heavy_mask(g)))


def heavy_profile(g: Graph) -> HeavyProfile:
    return HeavyProfile(n=g.n, heavy_set=heavy_vertices(g))


def ebar(g: Graph, u: int, v: int) -> bool:
    """uv dans Ē(G): arête, ou d(u)+d(v) >= n"""
    if u == v:
        raise GraphError(f"Ē is defined on distinct pairs, got {u} twice")
    if g.has_edge(u, v):
        return True
    return g.degrees[u] + g.degrees[v] >= g.n


def is_heavy_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    """Vrai si le cycle (validé) contient tous les sommets lourds"""
    from app.services.ocycle import CycleSeq

    seq = cycle if isinstance(cycle, CycleSeq) else CycleSeq.of(g, cycle)
    covered = 0
    for v in seq.verts:
        covered |= 1 << v
    return heavy_mask(g) & ~covered == 0


def _search_order(pattern: Graph) -> Tuple[int, ...]:
    """Ordre de placement: degré max d'abord, puis voisins déjà placés en priorité"""
    remaining = pattern.full_mask
    placed = 0
    order = []
    while remaining:
        frontier = 0
        for v in bits(placed):
            frontier |= pattern.adj_mask(v)
        pool = (frontier & remaining) or remaining
        best = max(bits(pool), key=lambda v: (pattern.degrees[v], -v))
        order.append(best)
        placed |= 1 << best
        remaining &= ~(1 << best)
    return tuple(order)


def induced_occurrences(g: Graph, pattern: Graph) -> Iterator[PatternWitness]:
    """Chaque copie induite du motif, une seule fois par ensemble image"""
    if pattern.n > MAX_PATTERN_N:
        raise GuardError(f"patterns are limited to {MAX_PATTERN_N} vertices, got {pattern.n}")
    k = pattern.n
    if k == 0 or k > g.n:
        return
    order = _search_order(pattern)
    # relation au préfixe: pour la position i, (position j, adjacent?) pour j < i
    links = [
        [(j, pattern.has_edge(order[i], order[j])) for j in range(i)]
        for i in range(k)
    ]
    need = [pattern.degrees[p] for p in order]
    hadj = g.masks
    hdeg = g.degrees
    full = g.full_mask
    eligible = [mask_for_degree(hdeg, need[i]) for i in range(k)]

    seen = set()
    chosen = [0] * k

    def extend(i: int, used: int) -> Iterator[PatternWitness]:
        if i == k:
            if used in seen:
                return
            seen.add(used)
            mapping = [0] * k
            for pos, p in enumerate(order):
                mapping[p] = chosen[pos]
            yield PatternWitness(pattern=pattern, host=g, mapping=tuple(mapping))
            return
        cand = full & ~used & eligible[i]
        for j, adjacent in links[i]:
            if adjacent:
                cand &= hadj[chosen[j]]
            else:
                cand &= ~hadj[chosen[j]]
            if not cand:
                return
        while cand:
            c = lowest(cand)
            cand &= cand - 1
            chosen[i] = c
            yield from extend(i + 1, used | (1 << c))

    yield from extend(0, 0)


def mask_for_degree(degrees: Sequence[int], at_least: int) -> int:
    mask = 0
    for v, d in enumerate(degrees):
        if d >= at_least:
            mask |= 1 << v
    return mask


def is_pattern_free(g: Graph, pattern: Graph) -> bool:
    return next(induced_occurrences(g, pattern), None) is None


def _copy_is_heavy(g: Graph, image: Sequence[int]) -> bool:
    n = g.n
    deg = g.degrees
    for i, u in enumerate(image):
        for v in image[i + 1:]:
            if not g.adj_mask(u) >> v & 1 and deg[u] + deg[v] >= n:
                return True
    return False


def is_pattern_heavy(g: Graph, pattern: Graph) -> PatternCheck:
    """H-heavy: toute copie induite contient deux sommets non adjacents de somme de degrés >= n"""
    for witness in induced_occurrences(g, pattern):
        if not _copy_is_heavy(g, sorted(witness.image)):
            logger.debug(f"copie non lourde du motif sur {sorted(witness.image)}")
            return PatternCheck(holds=False, witness=witness)
    return PatternCheck(holds=True)
