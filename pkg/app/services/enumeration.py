"""
Forme canonique, isomorphisme et énumération des graphes connexes non isomorphes.

La forme canonique raffine une partition ordonnée équitable puis individualise les
sommets de la première plus petite cellule non triviale; le certificat est le plus
grand entier d'adjacence atteint aux feuilles. Les automorphismes découverts en
chemin élaguent les branches équivalentes.

L'énumération procède par augmentation canonique: on ajoute un sommet avec chaque
ensemble de voisins non vide, et l'on ne garde l'enfant que si le sommet ajouté
est une suppression canonique.
"""
import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.config import get_settings
from app.exceptions import GuardError
from app.graph import Graph, block_tree, bits, is_connected, mask_of
from app.graph6 import to_graph6

logger = logging.getLogger(__name__)

CanonicalForm = Tuple[int, int]


def _refine(adj: Sequence[int], cells: List[List[int]]) -> List[List[int]]:
    """Raffinement jusqu'à une partition équitable; l'ordre des cellules ne dépend pas des étiquettes"""
    cells = [list(c) for c in cells]
    while True:
        split = False
        for splitter in cells:
            wmask = mask_of(splitter)
            out: List[List[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: Dict[int, List[int]] = {}
                for v in cell:
                    groups.setdefault((adj[v] & wmask).bit_count(), []).append(v)
                if len(groups) > 1:
                    split = True
                    out.extend(groups[key] for key in sorted(groups))
                else:
                    out.append(cell)
            if split:
                cells = out
                break
        if not split:
            return cells


def _leaf_code(adj: Sequence[int], order: Sequence[int]) -> int:
    code = 0
    n = len(order)
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | (row >> order[j] & 1)
    return code


class _Canonizer:
    def __init__(self, g: Graph):
        self.adj = g.masks
        self.n = g.n
        self.first: Optional[Tuple[List[int], int]] = None
        self.best: Optional[Tuple[List[int], int]] = None
        self.autos: List[List[int]] = []

    def _orbit_roots(self, path: Sequence[int]) -> List[int]:
        parent = list(range(self.n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for perm in self.autos:
            if all(perm[p] == p for p in path):
                for a in range(self.n):
                    ra, rb = find(a), find(perm[a])
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        return [find(a) for a in range(self.n)]

    def _leaf(self, order: List[int]) -> None:
        code = _leaf_code(self.adj, order)
        if self.first is None:
            self.first = self.best = (order, code)
            return
        for known, known_code in (self.first, self.best):
            if code == known_code:
                perm = [0] * self.n
                for a, b in zip(known, order):
                    perm[a] = b
                self.autos.append(perm)
                return
        if code > self.best[1]:
            self.best = (order, code)

    def search(self, cells: List[List[int]], path: List[int]) -> None:
        cells = _refine(self.adj, cells)
        if len(cells) == self.n:
            self._leaf([c[0] for c in cells])
            return
        index = min(
            (i for i, c in enumerate(cells) if len(c) > 1),
            key=lambda i: (len(cells[i]), i),
        )
        target = cells[index]
        explored: List[int] = []
        for v in sorted(target):
            if explored:
                roots = self._orbit_roots(path)
                if any(roots[v] == roots[u] for u in explored):
                    continue
            explored.append(v)
            rest = [u for u in target if u != v]
            self.search(cells[:index] + [[v], rest] + cells[index + 1:], path + [v])


def canonical_labeling(g: Graph) -> List[int]:
    """Ordre des sommets donnant la forme canonique (sommet canonique i = order[i])"""
    if g.n == 0:
        return []
    canon = _Canonizer(g)
    canon.search([list(range(g.n))], [])
    return canon.best[0]


def canonical_form(g: Graph) -> CanonicalForm:
    if g.n == 0:
        return (0, 0)
    canon = _Canonizer(g)
    canon.search([list(range(g.n))], [])
    return (g.n, canon.best[1])


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g))


def canonical_graph6(g: Graph) -> str:
    """Clé de tri déterministe d'une classe d'isomorphisme"""
    return to_graph6(canonical_graph(g))


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.edge_count != b.edge_count:
        return False
    if sorted(a.degrees) != sorted(b.degrees):
        return False
    return canonical_form(a) == canonical_form(b)


# ---- augmentation canonique ----

def _invariant(g: Graph, v: int) -> Tuple[int, Tuple[int, ...]]:
    deg = g.degrees
    return deg[v], tuple(sorted(deg[u] for u in bits(g.adj_mask(v))))


def _deletion_candidates(g: Graph) -> List[int]:
    """Sommets non séparateurs d'invariant maximal"""
    cuts = block_tree(g.masks, g.full_mask).cuts
    pool = [v for v in range(g.n) if not cuts >> v & 1]
    top = max(_invariant(g, v) for v in pool)
    return [v for v in pool if _invariant(g, v) == top]


def _is_canonical_child(child: Graph, new_vertex: int) -> bool:
    candidates = _deletion_candidates(child)
    if new_vertex not in candidates:
        return False
    forms = {w: canonical_form(child.remove_vertices([w])[0]) for w in candidates}
    return forms[new_vertex] == max(forms.values())


def _children(parent: Graph) -> Iterator[Graph]:
    n = parent.n + 1
    v = n - 1
    base = list(parent.masks)
    seen = set()
    for subset in range(1, 1 << parent.n):
        masks = [row | ((subset >> u & 1) << v) for u, row in enumerate(base)] + [subset]
        child = Graph.from_masks(n, masks)
        if not _is_canonical_child(child, v):
            continue
        key = canonical_form(child)
        if key in seen:
            continue
        seen.add(key)
        yield child


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> Tuple[Graph, ...]:
    limit = get_settings().enumerate_max_n
    if n < 1 or n > limit:
        raise GuardError(f"enumeration supports 1 <= n <= {limit}, got {n}")
    if n == 1:
        return (Graph(1),)
    level = tuple(child for parent in connected_graphs(n - 1) for child in _children(parent))
    logger.info(f"✅ {len(level)} graphes connexes à {n} sommets")
    return level


def enumerate_connected(n: int) -> Iterator[Graph]:
    """Un représentant par classe d'isomorphisme de graphes connexes à n sommets"""
    yield from connected_graphs(n)


def naive_connected_graphs(n: int) -> List[Graph]:
    """Oracle: tous les graphes étiquetés connexes, dédoublonnés par forme canonique"""
    if n > 7:
        raise GuardError(f"naive enumeration is limited to n <= 7, got {n}")
    pairs = list(combinations(range(n), 2))
    found: Dict[CanonicalForm, Graph] = {}
    for chosen in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if chosen >> i & 1]
        if len(edges) < n - 1:
            continue
        g = Graph(n, edges)
        if not is_connected(g):
            continue
        found.setdefault(canonical_form(g), g)
    return list(found.values())
