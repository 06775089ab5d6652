"""
Graphe simple non orienté et immuable sur les sommets 0..n-1.

Les adjacences sont des masques binaires (int Python): le test d'arête et
l'itération des voisins restent en temps quasi constant pour n <= ~60.
"""
from __future__ import annotations

import math
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from app.exceptions import GraphError

VertexSet = FrozenSet[int]
INFINITY = math.inf


def bits(mask: int) -> Iterator[int]:
    """Sommets d'un masque, par indice croissant"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """Graphe simple; aucune méthode ne modifie l'instance"""

    __slots__ = ("_n", "_adj", "_deg", "_m")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        adj = [0] * n
        for u, v in edges:
            _check_vertex(n, u)
            _check_vertex(n, v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._setup(n, adj)

    def _setup(self, n: int, adj: Sequence[int]) -> None:
        self._n = n
        self._adj = tuple(adj)
        self._deg = tuple(a.bit_count() for a in self._adj)
        self._m = sum(self._deg) // 2

    @classmethod
    def from_masks(cls, n: int, masks: Sequence[int]) -> "Graph":
        """Construit depuis des masques d'adjacence (vérifie symétrie et absence de boucles)"""
        if len(masks) != n:
            raise GraphError(f"expected {n} adjacency masks, got {len(masks)}")
        full = (1 << n) - 1
        for v, mask in enumerate(masks):
            if mask & ~full:
                raise GraphError(f"adjacency of vertex {v} references a vertex >= {n}")
            if mask >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(mask):
                if not masks[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        g = cls.__new__(cls)
        g._setup(n, masks)
        return g

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        relabeled = nx.convert_node_labels_to_integers(graph, ordering="default")
        return cls(relabeled.number_of_nodes(), relabeled.edges())

    def __reduce__(self):
        return (Graph.from_masks, (self._n, self._adj))

    # ---- accès de base ----

    @property
    def n(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._m

    @property
    def vertices(self) -> range:
        return range(self._n)

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self._deg

    @property
    def masks(self) -> Tuple[int, ...]:
        return self._adj

    def adj_mask(self, v: int) -> int:
        return self._adj[v]

    def degree(self, v: int) -> int:
        _check_vertex(self._n, v)
        return self._deg[v]

    def has_edge(self, u: int, v: int) -> bool:
        _check_vertex(self._n, u)
        _check_vertex(self._n, v)
        return bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        _check_vertex(self._n, v)
        return tuple(bits(self._adj[v]))

    def neighbors_in(self, v: int, within: Iterable[int]) -> Tuple[int, ...]:
        """N_H(v) pour H = G[within]"""
        return tuple(bits(self._adj[v] & self.vertex_set_mask(within)))

    def degree_in(self, v: int, within: Iterable[int]) -> int:
        """d_H(v) pour H = G[within]"""
        _check_vertex(self._n, v)
        return (self._adj[v] & self.vertex_set_mask(within)).bit_count()

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in bits(self._adj[u] >> (u + 1) << (u + 1))]

    def vertex_set_mask(self, vertices: Iterable[int]) -> int:
        mask = 0
        for v in vertices:
            _check_vertex(self._n, v)
            mask |= 1 << v
        return mask

    # ---- graphes dérivés ----

    def induced(self, vertices: Iterable[int]) -> Tuple["Graph", Dict[int, int]]:
        """G[X] avec la correspondance ancien -> nouveau indice"""
        keep = sorted(set(vertices))
        for v in keep:
            _check_vertex(self._n, v)
        mapping = {old: new for new, old in enumerate(keep)}
        masks = []
        for old in keep:
            row = 0
            for u in bits(self._adj[old]):
                if u in mapping:
                    row |= 1 << mapping[u]
            masks.append(row)
        sub = Graph.__new__(Graph)
        sub._setup(len(keep), masks)
        return sub, mapping

    def remove_vertices(self, vertices: Iterable[int]) -> Tuple["Graph", Dict[int, int]]:
        """G - X"""
        drop = self.vertex_set_mask(vertices)
        return self.induced(bits(self.full_mask & ~drop))

    def remove_edge(self, u: int, v: int) -> "Graph":
        """G - e"""
        if not self.has_edge(u, v):
            raise GraphError(f"{u}{v} is not an edge")
        masks = list(self._adj)
        masks[u] &= ~(1 << v)
        masks[v] &= ~(1 << u)
        return Graph.from_masks(self._n, masks)

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if self.has_edge(u, v):
            return self
        masks = list(self._adj)
        masks[u] |= 1 << v
        masks[v] |= 1 << u
        return Graph.from_masks(self._n, masks)

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph.from_masks(self._n, [full & ~a & ~(1 << v) for v, a in enumerate(self._adj)])

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graphe dont le sommet i est l'ancien sommet order[i]"""
        position = {old: new for new, old in enumerate(order)}
        if sorted(position) != list(range(self._n)):
            raise GraphError("relabeling must be a permutation of the vertices")
        masks = [0] * self._n
        for new, old in enumerate(order):
            masks[new] = mask_of(position[u] for u in bits(self._adj[old]))
        return Graph.from_masks(self._n, masks)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self.edges())
        return graph

    # ---- divers ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def _check_vertex(n: int, v: int) -> None:
    if not isinstance(v, int) or v < 0 or v >= n:
        raise GraphError(f"vertex {v} out of range 0..{n - 1}")


# ---- parcours ----

def reachable(g: Graph, start: int, within: Optional[int] = None) -> int:
    """Masque des sommets atteignables depuis start dans G[within]"""
    adj = g.masks
    allowed = g.full_mask if within is None else within
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def components(g: Graph, within: Optional[int] = None) -> List[VertexSet]:
    """Composantes connexes de G[within], triées par plus petit sommet"""
    remaining = g.full_mask if within is None else within
    found = []
    while remaining:
        comp = reachable(g, lowest(remaining), remaining)
        found.append(frozenset(bits(comp)))
        remaining &= ~comp
    return found


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    return reachable(g, 0) == g.full_mask


def is_tree(g: Graph) -> bool:
    return is_connected(g) and g.edge_count == g.n - 1


def distances_from(g: Graph, x: int) -> List[float]:
    """Distances BFS depuis x (INFINITY hors de la composante)"""
    _check_vertex(g.n, x)
    adj = g.masks
    dist: List[float] = [INFINITY] * g.n
    dist[x] = 0
    seen = 1 << x
    frontier = seen
    level = 0
    while frontier:
        level += 1
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= ~seen
        for v in bits(nxt):
            dist[v] = level
        seen |= nxt
        frontier = nxt
    return dist


def distance(g: Graph, x: int, y: int) -> float:
    """Longueur d'un plus court (x,y)-chemin; INFINITY si x et y sont séparés"""
    _check_vertex(g.n, y)
    return distances_from(g, x)[y]


def shortest_path(g: Graph, x: int, y: int, within: Optional[int] = None) -> Optional[List[int]]:
    """Un plus court (x,y)-chemin dans G[within] (x et y inclus), ou None"""
    adj = g.masks
    allowed = (g.full_mask if within is None else within) | (1 << x) | (1 << y)
    parent = {x: x}
    frontier = [x]
    while frontier and y not in parent:
        nxt = []
        for v in frontier:
            for u in bits(adj[v] & allowed):
                if u not in parent:
                    parent[u] = v
                    nxt.append(u)
        frontier = nxt
    if y not in parent:
        return None
    path = [y]
    while path[-1] != x:
        path.append(parent[path[-1]])
    return path[::-1]


# ---- blocs et points d'articulation ----

class BlockTree:
    """Résultat de Tarjan: blocs (masques), points d'articulation, arbre DFS.

    `edge_block[x]` est l'indice du bloc contenant l'arête d'arbre (parent[x], x).
    """

    __slots__ = ("blocks", "cuts", "parent", "edge_block")

    def __init__(self, blocks: List[int], cuts: int, parent: Dict[int, int], edge_block: Dict[int, int]):
        self.blocks = blocks
        self.cuts = cuts
        self.parent = parent
        self.edge_block = edge_block


def block_tree(adj: Sequence[int], within: int, roots: Optional[Iterable[int]] = None) -> BlockTree:
    """Tarjan itératif restreint à within; les blocs de taille 2 sont des ponts"""
    n = len(adj)
    disc = [-1] * n
    low = [0] * n
    parent: Dict[int, int] = {}
    edge_block: Dict[int, int] = {}
    blocks: List[int] = []
    cuts = 0
    clock = 0
    for root in (bits(within) if roots is None else roots):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack = [(root, adj[root] & within)]
        vstack = [root]
        while stack:
            v, rest = stack[-1]
            if rest:
                bit = rest & -rest
                stack[-1] = (v, rest ^ bit)
                w = bit.bit_length() - 1
                if disc[w] < 0:
                    disc[w] = low[w] = clock
                    clock += 1
                    parent[w] = v
                    vstack.append(w)
                    stack.append((w, adj[w] & within & ~(1 << v)))
                elif disc[w] < low[v]:
                    low[v] = disc[w]
                continue
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= disc[u]:
                block = 1 << u
                index = len(blocks)
                while True:
                    x = vstack.pop()
                    block |= 1 << x
                    edge_block[x] = index
                    if x == v:
                        break
                blocks.append(block)
                if u == root:
                    root_children += 1
                else:
                    cuts |= 1 << u
        if root_children > 1:
            cuts |= 1 << root
    return BlockTree(blocks, cuts, parent, edge_block)


def articulation_points(g: Graph) -> VertexSet:
    return frozenset(bits(block_tree(g.masks, g.full_mask).cuts))


def biconnected_components(g: Graph) -> List[VertexSet]:
    """Blocs de G (ponts inclus, sommets isolés exclus), triés par plus petit sommet"""
    tree = block_tree(g.masks, g.full_mask)
    return sorted((frozenset(bits(b)) for b in tree.blocks), key=lambda b: sorted(b))


def is_two_connected(g: Graph) -> bool:
    """Connexe, au moins 3 sommets et aucun point d'articulation"""
    if g.n < 3 or not is_connected(g):
        return False
    return block_tree(g.masks, g.full_mask).cuts == 0
