"""
Calcul exact de la circonférence (longueur d'un plus long cycle).

Deux moteurs:
- "dp": programmation dynamique sur les sous-ensembles, ancrée au plus petit sommet
  du cycle (n <= dp_max_n);
- "bnb": séparation et évaluation par blocs (composantes 2-connexes), avec table de
  transposition et borne par chaîne de blocs.

Un graphe acyclique a une circonférence 0. Un verdict de théorème n'est rendu que
si `exhausted` est vrai.
"""
import logging
import time
from dataclasses import dataclass
from typing import Iterable, List, Optional, Set, Tuple

from app.config import get_settings
from app.exceptions import GraphError, GuardError
from app.graph import Graph, bits, block_tree, mask_of
from app.services.heavy import heavy_vertices
from app.services.ocycle import CycleSeq, find_any_cycle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Budget:
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None

    @classmethod
    def default(cls, seconds: Optional[float] = None) -> "Budget":
        settings = get_settings()
        return cls(
            node_limit=settings.bnb_node_limit,
            time_limit=settings.bnb_time_limit_seconds if seconds is None else seconds,
        )


@dataclass(frozen=True)
class CircumferenceResult:
    length: int
    witness: Optional[CycleSeq]
    exhausted: bool
    upper_bound: int
    engine: str = "bnb"
    nodes: int = 0


@dataclass(frozen=True)
class LongestCycleCheck:
    """Résultat des prédicats « tout plus long cycle ... »; faux avec un contre-exemple"""

    holds: bool
    length: int
    exhausted: bool
    counterexample: Optional[CycleSeq] = None

    def __bool__(self) -> bool:
        return self.holds


class _BudgetExhausted(Exception):
    pass


class _Found(Exception):
    pass


# ---- moteur DP ----

def _dp_circumference(g: Graph) -> CircumferenceResult:
    n = g.n
    adj = g.masks
    best = 0
    witness: Optional[List[int]] = None
    for s in range(n):
        if best >= n - s:
            break
        off = s + 1
        m = n - off
        size = 1 << m
        sadj = adj[s] >> off
        if sadj.bit_count() < 2:
            continue
        shifted = [adj[v] >> off for v in range(off, n)]
        reach = [0] * size
        for t in bits(sadj):
            reach[1 << t] = 1 << t
        found_mask = 0
        found_end = -1
        full = size - 1
        for mask in range(1, size):
            ends = reach[mask]
            if not ends:
                continue
            count = mask.bit_count() + 1
            if count >= 3 and count > best and ends & sadj:
                best = count
                found_mask = mask
                found_end = ((ends & sadj) & -(ends & sadj)).bit_length() - 1
            grow = 0
            for e in bits(ends):
                grow |= shifted[e]
            grow &= full & ~mask
            while grow:
                low = grow & -grow
                reach[mask | low] |= low
                grow ^= low
        if found_end >= 0:
            # reconstruction par retour arrière dans la table de cette ancre
            path = [found_end]
            cur = found_mask
            t = found_end
            while cur != 1 << t:
                prev = cur ^ (1 << t)
                options = reach[prev] & shifted[t]
                t = (options & -options).bit_length() - 1
                path.append(t)
                cur = prev
            witness = [s] + [v + off for v in reversed(path)]
            logger.debug(f"dp: ancre {s}, meilleur {best}")
    cycle = CycleSeq.of(g, witness) if witness else None
    return CircumferenceResult(length=best, witness=cycle, exhausted=True, upper_bound=best, engine="dp")


# ---- moteur par séparation et évaluation ----

class CycleSearch:
    """Recherche de cycles ancrés, restreinte à `allowed`.

    Pour chaque ancre s (degré croissant) et chaque bloc qui la contient, on
    explore les chemins partant de s; les ancres déjà traitées sont retirées.
    Seuls les cycles de longueur > `floor` comptent; la recherche s'arrête dès
    qu'un cycle de longueur >= `stop_at` est trouvé.
    """

    def __init__(
        self,
        g: Graph,
        budget: Optional[Budget] = None,
        allowed: Optional[int] = None,
        floor: int = 0,
        stop_at: Optional[int] = None,
        transposition_limit: Optional[int] = None,
    ):
        self.g = g
        self.adj = g.masks
        self.budget = budget or Budget()
        self.allowed_all = g.full_mask if allowed is None else allowed
        self.allowed = self.allowed_all
        self.path: List[int] = []
        self.best = floor
        self.floor = floor
        self.stop_at = stop_at
        self.best_cycle: Optional[List[int]] = None
        self.nodes = 0
        self.table_limit = (
            get_settings().transposition_limit if transposition_limit is None else transposition_limit
        )
        self._deadline: Optional[float] = None
        self._table: Set[Tuple[int, int]] = set()
        self._order = sorted(range(g.n), key=lambda v: (g.degrees[v], v))

    # -- bornes --

    def _blocks_with(self, s: int, allowed: int) -> List[int]:
        tree = block_tree(self.adj, allowed | (1 << s), roots=[s])
        return [b for b in tree.blocks if b >> s & 1 and b.bit_count() >= 3]

    def root_bound(self, s: int, allowed: int) -> int:
        return max((b.bit_count() for b in self._blocks_with(s, allowed)), default=0)

    def _chain_bound(self, s: int, w: int, visited: int, count: int) -> int:
        region = (self.allowed & ~visited) | (1 << w) | (1 << s)
        tree = block_tree(self.adj, region, roots=[s])
        if w not in tree.parent:
            return -1
        union = 0
        x = w
        while x != s:
            union |= tree.blocks[tree.edge_block[x]]
            x = tree.parent[x]
        return count + union.bit_count() - 2

    # -- exploration --

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget.node_limit is not None and self.nodes > self.budget.node_limit:
            raise _BudgetExhausted()
        if self._deadline is not None and self.nodes & 0xFFF == 0 and time.monotonic() > self._deadline:
            raise _BudgetExhausted()

    def _record(self) -> None:
        self.best = len(self.path)
        self.best_cycle = list(self.path)
        logger.debug(f"bnb: cycle de longueur {self.best} via l'ancre {self.path[0]}")
        if self.stop_at is not None and self.best >= self.stop_at:
            raise _Found()

    def _dfs(self, s: int, w: int, visited: int, count: int) -> None:
        self._tick()
        adj = self.adj
        if count >= 3 and count > self.best and adj[w] >> s & 1:
            self._record()
        free = self.allowed & ~visited
        cand = adj[w] & free
        if not cand:
            return
        if count + free.bit_count() <= self.best:
            return
        if w != s:
            key = (w, visited)
            if key in self._table:
                return
            if len(self._table) < self.table_limit:
                self._table.add(key)
            if self._chain_bound(s, w, visited, count) <= self.best:
                return
        exits = free | (1 << s)
        for c in self._order:
            if not cand >> c & 1:
                continue
            # impasse: c n'a pas d'autre sortie que w
            if not adj[c] & exits & ~(1 << c):
                continue
            self.path.append(c)
            self._dfs(s, c, visited | (1 << c), count + 1)
            self.path.pop()

    def run(self, anchors: Optional[Iterable[int]] = None, remove_anchors: bool = True) -> CircumferenceResult:
        if self.budget.time_limit is not None:
            self._deadline = time.monotonic() + self.budget.time_limit
        anchor_list = [v for v in (self._order if anchors is None else anchors) if self.allowed_all >> v & 1]
        processed = 0
        pending = list(anchor_list)
        exhausted = True
        try:
            while pending:
                s = pending[0]
                base = self.allowed_all & ~processed
                for block in self._blocks_with(s, base):
                    if block.bit_count() <= self.best:
                        continue
                    self.allowed = block
                    self._table = set()
                    self.path = [s]
                    self._dfs(s, s, 1 << s, 1)
                if remove_anchors:
                    processed |= 1 << s
                pending.pop(0)
        except _Found:
            pending = []
        except _BudgetExhausted:
            exhausted = False
            logger.warning(f"⚠️ budget épuisé après {self.nodes} nœuds (meilleur {self.best})")

        length = self.best if self.best_cycle is not None else 0
        if exhausted:
            upper = length if self.best_cycle is not None else self.floor
        else:
            base = self.allowed_all & ~processed
            upper = max([self.best] + [self.root_bound(s, base) for s in pending])
        cycle = CycleSeq.of(self.g, self.best_cycle) if self.best_cycle else None
        return CircumferenceResult(
            length=length, witness=cycle, exhausted=exhausted, upper_bound=upper, engine="bnb", nodes=self.nodes
        )


def _bnb_circumference(g: Graph, budget: Optional[Budget]) -> CircumferenceResult:
    started = time.monotonic()
    result = CycleSearch(g, budget or Budget.default()).run()
    logger.info(
        f"bnb: n={g.n} longueur={result.length} exhaustif={result.exhausted} "
        f"nœuds={result.nodes} en {time.monotonic() - started:.2f}s"
    )
    return result


def circumference(g: Graph, budget: Optional[Budget] = None, engine: str = "auto") -> CircumferenceResult:
    """Longueur d'un plus long cycle avec témoin; 0 si le graphe est acyclique"""
    if g.edge_count < g.n and find_any_cycle(g) is None:
        return CircumferenceResult(length=0, witness=None, exhausted=True, upper_bound=0, engine="trivial")
    if engine == "auto":
        engine = "dp" if g.n <= get_settings().dp_max_n else "bnb"
    if engine == "dp":
        return _dp_circumference(g)
    if engine == "bnb":
        return _bnb_circumference(g, budget)
    raise GraphError(f"unknown circumference engine {engine!r}")


def find_cycle_at_least(
    g: Graph,
    length: int,
    avoid: Iterable[int] = (),
    through: Optional[int] = None,
    budget: Optional[Budget] = None,
) -> CircumferenceResult:
    """Un cycle d'au moins `length` sommets évitant `avoid` (et passant par `through`)"""
    allowed = g.full_mask & ~mask_of(avoid)
    search = CycleSearch(g, budget or Budget.default(), allowed=allowed, floor=length - 1, stop_at=length)
    anchors = None if through is None else [through]
    return search.run(anchors=anchors)


def longest_cycle_through(g: Graph, v: int, budget: Optional[Budget] = None) -> CircumferenceResult:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range 0..{g.n - 1}")
    return CycleSearch(g, budget or Budget.default()).run(anchors=[v])


def every_longest_cycle_omits(
    g: Graph, vertices: Iterable[int], budget: Optional[Budget] = None, longest: Optional[int] = None
) -> LongestCycleCheck:
    """Aucun plus long cycle ne passe par l'un des sommets donnés"""
    if longest is None:
        result = circumference(g, budget)
        if not result.exhausted:
            return LongestCycleCheck(holds=False, length=result.length, exhausted=False)
        longest = result.length
    if longest == 0:
        raise GraphError("the graph has no cycle")
    for x in sorted(set(vertices)):
        hit = find_cycle_at_least(g, longest, through=x, budget=budget)
        if hit.witness is not None:
            return LongestCycleCheck(holds=False, length=longest, exhausted=True, counterexample=hit.witness)
        if not hit.exhausted:
            return LongestCycleCheck(holds=False, length=longest, exhausted=False)
    return LongestCycleCheck(holds=True, length=longest, exhausted=True)


def every_longest_cycle_heavy(g: Graph, budget: Optional[Budget] = None) -> LongestCycleCheck:
    """Tout plus long cycle contient tous les sommets lourds.

    Faux si et seulement si, pour un sommet lourd h, il existe un cycle de longueur
    maximale L dans G - h, c'est-à-dire un cycle d'au moins L sommets évitant h.
    """
    result = circumference(g, budget)
    if result.length == 0:
        raise GraphError("the graph has no cycle")
    if not result.exhausted:
        return LongestCycleCheck(holds=False, length=result.length, exhausted=False)
    longest = result.length
    for h in sorted(heavy_vertices(g)):
        hit = find_cycle_at_least(g, longest, avoid=[h], budget=budget)
        if hit.witness is not None:
            return LongestCycleCheck(holds=False, length=longest, exhausted=True, counterexample=hit.witness)
        if not hit.exhausted:
            return LongestCycleCheck(holds=False, length=longest, exhausted=False)
    return LongestCycleCheck(holds=True, length=longest, exhausted=True)


def all_longest_cycles(g: Graph, limit: Optional[int] = None) -> List[CycleSeq]:
    """Tous les plus longs cycles, un par classe de rotation/réflexion"""
    settings = get_settings()
    if g.n > settings.all_cycles_max_n:
        raise GuardError(
            f"all_longest_cycles is limited to n <= {settings.all_cycles_max_n}; "
            f"use every_longest_cycle_heavy (sampling mode) for larger graphs"
        )
    limit = settings.all_cycles_limit if limit is None else limit
    longest = circumference(g).length
    if longest == 0:
        raise GraphError("the graph has no cycle, so it has no longest cycle")

    adj = g.masks
    found: List[CycleSeq] = []
    path: List[int] = []

    def extend(s: int, w: int, visited: int, allowed: int) -> None:
        count = len(path)
        if count == longest:
            if adj[w] >> s & 1 and path[1] < path[-1]:
                found.append(CycleSeq(tuple(path)))
                if len(found) > limit:
                    raise GuardError(f"more than {limit} longest cycles")
            return
        free = allowed & ~visited
        if count + free.bit_count() < longest:
            return
        for c in bits(adj[w] & free):
            path.append(c)
            extend(s, c, visited | (1 << c), allowed)
            path.pop()

    for s in range(g.n):
        allowed = g.full_mask & ~((1 << (s + 1)) - 1)
        if allowed.bit_count() + 1 < longest:
            break
        path[:] = [s]
        extend(s, s, 1 << s, allowed)
    return sorted(found, key=lambda c: c.verts)
