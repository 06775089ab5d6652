"""
o-chemins, o-cycles, déficit, réalisation constructive et cycle lourd ou certificat.

Une o-suite est une suite de sommets distincts dont les paires consécutives sont
dans Ē(G) (arête, ou somme des degrés >= n). Le déficit compte les paires
consécutives (bouclage inclus) qui ne sont pas des arêtes; un cycle est un
o-cycle de déficit nul.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from app.config import get_settings
from app.exceptions import GraphError, GuardError, InvalidSequenceError, InvariantViolation
from app.graph import (
    Graph,
    VertexSet,
    bits,
    components,
    is_connected,
    is_tree,
    is_two_connected,
    lowest,
    mask_of,
    reachable,
    shortest_path,
)
from app.schemas import CertificateOut
from app.services.heavy import heavy_mask, heavy_vertices

logger = logging.getLogger(__name__)


# ---- suites ----

def _check_distinct(g: Graph, verts: Sequence[int]) -> None:
    seen = set()
    for v in verts:
        if not isinstance(v, int) or v < 0 or v >= g.n:
            raise InvalidSequenceError(f"vertex {v} out of range 0..{g.n - 1}")
        if v in seen:
            raise InvalidSequenceError(f"vertex {v} repeated")
        seen.add(v)


def _first_bad_pair(g: Graph, verts: Sequence[int], wrap: bool, relaxed: bool) -> Optional[Tuple[int, int]]:
    adj = g.masks
    deg = g.degrees
    last = len(verts) if wrap else len(verts) - 1
    for i in range(last):
        u, v = verts[i], verts[(i + 1) % len(verts)]
        if adj[u] >> v & 1:
            continue
        if relaxed and deg[u] + deg[v] >= g.n:
            continue
        return (u, v)
    return None


@dataclass(frozen=True)
class CycleSeq:
    """Cycle: suite circulaire d'au moins 3 sommets distincts, paires consécutives adjacentes"""

    verts: Tuple[int, ...]

    @classmethod
    def of(cls, g: Graph, verts: Sequence[int]) -> "CycleSeq":
        verts = tuple(verts)
        if len(verts) < 3:
            raise InvalidSequenceError(f"a cycle needs at least 3 vertices, got {len(verts)}")
        _check_distinct(g, verts)
        bad = _first_bad_pair(g, verts, wrap=True, relaxed=False)
        if bad:
            raise InvalidSequenceError(f"{bad[0]}{bad[1]} is not an edge", pair=bad)
        return cls(verts)

    def __len__(self) -> int:
        return len(self.verts)

    @property
    def vertex_set(self) -> VertexSet:
        return frozenset(self.verts)

    @property
    def mask(self) -> int:
        return mask_of(self.verts)

    def reversed(self) -> "CycleSeq":
        return CycleSeq(self.verts[:1] + self.verts[:0:-1])

    def segment(self, x: int, y: int, backward: bool = False) -> Tuple[int, ...]:
        """C[x, y]: le chemin de x à y dans le sens du cycle (ou le sens inverse)"""
        if x not in self.vertex_set or y not in self.vertex_set:
            raise GraphError(f"{x} and {y} must both lie on the cycle")
        order = self.verts if not backward else self.reversed().verts
        k = len(order)
        start = order.index(x)
        out = []
        for step in range(k):
            v = order[(start + step) % k]
            out.append(v)
            if v == y:
                break
        return tuple(out)

    def canonical(self) -> Tuple[int, ...]:
        """Plus petite rotation/réflexion lexicographique"""
        i = self.verts.index(min(self.verts))
        rotated = self.verts[i:] + self.verts[:i]
        mirrored = rotated[:1] + rotated[:0:-1]
        return min(rotated, mirrored)

    def edges(self) -> List[Tuple[int, int]]:
        k = len(self.verts)
        return [(self.verts[i], self.verts[(i + 1) % k]) for i in range(k)]


@dataclass(frozen=True)
class OCycleSeq:
    verts: Tuple[int, ...]

    @classmethod
    def of(cls, g: Graph, verts: Sequence[int]) -> "OCycleSeq":
        verts = tuple(verts)
        if len(verts) < 3:
            raise InvalidSequenceError(f"an o-cycle needs at least 3 vertices, got {len(verts)}")
        _check_distinct(g, verts)
        bad = _first_bad_pair(g, verts, wrap=True, relaxed=True)
        if bad:
            raise InvalidSequenceError(f"{bad[0]}{bad[1]} is not in Ē(G)", pair=bad)
        return cls(verts)

    def __len__(self) -> int:
        return len(self.verts)


@dataclass(frozen=True)
class OPathSeq:
    verts: Tuple[int, ...]

    @classmethod
    def of(cls, g: Graph, verts: Sequence[int]) -> "OPathSeq":
        verts = tuple(verts)
        if len(verts) < 2:
            raise InvalidSequenceError(f"an o-path needs at least 2 vertices, got {len(verts)}")
        _check_distinct(g, verts)
        bad = _first_bad_pair(g, verts, wrap=False, relaxed=True)
        if bad:
            raise InvalidSequenceError(f"{bad[0]}{bad[1]} is not in Ē(G)", pair=bad)
        return cls(verts)

    @property
    def ends(self) -> Tuple[int, int]:
        return self.verts[0], self.verts[-1]


def ebar_masks(g: Graph) -> Tuple[int, ...]:
    """Adjacence de Ē(G) en masques"""
    n = g.n
    deg = g.degrees
    out = []
    for u in range(n):
        row = g.adj_mask(u)
        for v in range(n):
            if v != u and deg[u] + deg[v] >= n:
                row |= 1 << v
        out.append(row)
    return tuple(out)


def deficit(g: Graph, seq: Union[OCycleSeq, Sequence[int]]) -> int:
    verts = seq.verts if isinstance(seq, (OCycleSeq, CycleSeq)) else OCycleSeq.of(g, seq).verts
    adj = g.masks
    k = len(verts)
    return sum(1 for i in range(k) if not adj[verts[i]] >> verts[(i + 1) % k] & 1)


# ---- réalisation ----

@dataclass(frozen=True)
class RealizeStep:
    case: str  # "A" (voisin commun inséré) ou "B" (croisement)
    deficit_before: int
    pivot: int  # sommet inséré (A) ou indice i du croisement (B)


@dataclass(frozen=True)
class RealizeTrace:
    cycle: CycleSeq
    initial_deficit: int
    steps: Tuple[RealizeStep, ...] = field(default_factory=tuple)


def realize_steps(g: Graph, oc: Union[OCycleSeq, Sequence[int]]) -> RealizeTrace:
    """Transforme un o-cycle en un vrai cycle contenant au moins ses sommets.

    Tant qu'il reste une paire non adjacente, on fait tourner la suite pour que
    la paire de bouclage (v_1, v_k) soit la première non-arête, puis:
    A. v_1 et v_k ont un voisin commun hors de la suite: on l'insère entre v_k et v_1;
    B. sinon, plus petit i avec v_i ~ v_1 et v_{i-1} ~ v_k: on inverse v_i..v_k.
    Chaque étape fait baisser le déficit.
    """
    oc = oc if isinstance(oc, OCycleSeq) else OCycleSeq.of(g, oc)
    adj = g.masks
    seq = list(oc.verts)
    used = mask_of(seq)
    current = deficit(g, oc)
    initial = current
    steps: List[RealizeStep] = []

    while current > 0:
        k = len(seq)
        p = next(i for i in range(k) if not adj[seq[i]] >> seq[(i + 1) % k] & 1)
        seq = seq[p + 1:] + seq[:p + 1]
        first, last = seq[0], seq[-1]

        common = adj[first] & adj[last] & ~used
        if common:
            x = lowest(common)
            seq.append(x)
            used |= 1 << x
            steps.append(RealizeStep(case="A", deficit_before=current, pivot=x))
        else:
            crossing = next(
                (i for i in range(1, k - 1) if adj[seq[i]] >> first & 1 and adj[seq[i - 1]] >> last & 1),
                None,
            )
            if crossing is None:
                raise InvariantViolation(
                    f"no common neighbour and no crossing for the pair {last}{first} in {seq}"
                )
            seq = seq[:crossing] + seq[crossing:][::-1]
            steps.append(RealizeStep(case="B", deficit_before=current, pivot=crossing))

        after = deficit(g, seq)
        if after >= current:
            raise InvariantViolation(f"deficit did not decrease ({current} -> {after})")
        current = after

    return RealizeTrace(cycle=CycleSeq.of(g, seq), initial_deficit=initial, steps=tuple(steps))


def realize(g: Graph, oc: Union[OCycleSeq, Sequence[int]]) -> CycleSeq:
    return realize_steps(g, oc).cycle


# ---- certificats d'absence de cycle lourd ----

@dataclass(frozen=True)
class AcyclicTree:
    kind = "tree"


@dataclass(frozen=True)
class OneHeavyStarCut:
    x: int
    components: Tuple[VertexSet, ...]
    attach: Tuple[int, ...]
    kind = "star_cut"


@dataclass(frozen=True)
class TwoHeavyBridge:
    x: int
    y: int
    side_x: VertexSet
    side_y: VertexSet
    kind = "bridge"


NoHeavyCycleCertificate = Union[AcyclicTree, OneHeavyStarCut, TwoHeavyBridge]


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    reasons: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def validate_certificate(g: Graph, cert: NoHeavyCycleCertificate) -> CertificateCheck:
    reasons: List[str] = []
    n = g.n
    heavy = heavy_vertices(g)
    if not is_connected(g):
        reasons.append("graph is not connected")
    if is_two_connected(g):
        reasons.append("graph is 2-connected, so it has a heavy cycle")

    if isinstance(cert, AcyclicTree):
        if not is_tree(g):
            reasons.append("graph is not a tree")
        if heavy:
            reasons.append(f"tree certificate but heavy vertices {sorted(heavy)}")

    elif isinstance(cert, OneHeavyStarCut):
        x = cert.x
        if heavy != frozenset([x]):
            reasons.append(f"heavy set is {sorted(heavy)}, expected exactly [{x}]")
        actual = set(components(g, g.full_mask & ~(1 << x))) if 0 <= x < n else set()
        if set(cert.components) != actual:
            reasons.append(f"components do not match those of G-{x}")
        if len(cert.attach) != len(cert.components):
            reasons.append("one attachment vertex is needed per component")
        else:
            for comp, a in zip(cert.components, cert.attach):
                hits = [v for v in comp if g.has_edge(x, v)] if 0 <= x < n else []
                if sorted(hits) != [a]:
                    reasons.append(f"component {sorted(comp)} must contain exactly the neighbour {a} of {x}")
        if 2 * len(cert.components) < n:
            reasons.append(f"{len(cert.components)} components is fewer than n/2")

    elif isinstance(cert, TwoHeavyBridge):
        x, y = cert.x, cert.y
        if heavy != frozenset([x, y]):
            reasons.append(f"heavy set is {sorted(heavy)}, expected exactly {sorted([x, y])}")
        if x == y or not (0 <= x < n and 0 <= y < n) or not g.has_edge(x, y):
            reasons.append(f"{x}{y} is not an edge")
        else:
            split = components(g.remove_edge(x, y))
            if len(split) != 2:
                reasons.append(f"{x}{y} is not a cut edge")
            elif {cert.side_x, cert.side_y} != set(split) or x not in cert.side_x or y not in cert.side_y:
                reasons.append("sides are not the two components of G-xy")
        if 2 * len(cert.side_x) != n or 2 * len(cert.side_y) != n:
            reasons.append(f"sides have sizes {len(cert.side_x)} and {len(cert.side_y)}, expected n/2")
        if 0 <= x < n and any(v != x and not g.has_edge(x, v) for v in cert.side_x):
            reasons.append(f"{x} is not adjacent to all of its side")
        if 0 <= y < n and any(v != y and not g.has_edge(y, v) for v in cert.side_y):
            reasons.append(f"{y} is not adjacent to all of its side")
    else:
        reasons.append(f"unknown certificate {cert!r}")

    return CertificateCheck(valid=not reasons, reasons=tuple(reasons))


def certificate_pattern(g: Graph) -> Optional[NoHeavyCycleCertificate]:
    """Certificat lu sur la seule structure (sans chercher de cycle), ou None"""
    heavy = sorted(heavy_vertices(g))
    if not heavy:
        return AcyclicTree() if is_tree(g) else None
    if len(heavy) == 1:
        x = heavy[0]
        comps = components(g, g.full_mask & ~(1 << x))
        attach = []
        for comp in comps:
            hits = g.adj_mask(x) & mask_of(comp)
            if hits.bit_count() != 1:
                return None
            attach.append(lowest(hits))
        if 2 * len(comps) < g.n:
            return None
        return OneHeavyStarCut(x=x, components=tuple(comps), attach=tuple(attach))
    if len(heavy) == 2:
        x, y = heavy
        if not g.has_edge(x, y):
            return None
        split = components(g.remove_edge(x, y))
        if len(split) != 2:
            return None
        side_x = next(c for c in split if x in c)
        side_y = next(c for c in split if y in c)
        return TwoHeavyBridge(x=x, y=y, side_x=side_x, side_y=side_y)
    return None


# ---- recherche de cycles ----

def find_any_cycle(g: Graph, within: Optional[int] = None) -> Optional[CycleSeq]:
    """Un cycle quelconque de G[within] (arête de retour d'un DFS), ou None"""
    adj = g.masks
    allowed = g.full_mask if within is None else within
    parent = {}
    for root in bits(allowed):
        if root in parent:
            continue
        parent[root] = -1
        stack = [(root, adj[root] & allowed)]
        while stack:
            v, rest = stack[-1]
            if not rest:
                stack.pop()
                continue
            bit = rest & -rest
            stack[-1] = (v, rest ^ bit)
            w = bit.bit_length() - 1
            if w == parent[v]:
                continue
            if w in parent:
                cyc = [v]
                while cyc[-1] != w:
                    cyc.append(parent[cyc[-1]])
                return CycleSeq.of(g, cyc)
            parent[w] = v
            stack.append((w, adj[w] & allowed))
    return None


def has_heavy_cycle_exhaustive(g: Graph) -> Optional[CycleSeq]:
    """Recherche exhaustive d'un cycle contenant tous les sommets lourds"""
    limit = get_settings().fallback_max_n
    if g.n > limit:
        raise GuardError(f"exhaustive heavy-cycle search is limited to n <= {limit}, got {g.n}")
    target = heavy_mask(g)
    if not target:
        return find_any_cycle(g)
    adj = g.masks
    start = lowest(target)
    path = [start]

    def extend(v: int, visited: int) -> bool:
        missing = target & ~visited
        if len(path) >= 3 and not missing and adj[v] >> start & 1:
            return True
        if missing:
            # les sommets lourds restants doivent rester atteignables
            zone = reachable(g, v, (g.full_mask & ~visited) | (1 << v))
            if missing & ~zone:
                return False
        for w in bits(adj[v] & ~visited):
            path.append(w)
            if extend(w, visited | (1 << w)):
                return True
            path.pop()
        return False

    if extend(start, 1 << start):
        return CycleSeq.of(g, path)
    return None


def heavy_cycle_or_certificate(g: Graph) -> Union[CycleSeq, NoHeavyCycleCertificate]:
    """Cycle contenant tous les sommets lourds, ou certificat de son absence"""
    if not is_connected(g):
        raise GraphError("heavy_cycle_or_certificate needs a connected graph")
    heavy = sorted(heavy_vertices(g))
    h = len(heavy)

    if h >= 3:
        # deux sommets lourds sont toujours Ē-liés
        return realize(g, heavy)

    cert: NoHeavyCycleCertificate
    if h == 2:
        x, y = heavy
        host = g.remove_edge(x, y) if g.has_edge(x, y) else g
        route = shortest_path(host, x, y)
        if route is not None:
            return realize(g, route)
        side_x = frozenset(bits(reachable(host, x)))
        side_y = frozenset(bits(reachable(host, y)))
        cert = TwoHeavyBridge(x=x, y=y, side_x=side_x, side_y=side_y)
        clause = "case (3): two heavy vertices joined by a cut edge"
    elif h == 1:
        x = heavy[0]
        comps = components(g, g.full_mask & ~(1 << x))
        attach = []
        for comp in comps:
            hits = g.adj_mask(x) & mask_of(comp)
            if hits.bit_count() >= 2:
                a = lowest(hits)
                b = lowest(hits & (hits - 1))
                route = shortest_path(g, a, b, within=mask_of(comp))
                return CycleSeq.of(g, [x] + route)
            attach.append(lowest(hits))
        cert = OneHeavyStarCut(x=x, components=tuple(comps), attach=tuple(attach))
        clause = "case (2): one heavy vertex with at least n/2 components"
    else:
        found = find_any_cycle(g)
        if found is not None:
            return found
        cert = AcyclicTree()
        clause = "case (1): the graph is a tree"

    check = validate_certificate(g, cert)
    if check:
        return cert
    logger.warning(f"certificat invalide ({clause}): {'; '.join(check.reasons)}")
    if g.n <= get_settings().fallback_max_n:
        found = has_heavy_cycle_exhaustive(g)
        if found is not None:
            logger.warning(f"repli exhaustif: cycle lourd trouvé malgré {clause}")
            return found
    raise InvariantViolation(f"certificate for {clause} failed: {'; '.join(check.reasons)}")


def long_opath_violations(g: Graph, longest: int, limit: Optional[int] = None) -> List[OPathSeq]:
    """o-chemins d'au moins 3 sommets, plus longs que le plus long cycle, dont les extrémités sont Ē-liées.

    La liste doit être vide: sinon l'o-chemin se refermerait en un o-cycle, réalisable en
    un cycle plus long que `longest`.
    """
    bar = ebar_masks(g)
    adj = g.masks
    deg = g.degrees
    n = g.n
    found: List[OPathSeq] = []
    need = max(longest + 1, 3)
    if need > n:
        return found
    path: List[int] = []

    def extend(v: int, visited: int) -> bool:
        if len(path) >= need:
            s = path[0]
            if s < v and (adj[s] >> v & 1 or deg[s] + deg[v] >= n):
                found.append(OPathSeq(tuple(path)))
                if limit is not None and len(found) >= limit:
                    return True
        for w in bits(bar[v] & ~visited):
            path.append(w)
            if extend(w, visited | (1 << w)):
                return True
            path.pop()
        return False

    for s in range(n):
        path[:] = [s]
        if extend(s, 1 << s):
            break
    return found


def certificate_to_schema(cert: NoHeavyCycleCertificate) -> CertificateOut:
    if isinstance(cert, OneHeavyStarCut):
        return CertificateOut(
            kind=cert.kind,
            x=cert.x,
            components=[sorted(c) for c in cert.components],
            attach=list(cert.attach),
        )
    if isinstance(cert, TwoHeavyBridge):
        return CertificateOut(
            kind=cert.kind, x=cert.x, y=cert.y, side_x=sorted(cert.side_x), side_y=sorted(cert.side_y)
        )
    return CertificateOut(kind=cert.kind)
