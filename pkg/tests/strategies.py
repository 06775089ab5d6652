from hypothesis import strategies as st
from hypothesis.strategies import DrawFn, composite

from app.graph import Graph


@composite
def graphs(draw: DrawFn, min_n: int = 1, max_n: int = 9) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [pair for pair, keep in zip(pairs, chosen) if keep])


@composite
def connected_graphs(draw: DrawFn, min_n: int = 1, max_n: int = 9) -> Graph:
    """Arbre couvrant aléatoire plus des arêtes supplémentaires"""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    edges = {(draw(st.integers(min_value=0, max_value=v - 1)), v) for v in range(1, n)}
    pairs = [(u, v) for v in range(n) for u in range(v)]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=2 * n)) if pairs else []
    return Graph(n, edges | set(extra))


@composite
def relabelings(draw: DrawFn, max_n: int = 8):
    g = draw(graphs(max_n=max_n))
    order = draw(st.permutations(list(range(g.n))))
    return g, g.relabel(order)
