from fastapi import APIRouter

from ..config import get_settings
from ..exceptions import GuardError
from ..services.enumeration import canonical_graph6, enumerate_connected

router = APIRouter(prefix="/api/corpus", tags=["corpus"])


@router.get("/connected/{n}")
def connected_graphs(n: int):
    """Un représentant graph6 par classe de graphes connexes à n sommets, en ordre canonique"""
    limit = get_settings().default_max_n
    if n > limit:
        raise GuardError(f"the API lists connected graphs for n <= {limit}; use the CLI for larger n")
    graphs = sorted(canonical_graph6(g) for g in enumerate_connected(n))
    return {"n": n, "count": len(graphs), "graphs": graphs}
