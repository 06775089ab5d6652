from fastapi import APIRouter

from ..graph6 import from_graph6
from ..schemas import GraphInput, ObstructionOut
from ..services.theorems import find_obstruction

router = APIRouter(prefix="/api/theorems", tags=["theorems"])


@router.post("/obstruction", response_model=ObstructionOut)
def obstruction(payload: GraphInput):
    """Graphe exceptionnel (P3, K1,3, K1,4) ou copie induite d'une obstruction"""
    found = find_obstruction(from_graph6(payload.graph6))
    return ObstructionOut(
        kind=found.kind,
        name=found.name,
        mapping=list(found.witness.mapping) if found.witness else None,
    )
