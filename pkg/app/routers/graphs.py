from fastapi import APIRouter
import logging

from ..cache import cache
from ..config import get_settings
from ..graph6 import from_graph6
from ..schemas import (
    AnalysisRecord,
    CircumferenceRequest,
    CircumferenceResponse,
    GraphInput,
    HeavyCycleResponse,
    RealizeRequest,
    RealizeResponse,
    RealizeStepOut,
)
from ..services.circumference import Budget, all_longest_cycles, circumference
from ..services.heavy import heavy_vertices
from ..services.ocycle import CycleSeq, certificate_to_schema, heavy_cycle_or_certificate, realize_steps
from ..services.sweep import analyze

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/graphs", tags=["graphs"])


def _api_budget(seconds=None) -> Budget:
    """Le budget de recherche ne dépasse jamais le délai de la requête"""
    limit = get_settings().api_timeout_seconds
    return Budget.default(min(seconds, limit) if seconds else limit)


@router.post("/analyze", response_model=AnalysisRecord)
def analyze_graph(payload: GraphInput):
    """Fiche complète d'un graphe (lourds, circonférence, certificats, motifs)"""
    key = cache._generate_key("analyze", payload.graph6)
    cached = cache.get(key)
    if cached is not None:
        return AnalysisRecord.model_validate(cached)
    record = analyze(from_graph6(payload.graph6), _api_budget())
    if record.exhausted:
        cache.set(key, record.model_dump(mode="json"))
    return record


@router.post("/heavy-cycle", response_model=HeavyCycleResponse)
def heavy_cycle(payload: GraphInput):
    """Cycle contenant tous les sommets lourds, ou certificat d'absence"""
    g = from_graph6(payload.graph6)
    outcome = heavy_cycle_or_certificate(g)
    response = HeavyCycleResponse(graph6=payload.graph6, heavy_set=sorted(heavy_vertices(g)))
    if isinstance(outcome, CycleSeq):
        response.cycle = list(outcome.verts)
    else:
        response.certificate = certificate_to_schema(outcome)
    return response


@router.post("/realize", response_model=RealizeResponse)
def realize_ocycle(payload: RealizeRequest):
    """Transforme un o-cycle en cycle sur un sur-ensemble de ses sommets"""
    trace = realize_steps(from_graph6(payload.graph6), payload.ocycle)
    return RealizeResponse(
        cycle=list(trace.cycle.verts),
        initial_deficit=trace.initial_deficit,
        steps=[RealizeStepOut(case=s.case, deficit_before=s.deficit_before, pivot=s.pivot) for s in trace.steps],
    )


@router.post("/circumference", response_model=CircumferenceResponse)
def graph_circumference(payload: CircumferenceRequest):
    key = cache._generate_key("circumference", payload.graph6, all=payload.all)
    cached = cache.get(key)
    if cached is not None:
        return CircumferenceResponse.model_validate(cached)

    g = from_graph6(payload.graph6)
    result = circumference(g, _api_budget(payload.budget_seconds))
    if payload.all and result.length:
        cycles = [list(c.verts) for c in all_longest_cycles(g)]
    else:
        cycles = [list(result.witness.verts)] if result.witness else []
    response = CircumferenceResponse(
        length=result.length,
        exhausted=result.exhausted,
        upper_bound=result.upper_bound,
        engine=result.engine,
        cycles=cycles,
    )
    if result.exhausted:
        cache.set(key, response.model_dump(mode="json"))
    else:
        logger.warning(f"⚠️ circonférence non prouvée pour {payload.graph6}: {result.length} <= c <= {result.upper_bound}")
    return response
