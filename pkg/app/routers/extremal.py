from fastapi import APIRouter
from typing import Optional

from ..config import get_settings
from ..schemas import ExtremalGraphOut, FamilyReportOut
from ..services.circumference import Budget
from ..services.extremal import (
    ExtremalParams,
    extremal_graph_to_schema,
    family_report_to_schema,
    generate,
    verify_family,
)

router = APIRouter(prefix="/api/extremal", tags=["extremal"])


@router.get("/{family}", response_model=ExtremalGraphOut)
def generate_family(family: str, n: Optional[int] = None, r: Optional[int] = None, k: Optional[int] = None):
    """Construit T1/T2 (paramètre n) ou G1/G2/G3 (paramètres r et k)"""
    return extremal_graph_to_schema(generate(ExtremalParams(family, n=n, r=r, k=k)))


@router.get("/{family}/verify", response_model=FamilyReportOut)
def verify_extremal_family(family: str, n: Optional[int] = None, r: Optional[int] = None, k: Optional[int] = None):
    """Vérifie les propriétés de la famille; circonférence bornée par le délai de l'API"""
    budget = Budget.default(get_settings().api_timeout_seconds)
    return family_report_to_schema(verify_family(ExtremalParams(family, n=n, r=r, k=k), budget))
