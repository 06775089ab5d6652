from pydantic import BaseModel, Field, field_validator, model_validator
from typing import Any, Dict, List, Literal, Optional, Union

# Schémas pour les entrées de graphes
class GraphInput(BaseModel):
    graph6: str

class RealizeRequest(BaseModel):
    graph6: str
    ocycle: List[int]

class CircumferenceRequest(BaseModel):
    graph6: str
    all: bool = False
    budget_seconds: Optional[float] = None

# Schémas pour les cycles et certificats
class CertificateOut(BaseModel):
    kind: Literal['tree', 'star_cut', 'bridge']
    x: Optional[int] = None
    y: Optional[int] = None
    components: Optional[List[List[int]]] = None
    attach: Optional[List[int]] = None
    side_x: Optional[List[int]] = None
    side_y: Optional[List[int]] = None

class HeavyCycleResponse(BaseModel):
    graph6: str
    heavy_set: List[int]
    cycle: Optional[List[int]] = None
    certificate: Optional[CertificateOut] = None

class RealizeStepOut(BaseModel):
    case: Literal['A', 'B']
    deficit_before: int
    pivot: int

class RealizeResponse(BaseModel):
    cycle: List[int]
    initial_deficit: int
    steps: List[RealizeStepOut]

class CircumferenceResponse(BaseModel):
    length: int
    exhausted: bool
    upper_bound: int
    engine: str
    cycles: List[List[int]] = []

class PatternFlags(BaseModel):
    free: bool
    heavy: bool

# Enregistrement d'analyse (une ligne JSONL par graphe)
class AnalysisRecord(BaseModel):
    graph6: str
    n: int
    edges: int
    connected: bool
    two_connected: bool
    heavy_set: List[int]
    circumference: int
    exhausted: bool
    heavy_cycle: Optional[List[int]] = None
    certificate: Optional[CertificateOut] = None
    patterns: Dict[str, PatternFlags]

# Schémas pour les rapports de théorèmes
class Counterexample(BaseModel):
    graph6: str
    reason: str
    witness: Dict[str, Any] = {}

class TheoremReport(BaseModel):
    theorem: str
    corpus: str
    verdict: Literal['holds', 'counterexample', 'inconclusive']
    counterexample: Optional[Counterexample] = None
    stats: Dict[str, int] = {}
    details: List[str] = []
    # journalisé seulement: les fichiers de rapport restent identiques d'une exécution à l'autre
    elapsed_seconds: Optional[float] = Field(default=None, exclude=True)

# Schémas pour les familles extrémales
class ExtremalParamsIn(BaseModel):
    family: Literal['T1', 'T2', 'G1', 'G2', 'G3', 't1', 't2', 'g1', 'g2', 'g3']
    n: Optional[int] = None
    r: Optional[int] = None
    k: Optional[int] = None

class ExtremalGraphOut(BaseModel):
    family: str
    label: str
    n: int
    edges: int
    graph6: str
    roles: Dict[str, Union[int, List[int]]]

class FamilyCheckOut(BaseModel):
    name: str
    status: Literal['pass', 'fail', 'inconclusive']
    detail: str = ""

class FamilyReportOut(BaseModel):
    family: str
    label: str
    n: int
    passed: bool
    inconclusive: bool
    circumference: Optional[int] = None
    upper_bound: Optional[int] = None
    exhausted: bool
    longest_cycle: Optional[List[int]] = None
    checks: List[FamilyCheckOut]

# Schémas pour les obstructions
class ObstructionOut(BaseModel):
    kind: Literal['special', 'witness']
    name: str
    mapping: Optional[List[int]] = None

# Configuration d'un balayage
SWEEP_FILTERS = ("connected", "2-connected", "pattern-free", "pattern-heavy")

class SweepConfig(BaseModel):
    source: Literal['enumerate', 'file', 'stdin'] = 'enumerate'
    min_n: int = 1
    max_n: int = 8
    corpus_path: Optional[str] = None
    filters: List[str] = []
    task: Literal['analyze', 'verify', 'family'] = 'analyze'
    theorem: Optional[str] = None
    families: List[str] = []
    budget_seconds: Optional[float] = None
    output: Optional[str] = None
    format: Literal['json', 'jsonl', 'g6'] = 'jsonl'
    jobs: int = 1
    on_error: Literal['skip', 'abort'] = 'abort'

    @field_validator('max_n')
    @classmethod
    def check_max_n(cls, value: int) -> int:
        if value > 9:
            raise ValueError("the enumerator supports n <= 9")
        return value

    @field_validator('filters')
    @classmethod
    def check_filters(cls, value: List[str]) -> List[str]:
        for item in value:
            head = item.split(':', 1)[0]
            if head not in SWEEP_FILTERS:
                raise ValueError(f"unknown filter {item!r} (expected {', '.join(SWEEP_FILTERS)})")
            if head.startswith('pattern') and ':' not in item:
                raise ValueError(f"filter {item!r} needs a pattern, e.g. {head}:k1_4")
        return value

    @field_validator('jobs')
    @classmethod
    def check_jobs(cls, value: int) -> int:
        if value < 1:
            raise ValueError("jobs must be at least 1")
        return value

    @model_validator(mode='after')
    def check_task(self) -> 'SweepConfig':
        if self.task == 'verify' and not self.theorem:
            raise ValueError("task 'verify' needs a theorem id")
        if self.source == 'file' and not self.corpus_path:
            raise ValueError("source 'file' needs corpus_path")
        if self.min_n < 1 or self.min_n > self.max_n:
            raise ValueError("min_n must satisfy 1 <= min_n <= max_n")
        return self
