"""Cost report models for the CRT encoder datapath."""
from typing import List, Optional

from pydantic import BaseModel, Field


class CodeSummary(BaseModel):
    """Parameters of the analyzed code."""
    t: int
    N: int
    K: int
    delta: Optional[int] = None


class StepCost(BaseModel):
    """XOR-gate count of one datapath step against its formula bound."""
    name: str
    bound: int
    actual: int
    parallel_actual: Optional[int] = None
    exceeds_bound: bool = False


class CostReport(BaseModel):
    """Gate-count and fanout ledger of the four-step CRT architecture."""
    code: CodeSummary
    steps: List[StepCost]
    total_bound: int
    total_actual: int
    closed_form_bound: int
    rough_size: Optional[int] = None
    reference_bound: Optional[int] = None
    max_division_fanout: int
    direct_division_fanout: int
    direct_xor_count: int
    r: int
    t: int
    deg_g: int
    crt_applicable: bool = True
    notes: List[str] = Field(default_factory=list)


class SweepEntry(BaseModel):
    """Cost of one primitive-polynomial choice for fixed (t, delta)."""
    prim_poly: str
    factor_weight: int
    max_division_fanout: int
    total_actual: int
    deg_g: int
    r: int
