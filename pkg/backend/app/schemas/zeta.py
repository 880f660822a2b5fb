from typing import List, Optional

from pydantic import Field

from .common import IntVector, Rational, ToolkitModel
from .volume import ReebVector


class ZetaSample(ToolkitModel):
    t: float
    value: float = Field(..., description="t^n Z_trunc(t)")
    cutoff: float


class ZetaEstimate(ToolkitModel):
    xi: ReebVector
    cutoff: float = Field(..., description="열거한 최대 전하 Lambda_max")
    samples: List[ZetaSample]
    extrapolated_limit: float
    error_bar: float
    min_charge: float
    eigenvalue_min: float = Field(..., description="E = lambda(lambda + 2n - 2)")
    points_enumerated: int
    sphere_ratio_reference: float


class LichnerowiczScan(ToolkitModel):
    min_charge: float
    min_charge_exact: Optional[Rational] = None
    witness: IntVector
    obstructed: bool
    equality: bool = Field(..., description="최소 전하가 정확히 1 (평탄한 경우)")
