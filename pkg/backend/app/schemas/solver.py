from typing import List, Optional, Tuple

from pydantic import Field

from .common import IntVector, Rational, RegularityEnum, ToolkitModel
from .volume import ReebVector, VolumeReport


class ReebPolytope(ToolkitModel):
    """N = C ∩ {<gamma, xi> = n}"""
    vertices: List[Tuple[Rational, ...]]
    interior_start: Tuple[Rational, ...]


class NewtonStep(ToolkitModel):
    iteration: int
    vol_delta: float
    grad_norm: float
    step_length: float
    hessian_min_eig: float
    method: str = Field(..., description="newton 또는 gradient")


class CriticalPoint(ToolkitModel):
    xi_star: ReebVector
    vol_report: VolumeReport
    grad_norm: float
    newton_iters: int
    hessian_min_eig: float
    certified_exact: bool = False
    history: List[NewtonStep] = Field(default_factory=list)


class FutakiReport(ToolkitModel):
    candidate_xi: ReebVector
    obstruction_vector: List[float]
    obstruction_norm: float
    relative_norm: float = Field(..., description="norm / vol_delta")
    obstructed: bool


class QuotientCone(ToolkitModel):
    normal_indices: List[int]
    simplicial: bool
    index: Optional[int] = Field(default=None, description="|det| (단체 콘일 때)")


class QuotientFan(ToolkitModel):
    direction: IntVector
    projected_rays: List[IntVector]
    ray_multiplicities: List[int]
    cones: List[QuotientCone]
    smooth: bool


class RegularityReport(ToolkitModel):
    label: RegularityEnum
    reason: str
    family: Optional[str] = None
    discriminant: Optional[int] = None
    rational_approximation: Optional[Tuple[Rational, ...]] = None
    quotient: Optional[QuotientFan] = None
