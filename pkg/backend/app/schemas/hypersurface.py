from math import prod
from typing import List, Optional

from pydantic import Field

from .common import Rational, ToolkitModel, VerdictEnum


class HypersurfaceSingularity(ToolkitModel):
    """가중치 w 와 차수 d 로 주어진 준동차 초곡면 특이점"""
    weights: List[int]
    degree: int

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    @property
    def weight_sum(self) -> int:
        return sum(self.weights)

    @property
    def weight_product(self) -> int:
        return prod(self.weights)

    @property
    def weight_min(self) -> int:
        return min(self.weights)

    @property
    def omega_charge(self) -> int:
        """Omega 의 zeta 전하 |w| - d"""
        return self.weight_sum - self.degree

    @property
    def is_fano(self) -> bool:
        return self.omega_charge > 0


class ScreenReport(ToolkitModel):
    weights: List[int]
    degree: int
    fano: bool
    mu: Optional[Rational] = Field(default=None, description="xi = mu * zeta, mu = n/(|w|-d)")
    bishop_lhs: int
    bishop_rhs: int
    bishop_obstructed: bool
    lich_lhs: int
    lich_rhs: int
    lich_obstructed: bool
    coordinate_charges: List[Rational] = Field(default_factory=list)
    volume_ratio: Optional[Rational] = None
    flat: bool = False
    verdict: VerdictEnum
    reasons: List[str] = Field(default_factory=list)
