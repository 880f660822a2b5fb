from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from pydantic import Field

from .common import IntVector, Rational, ToolkitModel


class ReebVector(ToolkitModel):
    """팬 콘 C 내부의 Reeb 벡터 xi"""
    components: Tuple[float, ...]
    exact: Optional[Tuple[Rational, ...]] = None

    @classmethod
    def from_values(cls, values: Sequence) -> "ReebVector":
        """int / Fraction 만 있으면 정확 경로, 하나라도 float 이면 부동소수 경로"""
        if all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values):
            exact = tuple(Fraction(v) for v in values)
            return cls(components=tuple(float(v) for v in exact), exact=exact)
        return cls(components=tuple(float(v) for v in values))

    @property
    def is_rational(self) -> bool:
        return self.exact is not None

    @property
    def dim(self) -> int:
        return len(self.components)

    def values(self) -> tuple:
        return self.exact if self.exact is not None else self.components


class SimplicialPiece(ToolkitModel):
    generators: List[IntVector]
    determinant: int = Field(..., ge=1, description="|det U|")


class SimplicialDecomposition(ToolkitModel):
    """C* 의 ray 만 쓰는 단체 분할"""
    dim: int
    anchor: IntVector
    pieces: List[SimplicialPiece]


class VolumeReport(ToolkitModel):
    xi: ReebVector
    vol_delta: float
    vol_link: float
    sphere_ratio: float
    gradient: List[float]
    hessian: List[List[float]]
    vol_delta_exact: Optional[Rational] = None
    sphere_ratio_exact: Optional[Rational] = None
    gradient_exact: Optional[List[Rational]] = None
