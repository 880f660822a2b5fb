from typing import List, Optional

from pydantic import Field

from .common import IntVector, ToolkitModel


class GorensteinBasis(ToolkitModel):
    """M·v_a = (1, w_a) 를 만족하는 유니모듈러 기저"""
    matrix: List[List[int]] = Field(..., description="유니모듈러 행렬 M (첫 행 = gamma)")
    gamma: IntVector = Field(..., description="<gamma, v_a> = 1 인 원시 covector")
    w: List[IntVector] = Field(..., description="각 법선의 높이 1 좌표 w_a")


class MomentCone(ToolkitModel):
    """모멘트 콘 C* 와 그 쌍대 팬 콘 C"""
    dim: int = Field(..., ge=1, description="복소 차원 n")
    normals: List[IntVector] = Field(..., description="C* 의 안쪽 facet 법선 v_a (입력 순서 유지)")
    rays: List[IntVector] = Field(default_factory=list, description="C* 의 생성 ray u_alpha (사전식 정렬)")
    strictly_convex: Optional[bool] = None
    good: Optional[bool] = None
    gorenstein: Optional[bool] = None
    gorenstein_basis: Optional[GorensteinBasis] = None
    label: Optional[str] = Field(default=None, description="보고서용 이름 (예: ypq(2,1))")

    @property
    def fan_rays(self) -> List[IntVector]:
        return list(self.normals)

    @property
    def num_facets(self) -> int:
        return len(self.normals)


class GoodnessResult(ToolkitModel):
    good: bool
    witness: Optional[List[int]] = Field(default=None, description="포화되지 않은 면의 법선 인덱스")
    elementary_divisors: Optional[List[int]] = None


class ChargeMatrix(ToolkitModel):
    """sum_a Q_I^a v_a = 0 의 원시 정수 기저"""
    entries: List[IntVector] = Field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.entries)


class EquivalenceResult(ToolkitModel):
    equivalent: bool
    matrix: Optional[List[List[int]]] = None
    permutation: Optional[List[int]] = Field(default=None, description="c1 의 법선 a 가 c2 의 법선 permutation[a] 로 간다")
