from typing import List, Optional, Tuple

from pydantic import BaseModel, Field


class ConeRequest(BaseModel):
    normals: List[List[int]] = Field(..., min_length=1, description="안쪽 facet 법선 v_a")
    dim: Optional[int] = Field(default=None, ge=1)
    label: Optional[str] = None


class SolveRequest(ConeRequest):
    tol: Optional[float] = Field(default=None, gt=0)
    max_iter: Optional[int] = Field(default=None, ge=1)
    ypq: Optional[Tuple[int, int]] = Field(default=None, description="Y^{p,q} 태그 (p, q)")


class XiRequest(ConeRequest):
    xi: List[str] = Field(..., description="'3', '3/2', '0.5' 형식의 성분")


class ZetaRequest(XiRequest):
    levels: Optional[int] = Field(default=None, ge=2)
    t0: Optional[float] = Field(default=None, gt=0)


class ScreenRequest(BaseModel):
    weights: List[int] = Field(..., min_length=2)
    degree: int


class BatchScreenRequest(BaseModel):
    items: List[ScreenRequest] = Field(..., min_length=1)
    jobs: int = Field(default=1, ge=1)
