from typing import Optional

from pydantic import Field, model_validator

from .common import FamilyKindEnum, ToolkitModel


class FamilySpec(ToolkitModel):
    kind: FamilyKindEnum
    p: Optional[int] = None
    q: Optional[int] = None
    a: Optional[int] = None
    b: Optional[int] = None
    c: Optional[int] = None

    @model_validator(mode="after")
    def check_parameters(self):
        if self.kind == FamilyKindEnum.YPQ and (self.p is None or self.q is None):
            raise ValueError("ypq 에는 p, q 가 필요합니다")
        if self.kind == FamilyKindEnum.LABC and None in (self.a, self.b, self.c):
            raise ValueError("labc 에는 a, b, c 가 필요합니다")
        return self

    @property
    def derived_d(self) -> Optional[int]:
        if self.kind != FamilyKindEnum.LABC:
            return None
        return self.a + self.b - self.c

    @property
    def tag(self) -> str:
        if self.kind == FamilyKindEnum.YPQ:
            return f"ypq({self.p},{self.q})"
        return f"labc({self.a},{self.b},{self.c})"


class YpqSweepRow(ToolkitModel):
    p: int
    q: int
    closed_form: float
    solver_sphere_ratio: float
    difference: float
    quasi_regular: bool
    printed_formula: Optional[float] = Field(default=None, description="인쇄된 분모 그대로의 값 (음수 가능)")
