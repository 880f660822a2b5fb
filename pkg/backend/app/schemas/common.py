from fractions import Fraction
from typing import Annotated, Tuple
from enum import Enum

from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator, WithJsonSchema


def _to_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("bool 은 유리수가 아닙니다")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"유리수가 아닙니다: {value!r}")


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# 정확한 유리수: int / "p/q" / Fraction 을 받아 "p/q" 문자열로 직렬화
Rational = Annotated[
    Fraction,
    PlainValidator(_to_fraction),
    PlainSerializer(format_fraction, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+(/\d+)?$"}),
]

IntVector = Tuple[int, ...]


class ToolkitModel(BaseModel):
    """불변 도메인 값의 공통 베이스"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class RegularityEnum(str, Enum):
    REGULAR = "regular"
    QUASI_REGULAR = "quasi-regular"
    IRREGULAR = "irregular"
    UNDETERMINED = "undetermined"


class FamilyKindEnum(str, Enum):
    YPQ = "ypq"
    LABC = "labc"


class VerdictEnum(str, Enum):
    OBSTRUCTED = "obstructed"
    PASSES = "passes-screen"
    NOT_FANO = "not-fano"
