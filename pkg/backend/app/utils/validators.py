import re
from fractions import Fraction
from math import gcd
from functools import reduce
from typing import List, Optional, Sequence, Tuple

from ..core.exceptions import ValidationError

_RATIONAL_PATTERN = re.compile(r'^[+-]?\d+(/\d+)?$')
_DECIMAL_PATTERN = re.compile(r'^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$')


def parse_number(text: str, field: Optional[str] = None):
    """'p/q' 는 정확한 Fraction, 소수는 float 로 파싱"""
    token = text.strip()
    if _RATIONAL_PATTERN.match(token):
        value = Fraction(token)
        return value
    if _DECIMAL_PATTERN.match(token):
        return float(token)
    raise ValidationError(f"숫자 형식이 아닙니다: {text!r}", field=field)


def parse_vector(text: str, field: Optional[str] = None) -> Tuple:
    """'3,3/2,3/2' 형식의 벡터 파싱. 모든 성분이 유리수면 Fraction 튜플"""
    if not text or not text.strip():
        raise ValidationError("벡터를 입력해주세요", field=field)
    return tuple(parse_number(part, field=field) for part in text.split(","))


def parse_int_list(text: str, field: Optional[str] = None) -> List[int]:
    """'1,1,1,1' 형식의 정수 목록 파싱"""
    try:
        return [int(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValidationError(f"정수 목록 형식이 아닙니다: {text!r}", field=field)


def validate_weights(weights: Sequence[int]) -> Tuple[bool, Optional[str]]:
    """준동차 가중치 검증"""
    if len(weights) < 2:
        return False, "가중치는 최소 2개가 필요합니다"
    if any(w <= 0 for w in weights):
        return False, "가중치는 모두 양의 정수여야 합니다"
    if reduce(gcd, weights) != 1:
        return False, f"가중치의 gcd가 1이 아닙니다: {list(weights)}"
    return True, None


def validate_degree(degree: int) -> Tuple[bool, Optional[str]]:
    """차수 검증"""
    if degree <= 0:
        return False, "차수는 양의 정수여야 합니다"
    return True, None


def validate_ypq(p: int, q: int) -> Tuple[bool, Optional[str]]:
    """Y^{p,q} 매개변수 검증: gcd(p,q)=1, 0<q<p"""
    if not (0 < q < p):
        return False, f"0 < q < p 조건을 만족하지 않습니다: p={p}, q={q}"
    if gcd(p, q) != 1:
        return False, f"gcd(p,q)=1 이어야 합니다: p={p}, q={q}"
    return True, None


def validate_labc(a: int, b: int, c: int) -> Tuple[bool, Optional[str]]:
    """L^{a,b,c} 매개변수의 기본 조건: 양수, a<=b, c<=b, d>0"""
    if min(a, b, c) <= 0:
        return False, "a, b, c 는 양의 정수여야 합니다"
    if a > b or c > b:
        return False, f"a <= b, c <= b 조건을 만족하지 않습니다: ({a},{b},{c})"
    if a + b - c <= 0:
        return False, f"d = a+b-c 가 양수가 아닙니다: ({a},{b},{c})"
    return True, None


def labc_coprimality(a: int, b: int, c: int) -> Tuple[bool, Optional[str]]:
    """gcd(a,b,c,d)=1 과 {a,b} 각각이 {c,d} 각각과 서로소인지 검사"""
    d = a + b - c
    if reduce(gcd, (a, b, c, d)) != 1:
        return False, f"gcd(a,b,c,d) != 1: ({a},{b},{c},{d})"
    for x in (a, b):
        for y in (c, d):
            if gcd(x, y) != 1:
                return False, f"{x} 와 {y} 가 서로소가 아닙니다"
    return True, None
