"""Bishop / Lichnerowicz screening of quasi-homogeneous hypersurface singularities.

With zeta the weight action and xi = mu * zeta, mu = n / (|w| - d), both bounds
reduce to integer comparisons:

    Bishop:        d (|w| - d)^n <= w n^n
    Lichnerowicz:  |w| - d       <= n w_min
"""
import logging
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import List, Sequence, Tuple

import sympy

from ..core.constants import (
    REASON_BISHOP,
    REASON_FLAT,
    REASON_LICHNEROWICZ,
    REASON_LICHNEROWICZ_SATURATED,
    VERDICT_NOT_FANO,
    VERDICT_OBSTRUCTED,
    VERDICT_PASSES,
)
from ..core.exceptions import ValidationError
from ..schemas.hypersurface import HypersurfaceSingularity, ScreenReport
from ..utils.validators import parse_int_list, validate_degree, validate_weights

logger = logging.getLogger(__name__)


class ScreenService:
    """준동차 초곡면 특이점 장애 검사"""

    def singularity(self, weights: Sequence[int], degree: int) -> HypersurfaceSingularity:
        ok, message = validate_weights(weights)
        if not ok:
            raise ValidationError(message, field="weights")
        ok, message = validate_degree(degree)
        if not ok:
            raise ValidationError(message, field="degree")
        return HypersurfaceSingularity(weights=list(weights), degree=degree)

    def screen(self, weights: Sequence[int], degree: int) -> ScreenReport:
        hs = self.singularity(weights, degree)
        n = hs.n
        omega = hs.omega_charge

        bishop_lhs = hs.degree * omega ** n
        bishop_rhs = hs.weight_product * n ** n
        lich_lhs = omega
        lich_rhs = n * hs.weight_min

        if not hs.is_fano:
            return ScreenReport(
                weights=hs.weights,
                degree=hs.degree,
                fano=False,
                bishop_lhs=bishop_lhs,
                bishop_rhs=bishop_rhs,
                bishop_obstructed=False,
                lich_lhs=lich_lhs,
                lich_rhs=lich_rhs,
                lich_obstructed=False,
                verdict=VERDICT_NOT_FANO,
            )

        bishop_obstructed = bishop_lhs > bishop_rhs
        lich_obstructed = lich_lhs > lich_rhs
        # 두 등호 모두 평탄한 C^n 에서만 성립
        flat = bishop_lhs == bishop_rhs
        lich_saturated = lich_lhs == lich_rhs and not flat

        reasons: List[str] = []
        if bishop_obstructed:
            reasons.append(REASON_BISHOP)
        if lich_obstructed:
            reasons.append(REASON_LICHNEROWICZ)
        if lich_saturated:
            reasons.append(REASON_LICHNEROWICZ_SATURATED)
        if flat:
            reasons.append(REASON_FLAT)

        return ScreenReport(
            weights=hs.weights,
            degree=hs.degree,
            fano=True,
            mu=Fraction(n, omega),
            bishop_lhs=bishop_lhs,
            bishop_rhs=bishop_rhs,
            bishop_obstructed=bishop_obstructed,
            lich_lhs=lich_lhs,
            lich_rhs=lich_rhs,
            lich_obstructed=lich_obstructed,
            coordinate_charges=[Fraction(n * w, omega) for w in hs.weights],
            volume_ratio=Fraction(bishop_lhs, bishop_rhs),
            flat=flat,
            verdict=VERDICT_OBSTRUCTED if (bishop_obstructed or lich_obstructed or lich_saturated) else VERDICT_PASSES,
            reasons=reasons,
        )

    def hypersurface_zeta_ratio(self, weights: Sequence[int], degree: int) -> Fraction:
        """lim t^n (1 - e^{-t d mu}) / prod(1 - e^{-t w_i mu}) (sympy 극한)"""
        hs = self.singularity(weights, degree)
        if not hs.is_fano:
            raise ValidationError(f"Fano 가 아닙니다: |w| - d = {hs.omega_charge}", field="degree")
        t = sympy.symbols("t", positive=True)
        mu = sympy.Rational(hs.n, hs.omega_charge)
        character = (1 - sympy.exp(-t * hs.degree * mu))
        for w in hs.weights:
            character /= (1 - sympy.exp(-t * w * mu))
        value = sympy.nsimplify(sympy.limit(t ** hs.n * character, t, 0, "+"))
        if not value.is_Rational:
            raise ValidationError(f"극한이 유리수가 아닙니다: {value}")
        return Fraction(int(value.p), int(value.q))

    def from_exponents(self, exponents: Sequence[int]) -> Tuple[List[int], int]:
        """Brieskorn-Pham sum z_i^{a_i}: w_i = lcm / a_i, d = lcm"""
        if len(exponents) < 2 or any(a <= 0 for a in exponents):
            raise ValidationError("지수는 2개 이상의 양의 정수여야 합니다", field="exponents")
        L = reduce(lcm, exponents)
        return [L // a for a in exponents], L

    def parse_batch(self, text: str) -> List[Tuple[List[int], int]]:
        """한 줄에 `w1,...,w_{n+1};d`, `#` 이후는 주석"""
        items = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.count(";") != 1:
                raise ValidationError(f"line {line_no}: `w1,...;d` 형식이 아닙니다: {raw!r}", field="batch")
            weights_text, degree_text = line.split(";")
            weights = parse_int_list(weights_text, field="batch")
            try:
                degree = int(degree_text.strip())
            except ValueError:
                raise ValidationError(f"line {line_no}: 차수가 정수가 아닙니다: {degree_text!r}", field="batch")
            items.append((weights, degree))
        logger.debug(f"batch 파싱: {len(items)} 건")
        return items


screen_service = ScreenService()
