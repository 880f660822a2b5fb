"""Y^{p,q} and L^{a,b,c} toric cones with their closed-form checks."""
import logging
import math
from math import gcd, isqrt
from typing import List, Optional

from ..core.exceptions import InternalError, ReebToolkitException, ValidationError
from ..schemas.cone import MomentCone
from ..schemas.family import FamilySpec, YpqSweepRow
from ..schemas.common import FamilyKindEnum
from ..utils.validators import labc_coprimality, validate_labc, validate_ypq
from .cone_service import cone_service
from .reeb_service import reeb_service

logger = logging.getLogger(__name__)


def _check_ypq(p: int, q: int):
    ok, message = validate_ypq(p, q)
    if not ok:
        raise ValidationError(message, field="p,q")


class FamilyService:
    """Y^{p,q} / L^{a,b,c} 콘 생성과 닫힌 형식 체적"""

    def ypq_cone(self, p: int, q: int) -> MomentCone:
        _check_ypq(p, q)
        normals = [(1, 0, 0), (1, 1, 0), (1, p, p), (1, p - q - 1, p - q)]
        cone = cone_service.build_cone(normals, dim=3, label=f"ypq({p},{q})")
        if not cone.good or not cone.gorenstein:
            raise InternalError(f"Y^{{{p},{q}}} 콘이 good/Gorenstein 이 아닙니다")
        return cone

    def ypq_volume(self, p: int, q: int) -> float:
        """vol[Y^{p,q}] / pi^3 (근호에 p 가 곱해진 분모)"""
        _check_ypq(p, q)
        root = math.sqrt(4 * p * p - 3 * q * q)
        return q * q * (2 * p + root) / (3 * p * p * (3 * q * q - 2 * p * p + p * root))

    def ypq_volume_printed(self, p: int, q: int) -> float:
        """분모 3p^2(3q^2 - 2p^2 + sqrt(4p^2 - 3q^2)) 그대로의 값 (비교용)"""
        _check_ypq(p, q)
        root = math.sqrt(4 * p * p - 3 * q * q)
        denominator = 3 * p * p * (3 * q * q - 2 * p * p + root)
        if denominator == 0:
            return math.inf
        return q * q * (2 * p + root) / denominator

    def ypq_is_quasiregular(self, p: int, q: int) -> bool:
        _check_ypq(p, q)
        D = 4 * p * p - 3 * q * q
        return isqrt(D) ** 2 == D

    def labc_cone(self, a: int, b: int, c: int) -> MomentCone:
        """a v1 + b v2 - c v3 - d v4 = 0 을 만족하는 Gorenstein 법선 4개"""
        ok, message = validate_labc(a, b, c)
        if not ok:
            raise ValidationError(message, field="a,b,c")
        d = a + b - c
        coprime, reason = labc_coprimality(a, b, c)
        if not coprime:
            logger.warning(f"L^{{{a},{b},{c}}}: {reason} - orbifold 로 취급합니다")

        g = gcd(d, b)
        if c % g != 0:
            raise ValidationError(f"d x4 = -c (mod b) 의 정수 해가 없습니다: ({a},{b},{c})", field="a,b,c")
        modulus = b // g
        base = (-(c // g) * pow(d // g, -1, modulus)) % modulus if modulus > 1 else 0

        expected = sorted([(a, b, -c, -d), (-a, -b, c, d)])
        fallback: Optional[MomentCone] = None
        offsets = sorted(range(-b - 2, b + 3), key=lambda k: (abs(base + k * modulus), k))
        for k in offsets:
            x4 = base + k * modulus
            x2 = (c + d * x4) // b
            normals = [(1, 0, 0), (1, x2, d), (1, 1, 0), (1, x4, b)]
            try:
                cone = cone_service.build_cone(normals, dim=3, label=f"labc({a},{b},{c})")
            except ReebToolkitException:
                continue
            charges = cone_service.kernel_charges(cone).entries
            scale = gcd(gcd(a, b), gcd(c, d))
            if len(charges) != 1 or tuple(x * scale for x in charges[0]) not in expected:
                continue
            if cone.good:
                logger.debug(f"L^{{{a},{b},{c}}}: x4={x4}, x2={x2}")
                return cone
            if fallback is None:
                fallback = cone

        if fallback is not None and not coprime:
            logger.warning(f"L^{{{a},{b},{c}}}: good 이 아닌 orbifold 콘을 반환합니다")
            return fallback
        raise InternalError(f"L^{{{a},{b},{c}}}: good 인 법선 배치를 찾지 못했습니다")

    def build(self, spec: FamilySpec) -> MomentCone:
        if spec.kind == FamilyKindEnum.YPQ:
            return self.ypq_cone(spec.p, spec.q)
        return self.labc_cone(spec.a, spec.b, spec.c)

    def ypq_sweep(self, p_max: int) -> List[YpqSweepRow]:
        """2 <= p <= p_max 인 모든 (p,q) 에 대해 닫힌 형식과 최소화 결과 비교"""
        rows = []
        for p in range(2, p_max + 1):
            for q in range(1, p):
                if gcd(p, q) != 1:
                    continue
                closed = self.ypq_volume(p, q)
                solved = reeb_service.minimize_volume(self.ypq_cone(p, q)).vol_report.sphere_ratio
                rows.append(YpqSweepRow(
                    p=p,
                    q=q,
                    closed_form=closed,
                    solver_sphere_ratio=solved,
                    difference=abs(closed - solved),
                    quasi_regular=self.ypq_is_quasiregular(p, q),
                    printed_formula=self.ypq_volume_printed(p, q),
                ))
        logger.info(f"Y^{{p,q}} sweep 완료: p_max={p_max}, rows={len(rows)}")
        return rows


family_service = FamilyService()
