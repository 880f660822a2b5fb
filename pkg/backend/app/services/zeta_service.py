"""Holomorphic spectral sum Z(t) = sum_m exp(-t <xi, m>) over C* ∩ Z^n.

Lattice points are enumerated slice by slice over the leading coordinate
inside the bounding box of {y in C* : <xi, y> <= cutoff}; facet tests are
exact integer comparisons, and the charge test is exact when xi is rational.
"""
import logging
import math
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gammainccinv

from ..core.config import settings
from ..core.exceptions import CapacityExceeded, ReebOutsideCone, ValidationError
from ..schemas.cone import MomentCone
from ..schemas.volume import ReebVector
from ..schemas.zeta import LichnerowiczScan, ZetaEstimate, ZetaSample
from ..utils.lattice_utils import IntVector, dot, integer_det, rational_inverse
from .volume_service import volume_service

logger = logging.getLogger(__name__)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def neville_at_zero(ts: Sequence[float], values: Sequence[float]) -> Tuple[float, float]:
    """(t_k, v_k) 를 지나는 다항식의 t = 0 값과 마지막 보정량"""
    table = [float(v) for v in values]
    previous = table[-1]
    m = len(table)
    for level in range(1, m):
        previous = table[m - level]
        for i in range(m - level):
            ti, tj = ts[i], ts[i + level]
            table[i] = (ti * table[i + 1] - tj * table[i]) / (ti - tj)
    return table[0], abs(table[0] - previous)


class ZetaService:
    """격자점 열거, Z(t) 극한 외삽, Lichnerowicz 최소 전하 검사"""

    def _check_interior(self, cone: MomentCone, xi: ReebVector):
        if xi.dim != cone.dim:
            raise ValidationError(f"xi 의 차원 {xi.dim} 이 콘 차원 {cone.dim} 과 다릅니다", field="xi")
        for u in cone.rays:
            s = dot(u, xi.values())
            if s <= 0:
                raise ReebOutsideCone(f"xi 가 C 의 내부에 있지 않습니다 (<xi,{u}> = {s})")

    def estimated_count(self, cone: MomentCone, xi: ReebVector, cutoff: float) -> float:
        """#{m : <xi,m> <= cutoff} ~ sigma * cutoff^n / n!"""
        dec = volume_service.decompose(cone)
        _, sigma = volume_service.volume_link(dec, xi)
        return sigma * float(cutoff) ** cone.dim / math.factorial(cone.dim)

    def enumerate_points(self, cone: MomentCone, xi: ReebVector, cutoff) -> np.ndarray:
        """C* ∩ Z^n 중 <xi, m> <= cutoff 인 모든 점 (행 = 점)"""
        if cutoff <= 0:
            raise ValidationError("cutoff 는 양수여야 합니다", field="cutoff")
        self._check_interior(cone, xi)
        n = cone.dim
        cap = settings.LATTICE_POINT_CAP

        estimate = self.estimated_count(cone, xi, cutoff)
        if estimate > cap:
            raise CapacityExceeded(
                f"격자점 추정치 {estimate:.3g} 가 한도 {cap} 를 넘습니다 (cutoff={float(cutoff):.6g})",
                estimate=estimate,
            )

        lam = float(cutoff)
        x = np.asarray(xi.components, dtype=float)
        vertices = np.asarray([np.asarray(u, dtype=float) * lam / float(np.dot(u, x)) for u in cone.rays])
        lo = np.floor(np.minimum(vertices.min(axis=0), 0.0)).astype(np.int64)
        hi = np.ceil(np.maximum(vertices.max(axis=0), 0.0)).astype(np.int64)

        if n > 1:
            axes = [np.arange(lo[k], hi[k] + 1, dtype=np.int64) for k in range(1, n)]
            slice_size = math.prod(len(a) for a in axes)
            if slice_size > cap:
                raise CapacityExceeded(f"슬라이스 크기 {slice_size} 가 한도 {cap} 를 넘습니다", estimate=estimate)
            grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n - 1)
        else:
            grid = np.zeros((1, 0), dtype=np.int64)

        normals = np.asarray(cone.normals, dtype=np.int64)
        if xi.is_rational:
            denom = reduce(_lcm, (f.denominator for f in xi.exact), 1)
            xi_int = np.asarray([int(f * denom) for f in xi.exact], dtype=np.int64)
            bound = math.floor(Fraction(cutoff) * denom)

        chunks: List[np.ndarray] = []
        total = 0
        for x0 in range(int(lo[0]), int(hi[0]) + 1):
            pts = np.hstack([np.full((len(grid), 1), x0, dtype=np.int64), grid])
            pts = pts[(pts @ normals.T >= 0).all(axis=1)]
            if xi.is_rational:
                pts = pts[pts @ xi_int <= bound]
            else:
                pts = pts[pts.astype(float) @ x <= lam]
            total += len(pts)
            if total > cap:
                raise CapacityExceeded(f"격자점 수가 한도 {cap} 를 넘었습니다", estimate=estimate)
            if len(pts):
                chunks.append(pts)
        logger.debug(f"격자점 열거: cutoff={lam:.6g}, points={total}")
        return np.vstack(chunks) if chunks else np.zeros((0, n), dtype=np.int64)

    def charges_of(self, points: np.ndarray, xi: ReebVector) -> np.ndarray:
        if xi.is_rational:
            denom = reduce(_lcm, (f.denominator for f in xi.exact), 1)
            xi_int = np.asarray([int(f * denom) for f in xi.exact], dtype=np.int64)
            return (points @ xi_int) / float(denom)
        return points.astype(float) @ np.asarray(xi.components, dtype=float)

    def enumerate_charges(self, cone: MomentCone, xi: ReebVector, cutoff) -> np.ndarray:
        """<xi, m> <= cutoff 인 격자점의 전하 (중복 포함, 오름차순)"""
        return np.sort(self.charges_of(self.enumerate_points(cone, xi, cutoff), xi))

    # ------------------------------------------------------------------
    # Z(t) 극한
    # ------------------------------------------------------------------
    def schedule(self, cone: MomentCone, xi: ReebVector, levels: Optional[int] = None, t0: Optional[float] = None) -> Tuple[List[float], float, float]:
        """(t 값들, 꼬리 상수 x, 참조 sphere ratio). cutoff(t) = x / t"""
        levels = levels or settings.ZETA_LEVELS
        t0 = t0 or settings.ZETA_T0
        if levels < 2:
            raise ValidationError("levels 는 2 이상이어야 합니다", field="levels")
        n = cone.dim
        dec = volume_service.decompose(cone)
        _, sigma = volume_service.volume_link(dec, xi)

        # t^n * tail ~ sigma * Q(n, t * cutoff)
        x_tail = float(gammainccinv(n, settings.ZETA_TRUNCATION_TOL / (2.0 * sigma)))
        lam_target = (settings.ZETA_TARGET_POINTS * math.factorial(n) / sigma) ** (1.0 / n)
        t_min = x_tail / lam_target
        if t0 <= t_min:
            logger.warning(f"t0={t0} 가 점 예산으로 허용되는 최소 t={t_min:.4g} 보다 작습니다")
            t_min = t0 / 2.0
        t_max = min(t0, 2.0 * t_min)
        ratio = t_min / t_max
        ts = [t_max * ratio ** (k / (levels - 1)) for k in range(levels)]
        return ts, x_tail, sigma

    def zeta_limit(self, cone: MomentCone, xi: ReebVector, levels: Optional[int] = None, t0: Optional[float] = None) -> ZetaEstimate:
        """t^n Z(t) 를 여러 t 에서 계산하고 t = 0 으로 외삽"""
        ts, x_tail, sigma = self.schedule(cone, xi, levels=levels, t0=t0)
        n = cone.dim
        lam_max = x_tail / ts[-1]

        points = self.enumerate_points(cone, xi, lam_max)
        charges = np.sort(self.charges_of(points, xi))

        samples = []
        for t in ts:
            value = t ** n * math.fsum(np.exp(-t * charges).tolist())
            samples.append(ZetaSample(t=t, value=value, cutoff=x_tail / t))

        limit, error_bar = neville_at_zero([s.t for s in samples], [s.value for s in samples])
        scan = self.lichnerowicz_scan(cone, xi)
        lam = scan.min_charge
        logger.info(f"zeta 외삽: limit={limit:.8g} ± {error_bar:.2e}, sphere_ratio={sigma:.8g}, points={len(charges)}")
        return ZetaEstimate(
            xi=xi,
            cutoff=lam_max,
            samples=samples,
            extrapolated_limit=limit,
            error_bar=error_bar,
            min_charge=lam,
            eigenvalue_min=lam * (lam + 2 * n - 2),
            points_enumerated=len(charges),
            sphere_ratio_reference=sigma,
        )

    # ------------------------------------------------------------------
    # 최소 전하
    # ------------------------------------------------------------------
    def hilbert_generators(self, cone: MomentCone) -> List[IntVector]:
        """C* 의 ray 와 각 단체 조각의 fundamental parallelepiped 격자점"""
        dec = volume_service.decompose(cone)
        found = set(cone.rays)
        for piece in dec.pieces:
            if piece.determinant == 1:
                continue
            U = np.asarray(piece.generators, dtype=np.int64)
            det = integer_det(piece.generators)
            adj = np.asarray(
                [[int(x * det) for x in row] for row in rational_inverse(piece.generators)],
                dtype=np.int64,
            )
            lo = np.minimum(U, 0).sum(axis=0)
            hi = np.maximum(U, 0).sum(axis=0)
            axes = [np.arange(lo[k], hi[k] + 1, dtype=np.int64) for k in range(cone.dim)]
            box = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, cone.dim)
            # lambda = p U^{-1}, 0 <= lambda_i < 1
            scaled = box @ adj
            if det < 0:
                scaled = -scaled
            inside = ((scaled >= 0) & (scaled < abs(det))).all(axis=1) & box.any(axis=1)
            found.update(tuple(int(c) for c in p) for p in box[inside])
        return sorted(found)

    def lichnerowicz_scan(self, cone: MomentCone, xi: ReebVector) -> LichnerowiczScan:
        """0 이 아닌 격자점의 최소 전하. 1 미만이면 Lichnerowicz 장애"""
        self._check_interior(cone, xi)
        generators = self.hilbert_generators(cone)
        charges = [dot(m, xi.values()) for m in generators]
        best = min(range(len(generators)), key=lambda i: (charges[i], generators[i]))
        lam = charges[best]
        tol = settings.LICHNEROWICZ_TOL
        if xi.is_rational:
            return LichnerowiczScan(
                min_charge=float(lam),
                min_charge_exact=Fraction(lam),
                witness=generators[best],
                obstructed=lam < 1,
                equality=lam == 1,
            )
        return LichnerowiczScan(
            min_charge=float(lam),
            witness=generators[best],
            obstructed=lam < 1 - tol,
            equality=abs(lam - 1) <= tol,
        )


zeta_service = ZetaService()
