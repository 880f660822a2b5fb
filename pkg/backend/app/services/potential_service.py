"""Toric symplectic potentials

    G(y) = 1/2 sum_a l_a log l_a + 1/2 l_xi log l_xi - 1/2 l_S log l_S + h(y)

with l_a = <y, v_a>, l_xi = <xi, y> and l_S = <sum_a v_a, y>.
"""
import logging
from typing import Optional, Sequence

import numpy as np

from ..core.exceptions import BoundaryEvaluation, InternalError, NonConvex, ValidationError
from ..schemas.cone import MomentCone
from ..schemas.potential import HomogeneousFunction, MetricBlocks, PotentialSpec, PotentialValue
from ..schemas.volume import ReebVector

logger = logging.getLogger(__name__)

INVERSE_TOLERANCE = 1e-10


class PotentialService:
    """심플렉틱 퍼텐셜과 계량 블록 평가"""

    def build_spec(self, cone: MomentCone, xi: ReebVector, h: Optional[HomogeneousFunction] = None) -> PotentialSpec:
        if xi.dim != cone.dim:
            raise ValidationError("xi 의 차원이 콘과 다릅니다", field="xi")
        if h is not None:
            y = np.asarray(cone.rays, dtype=float).sum(axis=0)
            lhs, rhs = h.value(2.0 * y), 2.0 * h.value(y)
            if not np.isclose(lhs, rhs, rtol=1e-9, atol=1e-12):
                raise ValidationError(f"h 가 1차 동차가 아닙니다: h(2y)={lhs}, 2h(y)={rhs}", field="h")
        return PotentialSpec(cone=cone, xi=xi, h=h)

    def potential(self, spec: PotentialSpec, y: Sequence[float]) -> PotentialValue:
        y = np.asarray(y, dtype=float)
        V = np.asarray(spec.cone.normals, dtype=float)
        xi = np.asarray(spec.xi.components, dtype=float)
        v_sum = V.sum(axis=0)

        l = V @ y
        l_xi = float(xi @ y)
        l_sum = float(v_sum @ y)
        if l.min() <= 0.0 or l_xi <= 0.0:
            raise BoundaryEvaluation(f"y={y.tolist()} 는 C* 의 내부점이 아닙니다 (min <y,v_a> = {l.min():.3e})")

        value = 0.5 * float(l @ np.log(l)) + 0.5 * l_xi * np.log(l_xi) - 0.5 * l_sum * np.log(l_sum)
        gradient = 0.5 * V.T @ (np.log(l) + 1.0) + 0.5 * xi * (np.log(l_xi) + 1.0) - 0.5 * v_sum * (np.log(l_sum) + 1.0)
        hessian = (
            0.5 * (V / l[:, None]).T @ V
            + 0.5 * np.outer(xi, xi) / l_xi
            - 0.5 * np.outer(v_sum, v_sum) / l_sum
        )
        if spec.h is not None:
            value += spec.h.value(y)
            gradient = gradient + spec.h.gradient(y)
            hessian = hessian + spec.h.hessian(y)
        hessian = 0.5 * (hessian + hessian.T)

        try:
            inverse = np.linalg.inv(hessian)
        except np.linalg.LinAlgError:
            eig = np.linalg.eigvalsh(hessian)
            raise NonConvex(f"Hessian 이 특이행렬입니다: y={y.tolist()}", point=y.tolist(), min_eigenvalue=float(eig.min()))

        return PotentialValue(
            value=float(value),
            gradient=gradient.tolist(),
            hessian=hessian.tolist(),
            inverse=inverse.tolist(),
        )

    def metric_blocks(self, spec: PotentialSpec, y: Sequence[float]) -> MetricBlocks:
        """(G_ij, G^ij) 와 양정치 / 역행렬 일관성 확인"""
        pv = self.potential(spec, y)
        G = np.asarray(pv.hessian)
        G_inv = np.asarray(pv.inverse)

        eig = np.linalg.eigvalsh(G)
        if eig.min() <= 0.0:
            logger.warning(f"볼록성 위반: y={list(y)}, min eig={eig.min():.3e}")
            raise NonConvex(
                f"G_ij 가 양정치가 아닙니다 (min eig = {eig.min():.3e})",
                point=list(map(float, y)),
                min_eigenvalue=float(eig.min()),
            )
        residual = float(np.abs(G @ G_inv - np.eye(len(G))).max())
        if residual > INVERSE_TOLERANCE:
            raise InternalError(f"G_ij G^jk 가 단위행렬과 {residual:.3e} 만큼 다릅니다")

        _, log_det = np.linalg.slogdet(G)
        return MetricBlocks(
            symplectic_block=G.tolist(),
            angular_block=G_inv.tolist(),
            min_eigenvalue=float(eig.min()),
            log_det=float(log_det),
        )


potential_service = PotentialService()
