"""Critical Reeb vector on the slice N = C ∩ {<gamma, xi> = n}.

The slice is parametrized as xi(t) = M^{-1} (n, t) with M the Gorenstein
basis change, so t lives in R^{n-1} and the constrained gradient / Hessian
are B^T grad and B^T H B with B = M^{-1}[:, 1:].
"""
import logging
import math
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence

import numpy as np

from ..core.config import settings
from ..core.constants import (
    FAMILY_YPQ,
    REGULARITY_IRREGULAR,
    REGULARITY_QUASI_REGULAR,
    REGULARITY_REGULAR,
    REGULARITY_UNDETERMINED,
)
from ..core.exceptions import (
    InternalError,
    NonConvergence,
    NotGood,
    ReebOutsideCone,
    RequiresRationalReeb,
    ValidationError,
)
from ..schemas.cone import MomentCone
from ..schemas.family import FamilySpec
from ..schemas.solver import (
    CriticalPoint,
    FutakiReport,
    NewtonStep,
    QuotientCone,
    QuotientFan,
    ReebPolytope,
    RegularityReport,
)
from ..schemas.volume import ReebVector, SimplicialDecomposition
from ..utils.lattice_utils import (
    dot,
    integer_det,
    integer_inverse,
    mat_vec,
    matrix_rank,
    primitive_rational,
    transpose,
    unimodular_completion,
    vector_gcd,
)
from ..utils.validators import validate_ypq
from .cone_service import cone_service
from .volume_service import volume_service

logger = logging.getLogger(__name__)


class SliceFrame:
    """N 의 좌표계: xi(t) = M^{-1} (n, t)"""

    def __init__(self, cone: MomentCone):
        basis = cone_service.gorenstein_normalize(cone)
        self.n = cone.dim
        self.gamma = basis.gamma
        self.matrix = basis.matrix
        self.inverse = integer_inverse(basis.matrix)
        self.B = np.asarray([row[1:] for row in self.inverse], dtype=float)

    def xi_of(self, t: Sequence[float]) -> np.ndarray:
        return np.asarray(self.inverse, dtype=float) @ np.concatenate(([float(self.n)], np.asarray(t, dtype=float)))

    def t_of(self, xi: Sequence) -> List:
        coords = mat_vec(self.matrix, xi)
        return list(coords[1:])

    def on_slice(self, xi: Sequence) -> bool:
        return dot(self.gamma, xi) == self.n

    def restrict_gradient(self, gradient) -> np.ndarray:
        return self.B.T @ np.asarray(gradient, dtype=float)

    def restrict_gradient_exact(self, gradient: Sequence[Fraction]) -> List[Fraction]:
        return [sum(Fraction(self.inverse[r][j]) * gradient[r] for r in range(self.n)) for j in range(1, self.n)]

    def restrict_hessian(self, hessian) -> np.ndarray:
        return self.B.T @ np.asarray(hessian, dtype=float) @ self.B


class ReebService:
    """Reeb 벡터 최소화, Futaki 검사, 정칙성 분류 서비스"""

    def reeb_polytope(self, cone: MomentCone) -> ReebPolytope:
        """N 의 꼭짓점 (= n v_a) 과 꼭짓점 무게중심"""
        frame = SliceFrame(cone)
        n = cone.dim
        vertices = [tuple(Fraction(n * x) for x in v) for v in cone.normals]
        start = tuple(sum(v[k] for v in vertices) / len(vertices) for k in range(n))
        if any(dot(u, start) <= 0 for u in cone.rays):
            raise InternalError(f"꼭짓점 무게중심 {start} 가 C 의 내부에 있지 않습니다")
        if not frame.on_slice(start):
            raise InternalError("꼭짓점 무게중심이 N 위에 있지 않습니다")
        return ReebPolytope(vertices=vertices, interior_start=start)

    def _require_good(self, cone: MomentCone):
        if cone.good is False:
            witness = cone_service.is_good(cone).witness
            raise NotGood(f"good 이 아닌 콘입니다 (face {witness})", witness=witness)

    def minimize_volume(
        self,
        cone: MomentCone,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None,
        start: Optional[Sequence] = None,
        dec: Optional[SimplicialDecomposition] = None,
        orbifold: bool = False,
    ) -> CriticalPoint:
        """N 위에서 vol[Delta] 의 유일한 임계점을 감쇠 Newton 으로 찾는다

        orbifold=True 이면 good 이 아닌 Gorenstein 콘도 허용한다 (체적 함수는 그대로 유효).
        """
        tol = tol if tol is not None else settings.SOLVER_TOLERANCE
        max_iter = max_iter if max_iter is not None else settings.SOLVER_MAX_ITER
        if tol <= 0:
            raise ValidationError("tol 은 양수여야 합니다", field="tol")
        if orbifold and cone.good is False:
            logger.warning(f"good 이 아닌 콘 {cone.label or cone.normals} 을 orbifold 로 최소화합니다")
        else:
            self._require_good(cone)

        frame = SliceFrame(cone)
        dec = dec or volume_service.decompose(cone)
        rays = np.asarray(cone.rays, dtype=float)

        if start is None:
            start = self.reeb_polytope(cone).interior_start
        elif not frame.on_slice(start) and not math.isclose(float(dot(frame.gamma, start)), frame.n, rel_tol=1e-12):
            raise ValidationError(f"시작점 {list(start)} 이 N 위에 있지 않습니다", field="start")
        t = np.asarray([float(x) for x in frame.t_of([float(c) for c in start])])

        def evaluate(tt):
            xi = ReebVector.from_values(frame.xi_of(tt).tolist())
            return xi, volume_service.volume_delta(dec, xi)

        history: List[NewtonStep] = []
        xi, F = evaluate(t)
        eps = np.finfo(float).eps
        for iteration in range(max_iter + 1):
            g = frame.restrict_gradient(volume_service.volume_gradient(dec, xi))
            H = frame.restrict_hessian(volume_service.volume_hessian(dec, xi))
            eig = np.linalg.eigvalsh(H) if H.size else np.array([0.0])
            grad_norm = float(np.linalg.norm(g))

            if grad_norm < tol:
                logger.info(f"Newton 수렴: iter={iteration}, |g|={grad_norm:.3e}, vol={F:.12g}")
                return self._critical_point(cone, dec, frame, xi, grad_norm, iteration, float(eig.min()), history)
            if iteration == max_iter:
                break

            if eig.min() <= 0 or eig.max() / eig.min() > settings.SOLVER_MAX_CONDITION:
                logger.warning(f"Hessian 조건수 초과, 경사하강으로 대체 (iter={iteration})")
                p, method = -g, "gradient"
            else:
                p, method = -np.linalg.solve(H, g), "newton"

            alpha = 1.0
            slope = float(g @ p)
            while True:
                t_new = t + alpha * p
                xi_trial = frame.xi_of(t_new)
                if float((rays @ xi_trial).min()) > settings.BOUNDARY_PAIRING_FLOOR:
                    xi_new, F_new = evaluate(t_new)
                    if F_new <= F + settings.SOLVER_ARMIJO * alpha * slope + 4 * eps * abs(F):
                        break
                alpha *= settings.SOLVER_BACKTRACK
                if alpha < eps:
                    raise NonConvergence(
                        f"line search 실패: iter={iteration}, |g|={grad_norm:.3e}",
                        last_iterate=list(xi.components),
                    )

            history.append(NewtonStep(
                iteration=iteration,
                vol_delta=F_new,
                grad_norm=grad_norm,
                step_length=alpha,
                hessian_min_eig=float(eig.min()),
                method=method,
            ))
            t, xi, F = t_new, xi_new, F_new

        raise NonConvergence(
            f"max_iter={max_iter} 안에 수렴하지 않았습니다 (|g|={grad_norm:.3e})",
            last_iterate=list(xi.components),
        )

    def _critical_point(self, cone, dec, frame, xi, grad_norm, iterations, min_eig, history) -> CriticalPoint:
        exact = self.certify_rational(cone, xi.components, dec=dec)
        xi_star = exact if exact is not None else xi
        return CriticalPoint(
            xi_star=xi_star,
            vol_report=volume_service.volume_report(dec, xi_star),
            grad_norm=0.0 if exact is not None else grad_norm,
            newton_iters=iterations,
            hessian_min_eig=min_eig,
            certified_exact=exact is not None,
            history=history,
        )

    def certify_rational(
        self,
        cone: MomentCone,
        xi: Sequence[float],
        dec: Optional[SimplicialDecomposition] = None,
        max_denominator: Optional[int] = None,
    ) -> Optional[ReebVector]:
        """부동소수 xi* 를 유리수로 복원하고 정확한 제약 기울기가 0 인지 확인"""
        bound = max_denominator or settings.SOLVER_CERTIFY_DENOMINATOR
        frame = SliceFrame(cone)
        candidate = [Fraction(float(x)).limit_denominator(bound) for x in xi]
        if not frame.on_slice(candidate):
            return None
        if any(dot(u, candidate) <= 0 for u in cone.rays):
            return None
        dec = dec or volume_service.decompose(cone)
        exact = ReebVector.from_values(candidate)
        constrained = frame.restrict_gradient_exact(volume_service.volume_gradient_exact(dec, exact))
        if any(c != 0 for c in constrained):
            return None
        logger.info(f"xi* 유리수 확인: {[str(c) for c in candidate]}")
        return exact

    def futaki_test(
        self,
        cone: MomentCone,
        candidate: ReebVector,
        dec: Optional[SimplicialDecomposition] = None,
    ) -> FutakiReport:
        """후보 xi 에서의 제약 기울기 (Futaki 불변량에 비례)"""
        frame = SliceFrame(cone)
        if candidate.is_rational:
            if not frame.on_slice(candidate.exact):
                raise ValidationError(f"<gamma, xi> = {frame.n} 이어야 합니다", field="xi")
        elif not math.isclose(float(dot(frame.gamma, candidate.components)), frame.n, rel_tol=1e-12):
            raise ValidationError(f"<gamma, xi> = {frame.n} 이어야 합니다", field="xi")

        dec = dec or volume_service.decompose(cone)
        vol = volume_service.volume_delta(dec, candidate)
        if candidate.is_rational:
            g = np.array([float(x) for x in frame.restrict_gradient_exact(volume_service.volume_gradient_exact(dec, candidate))])
        else:
            g = frame.restrict_gradient(volume_service.volume_gradient(dec, candidate))
        norm = float(np.linalg.norm(g))
        relative = norm / vol
        return FutakiReport(
            candidate_xi=candidate,
            obstruction_vector=g.tolist(),
            obstruction_norm=norm,
            relative_norm=relative,
            obstructed=relative > settings.FUTAKI_RELATIVE_TOL,
        )

    def quotient_fan(self, cone: MomentCone, xi: ReebVector) -> QuotientFan:
        """xi 의 원시 방향을 따라 fan 을 Z^{n-1} 로 사영"""
        if not xi.is_rational:
            raise RequiresRationalReeb("quotient_fan 은 유리수 Reeb 벡터가 필요합니다")
        if any(dot(u, xi.exact) <= 0 for u in cone.rays):
            raise ReebOutsideCone(f"xi={[str(x) for x in xi.exact]} 가 C 의 내부에 있지 않습니다")

        direction = primitive_rational(xi.exact)
        K = transpose(unimodular_completion(direction))
        projected = [mat_vec(K, v)[1:] for v in cone.normals]
        multiplicities = [vector_gcd(p) for p in projected]

        cones: List[QuotientCone] = []
        for u in cone.rays:
            indices = list(cone_service.tight_normals(cone, [u]))
            gens = [projected[a] for a in indices]
            simplicial = len(gens) == cone.dim - 1 and matrix_rank(gens) == cone.dim - 1
            index = abs(integer_det(gens)) if simplicial else None
            cones.append(QuotientCone(normal_indices=indices, simplicial=simplicial, index=index))

        smooth = all(c.simplicial and c.index == 1 for c in cones)
        return QuotientFan(
            direction=direction,
            projected_rays=projected,
            ray_multiplicities=multiplicities,
            cones=cones,
            smooth=smooth,
        )

    def _require_ypq_match(self, cone: MomentCone, family: FamilySpec):
        """Y^{p,q} 태그가 실제로 이 콘을 가리키는지 GL(n,Z) 동치로 확인"""
        from .family_service import family_service

        ok, message = validate_ypq(family.p, family.q)
        if not ok:
            raise ValidationError(message, field="ypq")
        if not cone_service.cones_equivalent(cone, family_service.ypq_cone(family.p, family.q)).equivalent:
            raise ValidationError(f"콘이 {family.tag} 와 동치가 아닙니다", field="ypq")

    def classify_regularity(
        self,
        cone: MomentCone,
        xi_star: ReebVector,
        family: Optional[FamilySpec] = None,
    ) -> RegularityReport:
        """정칙 / 준정칙 / 비정칙 판정. 정확한 판정 근거가 없으면 undetermined"""
        if family is not None and family.kind.value == FAMILY_YPQ:
            self._require_ypq_match(cone, family)
            D = 4 * family.p ** 2 - 3 * family.q ** 2
            square = isqrt(D) ** 2 == D
            return RegularityReport(
                label=REGULARITY_QUASI_REGULAR if square else REGULARITY_IRREGULAR,
                reason=f"4p^2 - 3q^2 = {D}: {'제곱수' if square else '제곱수가 아님'}",
                family=family.tag,
                discriminant=D,
            )

        exact = xi_star if xi_star.is_rational else self.certify_rational(cone, xi_star.components)
        if exact is not None:
            quotient = self.quotient_fan(cone, exact)
            label = REGULARITY_REGULAR if quotient.smooth else REGULARITY_QUASI_REGULAR
            return RegularityReport(
                label=label,
                reason="유리수 xi*, 몫 fan 이 매끄러움" if quotient.smooth else "유리수 xi*, 몫 fan 이 orbifold",
                family=family.tag if family else None,
                rational_approximation=tuple(exact.exact),
                quotient=quotient,
            )

        approximation = tuple(
            Fraction(float(x) / cone.dim).limit_denominator(settings.SOLVER_CERTIFY_DENOMINATOR)
            for x in xi_star.components
        )
        return RegularityReport(
            label=REGULARITY_UNDETERMINED,
            reason="부동소수 xi* 로는 무리수성을 판정할 수 없습니다",
            family=family.tag if family else None,
            rational_approximation=approximation,
        )


reeb_service = ReebService()
