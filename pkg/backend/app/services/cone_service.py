"""Exact polyhedral cone algebra for toric moment cones.

Everything is done over the integers / rationals. C* = {y : <y, v_a> >= 0}
is described by its inward facet normals v_a; its rays u_alpha come from an
integer double-description pass.
"""
import itertools
import logging
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from ..core.config import settings
from ..core.exceptions import (
    CapacityExceeded,
    ConeParseError,
    NotGorenstein,
    NotStrictlyConvex,
    ValidationError,
)
from ..schemas.cone import (
    ChargeMatrix,
    EquivalenceResult,
    GoodnessResult,
    GorensteinBasis,
    MomentCone,
)
from ..utils.lattice_utils import (
    IntVector,
    dot,
    elementary_divisors,
    identity,
    integer_inverse,
    integer_kernel,
    is_saturated,
    is_unimodular,
    mat_vec,
    matrix_rank,
    primitive,
    rational_inverse,
    solve_rational,
    unimodular_completion,
)

logger = logging.getLogger(__name__)


class Face(NamedTuple):
    """C* 의 면: 그 면을 포함하는 facet 법선 인덱스와 면을 생성하는 ray 인덱스"""
    normal_indices: Tuple[int, ...]
    ray_indices: Tuple[int, ...]


def _unit_vectors(n: int) -> List[IntVector]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def _is_extreme(candidate: IntVector, processed: Sequence[IntVector], target_rank: int) -> bool:
    tight = [a for a in processed if dot(candidate, a) == 0]
    return len(tight) >= target_rank and matrix_rank(tight) == target_rank


class ConeService:
    """모멘트 콘 생성, 쌍대, good/Gorenstein 판정 서비스"""

    # ------------------------------------------------------------------
    # 입력
    # ------------------------------------------------------------------
    def parse_cone(self, text: str, label: Optional[str] = None) -> MomentCone:
        """콘 파일(`dim n` / `normal i1 .. in` / `#` 주석) 파싱"""
        dim: Optional[int] = None
        normals: List[Tuple[int, ...]] = []

        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            keyword, *tokens = line.split()
            try:
                values = [int(tok) for tok in tokens]
            except ValueError:
                raise ConeParseError(f"정수가 아닌 값이 있습니다: {line!r}", line=line_no)

            if keyword == "dim":
                if dim is not None:
                    raise ConeParseError("dim 이 두 번 선언되었습니다", line=line_no)
                if len(values) != 1 or values[0] < 1:
                    raise ConeParseError("dim 은 양의 정수 하나여야 합니다", line=line_no)
                dim = values[0]
            elif keyword == "normal":
                if not values:
                    raise ConeParseError("normal 에 성분이 없습니다", line=line_no)
                if dim is not None and len(values) != dim:
                    raise ConeParseError(
                        f"normal 의 길이 {len(values)} 가 dim {dim} 과 다릅니다", line=line_no
                    )
                if all(v == 0 for v in values):
                    raise ConeParseError("영벡터는 법선이 될 수 없습니다", line=line_no)
                normals.append(tuple(values))
            else:
                raise ConeParseError(f"알 수 없는 키워드: {keyword!r}", line=line_no)

        if dim is None:
            raise ConeParseError("dim 선언이 없습니다")
        if any(len(v) != dim for v in normals):
            raise ConeParseError(f"모든 normal 의 길이는 {dim} 이어야 합니다")
        return self.build_cone(normals, dim=dim, label=label)

    def build_cone(
        self,
        normals: Sequence[Sequence[int]],
        dim: Optional[int] = None,
        label: Optional[str] = None,
    ) -> MomentCone:
        """법선 목록으로 MomentCone 생성 (원시화, ray 계산, 플래그 평가)"""
        if not normals:
            raise NotStrictlyConvex("법선이 하나도 없습니다")
        n = dim if dim is not None else len(normals[0])
        if any(len(v) != n for v in normals):
            raise ValidationError(f"모든 법선의 길이는 {n} 이어야 합니다", field="normals")

        prim: List[IntVector] = []
        for v in normals:
            try:
                p = primitive(v)
            except ValueError:
                raise ValidationError("영벡터는 법선이 될 수 없습니다", field="normals")
            if p in prim:
                raise ValidationError(f"중복된 법선: {p}", field="normals")
            prim.append(p)

        rays = self.dual_generators(prim, dim=n)

        # 각 법선은 실제 facet 이어야 한다
        for idx, v in enumerate(prim):
            tight = [u for u in rays if dot(u, v) == 0]
            if matrix_rank(tight) != n - 1:
                raise ValidationError(f"법선 {idx} {v} 는 facet 을 정의하지 않습니다 (중복 부등식)", field="normals")

        cone = MomentCone(dim=n, normals=prim, rays=rays, strictly_convex=True, label=label)

        good: Optional[bool] = None
        if len(prim) <= settings.MAX_FACETS_GOODNESS:
            good = self.is_good(cone).good

        basis: Optional[GorensteinBasis] = None
        try:
            basis = self._gorenstein_basis(prim)
        except NotGorenstein:
            pass

        logger.debug(f"콘 생성: n={n}, d={len(prim)}, rays={len(rays)}, good={good}, gorenstein={basis is not None}")
        return cone.model_copy(update={
            "good": good,
            "gorenstein": basis is not None,
            "gorenstein_basis": basis,
        })

    # ------------------------------------------------------------------
    # 쌍대
    # ------------------------------------------------------------------
    def dual_generators(self, halfspaces: Sequence[Sequence[int]], dim: Optional[int] = None) -> List[IntVector]:
        """{y : <y, a> >= 0 for all a} 의 극선 (정수 double description)"""
        if not halfspaces and dim is None:
            raise NotStrictlyConvex("부등식이 없습니다")
        n = dim if dim is not None else len(halfspaces[0])

        lineality: List[IntVector] = _unit_vectors(n)
        rays: List[IntVector] = []
        processed: List[IntVector] = []

        for a in halfspaces:
            a = tuple(int(x) for x in a)
            processed.append(a)
            pivot = next((i for i, l in enumerate(lineality) if dot(l, a) != 0), None)

            if pivot is not None:
                l0 = lineality.pop(pivot)
                s = dot(l0, a)
                if s < 0:
                    l0 = tuple(-x for x in l0)
                    s = -s
                lineality = [primitive([s * x - dot(l, a) * y for x, y in zip(l, l0)]) for l in lineality]
                projected = []
                for r in rays:
                    pr = primitive([s * x - dot(r, a) * y for x, y in zip(r, l0)])
                    if pr not in projected:
                        projected.append(pr)
                rays = projected + [l0]
                continue

            pos = [r for r in rays if dot(r, a) > 0]
            zero = [r for r in rays if dot(r, a) == 0]
            neg = [r for r in rays if dot(r, a) < 0]
            target_rank = n - len(lineality) - 1

            new_rays: List[IntVector] = list(pos) + list(zero)
            for p in pos:
                ap = dot(p, a)
                for q in neg:
                    aq = dot(q, a)
                    combo = primitive([ap * y - aq * x for x, y in zip(p, q)])
                    if combo in new_rays:
                        continue
                    if _is_extreme(combo, processed, target_rank):
                        new_rays.append(combo)
            rays = new_rays

        if lineality:
            raise NotStrictlyConvex(f"콘이 직선을 포함합니다 (lineality 차원 {len(lineality)})")
        if matrix_rank(rays) < n:
            raise NotStrictlyConvex("콘이 R^n 을 채우지 않습니다 (쌍대 콘이 직선을 포함)")
        return sorted(rays)

    def dual_cone(self, cone: MomentCone) -> List[IntVector]:
        """C* 의 생성 ray (fan 콘 C 의 쌍대)"""
        if cone.strictly_convex is False:
            raise NotStrictlyConvex("strictly convex 가 아닌 콘입니다")
        return self.dual_generators(cone.normals, dim=cone.dim)

    # ------------------------------------------------------------------
    # 면 구조
    # ------------------------------------------------------------------
    def tight_normals(self, cone: MomentCone, points: Sequence[Sequence[int]]) -> Tuple[int, ...]:
        return tuple(a for a, v in enumerate(cone.normals) if all(dot(p, v) == 0 for p in points))

    def tight_rays(self, cone: MomentCone, normal_indices: Sequence[int]) -> Tuple[int, ...]:
        return tuple(
            i for i, u in enumerate(cone.rays)
            if all(dot(u, cone.normals[a]) == 0 for a in normal_indices)
        )

    def face_lattice(self, cone: MomentCone) -> List[Face]:
        """{0} 과 C* 자신을 제외한 모든 면 (차원 오름차순, 결정적 순서)"""
        n, d = cone.dim, cone.num_facets
        seen: Dict[Tuple[int, ...], Face] = {}
        for size in range(1, n):
            for subset in itertools.combinations(range(d), size):
                ray_idx = self.tight_rays(cone, subset)
                if not ray_idx:
                    continue
                closure = self.tight_normals(cone, [cone.rays[i] for i in ray_idx])
                if closure not in seen:
                    seen[closure] = Face(normal_indices=closure, ray_indices=ray_idx)
        return sorted(
            seen.values(),
            key=lambda f: (matrix_rank([cone.rays[i] for i in f.ray_indices]), f.normal_indices),
        )

    def facets_of_face(self, cone: MomentCone, ray_indices: Sequence[int]) -> List[Tuple[int, ...]]:
        """ray 인덱스 집합으로 주어진 면의 facet 들 (ray 인덱스 집합)"""
        face_rank = matrix_rank([cone.rays[i] for i in ray_indices])
        facets: List[Tuple[int, ...]] = []
        for v in cone.normals:
            sub = tuple(i for i in ray_indices if dot(cone.rays[i], v) == 0)
            if not sub or sub in facets or len(sub) == len(ray_indices):
                continue
            if matrix_rank([cone.rays[i] for i in sub]) == face_rank - 1:
                facets.append(sub)
        return sorted(facets)

    # ------------------------------------------------------------------
    # 판정
    # ------------------------------------------------------------------
    def is_good(self, cone: MomentCone) -> GoodnessResult:
        """모든 proper face 에서 법선 부분격자가 포화인지 검사"""
        if cone.strictly_convex is False:
            raise NotStrictlyConvex("strictly convex 가 아닌 콘입니다")
        if cone.num_facets > settings.MAX_FACETS_GOODNESS:
            raise CapacityExceeded(
                f"facet 수 {cone.num_facets} 가 한도 {settings.MAX_FACETS_GOODNESS} 를 넘습니다",
                estimate=cone.num_facets,
            )
        for face in self.face_lattice(cone):
            generators = [cone.normals[a] for a in face.normal_indices]
            if not is_saturated(generators):
                divisors = elementary_divisors(generators)
                logger.info(f"good 조건 위반: face {list(face.normal_indices)}, 불변인자 {divisors}")
                return GoodnessResult(good=False, witness=list(face.normal_indices), elementary_divisors=divisors)
        return GoodnessResult(good=True)

    def _gorenstein_basis(self, normals: Sequence[IntVector]) -> GorensteinBasis:
        gamma = solve_rational(normals, [1] * len(normals))
        if gamma is None:
            raise NotGorenstein("<gamma, v_a> = 1 을 만족하는 covector 가 없습니다")
        if any(g.denominator != 1 for g in gamma):
            raise NotGorenstein(f"gamma = {[str(g) for g in gamma]} 가 정수가 아닙니다")
        gamma_int = tuple(int(g) for g in gamma)
        M = integer_inverse(unimodular_completion(gamma_int))
        w = [mat_vec(M, v)[1:] for v in normals]
        return GorensteinBasis(matrix=M, gamma=gamma_int, w=w)

    def gorenstein_normalize(self, cone: MomentCone) -> GorensteinBasis:
        """M·v_a = (1, w_a) 인 유니모듈러 M 과 w_a"""
        if cone.strictly_convex is False:
            raise NotStrictlyConvex("strictly convex 가 아닌 콘입니다")
        if cone.gorenstein_basis is not None:
            return cone.gorenstein_basis
        return self._gorenstein_basis(cone.normals)

    def gorenstein_cone(self, cone: MomentCone) -> MomentCone:
        """Gorenstein 기저로 옮긴 콘 (첫 성분이 모두 1)"""
        basis = self.gorenstein_normalize(cone)
        return self.transform_cone(cone, basis.matrix)

    def kernel_charges(self, cone: MomentCone) -> ChargeMatrix:
        """sum_a Q_I^a v_a = 0 의 원시 정수 기저 (d - n 행)"""
        rows = integer_kernel(cone.normals)
        expected = cone.num_facets - cone.dim
        if len(rows) != expected:
            raise NotStrictlyConvex(f"전하 행렬의 rank {len(rows)} 가 d - n = {expected} 와 다릅니다")
        return ChargeMatrix(entries=rows)

    # ------------------------------------------------------------------
    # 기저 변환 / 동치
    # ------------------------------------------------------------------
    def transform_cone(self, cone: MomentCone, matrix: Sequence[Sequence[int]]) -> MomentCone:
        """fan 에 v -> M·v 적용 (M 은 유니모듈러)"""
        if len(matrix) != cone.dim or not is_unimodular(matrix):
            raise ValidationError("기저 변환 행렬이 유니모듈러가 아닙니다", field="matrix")
        normals = [mat_vec(matrix, v) for v in cone.normals]
        return self.build_cone(normals, dim=cone.dim, label=cone.label)

    def cones_equivalent(self, c1: MomentCone, c2: MomentCone) -> EquivalenceResult:
        """M·{c1 의 fan ray} = {c2 의 fan ray} 인 M ∈ GL(n,Z) 탐색"""
        if c1.dim != c2.dim or c1.num_facets != c2.num_facets:
            return EquivalenceResult(equivalent=False)
        d = c1.num_facets
        if d > settings.MAX_FACETS_EQUIVALENCE:
            raise CapacityExceeded(
                f"facet 수 {d} 가 동치 탐색 한도 {settings.MAX_FACETS_EQUIVALENCE} 를 넘습니다",
                estimate=d,
            )

        n = c1.dim
        basis_idx: List[int] = []
        for a in range(d):
            trial = basis_idx + [a]
            if matrix_rank([c1.normals[i] for i in trial]) == len(trial):
                basis_idx = trial
            if len(basis_idx) == n:
                break

        # V1 의 열 = c1 의 독립 법선
        V1_inv = rational_inverse([[c1.normals[i][r] for i in basis_idx] for r in range(n)])
        target_index = {v: b for b, v in enumerate(c2.normals)}

        for targets in itertools.permutations(range(d), n):
            V2 = [[c2.normals[j][r] for j in targets] for r in range(n)]
            M = [
                [sum(Fraction(V2[r][k]) * V1_inv[k][c] for k in range(n)) for c in range(n)]
                for r in range(n)
            ]
            if any(x.denominator != 1 for row in M for x in row):
                continue
            M_int = [[int(x) for x in row] for row in M]
            if not is_unimodular(M_int):
                continue
            permutation = []
            for v in c1.normals:
                image = mat_vec(M_int, v)
                if image not in target_index:
                    break
                permutation.append(target_index[image])
            else:
                if len(set(permutation)) == d:
                    logger.info(f"동치 발견: permutation={permutation}")
                    return EquivalenceResult(equivalent=True, matrix=M_int, permutation=permutation)
        return EquivalenceResult(equivalent=False)


cone_service = ConeService()


def orthant(n: int) -> MomentCone:
    """표준 orthant (C^n)"""
    return cone_service.build_cone([tuple(row) for row in identity(n)], dim=n, label=f"orthant({n})")
