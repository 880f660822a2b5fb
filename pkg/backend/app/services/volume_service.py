"""Closed-form Reeb polytope volume.

C* is cut into simplicial cones spanned by its own rays. For a piece with
generators u_1..u_n the truncation {<y, xi> <= 1/2} is a simplex, so

    vol[Delta(xi)] = sum_pieces |det U| / (2^n n! prod_i <xi, u_i>)

which is a rational function of xi; gradient and Hessian are taken term by
term.
"""
import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import settings
from ..core.exceptions import ReebNearBoundary, ReebOutsideCone, ValidationError
from ..schemas.cone import MomentCone
from ..schemas.volume import ReebVector, SimplicialDecomposition, SimplicialPiece, VolumeReport
from ..utils.lattice_utils import dot, integer_det, matrix_rank, primitive_rational, rational_det, rational_inverse
from .cone_service import cone_service

logger = logging.getLogger(__name__)


def sphere_volume(n: int) -> float:
    """vol(S^{2n-1}) = 2 pi^n / (n-1)!"""
    return 2.0 * math.pi ** n / math.factorial(n - 1)


def _normalizer(n: int) -> int:
    return 2 ** n * math.factorial(n)


class VolumeService:
    """단체 분할과 체적 / 미분 / 국소화 합 계산"""

    def decompose(self, cone: MomentCone, anchor: Optional[Sequence[int]] = None) -> SimplicialDecomposition:
        """C* 의 ray 만 쓰는 pulling 삼각분할"""
        if anchor is None:
            anchor_idx = 0
        else:
            anchor = tuple(int(x) for x in anchor)
            if anchor not in cone.rays:
                raise ValidationError(f"anchor {anchor} 는 C* 의 ray 가 아닙니다", field="anchor")
            anchor_idx = cone.rays.index(anchor)

        index_pieces = self._triangulate(cone, tuple(range(len(cone.rays))), anchor_idx)
        pieces = []
        for idx in sorted(set(index_pieces)):
            generators = [cone.rays[i] for i in idx]
            pieces.append(SimplicialPiece(generators=generators, determinant=abs(integer_det(generators))))
        logger.debug(f"단체 분할: anchor={cone.rays[anchor_idx]}, pieces={len(pieces)}")
        return SimplicialDecomposition(dim=cone.dim, anchor=cone.rays[anchor_idx], pieces=pieces)

    def _triangulate(self, cone: MomentCone, ray_indices: Tuple[int, ...], anchor_idx: Optional[int]) -> List[Tuple[int, ...]]:
        rank = matrix_rank([cone.rays[i] for i in ray_indices])
        if len(ray_indices) == rank:
            return [tuple(sorted(ray_indices))]
        apex = anchor_idx if anchor_idx in ray_indices else min(ray_indices)
        result = []
        for facet in cone_service.facets_of_face(cone, ray_indices):
            if apex in facet:
                continue
            for sub in self._triangulate(cone, facet, None):
                result.append(tuple(sorted(sub + (apex,))))
        return result

    # ------------------------------------------------------------------
    # pairing
    # ------------------------------------------------------------------
    def _exact_pairings(self, dec: SimplicialDecomposition, xi: ReebVector) -> List[List[Fraction]]:
        pairings = []
        for piece in dec.pieces:
            s = [dot(u, xi.exact) for u in piece.generators]
            if min(s) <= 0:
                raise ReebOutsideCone(f"xi={[str(x) for x in xi.exact]} 가 C 의 내부에 있지 않습니다 (<xi,u> = {min(s)})")
            pairings.append(s)
        return pairings

    def _float_pairings(self, dec: SimplicialDecomposition, xi: ReebVector) -> List[np.ndarray]:
        x = np.asarray(xi.components, dtype=float)
        pairings = []
        for piece in dec.pieces:
            s = np.asarray(piece.generators, dtype=float) @ x
            lowest = float(s.min())
            if lowest <= 0.0:
                raise ReebOutsideCone(f"xi={list(xi.components)} 가 C 의 내부에 있지 않습니다 (<xi,u> = {lowest})")
            if lowest < settings.BOUNDARY_PAIRING_FLOOR:
                raise ReebNearBoundary(f"xi 가 C 의 경계에 너무 가깝습니다 (<xi,u> = {lowest:.3e})")
            pairings.append(s)
        return pairings

    def _check_dim(self, dec: SimplicialDecomposition, xi: ReebVector):
        if xi.dim != dec.dim:
            raise ValidationError(f"xi 의 차원 {xi.dim} 이 콘 차원 {dec.dim} 과 다릅니다", field="xi")

    # ------------------------------------------------------------------
    # 체적
    # ------------------------------------------------------------------
    def volume_delta_exact(self, dec: SimplicialDecomposition, xi: ReebVector) -> Fraction:
        self._check_dim(dec, xi)
        total = Fraction(0)
        for piece, s in zip(dec.pieces, self._exact_pairings(dec, xi)):
            total += Fraction(piece.determinant) / math.prod(s)
        return total / _normalizer(dec.dim)

    def volume_delta(self, dec: SimplicialDecomposition, xi: ReebVector) -> float:
        """Delta(xi) = C* ∩ {<y,xi> <= 1/2} 의 유클리드 체적"""
        if xi.is_rational:
            return float(self.volume_delta_exact(dec, xi))
        self._check_dim(dec, xi)
        terms = [piece.determinant / float(np.prod(s)) for piece, s in zip(dec.pieces, self._float_pairings(dec, xi))]
        return math.fsum(terms) / _normalizer(dec.dim)

    def volume_link(self, dec: SimplicialDecomposition, xi: ReebVector) -> Tuple[float, float]:
        """(vol_link, sphere_ratio)"""
        vol = self.volume_delta(dec, xi)
        n = dec.dim
        return 2 * n * (2 * math.pi) ** n * vol, _normalizer(n) * vol

    def volume_gradient_exact(self, dec: SimplicialDecomposition, xi: ReebVector) -> List[Fraction]:
        self._check_dim(dec, xi)
        n = dec.dim
        grad = [Fraction(0)] * n
        for piece, s in zip(dec.pieces, self._exact_pairings(dec, xi)):
            f = Fraction(piece.determinant) / math.prod(s)
            for u, si in zip(piece.generators, s):
                for k in range(n):
                    grad[k] -= f * u[k] / si
        return [g / _normalizer(n) for g in grad]

    def volume_gradient(self, dec: SimplicialDecomposition, xi: ReebVector) -> np.ndarray:
        if xi.is_rational:
            return np.array([float(g) for g in self.volume_gradient_exact(dec, xi)])
        self._check_dim(dec, xi)
        grad = np.zeros(dec.dim)
        for piece, s in zip(dec.pieces, self._float_pairings(dec, xi)):
            U = np.asarray(piece.generators, dtype=float)
            f = piece.determinant / float(np.prod(s))
            grad -= f * (U / s[:, None]).sum(axis=0)
        return grad / _normalizer(dec.dim)

    def volume_hessian(self, dec: SimplicialDecomposition, xi: ReebVector) -> np.ndarray:
        self._check_dim(dec, xi)
        n = dec.dim
        if xi.is_rational:
            pairings = [np.array([float(x) for x in s]) for s in self._exact_pairings(dec, xi)]
        else:
            pairings = self._float_pairings(dec, xi)
        hess = np.zeros((n, n))
        for piece, s in zip(dec.pieces, pairings):
            U = np.asarray(piece.generators, dtype=float)
            f = piece.determinant / float(np.prod(s))
            scaled = U / s[:, None]
            w = scaled.sum(axis=0)
            hess += f * (np.outer(w, w) + scaled.T @ scaled)
        hess /= _normalizer(n)
        return 0.5 * (hess + hess.T)

    # ------------------------------------------------------------------
    # 국소화
    # ------------------------------------------------------------------
    def localization_sum(self, dec: SimplicialDecomposition, xi: ReebVector):
        """꼭짓점(단체 조각)마다 orbifold chart 가중치로 합산. 2^n n! vol 과 같다"""
        self._check_dim(dec, xi)
        exact = xi.is_rational
        if not exact:
            self._float_pairings(dec, xi)
        total = Fraction(0) if exact else []
        for piece in dec.pieces:
            weights, order = self._orbifold_chart(piece)
            if exact:
                s = [dot(w, xi.exact) for w in weights]
                if min(s) <= 0:
                    raise ReebOutsideCone("xi 가 C 의 내부에 있지 않습니다")
                total += Fraction(1, order) / math.prod(s)
            else:
                s = np.asarray([[float(c) for c in w] for w in weights]) @ np.asarray(xi.components)
                total.append(1.0 / (order * float(np.prod(s))))
        return total if exact else math.fsum(total)

    def _orbifold_chart(self, piece: SimplicialPiece) -> Tuple[List[List[Fraction]], int]:
        """조각의 원시 facet 법선에 대한 유리 쌍대 기저와 orbifold 차수 d_F"""
        inverse = rational_inverse(piece.generators)
        n = len(piece.generators)
        normals = [primitive_rational([inverse[r][j] for r in range(n)]) for j in range(n)]
        order = abs(int(rational_det(normals)))
        weights = []
        for i, u in enumerate(piece.generators):
            c = dot(u, normals[i])
            weights.append([Fraction(x, c) for x in u])
        return weights, order

    def volume_report(self, dec: SimplicialDecomposition, xi: ReebVector) -> VolumeReport:
        n = dec.dim
        vol_exact = self.volume_delta_exact(dec, xi) if xi.is_rational else None
        vol = float(vol_exact) if vol_exact is not None else self.volume_delta(dec, xi)
        grad_exact = self.volume_gradient_exact(dec, xi) if xi.is_rational else None
        grad = [float(g) for g in grad_exact] if grad_exact is not None else self.volume_gradient(dec, xi).tolist()
        return VolumeReport(
            xi=xi,
            vol_delta=vol,
            vol_link=2 * n * (2 * math.pi) ** n * vol,
            sphere_ratio=_normalizer(n) * vol,
            gradient=grad,
            hessian=self.volume_hessian(dec, xi).tolist(),
            vol_delta_exact=vol_exact,
            sphere_ratio_exact=_normalizer(n) * vol_exact if vol_exact is not None else None,
            gradient_exact=grad_exact,
        )


volume_service = VolumeService()
