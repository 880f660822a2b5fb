import os
import sys
from fractions import Fraction
from random import Random

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from app.core.exceptions import NonConvergence, NotGood, RequiresRationalReeb, ValidationError
from app.schemas.common import FamilyKindEnum, RegularityEnum
from app.schemas.family import FamilySpec
from app.schemas.volume import ReebVector
from app.services.cone_service import orthant
from app.services.family_service import family_service
from app.services.reeb_service import SliceFrame, reeb_service
from app.services.zeta_service import zeta_service

from cone_corpus import YPQ_21_SPHERE_RATIO, conifold, flat_c3, good_gorenstein_cones, not_good


def _xi(*values):
    return ReebVector.from_values(list(values))


# ---------------------------------------------------------------------------
# reeb_polytope
# ---------------------------------------------------------------------------
def test_reeb_polytope_vertices_and_start():
    polytope = reeb_service.reeb_polytope(flat_c3())
    assert polytope.vertices == [(3, 0, 0), (3, 3, 0), (3, 0, 3)]
    assert polytope.interior_start == (3, 1, 1)
    assert reeb_service.reeb_polytope(conifold()).interior_start == (3, Fraction(3, 2), Fraction(3, 2))
    assert reeb_service.reeb_polytope(family_service.ypq_cone(2, 1)).interior_start == (3, Fraction(9, 4), Fraction(9, 4))


def test_slice_frame_round_trip():
    frame = SliceFrame(orthant(3))
    xi = frame.xi_of(frame.t_of([1, 1, 1]))
    assert np.allclose(xi, [1, 1, 1])
    assert frame.on_slice([1, 1, 1])
    assert not frame.on_slice([1, 1, 2])


# ---------------------------------------------------------------------------
# minimize_volume
# ---------------------------------------------------------------------------
def test_flat_c3_minimum_is_round():
    result = reeb_service.minimize_volume(flat_c3())
    assert result.certified_exact is True
    assert result.xi_star.exact == (3, 1, 1)
    assert result.vol_report.sphere_ratio_exact == 1


def test_orthant_minimum():
    result = reeb_service.minimize_volume(orthant(3))
    assert result.xi_star.exact == (1, 1, 1)
    assert result.vol_report.sphere_ratio_exact == 1


def test_conifold_minimum():
    result = reeb_service.minimize_volume(conifold())
    assert result.certified_exact is True
    assert result.xi_star.exact == (3, Fraction(3, 2), Fraction(3, 2))
    assert result.vol_report.sphere_ratio_exact == Fraction(16, 27)


def test_ypq21_minimum_is_irrational():
    result = reeb_service.minimize_volume(family_service.ypq_cone(2, 1))
    assert result.certified_exact is False
    assert result.grad_norm < 1e-10
    assert result.vol_report.sphere_ratio == pytest.approx(YPQ_21_SPHERE_RATIO, abs=1e-8)
    # y <-> z 대칭
    _, y, z = result.xi_star.components
    assert y == pytest.approx(z, abs=1e-7)


def test_history_monotone_and_convex():
    result = reeb_service.minimize_volume(family_service.ypq_cone(3, 1))
    vols = [step.vol_delta for step in result.history]
    assert all(b <= a * (1 + 1e-14) for a, b in zip(vols, vols[1:]))
    assert all(step.hessian_min_eig > 0 for step in result.history)
    assert result.hessian_min_eig > 0


def test_unique_minimum_from_random_starts():
    cone = family_service.ypq_cone(3, 2)
    vertices = np.asarray(reeb_service.reeb_polytope(cone).vertices, dtype=float)
    reference = np.asarray(reeb_service.minimize_volume(cone, tol=1e-14).xi_star.components)
    rng = Random(41)
    for _ in range(10):
        weights = np.asarray([rng.uniform(0.05, 1.0) for _ in range(len(vertices))])
        start = (weights / weights.sum()) @ vertices
        result = reeb_service.minimize_volume(cone, tol=1e-14, start=start.tolist())
        assert np.allclose(result.xi_star.components, reference, atol=1e-8)


def test_start_off_slice_rejected():
    with pytest.raises(ValidationError):
        reeb_service.minimize_volume(conifold(), start=[4, 1, 1])


def test_not_good_rejected():
    with pytest.raises(NotGood) as exc:
        reeb_service.minimize_volume(not_good())
    assert exc.value.witness == [0, 1]


def test_non_convergence_reports_last_iterate():
    with pytest.raises(NonConvergence) as exc:
        reeb_service.minimize_volume(family_service.ypq_cone(2, 1), max_iter=1)
    assert exc.value.last_iterate is not None
    assert len(exc.value.last_iterate) == 3


def test_lichnerowicz_bound_at_minimum():
    for name, cone in good_gorenstein_cones().items():
        xi_star = reeb_service.minimize_volume(cone).xi_star
        assert zeta_service.lichnerowicz_scan(cone, xi_star).min_charge >= 1 - 1e-9, name


# ---------------------------------------------------------------------------
# certify_rational
# ---------------------------------------------------------------------------
def test_certify_rational():
    cone = conifold()
    exact = reeb_service.certify_rational(cone, [3.0, 1.5000000000001, 1.4999999999999])
    assert exact is not None and exact.exact == (3, Fraction(3, 2), Fraction(3, 2))
    # 임계점이 아니면 인증하지 않는다
    assert reeb_service.certify_rational(cone, [3.0, 1.0, 2.0]) is None


# ---------------------------------------------------------------------------
# futaki_test
# ---------------------------------------------------------------------------
def test_futaki_vanishes_at_minimum():
    for name, cone in good_gorenstein_cones().items():
        result = reeb_service.minimize_volume(cone, tol=1e-14)
        report = reeb_service.futaki_test(cone, result.xi_star)
        assert report.obstruction_norm < 1e-8, name
        assert report.obstructed is False, name


def test_futaki_ypq21_symmetric_point_obstructed():
    report = reeb_service.futaki_test(family_service.ypq_cone(2, 1), _xi(3, 3, 3))
    assert report.obstructed is True
    assert report.relative_norm > 1e-3
    assert report.relative_norm == pytest.approx(2 ** 0.5 / 12, rel=1e-12)


def test_futaki_conifold_sign_flip():
    cone = conifold()
    g1 = np.asarray(reeb_service.futaki_test(cone, _xi(3, 1, 2)).obstruction_vector)
    g2 = np.asarray(reeb_service.futaki_test(cone, _xi(3, 2, 1)).obstruction_vector)
    assert np.linalg.norm(g1) > 0
    assert np.allclose(g1, -g2)


def test_futaki_requires_slice():
    with pytest.raises(ValidationError):
        reeb_service.futaki_test(conifold(), _xi(4, 1, 1))


# ---------------------------------------------------------------------------
# quotient_fan / classify_regularity
# ---------------------------------------------------------------------------
def test_quotient_fan_ypq21():
    quotient = reeb_service.quotient_fan(family_service.ypq_cone(2, 1), _xi(3, 3, 3))
    assert quotient.direction == (1, 1, 1)
    assert quotient.projected_rays == [(-1, -1), (0, -1), (1, 1), (-1, 0)]
    assert quotient.smooth is True
    assert all(c.index == 1 for c in quotient.cones)


def test_quotient_fan_requires_rational():
    with pytest.raises(RequiresRationalReeb):
        reeb_service.quotient_fan(conifold(), _xi(3.0, 1.4, 1.6))


@pytest.mark.parametrize(
    "p, q, label",
    [
        (7, 3, RegularityEnum.QUASI_REGULAR),
        (2, 1, RegularityEnum.IRREGULAR),
        (5, 4, RegularityEnum.IRREGULAR),
        (13, 8, RegularityEnum.QUASI_REGULAR),
    ],
)
def test_ypq_regularity_labels(p, q, label):
    spec = FamilySpec(kind=FamilyKindEnum.YPQ, p=p, q=q)
    report = reeb_service.classify_regularity(family_service.ypq_cone(p, q), _xi(3, 1, 1), family=spec)
    assert report.label == label
    assert report.discriminant == 4 * p * p - 3 * q * q


def test_ypq_tag_must_match_cone():
    spec = FamilySpec(kind=FamilyKindEnum.YPQ, p=7, q=3)
    with pytest.raises(ValidationError):
        reeb_service.classify_regularity(conifold(), _xi(3, Fraction(3, 2), Fraction(3, 2)), family=spec)


def test_ypq_tag_parameters_validated():
    spec = FamilySpec(kind=FamilyKindEnum.YPQ, p=2, q=2)
    with pytest.raises(ValidationError):
        reeb_service.classify_regularity(family_service.ypq_cone(2, 1), _xi(3, 3, 3), family=spec)


def test_orbifold_cone_needs_explicit_opt_in():
    cone = family_service.labc_cone(1, 4, 2)
    assert cone.good is False
    with pytest.raises(NotGood):
        reeb_service.minimize_volume(cone)
    critical = reeb_service.minimize_volume(cone, orbifold=True)
    assert critical.grad_norm <= 1e-8
    assert 0 < critical.vol_report.sphere_ratio < 1


def test_regular_cones():
    for cone in (flat_c3(), conifold()):
        xi_star = reeb_service.minimize_volume(cone).xi_star
        report = reeb_service.classify_regularity(cone, xi_star)
        assert report.label == RegularityEnum.REGULAR
        assert report.quotient.smooth is True


def test_irrational_minimum_undetermined_without_family():
    cone = family_service.ypq_cone(2, 1)
    report = reeb_service.classify_regularity(cone, reeb_service.minimize_volume(cone).xi_star)
    assert report.label == RegularityEnum.UNDETERMINED
    assert report.rational_approximation is not None


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
