import os
import sys
import math
from fractions import Fraction
from random import Random

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from app.core.exceptions import ReebNearBoundary, ReebOutsideCone, ValidationError
from app.schemas.volume import ReebVector
from app.services.cone_service import orthant
from app.services.family_service import family_service
from app.services.reeb_service import SliceFrame, reeb_service
from app.services.volume_service import sphere_volume, volume_service

from cone_corpus import (
    all_cones,
    conifold,
    flat_c3,
    good_gorenstein_cones,
    random_float_xi,
    random_rational_xi,
)


def _xi(*values):
    return ReebVector.from_values(list(values))


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------
def test_simplicial_cone_is_one_piece():
    dec = volume_service.decompose(flat_c3())
    assert len(dec.pieces) == 1
    assert dec.pieces[0].determinant == 1


def test_ypq21_pieces():
    dec = volume_service.decompose(family_service.ypq_cone(2, 1))
    assert dec.anchor == (0, 0, 1)
    assert [p.determinant for p in dec.pieces] == [2, 6]
    assert len(volume_service.decompose(conifold()).pieces) == 2


def test_decompose_rejects_foreign_anchor():
    with pytest.raises(ValidationError):
        volume_service.decompose(conifold(), anchor=(1, 1, 1))


def test_volume_independent_of_anchor():
    rng = Random(11)
    for name, cone in all_cones().items():
        xi = random_rational_xi(cone, rng)
        values = {volume_service.volume_delta_exact(volume_service.decompose(cone, anchor=u), xi) for u in cone.rays}
        assert len(values) == 1, name


# ---------------------------------------------------------------------------
# volume_delta / volume_link
# ---------------------------------------------------------------------------
def test_orthant_volume():
    dec = volume_service.decompose(orthant(3))
    assert volume_service.volume_delta_exact(dec, _xi(1, 1, 1)) == Fraction(1, 48)


def test_flat_c3_is_round_sphere():
    dec = volume_service.decompose(flat_c3())
    xi = _xi(3, 1, 1)
    assert volume_service.volume_delta_exact(dec, xi) == Fraction(1, 48)
    vol_link, ratio = volume_service.volume_link(dec, xi)
    assert ratio == pytest.approx(1.0, abs=1e-15)
    assert vol_link == pytest.approx(math.pi ** 3, rel=1e-14)
    assert sphere_volume(3) == pytest.approx(math.pi ** 3, rel=1e-15)


def test_conifold_sphere_ratio():
    report = volume_service.volume_report(volume_service.decompose(conifold()), _xi(3, Fraction(3, 2), Fraction(3, 2)))
    assert report.sphere_ratio_exact == Fraction(16, 27)
    assert report.vol_link == pytest.approx(16 * math.pi ** 3 / 27, rel=1e-14)


def test_ypq21_symmetric_point():
    dec = volume_service.decompose(family_service.ypq_cone(2, 1))
    assert 48 * volume_service.volume_delta_exact(dec, _xi(3, 3, 3)) == Fraction(8, 27)


def test_scaling_covariance():
    rng = Random(3)
    for name, cone in all_cones().items():
        dec = volume_service.decompose(cone)
        xi = random_rational_xi(cone, rng)
        doubled = ReebVector.from_values([2 * x for x in xi.exact])
        assert volume_service.volume_delta_exact(dec, doubled) == volume_service.volume_delta_exact(dec, xi) / 2 ** cone.dim, name


def test_exact_and_float_paths_agree():
    rng = Random(5)
    for name, cone in all_cones().items():
        dec = volume_service.decompose(cone)
        xi = random_rational_xi(cone, rng)
        as_float = ReebVector.from_values([float(x) for x in xi.exact])
        exact = float(volume_service.volume_delta_exact(dec, xi))
        assert volume_service.volume_delta(dec, as_float) == pytest.approx(exact, rel=1e-12), name


def test_outside_cone():
    dec = volume_service.decompose(orthant(3))
    with pytest.raises(ReebOutsideCone):
        volume_service.volume_delta(dec, _xi(-1, 1, 1))
    with pytest.raises(ReebOutsideCone):
        volume_service.volume_delta(dec, _xi(0, 1, 1))


def test_near_boundary_float():
    dec = volume_service.decompose(orthant(3))
    with pytest.raises(ReebNearBoundary):
        volume_service.volume_delta(dec, _xi(1e-13, 1.0, 1.0))


def test_dimension_mismatch():
    with pytest.raises(ValidationError):
        volume_service.volume_delta(volume_service.decompose(orthant(3)), _xi(1, 1))


def test_volume_diverges_toward_boundary():
    cone = family_service.ypq_cone(3, 2)
    dec = volume_service.decompose(cone)
    xi0 = reeb_service.reeb_polytope(cone).interior_start
    edge = [3 * x for x in cone.normals[0]]
    volumes = []
    for k in range(1, 7):
        s = 1 - Fraction(1, 10 ** k)
        xi = ReebVector.from_values([(1 - s) * a + s * b for a, b in zip(xi0, edge)])
        volumes.append(volume_service.volume_delta_exact(dec, xi))
    assert all(b > a for a, b in zip(volumes, volumes[1:]))
    assert volumes[-1] > 1000 * volumes[0]


# ---------------------------------------------------------------------------
# gradient / hessian
# ---------------------------------------------------------------------------
def test_orthant_gradient():
    dec = volume_service.decompose(orthant(3))
    assert volume_service.volume_gradient_exact(dec, _xi(1, 1, 1)) == [Fraction(-1, 48)] * 3


def test_euler_identity_exact():
    rng = Random(17)
    for name, cone in all_cones().items():
        dec = volume_service.decompose(cone)
        xi = random_rational_xi(cone, rng)
        grad = volume_service.volume_gradient_exact(dec, xi)
        lhs = sum(x * g for x, g in zip(xi.exact, grad))
        assert lhs == -cone.dim * volume_service.volume_delta_exact(dec, xi), name


def test_gradient_matches_finite_differences():
    rng = Random(23)
    h = 1e-6
    for name, cone in all_cones().items():
        dec = volume_service.decompose(cone)
        xi = random_float_xi(cone, rng)
        x = np.asarray(xi.components)
        fd = np.zeros(cone.dim)
        for k in range(cone.dim):
            e = np.zeros(cone.dim)
            e[k] = h * max(1.0, abs(x[k]))
            plus = volume_service.volume_delta(dec, ReebVector.from_values((x + e).tolist()))
            minus = volume_service.volume_delta(dec, ReebVector.from_values((x - e).tolist()))
            fd[k] = (plus - minus) / (2 * e[k])
        grad = volume_service.volume_gradient(dec, xi)
        assert np.linalg.norm(fd - grad) <= 1e-6 * np.linalg.norm(grad), name


def test_hessian_matches_finite_differences():
    rng = Random(29)
    h = 1e-6
    for name, cone in all_cones().items():
        dec = volume_service.decompose(cone)
        xi = random_float_xi(cone, rng)
        x = np.asarray(xi.components)
        fd = np.zeros((cone.dim, cone.dim))
        for k in range(cone.dim):
            e = np.zeros(cone.dim)
            e[k] = h * max(1.0, abs(x[k]))
            plus = volume_service.volume_gradient(dec, ReebVector.from_values((x + e).tolist()))
            minus = volume_service.volume_gradient(dec, ReebVector.from_values((x - e).tolist()))
            fd[:, k] = (plus - minus) / (2 * e[k])
        hess = volume_service.volume_hessian(dec, xi)
        assert np.allclose(hess, hess.T)
        assert np.linalg.norm(fd - hess) <= 1e-5 * np.linalg.norm(hess), name


def test_restricted_hessian_positive_definite():
    for name, cone in good_gorenstein_cones().items():
        dec = volume_service.decompose(cone)
        xi = ReebVector.from_values(list(reeb_service.reeb_polytope(cone).interior_start))
        frame = SliceFrame(cone)
        restricted = frame.restrict_hessian(volume_service.volume_hessian(dec, xi))
        assert np.linalg.eigvalsh(restricted).min() > 0, name


# ---------------------------------------------------------------------------
# localization_sum
# ---------------------------------------------------------------------------
def test_localization_matches_volume_exactly():
    rng = Random(31)
    for name, cone in all_cones().items():
        dec = volume_service.decompose(cone)
        for _ in range(3):
            xi = random_rational_xi(cone, rng)
            normalizer = 2 ** cone.dim * math.factorial(cone.dim)
            assert volume_service.localization_sum(dec, xi) == normalizer * volume_service.volume_delta_exact(dec, xi), name


def test_localization_float_path():
    rng = Random(37)
    cone = family_service.ypq_cone(3, 1)
    dec = volume_service.decompose(cone)
    xi = random_float_xi(cone, rng)
    assert volume_service.localization_sum(dec, xi) == pytest.approx(48 * volume_service.volume_delta(dec, xi), rel=1e-12)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
