import os
import sys
from math import gcd

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from app.core.constants import LEDGER_ORBIFOLD_LABC, LEDGER_YPQ_CORRECTION
from app.core.exceptions import ValidationError
from app.schemas.common import FamilyKindEnum
from app.schemas.family import FamilySpec
from app.services.cone_service import cone_service
from app.services.family_service import family_service
from app.services.reeb_service import reeb_service
from app.services.report_service import report_service

from cone_corpus import YPQ_21_SPHERE_RATIO


# ---------------------------------------------------------------------------
# Y^{p,q}
# ---------------------------------------------------------------------------
def test_ypq_normals():
    assert family_service.ypq_cone(2, 1).normals == [(1, 0, 0), (1, 1, 0), (1, 2, 2), (1, 0, 1)]
    assert family_service.ypq_cone(3, 2).normals == [(1, 0, 0), (1, 1, 0), (1, 3, 3), (1, 0, 1)]


@pytest.mark.parametrize("p, q", [(2, 2), (2, 0), (1, 1), (4, 2), (3, 5)])
def test_ypq_invalid_parameters(p, q):
    with pytest.raises(ValidationError):
        family_service.ypq_cone(p, q)


def test_ypq_closed_form():
    assert family_service.ypq_volume(2, 1) == pytest.approx(YPQ_21_SPHERE_RATIO, abs=1e-12)


def test_ypq_printed_formula_goes_negative():
    assert family_service.ypq_volume_printed(3, 1) < 0
    assert family_service.ypq_volume(3, 1) > 0
    assert family_service.ypq_volume_printed(2, 1) != pytest.approx(family_service.ypq_volume(2, 1))


def test_ypq_quasiregular():
    assert family_service.ypq_is_quasiregular(7, 3) is True
    assert family_service.ypq_is_quasiregular(2, 1) is False
    assert family_service.ypq_is_quasiregular(5, 4) is False


def test_ypq_sweep_agrees_with_solver():
    rows = family_service.ypq_sweep(5)
    expected = [(p, q) for p in range(2, 6) for q in range(1, p) if gcd(p, q) == 1]
    assert [(r.p, r.q) for r in rows] == expected
    for row in rows:
        assert row.difference < 1e-8, (row.p, row.q)
        assert 0 < row.solver_sphere_ratio < 1


def test_ypq_volume_below_round_sphere():
    for p in range(2, 8):
        for q in range(1, p):
            if gcd(p, q) == 1:
                assert 0 < family_service.ypq_volume(p, q) < 1


# ---------------------------------------------------------------------------
# L^{a,b,c}
# ---------------------------------------------------------------------------
def test_labc_132_normals_and_charges():
    cone = family_service.labc_cone(1, 3, 2)
    assert cone.normals == [(1, 0, 0), (1, 0, 2), (1, 1, 0), (1, -1, 3)]
    assert cone_service.kernel_charges(cone).entries == [(1, 3, -2, -2)]
    assert cone.good is True
    assert cone.gorenstein is True


@pytest.mark.parametrize("a, b, c", [(1, 3, 2), (1, 5, 3), (2, 4, 3), (1, 7, 4), (1, 5, 2), (3, 5, 4)])
def test_labc_charge_recovery(a, b, c):
    cone = family_service.labc_cone(a, b, c)
    d = a + b - c
    charges = cone_service.kernel_charges(cone).entries
    assert len(charges) == 1
    assert charges[0] in {(a, b, -c, -d), (-a, -b, c, d)}
    assert sum(charges[0]) == 0
    assert cone.good is True


def test_labc_solver_matches_ypq():
    ypq = reeb_service.minimize_volume(family_service.ypq_cone(2, 1))
    labc = reeb_service.minimize_volume(family_service.labc_cone(1, 3, 2))
    assert labc.vol_report.sphere_ratio == pytest.approx(ypq.vol_report.sphere_ratio, abs=1e-10)


@pytest.mark.parametrize("a, b, c", [(3, 2, 1), (1, 2, 3), (0, 2, 1), (1, 1, 3)])
def test_labc_invalid_parameters(a, b, c):
    with pytest.raises(ValidationError):
        family_service.labc_cone(a, b, c)


def test_labc_orbifold_triple_accepted():
    cone = family_service.labc_cone(1, 4, 2)
    assert cone_service.kernel_charges(cone).entries == [(1, 4, -2, -3)]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------
def test_family_report_carries_ledger_warning():
    spec = FamilySpec(kind=FamilyKindEnum.YPQ, p=2, q=1)
    report = report_service.family(spec, "digest", solve=True)
    assert report.warnings[0].ledger == LEDGER_YPQ_CORRECTION
    assert report.results["regularity"]["label"] == "irregular"
    assert report.results["closed_form_sphere_ratio"] == pytest.approx(YPQ_21_SPHERE_RATIO)


def test_orbifold_report_warning():
    spec = FamilySpec(kind=FamilyKindEnum.LABC, a=1, b=4, c=2)
    report = report_service.family(spec, "digest", solve=False)
    assert report.results["derived_d"] == 3
    assert [w.ledger for w in report.warnings] == [LEDGER_ORBIFOLD_LABC]


def test_family_spec_requires_parameters():
    with pytest.raises(Exception):
        FamilySpec(kind=FamilyKindEnum.LABC, a=1, b=3)
    assert FamilySpec(kind=FamilyKindEnum.LABC, a=1, b=3, c=2).derived_d == 2
    assert FamilySpec(kind=FamilyKindEnum.YPQ, p=2, q=1).tag == "ypq(2,1)"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
