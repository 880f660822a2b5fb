import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from app.core.exceptions import ValidationError
from app.schemas.common import VerdictEnum
from app.services.reeb_service import reeb_service
from app.services.report_service import report_service
from app.services.screen_service import screen_service

from cone_corpus import DATA_DIR, conifold


def test_quadric_passes():
    report = screen_service.screen([1, 1, 1, 1], 2)
    assert report.fano is True
    assert (report.bishop_lhs, report.bishop_rhs) == (16, 27)
    assert (report.lich_lhs, report.lich_rhs) == (2, 3)
    assert report.volume_ratio == Fraction(16, 27)
    assert report.mu == Fraction(3, 2)
    assert report.coordinate_charges == [Fraction(3, 2)] * 4
    assert report.verdict == VerdictEnum.PASSES
    assert report.reasons == []


def test_lichnerowicz_obstruction():
    report = screen_service.screen([2, 5, 5, 5], 10)
    assert (report.lich_lhs, report.lich_rhs) == (7, 6)
    assert report.lich_obstructed is True
    assert report.bishop_obstructed is False
    assert report.verdict == VerdictEnum.OBSTRUCTED
    assert report.reasons == ["lichnerowicz"]
    # 최소 좌표 전하 < 1
    assert min(report.coordinate_charges) == Fraction(6, 7)


def test_bishop_obstruction():
    report = screen_service.screen([21, 21, 21, 2], 42)
    assert (report.bishop_lhs, report.bishop_rhs) == (511014, 500094)
    assert report.bishop_obstructed is True
    assert "bishop" in report.reasons
    assert report.verdict == VerdictEnum.OBSTRUCTED
    assert float(report.volume_ratio) == pytest.approx(1.0218, abs=1e-4)


def test_flat_space():
    report = screen_service.screen([1, 1, 1, 1], 1)
    assert report.bishop_lhs == report.bishop_rhs == 27
    assert report.lich_lhs == report.lich_rhs == 3
    assert report.flat is True
    assert report.reasons == ["flat"]
    assert report.verdict == VerdictEnum.PASSES


def test_lichnerowicz_equality_away_from_flat_is_obstructed():
    # A_3: x^4 + y^2 + z^2 + w^2
    report = screen_service.screen([1, 2, 2, 2], 4)
    assert report.lich_lhs == report.lich_rhs == 3
    assert report.volume_ratio == Fraction(1, 2)
    assert report.flat is False
    assert report.reasons == ["lichnerowicz-saturated"]
    assert report.verdict == VerdictEnum.OBSTRUCTED


def test_flat_only_at_unit_volume_ratio():
    for weights, degree in [([1, 1, 1, 1], 1), ([1, 2, 2, 2], 4), ([1, 1, 1, 1], 2), ([1, 1, 1], 1)]:
        report = screen_service.screen(weights, degree)
        assert report.flat == (report.volume_ratio == 1), weights


def test_not_fano():
    report = screen_service.screen([1, 1, 1, 1], 4)
    assert report.fano is False
    assert report.verdict == VerdictEnum.NOT_FANO
    assert report.bishop_obstructed is False and report.lich_obstructed is False


@pytest.mark.parametrize(
    "weights, degree",
    [([2, 2, 2, 2], 2), ([1], 1), ([1, 0, 1], 1), ([1, 1, 1, 1], 0), ([1, -1, 1], 2)],
)
def test_invalid_input(weights, degree):
    with pytest.raises(ValidationError):
        screen_service.screen(weights, degree)


def test_lichnerowicz_matches_minimal_coordinate_charge():
    cases = [([1, 1, 1, 1], 2), ([2, 5, 5, 5], 10), ([21, 21, 21, 2], 42), ([1, 2, 3, 5], 6), ([3, 3, 4, 5], 12)]
    for weights, degree in cases:
        report = screen_service.screen(weights, degree)
        assert report.lich_obstructed == (min(report.coordinate_charges) < 1), weights


def test_volume_ratio_profile_in_degree():
    """d (|w| - d)^n 은 d = |w|/(n+1) 까지 증가하고 그 이후 감소"""
    for weights in ([1, 1, 1, 1], [2, 3, 5, 7], [1, 2, 3, 4, 5]):
        n = len(weights) - 1
        total = sum(weights)
        turning = Fraction(total, n + 1)
        ratios = {d: screen_service.screen(weights, d).volume_ratio for d in range(1, total)}
        for d in range(1, total - 1):
            if d + 1 <= turning:
                assert ratios[d + 1] > ratios[d], (weights, d)
            elif d >= turning:
                assert ratios[d + 1] < ratios[d], (weights, d)


@pytest.mark.parametrize(
    "weights, degree, expected",
    [
        ([1, 1, 1, 1], 2, Fraction(16, 27)),
        ([1, 1, 1, 1], 3, Fraction(1, 9)),
        ([1, 1, 1], 2, Fraction(1, 2)),
        ([1, 1, 1, 1], 1, Fraction(1)),
    ],
)
def test_zeta_ratio_matches_volume_ratio(weights, degree, expected):
    assert screen_service.hypersurface_zeta_ratio(weights, degree) == expected
    assert screen_service.screen(weights, degree).volume_ratio == expected


def test_quadric_agrees_with_conifold_solver():
    solved = reeb_service.minimize_volume(conifold()).vol_report.sphere_ratio_exact
    assert screen_service.screen([1, 1, 1, 1], 2).volume_ratio == solved


def test_from_exponents():
    assert screen_service.from_exponents([2, 2, 2, 21]) == ([21, 21, 21, 2], 42)
    assert screen_service.from_exponents([2, 2, 2, 2]) == ([1, 1, 1, 1], 2)
    with pytest.raises(ValidationError):
        screen_service.from_exponents([2])


def test_parse_batch_file():
    items = screen_service.parse_batch((DATA_DIR / "batches" / "screen_examples.txt").read_text(encoding="utf-8"))
    assert items[0] == ([1, 1, 1, 1], 2)
    assert len(items) == 6


def test_parse_batch_errors_carry_line():
    with pytest.raises(ValidationError) as exc:
        screen_service.parse_batch("1,1,1,1;2\n1,1,1,1\n")
    assert exc.value.message.startswith("line 2")


def test_batch_report_preserves_order():
    items = [([2, 5, 5, 5], 10), ([1, 1, 1, 1], 2), ([2, 2, 2, 2], 2), ([1, 1, 1, 1], 1)]
    report = report_service.screen_batch(items, "digest", jobs=3)
    rows = report.results["items"]
    assert [row["weights"] for row in rows] == [w for w, _ in items]
    assert rows[0]["verdict"] == "obstructed"
    assert "error" in rows[2]
    assert report.exit_code == 3


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
