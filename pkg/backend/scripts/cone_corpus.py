"""테스트 공용 콘 모음"""
import os
import sys
from fractions import Fraction
from pathlib import Path
from random import Random
from typing import Dict, List

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from app.schemas.cone import MomentCone
from app.schemas.volume import ReebVector
from app.services.cone_service import cone_service, orthant
from app.services.family_service import family_service

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

FLAT_C3_NORMALS = [(1, 0, 0), (1, 1, 0), (1, 0, 1)]
CONIFOLD_NORMALS = [(1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)]
NOT_GOOD_NORMALS = [(1, 0, 0), (1, 2, 0), (1, 1, 1)]

YPQ_21_SPHERE_RATIO = (13 * 13 ** 0.5 + 46) / 324


def flat_c3() -> MomentCone:
    return cone_service.build_cone(FLAT_C3_NORMALS, label="flat_c3")


def conifold() -> MomentCone:
    return cone_service.build_cone(CONIFOLD_NORMALS, label="conifold")


def not_good() -> MomentCone:
    return cone_service.build_cone(NOT_GOOD_NORMALS, label="not_good")


def good_gorenstein_cones() -> Dict[str, MomentCone]:
    """good + Gorenstein 인 콘 (solver 대상)"""
    return {
        "orthant": orthant(3),
        "flat_c3": flat_c3(),
        "conifold": conifold(),
        "ypq(2,1)": family_service.ypq_cone(2, 1),
        "ypq(3,1)": family_service.ypq_cone(3, 1),
        "ypq(3,2)": family_service.ypq_cone(3, 2),
        "labc(1,3,2)": family_service.labc_cone(1, 3, 2),
    }


def all_cones() -> Dict[str, MomentCone]:
    cones = good_gorenstein_cones()
    cones["not_good"] = not_good()
    cones["orthant(2)"] = orthant(2)
    cones["orthant(4)"] = orthant(4)
    return cones


def random_rational_xi(cone: MomentCone, rng: Random) -> ReebVector:
    """법선의 양의 유리 결합 (C 의 내부점)"""
    coeffs = [Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in cone.normals]
    values = [sum(c * v[k] for c, v in zip(coeffs, cone.normals)) for k in range(cone.dim)]
    return ReebVector.from_values(values)


def random_float_xi(cone: MomentCone, rng: Random) -> ReebVector:
    coeffs = [rng.uniform(0.5, 2.0) for _ in cone.normals]
    values = [float(sum(c * v[k] for c, v in zip(coeffs, cone.normals))) for k in range(cone.dim)]
    return ReebVector.from_values(values)


def random_interior_y(cone: MomentCone, rng: Random) -> List[float]:
    """ray 의 양의 결합 (C* 의 내부점)"""
    coeffs = [rng.uniform(0.2, 2.0) for _ in cone.rays]
    return [sum(c * u[k] for c, u in zip(coeffs, cone.rays)) for k in range(cone.dim)]
