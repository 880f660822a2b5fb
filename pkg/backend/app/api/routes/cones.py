from fastapi import APIRouter
import logging

from ...schemas.common import FamilyKindEnum
from ...schemas.family import FamilySpec
from ...schemas.report import Report
from ...schemas.requests import ConeRequest, SolveRequest, XiRequest, ZetaRequest
from ...schemas.volume import ReebVector
from ...services.cone_service import cone_service
from ...services.report_service import input_digest, report_service
from ...utils.validators import parse_number

router = APIRouter(prefix="/cones", tags=["cones"])
logger = logging.getLogger(__name__)


def _cone(request: ConeRequest):
    return cone_service.build_cone(request.normals, dim=request.dim, label=request.label)


def _xi(request: XiRequest) -> ReebVector:
    return ReebVector.from_values([parse_number(x, field="xi") for x in request.xi])


@router.post("/check", response_model=Report)
async def check_cone(request: ConeRequest):
    """콘 플래그, good 판정, 전하 행렬"""
    return report_service.check(_cone(request), input_digest(request.model_dump_json()))


@router.post("/solve", response_model=Report)
async def solve_cone(request: SolveRequest):
    """임계 Reeb 벡터 계산"""
    family = None
    if request.ypq is not None:
        family = FamilySpec(kind=FamilyKindEnum.YPQ, p=request.ypq[0], q=request.ypq[1])
    return report_service.solve(
        _cone(request),
        input_digest(request.model_dump_json()),
        tol=request.tol,
        max_iter=request.max_iter,
        family=family,
    )


@router.post("/futaki", response_model=Report)
async def futaki(request: XiRequest):
    return report_service.futaki(_cone(request), _xi(request), input_digest(request.model_dump_json()))


@router.post("/zeta", response_model=Report)
async def zeta(request: ZetaRequest):
    return report_service.zeta(
        _cone(request),
        _xi(request),
        input_digest(request.model_dump_json()),
        levels=request.levels,
        t0=request.t0,
    )
