from fastapi import APIRouter, Query
import logging

from ...schemas.common import FamilyKindEnum
from ...schemas.family import FamilySpec
from ...schemas.report import Report
from ...services.report_service import input_digest, report_service

router = APIRouter(prefix="/families", tags=["families"])
logger = logging.getLogger(__name__)


@router.get("/ypq", response_model=Report)
async def ypq(p: int = Query(..., ge=1), q: int = Query(..., ge=1), solve: bool = True):
    """Y^{p,q} 콘과 닫힌 형식 체적"""
    spec = FamilySpec(kind=FamilyKindEnum.YPQ, p=p, q=q)
    return report_service.family(spec, input_digest("ypq", str(p), str(q)), solve=solve)


@router.get("/labc", response_model=Report)
async def labc(a: int = Query(..., ge=1), b: int = Query(..., ge=1), c: int = Query(..., ge=1), solve: bool = True):
    spec = FamilySpec(kind=FamilyKindEnum.LABC, a=a, b=b, c=c)
    return report_service.family(spec, input_digest("labc", str(a), str(b), str(c)), solve=solve)
