from fastapi import APIRouter
import logging

from ...schemas.report import Report
from ...schemas.requests import BatchScreenRequest, ScreenRequest
from ...services.report_service import input_digest, report_service

router = APIRouter(prefix="/screen", tags=["screen"])
logger = logging.getLogger(__name__)


@router.post("", response_model=Report)
async def screen(request: ScreenRequest):
    """단일 (w, d) 검사"""
    return report_service.screen(request.weights, request.degree, input_digest(request.model_dump_json()))


@router.post("/batch", response_model=Report)
async def screen_batch(request: BatchScreenRequest):
    """여러 (w, d) 를 병렬 검사, 결과는 입력 순서"""
    items = [(item.weights, item.degree) for item in request.items]
    return await report_service.screen_batch_async(items, input_digest(request.model_dump_json()), jobs=request.jobs)
