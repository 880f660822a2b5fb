from fastapi import Request
from starlette.middleware.base import BaseHTTPMiddleware
import time
import logging

from ..core.config import settings

logger = logging.getLogger(__name__)


class LoggingMiddleware(BaseHTTPMiddleware):
    """요청별 계산 시간 기록. 422/409 응답은 WARNING 으로 남긴다"""

    async def dispatch(self, request: Request, call_next):
        started = time.perf_counter()
        response = await call_next(request)
        elapsed = time.perf_counter() - started

        response.headers["X-Compute-Time"] = f"{elapsed:.6f}"
        response.headers["X-Toolkit-Version"] = settings.APP_VERSION

        level = logging.WARNING if response.status_code >= 400 else logging.INFO
        logger.log(level, f"{request.method} {request.url.path} -> {response.status_code} ({elapsed:.3f}s)")
        return response
