from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.trustedhost import TrustedHostMiddleware
import logging

from dotenv import load_dotenv

load_dotenv()

from .core.config import settings
from .core.exceptions import (
    ReebToolkitException,
    reeb_toolkit_exception_handler,
    validation_exception_handler,
)
from .api.middleware import LoggingMiddleware
from .api.routes import cones, families, screen

logging.basicConfig(
    level=logging.DEBUG if settings.DEBUG else logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)

logger = logging.getLogger(__name__)

app = FastAPI(
    title=settings.APP_NAME,
    version=settings.APP_VERSION,
    debug=settings.DEBUG,
    description="토릭 Sasaki-Einstein Reeb 벡터 / 체적 계산 서비스",
)

if settings.ALLOWED_HOSTS != ["*"]:
    app.add_middleware(TrustedHostMiddleware, allowed_hosts=settings.ALLOWED_HOSTS)
app.add_middleware(LoggingMiddleware)

app.add_exception_handler(ReebToolkitException, reeb_toolkit_exception_handler)
app.add_exception_handler(RequestValidationError, validation_exception_handler)

for router in (cones.router, families.router, screen.router):
    app.include_router(router, prefix=settings.API_PREFIX)


@app.get("/health")
async def health_check():
    """상태와 수치 설정 요약"""
    return {
        "status": "healthy",
        "version": settings.APP_VERSION,
        "solver_tolerance": settings.SOLVER_TOLERANCE,
        "lattice_point_cap": settings.LATTICE_POINT_CAP,
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run("app.main:app", host="0.0.0.0", port=8000, reload=settings.DEBUG)
