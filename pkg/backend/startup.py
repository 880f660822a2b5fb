#!/usr/bin/env python3
"""
Reeb toolkit HTTP 서비스 실행 스크립트 (REEB_HOST / REEB_PORT)
"""
import logging
import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from app.core.config import settings

logger = logging.getLogger("startup")

if __name__ == "__main__":
    import uvicorn

    host = os.environ.get("REEB_HOST", "0.0.0.0")
    port = int(os.environ.get("REEB_PORT", 8000))

    logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    logger.info(f"{settings.APP_NAME} {settings.APP_VERSION} 시작: {host}:{port}")

    uvicorn.run("app.main:app", host=host, port=port, log_level="debug" if settings.DEBUG else "info")
