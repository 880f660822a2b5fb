from typing import Any, List, Optional
from fastapi import Request, status
from fastapi.responses import JSONResponse
from fastapi.exceptions import RequestValidationError
import logging

from .constants import (
    EXIT_INPUT_ERROR,
    EXIT_NUMERICAL_FAILURE,
    EXIT_INTERNAL_ERROR,
)

logger = logging.getLogger(__name__)


class ReebToolkitException(Exception):
    """툴킷 기본 예외 클래스"""
    exit_code: int = EXIT_INPUT_ERROR
    http_status: int = status.HTTP_422_UNPROCESSABLE_ENTITY

    def __init__(self, message: str, code: str = None):
        self.message = message
        self.code = code or self.__class__.__name__
        super().__init__(self.message)


class ConeParseError(ReebToolkitException):
    """콘 파일 형식 오류"""
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class ValidationError(ReebToolkitException):
    """입력 값 검증 오류"""
    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(message)


class NotStrictlyConvex(ReebToolkitException):
    """법선이 R^n을 생성하지 않거나 C*가 직선을 포함하는 경우"""
    pass


class NotGorenstein(ReebToolkitException):
    """<gamma, v_a> = 1 인 정수 covector가 없는 경우"""
    pass


class NotGood(ReebToolkitException):
    """good 조건이 필요한 연산에 good이 아닌 콘이 들어온 경우"""
    def __init__(self, message: str, witness: Optional[List[int]] = None):
        self.witness = witness
        super().__init__(message)


class ReebOutsideCone(ReebToolkitException):
    """Reeb 벡터가 C의 내부에 있지 않은 경우"""
    pass


class ReebNearBoundary(ReebOutsideCone):
    """부동소수 경로에서 <xi,u>가 경계에 너무 가까운 경우"""
    exit_code = EXIT_NUMERICAL_FAILURE
    http_status = status.HTTP_409_CONFLICT


class RequiresRationalReeb(ReebToolkitException):
    """유리수 Reeb 벡터가 필요한 연산"""
    pass


class BoundaryEvaluation(ReebToolkitException):
    """퍼텐셜을 C* 경계에서 평가하려는 경우"""
    pass


class NonConvex(ReebToolkitException):
    """심플렉틱 퍼텐셜의 Hessian이 양정치가 아닌 경우"""
    exit_code = EXIT_NUMERICAL_FAILURE
    http_status = status.HTTP_409_CONFLICT

    def __init__(self, message: str, point: Any = None, min_eigenvalue: Optional[float] = None):
        self.point = point
        self.min_eigenvalue = min_eigenvalue
        super().__init__(message)


class NonConvergence(ReebToolkitException):
    """Newton 반복이 수렴하지 않은 경우"""
    exit_code = EXIT_NUMERICAL_FAILURE
    http_status = status.HTTP_409_CONFLICT

    def __init__(self, message: str, last_iterate: Any = None):
        self.last_iterate = last_iterate
        super().__init__(message)


class CapacityExceeded(ReebToolkitException):
    """격자점 수나 조합 탐색이 한도를 넘는 경우"""
    exit_code = EXIT_NUMERICAL_FAILURE
    http_status = status.HTTP_409_CONFLICT

    def __init__(self, message: str, estimate: Any = None):
        self.estimate = estimate
        super().__init__(message)


class InternalError(ReebToolkitException):
    """내부 불변식 위반"""
    exit_code = EXIT_INTERNAL_ERROR
    http_status = status.HTTP_500_INTERNAL_SERVER_ERROR


# 전역 예외 처리기
async def reeb_toolkit_exception_handler(request: Request, exc: ReebToolkitException):
    logger.error(f"Application error: {exc.message}")
    return JSONResponse(
        status_code=exc.http_status,
        content={
            "error": exc.__class__.__name__,
            "message": exc.message,
            "code": exc.code
        }
    )

async def validation_exception_handler(request: Request, exc: RequestValidationError):
    logger.warning(f"Validation error: {exc.errors()}")
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={
            "error": "ValidationError",
            "message": "입력 데이터가 올바르지 않습니다",
            "details": exc.errors()
        }
    )
