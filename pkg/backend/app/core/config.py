from typing import List
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field, field_validator


class Settings(BaseSettings):
    """
    툴킷 전체 설정을 관리하는 클래스
    환경 변수(REEB_ 접두사)를 자동으로 읽어와 검증하고 타입을 보장합니다.
    """
    model_config = SettingsConfigDict(
        env_prefix="REEB_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # 기본 애플리케이션 설정
    APP_NAME: str = "Reeb Volume Toolkit"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False

    # API 설정
    API_PREFIX: str = "/api"
    ALLOWED_HOSTS: List[str] = Field(
        default=["localhost", "127.0.0.1", "testserver"],
        description="허용된 호스트 목록"
    )

    # 볼륨 최소화 (damped Newton)
    SOLVER_TOLERANCE: float = Field(
        default=1e-10,
        description="제약 기울기 노름 수렴 기준"
    )
    SOLVER_MAX_ITER: int = Field(
        default=200,
        description="최대 Newton 반복 횟수"
    )
    SOLVER_ARMIJO: float = Field(
        default=1e-4,
        description="Armijo 충분 감소 상수"
    )
    SOLVER_BACKTRACK: float = Field(
        default=0.5,
        description="백트래킹 축소 비율"
    )
    SOLVER_MAX_CONDITION: float = Field(
        default=1e12,
        description="이 조건수를 넘으면 경사 하강으로 전환"
    )
    SOLVER_CERTIFY_DENOMINATOR: int = Field(
        default=1000,
        description="유리수 인증 시 최대 분모"
    )

    # 부동소수 경계 판정
    BOUNDARY_PAIRING_FLOOR: float = Field(
        default=1e-12,
        description="<xi,u>가 이 값보다 작으면 ReebNearBoundary"
    )

    # 격자 콘 조합 탐색 한도
    MAX_FACETS_GOODNESS: int = Field(
        default=12,
        description="goodness 면 열거 시 최대 facet 수"
    )
    MAX_FACETS_EQUIVALENCE: int = Field(
        default=10,
        description="cones_equivalent 전수 탐색 최대 facet 수"
    )

    # 스펙트럼 합 Z(t)
    LATTICE_POINT_CAP: int = Field(
        default=5_000_000,
        description="열거 가능한 최대 격자점 수"
    )
    ZETA_TARGET_POINTS: int = Field(
        default=2_000_000,
        description="가장 작은 t 에서 사용할 격자점 예산"
    )
    ZETA_LEVELS: int = Field(
        default=6,
        description="t 스케줄 단계 수"
    )
    ZETA_T0: float = Field(
        default=0.5,
        description="가장 큰 t"
    )
    ZETA_TRUNCATION_TOL: float = Field(
        default=1e-9,
        description="각 t 에서 허용되는 절단 오차"
    )

    # 장애물 판정
    FUTAKI_RELATIVE_TOL: float = Field(
        default=1e-9,
        description="vol 스케일 대비 Futaki 벡터 허용 오차"
    )
    LICHNEROWICZ_TOL: float = Field(
        default=1e-12,
        description="최소 전하 < 1 - tol 이면 장애"
    )

    # 배치 처리
    BATCH_JOBS: int = Field(
        default=1,
        description="배치 병렬 작업 수"
    )

    @field_validator(
        "SOLVER_TOLERANCE", "SOLVER_ARMIJO", "SOLVER_BACKTRACK",
        "SOLVER_MAX_CONDITION", "BOUNDARY_PAIRING_FLOOR", "ZETA_T0",
        "ZETA_TRUNCATION_TOL", "FUTAKI_RELATIVE_TOL", "LICHNEROWICZ_TOL",
    )
    @classmethod
    def validate_positive_float(cls, v):
        if v <= 0:
            raise ValueError("허용 오차와 상수는 0보다 커야 합니다")
        return v

    @field_validator(
        "SOLVER_MAX_ITER", "SOLVER_CERTIFY_DENOMINATOR", "MAX_FACETS_GOODNESS",
        "MAX_FACETS_EQUIVALENCE", "LATTICE_POINT_CAP", "ZETA_TARGET_POINTS",
        "BATCH_JOBS",
    )
    @classmethod
    def validate_positive_int(cls, v):
        if v < 1:
            raise ValueError("한도 값은 1 이상이어야 합니다")
        return v

    @field_validator("ZETA_LEVELS")
    @classmethod
    def validate_levels(cls, v):
        if v < 3:
            raise ValueError("ZETA_LEVELS는 최소 3 이상이어야 합니다")
        return v

    @field_validator("ALLOWED_HOSTS", mode="before")
    @classmethod
    def parse_allowed_hosts(cls, v):
        if isinstance(v, str):
            return [host.strip() for host in v.split(",")]
        return v


settings = Settings()
