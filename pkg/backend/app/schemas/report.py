from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from ..core.constants import REPORT_PRECISION


class ReportWarning(BaseModel):
    message: str
    ledger: str = Field(..., description="DESIGN.md 항목 참조")


class Report(BaseModel):
    """CLI / API 공통 보고서"""
    command: str
    input_digest: str
    results: Dict[str, Any] = Field(default_factory=dict)
    warnings: List[ReportWarning] = Field(default_factory=list)
    precision: str = REPORT_PRECISION
    exit_code: int = 0
    timing_seconds: Optional[float] = None
