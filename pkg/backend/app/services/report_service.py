"""Command-level orchestration shared by the CLI and the HTTP routes.

Each method returns a ``Report`` whose ``results`` hold JSON-ready values
(pydantic ``model_dump(mode="json")``) and whose warnings point at ledger
entries.
"""
import hashlib
import json
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.constants import (
    EXIT_OBSTRUCTED,
    EXIT_OK,
    LEDGER_ORBIFOLD_LABC,
    LEDGER_YPQ_CORRECTION,
    LEDGER_ZETA_SCHEDULE,
    PROBE_DEPTH_DECADES,
)
from ..core.exceptions import ReebToolkitException, ValidationError
from ..schemas.cone import MomentCone
from ..schemas.family import FamilySpec
from ..schemas.common import FamilyKindEnum
from ..schemas.potential import LinearFunction
from ..schemas.report import Report, ReportWarning
from ..schemas.volume import ReebVector
from ..utils.validators import labc_coprimality
from ..workers.batch_worker import BatchWorker
from .cone_service import cone_service
from .family_service import family_service
from .potential_service import potential_service
from .reeb_service import reeb_service
from .screen_service import screen_service
from .volume_service import volume_service
from .zeta_service import zeta_service

logger = logging.getLogger(__name__)


def input_digest(*parts: str) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part.encode("utf-8"))
        h.update(b"\0")
    return h.hexdigest()


def _cone_summary(cone: MomentCone) -> Dict[str, Any]:
    return cone.model_dump(mode="json")


def _ypq_warning(p: int, q: int) -> ReportWarning:
    printed = family_service.ypq_volume_printed(p, q)
    corrected = family_service.ypq_volume(p, q)
    return ReportWarning(
        message=(
            f"Y^{{{p},{q}}} 체적: 분모의 근호에 p 를 곱한 식을 사용합니다 "
            f"(보정값 {corrected!r}, 인쇄된 식 {printed!r})"
        ),
        ledger=LEDGER_YPQ_CORRECTION,
    )


class ReportService:
    """명령별 보고서 생성"""

    def check(self, cone: MomentCone, digest: str) -> Report:
        results: Dict[str, Any] = {"cone": _cone_summary(cone)}
        results["goodness"] = cone_service.is_good(cone).model_dump(mode="json")
        results["charges"] = cone_service.kernel_charges(cone).model_dump(mode="json")
        return Report(command="check", input_digest=digest, results=results)

    def solve(
        self,
        cone: MomentCone,
        digest: str,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None,
        family: Optional[FamilySpec] = None,
    ) -> Report:
        warnings: List[ReportWarning] = []
        critical = reeb_service.minimize_volume(cone, tol=tol, max_iter=max_iter)
        regularity = reeb_service.classify_regularity(cone, critical.xi_star, family=family)
        scan = zeta_service.lichnerowicz_scan(cone, critical.xi_star)
        ratio = critical.vol_report.sphere_ratio

        results: Dict[str, Any] = {
            "cone": _cone_summary(cone),
            "critical_point": critical.model_dump(mode="json"),
            "regularity": regularity.model_dump(mode="json"),
            "lichnerowicz": scan.model_dump(mode="json"),
            "bishop": {"sphere_ratio": ratio, "within_bound": ratio <= 1.0 + 1e-12},
        }
        if family is not None and family.kind == FamilyKindEnum.YPQ:
            results["closed_form_sphere_ratio"] = family_service.ypq_volume(family.p, family.q)
            warnings.append(_ypq_warning(family.p, family.q))
        return Report(command="solve", input_digest=digest, results=results, warnings=warnings)

    def zeta(self, cone: MomentCone, xi: ReebVector, digest: str, levels: Optional[int] = None, t0: Optional[float] = None) -> Report:
        estimate = zeta_service.zeta_limit(cone, xi, levels=levels, t0=t0)
        warnings = [ReportWarning(
            message=(
                f"t 일정은 격자점 예산에 맞춰 [{estimate.samples[-1].t:.6g}, {estimate.samples[0].t:.6g}] "
                f"구간의 {len(estimate.samples)} 개 기하 수열로 정해졌습니다"
            ),
            ledger=LEDGER_ZETA_SCHEDULE,
        )]
        return Report(
            command="zeta",
            input_digest=digest,
            results={"zeta": estimate.model_dump(mode="json")},
            warnings=warnings,
        )

    def futaki(self, cone: MomentCone, xi: ReebVector, digest: str) -> Report:
        report = reeb_service.futaki_test(cone, xi)
        results: Dict[str, Any] = {"futaki": report.model_dump(mode="json")}
        if xi.is_rational:
            results["quotient"] = reeb_service.quotient_fan(cone, xi).model_dump(mode="json")
        return Report(
            command="futaki",
            input_digest=digest,
            results=results,
            exit_code=EXIT_OBSTRUCTED if report.obstructed else EXIT_OK,
        )

    def family(self, spec: FamilySpec, digest: str, solve: bool = True) -> Report:
        cone = family_service.build(spec)
        warnings: List[ReportWarning] = []
        results: Dict[str, Any] = {"family": spec.model_dump(mode="json"), "cone": _cone_summary(cone)}
        if spec.kind == FamilyKindEnum.YPQ:
            results["closed_form_sphere_ratio"] = family_service.ypq_volume(spec.p, spec.q)
            results["quasi_regular"] = family_service.ypq_is_quasiregular(spec.p, spec.q)
            warnings.append(_ypq_warning(spec.p, spec.q))
        else:
            results["derived_d"] = spec.derived_d
            coprime, reason = labc_coprimality(spec.a, spec.b, spec.c)
            if not coprime:
                warnings.append(ReportWarning(message=f"orbifold 삼중쌍: {reason}", ledger=LEDGER_ORBIFOLD_LABC))
        if solve:
            critical = reeb_service.minimize_volume(cone, orbifold=cone.good is False)
            results["critical_point"] = critical.model_dump(mode="json")
            results["regularity"] = reeb_service.classify_regularity(cone, critical.xi_star, family=spec).model_dump(mode="json")
        return Report(command=f"family {spec.kind.value}", input_digest=digest, results=results, warnings=warnings)

    def ypq_sweep(self, p_max: int, digest: str) -> Report:
        rows = family_service.ypq_sweep(p_max)
        warnings = [ReportWarning(
            message="닫힌 형식은 분모의 근호에 p 를 곱한 식이며, printed_formula 열은 인쇄된 식 그대로입니다",
            ledger=LEDGER_YPQ_CORRECTION,
        )]
        return Report(
            command="family ypq-sweep",
            input_digest=digest,
            results={"rows": [row.model_dump(mode="json") for row in rows]},
            warnings=warnings,
        )

    def screen(self, weights: Sequence[int], degree: int, digest: str) -> Report:
        report = screen_service.screen(weights, degree)
        results: Dict[str, Any] = {"screen": report.model_dump(mode="json")}
        if report.fano:
            results["zeta_ratio"] = str(screen_service.hypersurface_zeta_ratio(weights, degree))
        return Report(
            command="screen",
            input_digest=digest,
            results=results,
            exit_code=EXIT_OBSTRUCTED if report.verdict == "obstructed" else EXIT_OK,
        )

    def screen_batch(self, items: Sequence[Tuple[List[int], int]], digest: str, jobs: int = 1) -> Report:
        worker = BatchWorker(jobs)
        outcomes = worker.run_sync(lambda item: screen_service.screen(*item), items)
        return self._batch_report(items, outcomes, digest)

    async def screen_batch_async(self, items: Sequence[Tuple[List[int], int]], digest: str, jobs: int = 1) -> Report:
        worker = BatchWorker(jobs)
        outcomes = await worker.run(lambda item: screen_service.screen(*item), items)
        return self._batch_report(items, outcomes, digest)

    def _batch_report(self, items, outcomes, digest: str) -> Report:
        rows = []
        obstructed = False
        for (weights, degree), outcome in zip(items, outcomes):
            if isinstance(outcome, ReebToolkitException):
                rows.append({"weights": weights, "degree": degree, "error": outcome.message})
                continue
            if isinstance(outcome, Exception):
                raise outcome
            rows.append(outcome.model_dump(mode="json"))
            obstructed = obstructed or outcome.verdict == "obstructed"
        return Report(
            command="screen --batch",
            input_digest=digest,
            results={"items": rows},
            exit_code=EXIT_OBSTRUCTED if obstructed else EXIT_OK,
        )

    def equiv(self, c1: MomentCone, c2: MomentCone, digest: str) -> Report:
        result = cone_service.cones_equivalent(c1, c2)
        return Report(command="equiv", input_digest=digest, results={"equivalence": result.model_dump(mode="json")})

    def potential_probe(self, cone: MomentCone, xi: ReebVector, digest: str, samples: int = 5, linear: Optional[Sequence[float]] = None) -> Report:
        """ray 합 방향의 내부점과 facet 에 접근하는 점들에서 계량 블록 확인"""
        h = LinearFunction(linear) if linear is not None else None
        spec = potential_service.build_spec(cone, xi, h=h)
        center = [sum(u[k] for u in cone.rays) for k in range(cone.dim)]
        probes = []
        if samples < 1:
            raise ValidationError("samples 는 1 이상이어야 합니다", field="samples")
        # 첫 ray 쪽으로 접근: 그 ray 에 수직이 아닌 facet 으로 log 발산.
        # 접근 깊이는 samples 와 무관하게 10^-PROBE_DEPTH_DECADES 까지
        target = cone.rays[0]
        for k in range(samples):
            s = 1.0 - 10.0 ** (-PROBE_DEPTH_DECADES * k / max(samples - 1, 1))
            y = [(1 - s) * c + s * t for c, t in zip(center, target)]
            blocks = potential_service.metric_blocks(spec, y)
            probes.append({"y": y, "min_eigenvalue": blocks.min_eigenvalue, "log_det": blocks.log_det})
        vol = volume_service.volume_delta(volume_service.decompose(cone), xi)
        return Report(
            command="potential-probe",
            input_digest=digest,
            results={"probes": probes, "vol_delta": vol},
        )


def render_json(report: Report, include_timing: bool = True) -> str:
    data = report.model_dump(mode="json")
    if not include_timing:
        data.pop("timing_seconds", None)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def _flatten(prefix: str, value: Any, out: List[Tuple[str, str]]):
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else key, value[key], out)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, item in enumerate(value):
            _flatten(f"{prefix}[{i}]", item, out)
    else:
        out.append((prefix, json.dumps(value, ensure_ascii=False)))


def render_plain(report: Report, include_timing: bool = True) -> str:
    data = report.model_dump(mode="json")
    if not include_timing:
        data.pop("timing_seconds", None)
    rows: List[Tuple[str, str]] = []
    _flatten("", data, rows)
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


report_service = ReportService()
