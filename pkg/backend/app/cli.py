"""Command-line entry point.

    python -m app.cli check data/cones/conifold.txt
    python -m app.cli solve data/cones/ypq_2_1.txt --ypq 2,1
    python -m app.cli screen --weights 2,5,5,5 --degree 10
"""
import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

from .core.config import settings
from .core.constants import EXIT_INTERNAL_ERROR
from .core.exceptions import ReebToolkitException, ValidationError
from .schemas.common import FamilyKindEnum
from .schemas.family import FamilySpec
from .schemas.report import Report
from .schemas.volume import ReebVector
from .services.cone_service import cone_service
from .services.report_service import input_digest, render_json, render_plain, report_service
from .services.screen_service import screen_service
from .utils.validators import parse_int_list, parse_vector

logger = logging.getLogger(__name__)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError(f"파일을 읽을 수 없습니다: {path} ({e.strerror})", field="path")


def _load_cone(path: str):
    text = _read(path)
    return cone_service.parse_cone(text, label=Path(path).stem), text


def _xi(text: str) -> ReebVector:
    return ReebVector.from_values(parse_vector(text, field="xi"))


def _ypq_tag(text: Optional[str]) -> Optional[FamilySpec]:
    if not text:
        return None
    values = parse_int_list(text, field="ypq")
    if len(values) != 2:
        raise ValidationError(f"--ypq 는 p,q 두 정수여야 합니다: {text!r}", field="ypq")
    p, q = values
    return FamilySpec(kind=FamilyKindEnum.YPQ, p=p, q=q)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reeb", description="toric Sasaki-Einstein Reeb vector / volume toolkit")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON 보고서 (기본)")
    mode.add_argument("--plain", dest="fmt", action="store_const", const="plain", help="key/value 표 형식")
    parser.set_defaults(fmt="json")
    parser.add_argument("--quiet", action="store_true", help="stderr 요약 생략")
    parser.add_argument("--verbose", action="store_true", help="DEBUG 로그")
    parser.add_argument("--jobs", type=int, default=settings.BATCH_JOBS, help="배치 병렬 작업 수")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="콘 플래그, good 판정, 전하 행렬")
    p.add_argument("cone")

    p = sub.add_parser("solve", help="임계 Reeb 벡터와 체적")
    p.add_argument("cone")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--ypq", default=None, help="Y^{p,q} 태그 'p,q' (정확한 정칙성 판정)")

    p = sub.add_parser("zeta", help="t^n Z(t) 극한 외삽")
    p.add_argument("cone")
    p.add_argument("--xi", required=True)
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--t0", type=float, default=None)

    p = sub.add_parser("family", help="Y^{p,q} / L^{a,b,c}")
    fam = p.add_subparsers(dest="family", required=True)
    f = fam.add_parser("ypq")
    f.add_argument("-p", type=int, required=True)
    f.add_argument("-q", type=int, required=True)
    f.add_argument("--no-solve", action="store_true")
    f = fam.add_parser("labc")
    f.add_argument("-a", type=int, required=True)
    f.add_argument("-b", type=int, required=True)
    f.add_argument("-c", type=int, required=True)
    f.add_argument("--no-solve", action="store_true")
    f = fam.add_parser("ypq-sweep")
    f.add_argument("--p-max", type=int, default=5)

    p = sub.add_parser("screen", help="초곡면 특이점 Bishop / Lichnerowicz 검사")
    p.add_argument("--weights", default=None)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--exponents", default=None, help="Brieskorn-Pham 지수 a_1,...,a_{n+1}")
    p.add_argument("--batch", default=None, help="`w1,...;d` 줄 단위 파일")

    p = sub.add_parser("equiv", help="두 콘의 GL(n,Z) 동치")
    p.add_argument("cone1")
    p.add_argument("cone2")

    p = sub.add_parser("futaki", help="후보 xi 의 Futaki 장애 벡터")
    p.add_argument("cone")
    p.add_argument("--xi", required=True)

    p = sub.add_parser("potential-probe", help="심플렉틱 퍼텐셜 계량 블록 점검")
    p.add_argument("cone")
    p.add_argument("--xi", required=True)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--linear", default=None, help="선형 h 의 계수")
    return parser


def dispatch(args: argparse.Namespace, argv: List[str]) -> Report:
    command = args.command

    if command == "check":
        cone, text = _load_cone(args.cone)
        return report_service.check(cone, input_digest(text))

    if command == "solve":
        cone, text = _load_cone(args.cone)
        return report_service.solve(
            cone, input_digest(text, *argv), tol=args.tol, max_iter=args.max_iter, family=_ypq_tag(args.ypq)
        )

    if command == "zeta":
        cone, text = _load_cone(args.cone)
        return report_service.zeta(cone, _xi(args.xi), input_digest(text, *argv), levels=args.levels, t0=args.t0)

    if command == "futaki":
        cone, text = _load_cone(args.cone)
        return report_service.futaki(cone, _xi(args.xi), input_digest(text, *argv))

    if command == "potential-probe":
        cone, text = _load_cone(args.cone)
        linear = [float(x) for x in parse_vector(args.linear, field="linear")] if args.linear else None
        return report_service.potential_probe(cone, _xi(args.xi), input_digest(text, *argv), samples=args.samples, linear=linear)

    if command == "equiv":
        c1, t1 = _load_cone(args.cone1)
        c2, t2 = _load_cone(args.cone2)
        return report_service.equiv(c1, c2, input_digest(t1, t2))

    if command == "family":
        digest = input_digest(*argv)
        if args.family == "ypq-sweep":
            return report_service.ypq_sweep(args.p_max, digest)
        if args.family == "ypq":
            spec = FamilySpec(kind=FamilyKindEnum.YPQ, p=args.p, q=args.q)
        else:
            spec = FamilySpec(kind=FamilyKindEnum.LABC, a=args.a, b=args.b, c=args.c)
        return report_service.family(spec, digest, solve=not args.no_solve)

    if command == "screen":
        if args.batch:
            text = _read(args.batch)
            return report_service.screen_batch(screen_service.parse_batch(text), input_digest(text), jobs=args.jobs)
        if args.exponents:
            weights, degree = screen_service.from_exponents(parse_int_list(args.exponents, field="exponents"))
        elif args.weights and args.degree is not None:
            weights, degree = parse_int_list(args.weights, field="weights"), args.degree
        else:
            raise ValidationError("--weights/--degree, --exponents, --batch 중 하나가 필요합니다")
        return report_service.screen(weights, degree, input_digest(*argv))

    raise ValidationError(f"알 수 없는 명령: {command}")


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else (logging.WARNING if args.quiet else logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=stderr,
    )

    started = time.perf_counter()
    try:
        report = dispatch(args, argv)
    except ReebToolkitException as e:
        logger.error(f"{e.__class__.__name__}: {e.message}")
        report = Report(
            command=args.command,
            input_digest=input_digest(*argv),
            results={"error": {"type": e.__class__.__name__, "message": e.message}},
            exit_code=e.exit_code,
        )
    except Exception as e:
        logger.exception(f"내부 오류: {e}")
        report = Report(
            command=args.command,
            input_digest=input_digest(*argv),
            results={"error": {"type": e.__class__.__name__, "message": str(e)}},
            exit_code=EXIT_INTERNAL_ERROR,
        )
    report.timing_seconds = round(time.perf_counter() - started, 6)

    render = render_plain if args.fmt == "plain" else render_json
    stdout.write(render(report) + "\n")
    if not args.quiet:
        stderr.write(
            f"[{report.command}] exit={report.exit_code} warnings={len(report.warnings)} "
            f"time={report.timing_seconds:.3f}s\n"
        )
    return report.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
