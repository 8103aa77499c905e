#!/usr/bin/env python3
"""
microtter 메인 스크립트
- 입력 파일 증명 탐색 (prove)
- 증명 재생 검사 (check)
- 조합자 정규화 / 답 검증 (normalize, verify)
- 문제 모음 전체 실행 (corpus)
- HTTP 서버 (serve)

종료 코드: 0 증명, 1 sos 소진 / 검사 실패, 2 한도 도달, 3 사용법 / 파싱 오류
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from config import config
from utils import setup_logging

EXIT_USAGE = 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_overrides(sets: List[str], clears: List[str], assigns: List[str]) -> Dict[str, object]:
    """--set / --clear / --assign 를 옵션 덮어쓰기 사전으로"""
    from saturation import FLAG_NAMES, PARAMETER_NAMES

    overrides: Dict[str, object] = {}
    for flag in sets or []:
        if flag not in FLAG_NAMES:
            raise ValueError(f"알 수 없는 플래그: {flag}")
        overrides[flag] = True
    for flag in clears or []:
        if flag not in FLAG_NAMES:
            raise ValueError(f"알 수 없는 플래그: {flag}")
        overrides[flag] = False
    for item in assigns or []:
        name, _, value = item.partition("=")
        if name not in PARAMETER_NAMES or not value:
            raise ValueError(f"--assign 형식 오류: {item} (name=value)")
        overrides[name] = float(value) if name == "max_seconds" else int(value)
    return overrides


def main(argv: Optional[List[str]] = None) -> int:
    parser = _ArgumentParser(description="TRC 조합자 논리용 포화 증명기")
    parser.add_argument("--log-level", default=config.LOG_LEVEL, help="로그 레벨")
    parser.add_argument("--seed-free", action="store_true",
                        help="무작위성 없음 (항상 결정적이므로 호환용)")
    subparsers = parser.add_subparsers(dest="command", help="실행할 명령어")

    # 1. 증명 탐색
    prove_parser = subparsers.add_parser("prove", help="입력 파일로 증명 탐색")
    prove_parser.add_argument("file", nargs="?", help="입력 파일 경로")
    prove_parser.add_argument("--problem", help="등록된 문제 이름 (problems/ 아래)")
    prove_parser.add_argument("--set", action="append", default=[], metavar="FLAG", help="플래그 켜기")
    prove_parser.add_argument("--clear", action="append", default=[], metavar="FLAG", help="플래그 끄기")
    prove_parser.add_argument("--assign", action="append", default=[], metavar="NAME=VALUE",
                              help="매개변수 지정")
    prove_parser.add_argument("--no-stats", action="store_true", help="통계 꼬리말 생략")

    # 2. 증명 검사
    check_parser = subparsers.add_parser("check", help="증명 파일 재생 검사")
    check_parser.add_argument("proof_file", help="증명 블록이 담긴 파일")

    # 3. 정규화
    normalize_parser = subparsers.add_parser("normalize", help="조합자 항 정규화 (oracle)")
    normalize_parser.add_argument("term", help="바닥항 (예: 'abst abst k c1 c2')")
    normalize_parser.add_argument("--system", choices=["trc", "trcstar"], default="trcstar")
    normalize_parser.add_argument("--strategy", choices=["outermost", "innermost"], default="outermost")
    normalize_parser.add_argument("--cap", type=int, default=None, help="재작성 단계 한도")

    # 4. 답 검증
    verify_parser = subparsers.add_parser("verify", help="문제의 정의 등식으로 답 검증 (oracle)")
    verify_parser.add_argument("problem", help="등록된 문제 이름")
    verify_parser.add_argument("answer", help="답 항")

    # 5. 문제 모음 실행
    corpus_parser = subparsers.add_parser("corpus", help="등록된 문제 전체 실행")
    corpus_parser.add_argument("names", nargs="*", help="실행할 문제 (생략시 전체)")
    corpus_parser.add_argument("--workers", type=int, default=None, help="병렬 실행 수")
    corpus_parser.add_argument("--include-long", action="store_true", help="장시간 문제 포함")
    corpus_parser.add_argument("--budget-scale", type=float, default=1.0, help="시간 예산 배율")

    # 6. HTTP 서버
    serve_parser = subparsers.add_parser("serve", help="HTTP 서버 실행")
    serve_parser.add_argument("--host", default=config.API_HOST)
    serve_parser.add_argument("--port", type=int, default=config.API_PORT)

    args = parser.parse_args(argv)

    # 로깅 설정
    setup_logging(args.log_level)

    if args.command == "prove":
        return run_prove(args.file, args.problem, args.set, args.clear, args.assign, not args.no_stats)
    elif args.command == "check":
        return run_check(args.proof_file)
    elif args.command == "normalize":
        return run_normalize(args.term, args.system, args.strategy, args.cap)
    elif args.command == "verify":
        return run_verify(args.problem, args.answer)
    elif args.command == "corpus":
        return run_corpus_report(args.names or None, args.workers, args.include_long, args.budget_scale)
    elif args.command == "serve":
        return run_server(args.host, args.port)
    parser.print_help()
    return EXIT_USAGE


def run_prove(file: Optional[str], problem: Optional[str], sets: List[str], clears: List[str],
              assigns: List[str], statistics: bool = True) -> int:
    """입력 파일 증명 탐색 후 증명 블록 출력"""
    from frontend import ParseError, parse, render_outcome
    from saturation import saturate
    from trc_corpus import UnknownProblem, load_problem

    logger = logging.getLogger(__name__)
    try:
        if problem:
            path = load_problem(problem).file
        elif file:
            path = Path(file)
        else:
            logger.error("입력 파일 또는 --problem 이 필요합니다")
            return EXIT_USAGE
        logger.info(f"=== 증명 탐색 시작: {path.name} ===")
        parsed = parse(path.read_text(encoding="utf-8"), source=path.name)
        overrides = _parse_overrides(sets, clears, assigns)
    except (ParseError, UnknownProblem, ValueError, OSError) as e:
        logger.error(f"입력 오류: {e}")
        return EXIT_USAGE

    try:
        outcome = saturate(parsed, overrides)
    except ValueError as e:
        # 덮어쓰기 값 검증 실패
        logger.error(f"옵션 오류: {e}")
        return EXIT_USAGE

    bird = parsed.options.bird_print if "bird_print" not in overrides else bool(overrides["bird_print"])
    sys.stdout.write(render_outcome(outcome, bird=bird, statistics=statistics))
    if outcome.exit_status == 0:
        logger.info(f"✅ 증명 발견: {len(outcome.proof)}줄")
    else:
        logger.warning(f"❌ 증명 없음: {type(outcome).__name__}")
    return outcome.exit_status


def run_check(proof_file: str) -> int:
    """증명 파일 재생 검사"""
    from frontend import ParseError, parse_proof
    from proof_check import check_proof

    logger = logging.getLogger(__name__)
    try:
        proof = parse_proof(Path(proof_file).read_text(encoding="utf-8"))
    except (ParseError, OSError) as e:
        logger.error(f"증명 파일 오류: {e}")
        return EXIT_USAGE
    if not proof:
        logger.error("증명 줄이 없습니다")
        return EXIT_USAGE

    result = check_proof(proof)
    if result:
        print(f"Valid ({len(proof)} lines)")
        logger.info("✅ 증명 재생 성공")
        return 0
    print(f"Invalid at {result.line}: {result.reason}")
    logger.error(f"❌ 증명 재생 실패: {result.line}")
    return 1


def run_normalize(term_text: str, system: str, strategy: str = "outermost", cap: Optional[int] = None) -> int:
    """조합자 항 정규화"""
    from core_terms import bird_print
    from frontend import ParseError, parse_term
    from oracle import CapExceeded, normalize, ruleset

    logger = logging.getLogger(__name__)
    try:
        term = parse_term(term_text)
        result = normalize(term, ruleset(system), cap, strategy)
    except (ParseError, ValueError) as e:
        logger.error(f"정규화 입력 오류: {e}")
        return EXIT_USAGE
    if isinstance(result, CapExceeded):
        print(f"cap exceeded after {result.steps} steps: {bird_print(result.last)}")
        return 2
    print(bird_print(result.term))
    logger.debug(f"{result.steps}단계")
    return 0


def run_verify(problem_name: str, answer_text: str) -> int:
    """등록된 문제의 정의 등식으로 답 검증"""
    from frontend import ParseError, parse_term
    from oracle import Verification, verify_answer
    from trc_corpus import UnknownProblem, load_problem

    logger = logging.getLogger(__name__)
    try:
        problem = load_problem(problem_name)
        answer = parse_term(answer_text)
        verification = verify_answer(problem, answer)
    except (ParseError, UnknownProblem, ValueError) as e:
        logger.error(f"검증 입력 오류: {e}")
        return EXIT_USAGE
    print(verification.value)
    return {Verification.VERIFIED: 0, Verification.REFUTED: 1, Verification.UNKNOWN: 2}[verification]


def run_corpus_report(names: Optional[List[str]], workers: Optional[int], include_long: bool,
                      budget_scale: float) -> int:
    """등록된 문제 실행 보고서"""
    from trc_corpus import problem_names, run_corpus

    logger = logging.getLogger(__name__)
    unknown = [name for name in names or [] if name not in problem_names()]
    if unknown:
        logger.error(f"등록되지 않은 문제: {', '.join(unknown)}")
        return EXIT_USAGE
    logger.info("=== 문제 모음 실행 시작 ===")
    report = run_corpus(names, workers, include_long, budget_scale)
    print(report.render())
    passed = sum(1 for row in report.rows if row.passed)
    logger.info(f"{'✅' if report.passed else '❌'} 통과 {passed}/{len(report.rows)}")
    return 0 if report.passed else 1


def run_server(host: str, port: int) -> int:
    import uvicorn

    uvicorn.run("prover_api:app", host=host, port=port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
