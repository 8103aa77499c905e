"""
TRC / TRC* 문제 모음
- problems/ 아래 입력 파일 등록부와 기대 결과, 예산
- 공리 체계 정의
- 전체 실행 보고서
"""

import logging
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from config import config
from core_terms import PAIR, Clause, Fn, Term, app, const
from frontend import ParsedInput, parse, parse_clause
from oracle import DIAGONAL_RULE, Rule, RuleSet, Verification, ruleset, verify_answer
from proof_check import check_proof
from saturation import LimitReached, ProofFound, saturate
from utils import Stopwatch

logger = logging.getLogger(__name__)


class UnknownProblem(Exception):
    def __init__(self, name: str):
        super().__init__(f"등록되지 않은 문제: {name}")
        self.name = name


# ──────────────────────────────────────────────────────────────────────────────
# 기대 결과
# ──────────────────────────────────────────────────────────────────────────────
Equation = Callable[[Term, List[Term]], Tuple[Term, Term]]


@dataclass(frozen=True)
class Answer:
    """$ans 로 돌아온 항이 만족해야 하는 정의 등식"""
    system: str
    n_args: int
    equation: Equation
    extra_rules: Tuple[Rule, ...] = ()
    reported: str = ""

    def rules(self) -> RuleSet:
        return ruleset(self.system).with_rules(self.extra_rules)


@dataclass(frozen=True)
class FalseDerived:
    pass


@dataclass(frozen=True)
class NoExpectation:
    pass


Expectation = Union[Answer, FalseDerived, NoExpectation]


@dataclass(frozen=True)
class Budget:
    max_generated: int
    max_seconds: float


@dataclass(frozen=True)
class Problem:
    name: str
    file: Path
    expected: Expectation
    budget: Budget
    long_running: bool = False

    @property
    def text(self) -> str:
        return self.file.read_text(encoding="utf-8")

    def parse(self) -> ParsedInput:
        return parse(self.text, source=self.file.name)


def _diagonal(t: Term, cs: List[Term]) -> Tuple[Term, Term]:
    # t x y = x x
    return app(t, cs[0], cs[1]), app(cs[0], cs[0])


def _self_reference(t: Term, cs: List[Term]) -> Tuple[Term, Term]:
    # t = eq pair(k t, k p2)
    k, p2 = const("k"), const("p2")
    return t, app(const("eq"), Fn(PAIR, (app(k, t), app(k, p2))))


_F_ANSWER = Answer("trcstar", 2, _diagonal, reported="abst abst k")
_S_ANSWER = Answer("trcstar", 0, _self_reference, extra_rules=(DIAGONAL_RULE,),
                   reported="abst (k eq) pair(F,k (k p2)) (abst (k eq) pair(F,k (k p2)))")

# (이름, 기대, 생성 절 한도, 초 한도, 장시간 여부)
_REGISTRY: Tuple[Tuple[str, Expectation, int, float, bool], ...] = (
    ("f_reduced", _F_ANSWER, 10_000, 10, False),
    ("f_full", _F_ANSWER, 500_000, 600, True),
    ("s_full", _S_ANSWER, 200_000, 120, False),
    ("s_reduced", _S_ANSWER, 200_000, 120, False),
    ("contradiction", FalseDerived(), 5_000, 5, False),
    ("prop1b", FalseDerived(), 20 * 430, 60, False),
    ("prop2a", FalseDerived(), 20 * 638, 60, False),
    ("prop2b", FalseDerived(), 20 * 104, 60, False),
    ("prop2c", FalseDerived(), 20 * 55, 60, False),
)


def problem_names(include_long: bool = True) -> List[str]:
    return [name for name, *_, long_running in _REGISTRY if include_long or not long_running]


def load_problem(name: str, problems_dir: Optional[Path] = None) -> Problem:
    """
    등록된 문제 불러오기

    Raises:
        UnknownProblem: 등록부에 없거나 파일이 없음
    """
    for entry_name, expected, max_generated, max_seconds, long_running in _REGISTRY:
        if entry_name == name:
            path = Path(problems_dir or config.PROBLEMS_DIR) / f"{name}.in"
            if not path.exists():
                raise UnknownProblem(name)
            return Problem(name, path, expected, Budget(max_generated, max_seconds), long_running)
    raise UnknownProblem(name)


# ──────────────────────────────────────────────────────────────────────────────
# 공리 체계
# ──────────────────────────────────────────────────────────────────────────────
_SHARED_AXIOMS = (
    "a(p1,pair(x,y)) = x.",
    "a(p2,pair(x,y)) = y.",
    "pair(a(p1,x),a(p2,x)) = x.",
    "a(pair(x,y),z) = pair(a(x,z),a(y,z)).",
    "a(eq,pair(x,x)) = p1.",
    "x = y | a(eq,pair(x,y)) = p2.",
    "x = y | a(x,n(x,y)) != a(y,n(x,y)).",
    "p1 != p2.",
)

_AXIOM_TEXT: Dict[str, Tuple[str, ...]] = {
    "TRCstar": ("a(a(k,x),y) = x.",) + _SHARED_AXIOMS[:4]
    + ("a(a(a(abst,x),y),z) = a(a(x,a(k,z)),a(y,z)).",) + _SHARED_AXIOMS[4:],
    "TRC": ("a(k(x),y) = x.",) + _SHARED_AXIOMS[:4]
    + ("a(a(a(abst,x),y),z) = a(a(x,k(z)),a(y,z)).",) + _SHARED_AXIOMS[4:],
}


@dataclass(frozen=True)
class AxiomSystem:
    name: str
    clauses: Tuple[Clause, ...]


def axiom_system(name: str) -> AxiomSystem:
    try:
        texts = _AXIOM_TEXT[name]
    except KeyError:
        raise ValueError(f"알 수 없는 공리 체계: {name} (TRC | TRCstar)")
    return AxiomSystem(name, tuple(Clause(parse_clause(text)) for text in texts))


# ──────────────────────────────────────────────────────────────────────────────
# 코퍼스 실행
# ──────────────────────────────────────────────────────────────────────────────
@dataclass
class CorpusRow:
    name: str
    outcome: str
    generated: int
    seconds: float
    passed: bool
    note: str = ""


@dataclass
class CorpusReport:
    rows: List[CorpusRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def render(self) -> str:
        lines = [f"{'problem':<15}{'outcome':<16}{'generated':>10}{'seconds':>10}  pass  note"]
        for row in self.rows:
            mark = "✅" if row.passed else "❌"
            lines.append(f"{row.name:<15}{row.outcome:<16}{row.generated:>10}{row.seconds:>10.2f}  {mark}    "
                         f"{row.note}")
        return "\n".join(lines)


def answer_term(proof: ProofFound) -> Optional[Term]:
    literals = proof.answer_literals
    if not literals or not literals[0].atom.args:
        return None
    return literals[0].atom.args[0]


def evaluate(problem: Problem, outcome, seconds: float) -> CorpusRow:
    """탐색 결과를 기대와 예산에 비춰 판정"""
    generated = outcome.statistics.generated
    kind = type(outcome).__name__
    if isinstance(outcome, LimitReached):
        kind = f"Limit({outcome.which})"
    row = CorpusRow(problem.name, kind, generated, seconds, passed=False)
    expected = problem.expected

    if isinstance(expected, NoExpectation):
        row.passed = True
        return row
    if not isinstance(outcome, ProofFound):
        row.note = "증명 없음"
        return row

    check = check_proof(outcome.proof)
    if not check:
        row.note = f"증명 재생 실패: {check.line} {check.reason}"
        return row

    if isinstance(expected, FalseDerived):
        if outcome.answer_literals:
            row.note = "$F 대신 답 리터럴"
            return row
    else:
        answer = answer_term(outcome)
        if answer is None:
            row.note = "답 리터럴 없음"
            return row
        verification = verify_answer(problem, answer)
        if verification is Verification.REFUTED:
            row.note = "oracle 반증"
            return row
        row.note = f"oracle {verification.value}"

    if generated > problem.budget.max_generated:
        row.note = f"생성 절 예산 초과 ({problem.budget.max_generated})"
        return row
    row.passed = True
    return row


def run_problem(name: str, budget_scale: float = 1.0) -> CorpusRow:
    try:
        problem = load_problem(name)
        parsed = problem.parse()
        watch = Stopwatch()
        outcome = saturate(parsed, {"max_seconds": problem.budget.max_seconds * budget_scale})
        row = evaluate(problem, outcome, watch.elapsed)
    except Exception as e:
        logger.error(f"{name} 실행 중 오류: {e}")
        return CorpusRow(name, "Error", 0, 0.0, False, str(e))
    logger.info(f"{'✅' if row.passed else '❌'} {name}: {row.outcome} ({row.generated}개 생성, {row.seconds:.2f}초)")
    return row


def run_corpus(names: Optional[Sequence[str]] = None, workers: Optional[int] = None,
               include_long: bool = False, budget_scale: float = 1.0) -> CorpusReport:
    """
    등록된 문제를 실행해 이름 / 결과 / 생성 절 / 시간 / 통과 여부 표 작성

    Args:
        names: None 이면 등록된 전체 (장시간 문제는 include_long 일 때만)
    """
    if names is None:
        names = problem_names(include_long)
    names = list(names)
    workers = workers or config.CORPUS_WORKERS
    if workers > 1 and len(names) > 1:
        with Pool(min(workers, len(names))) as pool:
            rows = pool.starmap(run_problem, [(name, budget_scale) for name in names])
    else:
        rows = [run_problem(name, budget_scale) for name in names]
    return CorpusReport(rows)
