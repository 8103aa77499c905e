"""
주어진 절(given-clause) 포화 루프
- sos / usable 목록, 가중치·나이 비율 선택
- 보존 파이프라인: 데모듈레이션 -> 정렬 -> 중복 병합 -> 단위 삭제 -> 항진 삭제
  -> 가중치 한도 -> 변형 중복 검사 -> 번호 부여 -> 단위 충돌 -> 데모듈레이터 설치
- 증명 추출
"""

import logging
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Deque, Dict, Iterator, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field
from sortedcontainers import SortedList

from config import config
from core_terms import (
    Clause, Demod, Literal, Var, normalize_variables,
)
from inference import UnitIndex, paramodulate, unit_conflict, unit_delete, ur_resolve
from rewrite import Demodulator, DemodulatorSet, StepCapExceeded, back_demodulate, demodulate_literals
from term_order import Orientation, Precedence, orient
from utils import Stopwatch

logger = logging.getLogger(__name__)

FLAG_NAMES = ("knuth_bendix", "ur_res", "unit_deletion", "para_from_units_only",
              "para_into_units_only", "bird_print")
PARAMETER_NAMES = ("max_weight", "pick_given_ratio", "max_mem", "max_retained", "max_seconds",
                   "demod_limit", "report_interval")


class ProverOptions(BaseModel):
    """set/assign 지시문으로 채워지는 탐색 옵션"""

    model_config = ConfigDict(extra="forbid", validate_assignment=True, frozen=True)

    knuth_bendix: bool = False
    ur_res: bool = False
    unit_deletion: bool = False
    para_from_units_only: bool = False
    para_into_units_only: bool = False
    bird_print: bool = False

    # 0 은 모순된 한도로 보고 탐색 전에 LimitReached
    max_weight: int = Field(default=2_147_483_647, ge=0)
    pick_given_ratio: int = Field(default=4, ge=1)
    # max_mem 은 기록만 하고 한도는 max_retained / max_seconds 로 대신한다
    max_mem: Optional[int] = Field(default=None, ge=0)
    max_retained: int = Field(default_factory=lambda: config.MAX_RETAINED, ge=1)
    max_seconds: Optional[float] = Field(default_factory=lambda: config.MAX_SECONDS, gt=0)
    demod_limit: int = Field(default_factory=lambda: config.DEMOD_STEP_CAP, ge=1)
    report_interval: int = Field(default_factory=lambda: config.REPORT_INTERVAL, ge=1)
    precedence: Optional[Tuple[str, ...]] = None


@dataclass
class Statistics:
    clauses_input: int = 0
    generated: int = 0
    kept: int = 0
    given: int = 0
    demod_rewrites: int = 0
    back_demodulated: int = 0
    deleted_weight: int = 0
    deleted_variant: int = 0
    deleted_tautology: int = 0
    elapsed_ms: int = 0

    def rows(self) -> List[Tuple[str, int]]:
        return [
            ("clauses input", self.clauses_input),
            ("clauses generated", self.generated),
            ("clauses kept", self.kept),
            ("clauses given", self.given),
            ("demod rewrites", self.demod_rewrites),
            ("clauses back demodulated", self.back_demodulated),
            ("deleted by weight", self.deleted_weight),
            ("variants deleted", self.deleted_variant),
            ("tautologies deleted", self.deleted_tautology),
            ("elapsed ms", self.elapsed_ms),
        ]


@dataclass
class ProofFound:
    success: Clause
    proof: List[Clause]
    statistics: Statistics = field(default_factory=Statistics)
    elapsed: float = 0.0
    exit_status = 0

    @property
    def answer_literals(self) -> Tuple[Literal, ...]:
        return self.success.answer_literals


@dataclass
class SosExhausted:
    statistics: Statistics = field(default_factory=Statistics)
    exit_status = 1


@dataclass
class LimitReached:
    which: str
    statistics: Statistics = field(default_factory=Statistics)
    exit_status = 2


Outcome = Union[ProofFound, SosExhausted, LimitReached]


class _Stop(Exception):
    """탐색 종료 신호 (내부 제어 흐름)"""

    def __init__(self, outcome: Outcome):
        self.outcome = outcome


# ──────────────────────────────────────────────────────────────────────────────
# 변형(variant) 판정 키
# ──────────────────────────────────────────────────────────────────────────────
def _shape(t) -> str:
    if isinstance(t, Var):
        return "_"
    if not t.args:
        return t.name
    return t.name + "(" + ",".join(_shape(a) for a in t.args) + ")"


def variant_key(literals) -> Tuple[Literal, ...]:
    """변수 이름과 리터럴 순서에 무관한 정규 키"""
    ordered = sorted(literals, key=lambda lit: (lit.positive, _shape(lit.atom)))
    return normalize_variables(ordered)


class ProverState:
    """sos / usable / 데모듈레이터 / 단위 색인 / 통계"""

    def __init__(self, options: ProverOptions, precedence: Precedence):
        self.options = options
        self.precedence = precedence
        self.archive: Dict[int, Clause] = {}
        self.usable: Dict[int, Clause] = {}
        self.sos: Dict[int, Clause] = {}
        self.sos_by_weight = SortedList()
        self.demods = DemodulatorSet()
        self.units = UnitIndex()
        self.usable_units = UnitIndex()
        self.variants: Dict[Tuple[Literal, ...], int] = {}
        self.next_id = 1
        self.pick_count = 0
        self.stats = Statistics()

    @property
    def retained_count(self) -> int:
        return len(self.usable) + len(self.sos)

    def allocate_id(self) -> int:
        clause_id = self.next_id
        self.next_id += 1
        return clause_id

    def add_sos(self, clause: Clause):
        self.sos[clause.id] = clause
        self.sos_by_weight.add((clause.weight, clause.id))

    def add_usable(self, clause: Clause):
        self.usable[clause.id] = clause
        if clause.is_unit:
            self.usable_units.add(clause)

    def deactivate(self, clause_id: int):
        """역방향 데모듈레이션으로 대체된 절 제거"""
        clause = self.usable.pop(clause_id, None)
        if clause is not None and clause.is_unit:
            self.usable_units.remove(clause)
        if clause is None:
            clause = self.sos.pop(clause_id, None)
            if clause is None:
                return
            self.sos_by_weight.discard((clause.weight, clause.id))
        if clause.is_unit:
            self.units.remove(clause)
        self.variants.pop(variant_key(clause.literals), None)
        current = self.archive.get(clause_id)
        if current is not None and current.demod_id is not None:
            self.demods.remove(current.demod_id)


def pick_given(state: ProverState) -> Clause:
    """
    비율 스케줄로 sos 에서 주어진 절 선택

    pick_given_ratio 번은 가장 가벼운 절(동률은 작은 번호), 그 다음 한 번은 가장 오래된 절
    """
    ratio = state.options.pick_given_ratio
    by_age = state.pick_count % (ratio + 1) == ratio
    state.pick_count += 1
    if by_age:
        clause_id = next(iter(state.sos))
    else:
        _, clause_id = state.sos_by_weight[0]
    clause = state.sos.pop(clause_id)
    state.sos_by_weight.discard((clause.weight, clause.id))
    return clause


class GivenClauseProver:
    """OTTER 방식 주어진 절 알고리즘"""

    def __init__(self, options: ProverOptions, precedence: Precedence):
        self.options = options
        self.state = ProverState(options, precedence)
        self.watch = Stopwatch(options.max_seconds)
        self.pending: Deque[Clause] = deque()

    # ── 단순화 ────────────────────────────────────────────────────────────────
    def _orient_literals(self, literals) -> Tuple[Tuple[Literal, ...], Tuple[bool, ...]]:
        if not self.options.knuth_bendix:
            return tuple(literals), ()
        result, flags = [], []
        for lit in literals:
            oriented = False
            if lit.is_equality:
                direction = orient(lit.lhs, lit.rhs, self.state.precedence)
                if direction is Orientation.RIGHT_TO_LEFT:
                    lit = lit.flipped()
                    oriented = True
                elif direction is Orientation.LEFT_TO_RIGHT:
                    oriented = True
            result.append(lit)
            flags.append(oriented)
        return tuple(result), tuple(flags)

    def _simplify(self, clause: Clause, generated: bool) -> Optional[Clause]:
        """보존 전 단순화. 버려지면 None"""
        state = self.state
        justification = clause.justification
        try:
            literals, trace = demodulate_literals(clause.literals, state.demods, self.options.demod_limit)
        except StepCapExceeded as e:
            logger.error(f"데모듈레이션 단계 한도 초과 ({e.steps}단계)")
            raise _Stop(LimitReached("demod_limit", state.stats))
        if trace:
            state.stats.demod_rewrites += len(trace)
            justification = justification.annotate(Demod(tuple(trace)))

        # 정렬 후 중복 리터럴 병합
        literals = normalize_variables(self._orient_literals(literals)[0])
        merged = []
        for lit in literals:
            if lit not in merged:
                merged.append(lit)
        literals = normalize_variables(merged)

        if generated and self._is_tautology(literals):
            state.stats.deleted_tautology += 1
            return None

        clause = Clause(literals, justification=justification)
        if self.options.unit_deletion:
            clause = unit_delete(clause, state.units)

        if generated and clause.weight > self.options.max_weight:
            state.stats.deleted_weight += 1
            return None
        if self._is_variant(clause):
            state.stats.deleted_variant += 1
            return None
        return clause

    @staticmethod
    def _is_tautology(literals) -> bool:
        for lit in literals:
            if lit.positive and lit.is_trivial_equality():
                return True
            if lit.negated() in literals:
                return True
        return False

    def _is_variant(self, clause: Clause) -> bool:
        if variant_key(clause.literals) in self.state.variants:
            return True
        if clause.is_unit and clause.unit_literal.is_equality:
            flipped = tuple(lit.flipped() if lit.is_equality and not lit.is_answer else lit
                            for lit in clause.literals)
            return variant_key(flipped) in self.state.variants
        return False

    # ── 보존 ──────────────────────────────────────────────────────────────────
    def _retain(self, clause: Clause, to_usable: bool = False) -> Clause:
        state = self.state
        if not clause.is_success and state.retained_count >= self.options.max_retained:
            raise _Stop(LimitReached("max_retained", state.stats))
        _, oriented = self._orient_literals(clause.literals)
        kept = replace(clause, id=state.allocate_id(), oriented=oriented)
        state.archive[kept.id] = kept
        state.variants[variant_key(kept.literals)] = kept.id
        state.stats.kept += 1

        if kept.is_success:
            raise _Stop(self._proof_found(kept))

        if kept.is_unit:
            conflict = unit_conflict(kept, state.units)
            if conflict is not None:
                conflict = replace(conflict, id=state.allocate_id())
                state.archive[conflict.id] = conflict
                raise _Stop(self._proof_found(conflict))
            state.units.add(kept)

        if to_usable:
            state.add_usable(kept)
        else:
            state.add_sos(kept)

        if self._is_demodulator(kept):
            kept = self._install_demodulator(kept)
        return kept

    def _is_demodulator(self, clause: Clause) -> bool:
        if not self.options.knuth_bendix or not clause.is_unit or clause.answer_literals:
            return False
        lit = clause.unit_literal
        return lit.positive and lit.is_equality and clause.is_oriented(clause.unit_index - 1)

    def _install_demodulator(self, clause: Clause) -> Clause:
        state = self.state
        demod_id = state.allocate_id()
        clause = replace(clause, demod_id=demod_id)
        state.archive[clause.id] = clause
        if clause.id in state.sos:
            state.sos[clause.id] = clause
        elif clause.id in state.usable:
            state.usable[clause.id] = clause
        lit = clause.unit_literal
        demod = Demodulator(demod_id, lit.lhs, lit.rhs, clause.id)
        state.demods.add(demod)
        logger.debug(f"데모듈레이터 설치: {demod_id},{clause.id}")

        retained = [c for c in list(state.usable.values()) + list(state.sos.values()) if c.id != clause.id]
        replacements = back_demodulate(demod, retained, state.demods, self.options.demod_limit)
        for replacement in replacements:
            target = replacement.justification.primary.target
            state.deactivate(target)
            state.stats.back_demodulated += 1
            self.pending.append(replacement)
        return clause

    def _process(self, clause: Clause, generated: bool = True, to_usable: bool = False):
        """절 하나와 그로 인해 생긴 역방향 데모듈레이션 절까지 처리"""
        self.pending.append(clause)
        first = True
        while self.pending:
            candidate = self.pending.popleft()
            simplified = self._simplify(candidate, generated or not first)
            if simplified is not None:
                self._retain(simplified, to_usable=to_usable and first)
            first = False

    # ── 증명 ──────────────────────────────────────────────────────────────────
    def _proof_found(self, success: Clause) -> ProofFound:
        self.state.stats.elapsed_ms = self.watch.elapsed_ms
        proof = extract_proof(success, self.state.archive)
        logger.info(f"단위 충돌: {success.id} ({self.watch.elapsed:.2f}초)")
        return ProofFound(success, proof, self.state.stats, self.watch.elapsed)

    # ── 생성 ──────────────────────────────────────────────────────────────────
    def _generate(self, given: Clause) -> Iterator[Clause]:
        state = self.state
        for partner in list(state.usable.values()):
            if given.id not in state.usable:
                return
            if partner.id not in state.usable:
                continue
            partner = state.usable[partner.id]
            yield from paramodulate(given, partner, self.options, given_is_from=True)
            if partner.id != given.id:
                yield from paramodulate(partner, given, self.options, given_is_from=False)
        if not self.options.ur_res or given.id not in state.usable:
            return
        if given.core_count >= 2:
            yield from ur_resolve(given, state.usable_units)
        elif given.is_unit:
            for nucleus in [c for c in state.usable.values() if c.core_count >= 2]:
                yield from ur_resolve(nucleus, state.usable_units, must_use=given)

    def run(self, usable: List[Clause], sos: List[Clause]) -> Outcome:
        state = self.state
        try:
            if self.options.max_weight < 1:
                raise _Stop(LimitReached("max_weight", state.stats))
            for clause in usable:
                state.stats.clauses_input += 1
                self._process(clause, generated=False, to_usable=True)
            for clause in sos:
                state.stats.clauses_input += 1
                self._process(clause, generated=False)

            while state.sos:
                if self.watch.expired():
                    raise _Stop(LimitReached("max_seconds", state.stats))
                given = pick_given(state)
                state.add_usable(given)
                state.stats.given += 1
                if state.stats.given % self.options.report_interval == 0:
                    logger.info(f"given #{state.stats.given} (wt={given.weight}) 보존 {state.retained_count}, "
                                f"생성 {state.stats.generated}, {self.watch.elapsed:.1f}초")
                for child in self._generate(given):
                    state.stats.generated += 1
                    self._process(child)
                    if self.watch.expired():
                        raise _Stop(LimitReached("max_seconds", state.stats))
            outcome: Outcome = SosExhausted(state.stats)
        except _Stop as stop:
            outcome = stop.outcome
        state.stats.elapsed_ms = self.watch.elapsed_ms
        return outcome


def extract_proof(success: Clause, archive: Dict[int, Clause]) -> List[Clause]:
    """근거를 따라 조상 절 전체를 모아 번호순 정렬"""
    owners = {c.demod_id: c.id for c in archive.values() if c.demod_id is not None}
    seen: Dict[int, Clause] = {}
    stack = [success]
    while stack:
        clause = stack.pop()
        if clause.id in seen:
            continue
        seen[clause.id] = clause
        for ref in clause.justification.referenced_ids():
            parent_id = owners.get(ref, ref)
            parent = archive.get(parent_id)
            if parent is not None and parent.id not in seen:
                stack.append(parent)
    return sorted(seen.values(), key=lambda c: c.id)


def saturate(problem, overrides: Optional[dict] = None) -> Outcome:
    """
    파싱된 입력으로 탐색 실행

    Args:
        problem: frontend.ParsedInput
        overrides: 옵션 덮어쓰기 (CLI 플래그 등)
    """
    options = problem.options
    if overrides:
        options = options.model_copy(update=overrides)
        options = ProverOptions.model_validate(options.model_dump())
    prover = GivenClauseProver(options, problem.precedence_for(options))
    return prover.run(list(problem.usable), list(problem.sos))
