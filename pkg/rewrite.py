"""
데모듈레이션 (정방향 단순화)과 역방향 데모듈레이션
- 최좌측-최외곽 전략으로 고정점까지 재작성
- 절마다 재작성 단계 한도 (기본 10,000)
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from config import config
from core_terms import (
    BackDemod, Clause, Demod, Fn, Justification, Literal, Term, Var, index_key,
)
from unify import match_with

logger = logging.getLogger(__name__)


class StepCapExceeded(Exception):
    """재작성 단계 한도 초과 (정렬 오류 가능성)"""

    def __init__(self, term: Term, steps: int):
        super().__init__(f"재작성 단계 한도 초과: {steps}단계")
        self.term = term
        self.steps = steps


@dataclass(frozen=True)
class Demodulator:
    id: int
    lhs: Term
    rhs: Term
    clause_id: int = 0


class DemodulatorSet:
    """(머리 기호, 척추 인자 수) 로 색인된 데모듈레이터 모음"""

    def __init__(self, demodulators: Iterable[Demodulator] = ()):
        self._by_id: Dict[int, Demodulator] = {}
        self._by_key: Dict[Tuple[str, int], List[Demodulator]] = {}
        self._wildcard: List[Demodulator] = []
        for d in demodulators:
            self.add(d)

    def __len__(self):
        return len(self._by_id)

    def __iter__(self) -> Iterator[Demodulator]:
        return iter(sorted(self._by_id.values(), key=lambda d: d.id))

    def __contains__(self, demod_id: int) -> bool:
        return demod_id in self._by_id

    def get(self, demod_id: int) -> Optional[Demodulator]:
        return self._by_id.get(demod_id)

    def add(self, d: Demodulator):
        self._by_id[d.id] = d
        key = index_key(d.lhs)
        bucket = self._wildcard if key is None else self._by_key.setdefault(key, [])
        bucket.append(d)
        bucket.sort(key=lambda x: x.id)

    def remove(self, demod_id: int):
        d = self._by_id.pop(demod_id, None)
        if d is None:
            return
        key = index_key(d.lhs)
        bucket = self._wildcard if key is None else self._by_key.get(key, [])
        bucket[:] = [x for x in bucket if x.id != demod_id]

    def restricted(self, ids: Iterable[int]) -> "DemodulatorSet":
        keep = set(ids)
        return DemodulatorSet(d for d in self._by_id.values() if d.id in keep)

    def candidates(self, t: Fn) -> List[Demodulator]:
        key = index_key(t)
        specific = self._by_key.get(key, []) if key is not None else []
        if not self._wildcard:
            return specific
        return sorted(specific + self._wildcard, key=lambda d: d.id)


class _Rewriter:
    def __init__(self, demods: DemodulatorSet, cap: int, exclude: Optional[int] = None):
        self.demods = demods
        self.cap = cap
        # 역방향 데모듈레이션 대상 절 자신의 데모듈레이터
        self.exclude = exclude
        self.steps = 0
        self.trace: List[int] = []

    def _rewrite_root(self, t: Fn) -> Optional[Term]:
        for d in self.demods.candidates(t):
            if d.id == self.exclude:
                continue
            bindings = match_with(d.lhs, t, {})
            if bindings is None:
                continue
            self.steps += 1
            if self.steps > self.cap:
                raise StepCapExceeded(t, self.steps)
            self.trace.append(d.id)
            return _instantiate(d.rhs, bindings)
        return None

    def _step(self, t: Term) -> Optional[Term]:
        """최좌측-최외곽 위치에서 한 단계 재작성. 재작성할 곳이 없으면 None"""
        if isinstance(t, Var):
            return None
        reduct = self._rewrite_root(t)
        if reduct is not None:
            return reduct
        for i, arg in enumerate(t.args):
            rewritten = self._step(arg)
            if rewritten is not None:
                return Fn(t.name, t.args[:i] + (rewritten,) + t.args[i + 1:])
        return None

    def normalize(self, t: Term) -> Term:
        # start 앞의 인자는 이미 정규형 (한 단계 후 다시 볼 곳은 뿌리와 start 이후)
        start = 0
        while not isinstance(t, Var):
            reduct = self._rewrite_root(t)
            if reduct is not None:
                t, start = reduct, 0
                continue
            for i in range(start, len(t.args)):
                rewritten = self._step(t.args[i])
                if rewritten is not None:
                    t, start = Fn(t.name, t.args[:i] + (rewritten,) + t.args[i + 1:]), i
                    break
            else:
                return t
        return t


def _instantiate(t: Term, bindings) -> Term:
    if isinstance(t, Var):
        return bindings.get(t.index, t)
    if not t.args:
        return t
    return Fn(t.name, tuple(_instantiate(arg, bindings) for arg in t.args))


def demodulate(t: Term, demods: DemodulatorSet, cap: int = None) -> Tuple[Term, List[int]]:
    """
    항을 정규형으로 재작성

    Returns:
        (정규형, 적용된 데모듈레이터 번호 목록 - 적용 순서)
    """
    rewriter = _Rewriter(demods, config.DEMOD_STEP_CAP if cap is None else cap)
    return rewriter.normalize(t), rewriter.trace


def demodulate_literals(literals: Sequence[Literal], demods: DemodulatorSet,
                        cap: int = None,
                        exclude: Optional[int] = None) -> Tuple[Tuple[Literal, ...], List[int]]:
    """절의 모든 리터럴 (음성, $ans 포함) 양변을 재작성. 단계 한도는 절 전체 기준"""
    if not len(demods):
        return tuple(literals), []
    rewriter = _Rewriter(demods, config.DEMOD_STEP_CAP if cap is None else cap, exclude)
    result = []
    for lit in literals:
        atom = rewriter.normalize(lit.atom)
        result.append(lit if atom is lit.atom else Literal(lit.positive, atom))
    return tuple(result), rewriter.trace


def has_redex(t: Term, lhs: Term) -> bool:
    """lhs 와 매칭되는 부분항 존재 여부"""
    if isinstance(t, Var):
        return False
    if match_with(lhs, t, {}) is not None:
        return True
    return any(has_redex(arg, lhs) for arg in t.args)


def back_demodulate(new_demod: Demodulator, retained: Iterable[Clause], demods: DemodulatorSet,
                    cap: int = None) -> List[Clause]:
    """
    새 데모듈레이터로 재작성 가능한 보존 절을 찾아 전체 집합으로 다시 단순화
    (데모듈레이터 절은 자기 규칙을 빼고 재작성)

    Returns:
        교체 절 목록 (번호 미할당, BackDemod 근거). 원본 비활성화는 호출자 몫
    """
    replacements = []
    for clause in retained:
        if clause.id == new_demod.clause_id:
            continue
        if not any(has_redex(lit.atom, new_demod.lhs) for lit in clause.literals):
            continue
        literals, trace = demodulate_literals(clause.literals, demods, cap, exclude=clause.demod_id)
        justification = Justification(BackDemod(clause.id)).annotate(Demod(tuple(trace)))
        replacements.append(Clause(literals, justification=justification))
        logger.debug(f"역방향 데모듈레이션: {clause.id} <- {new_demod.id}")
    return replacements
