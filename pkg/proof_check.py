"""
증명 재생 검사
- 각 줄의 근거(패러모듈레이션 위치, UR 위성, 데모듈레이션 기록, 단위 삭제, 단위 충돌)를
  다시 실행해 기록된 절이 변수 이름 변경과 등식 방향을 무시하고 재현되는지 확인
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from core_terms import (
    UR, BackDemod, Binary, Clause, Demod, Fn, Input, Literal, ParaFrom, ParaInto, UnitDel, Var,
    false_clause, replace_at, shift_clause_literals, subterm_at,
)
from inference import _match_atom, _unify_atoms
from rewrite import Demodulator, DemodulatorSet, StepCapExceeded, demodulate_literals
from unify import resolve, unify

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Valid:
    def __bool__(self):
        return True


@dataclass(frozen=True)
class Invalid:
    line: int
    reason: str

    def __bool__(self):
        return False


ProofCheck = Union[Valid, Invalid]


class _ReplayError(Exception):
    pass


# ──────────────────────────────────────────────────────────────────────────────
# 변수 이름 변경 + 등식 대칭을 허용한 절 비교
# ──────────────────────────────────────────────────────────────────────────────
def _rename_match(s, t, fwd: Dict[int, int], bwd: Dict[int, int]) -> Optional[Tuple[dict, dict]]:
    fwd, bwd = dict(fwd), dict(bwd)
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        if isinstance(a, Var) or isinstance(b, Var):
            if not (isinstance(a, Var) and isinstance(b, Var)):
                return None
            if fwd.setdefault(a.index, b.index) != b.index or bwd.setdefault(b.index, a.index) != a.index:
                return None
            continue
        if a.name != b.name or len(a.args) != len(b.args):
            return None
        stack.extend(zip(a.args, b.args))
    return fwd, bwd


def _atom_variants(atom: Fn) -> List[Fn]:
    if atom.name == "=":
        return [atom, Fn("=", (atom.args[1], atom.args[0]))]
    return [atom]


def clauses_equivalent(a: Sequence[Literal], b: Sequence[Literal]) -> bool:
    """리터럴 다중집합이 변수 일대일 이름 변경과 등식 방향 차이를 빼면 같은지"""
    if len(a) != len(b):
        return False

    def search(i, used, fwd, bwd) -> bool:
        if i == len(a):
            return True
        for j, lb in enumerate(b):
            if j in used or lb.positive != a[i].positive or lb.atom.name != a[i].atom.name:
                continue
            for atom in _atom_variants(lb.atom):
                maps = _rename_match(a[i].atom, atom, fwd, bwd)
                if maps is not None and search(i + 1, used | {j}, *maps):
                    return True
        return False

    return search(0, frozenset(), {}, {})


def _merge_symmetric(literals: Sequence[Literal]) -> List[Literal]:
    result: List[Literal] = []
    for lit in literals:
        if lit in result or (lit.is_equality and lit.flipped() in result):
            continue
        result.append(lit)
    return result


# ──────────────────────────────────────────────────────────────────────────────
# 근거별 재생
# ──────────────────────────────────────────────────────────────────────────────
def _clause(by_id: Dict[int, Clause], clause_id: int) -> Clause:
    clause = by_id.get(clause_id)
    if clause is None:
        raise _ReplayError(f"절 {clause_id} 이(가) 증명에 없음")
    return clause


def _literal(clause: Clause, number: int) -> Literal:
    if not 1 <= number <= len(clause.literals):
        raise _ReplayError(f"절 {clause.id} 에 리터럴 {number} 없음")
    return clause.literals[number - 1]


def _replay_para(from_ref, into_ref, by_id) -> List[List[Literal]]:
    from_clause = _clause(by_id, from_ref.clause_id)
    into_clause = _clause(by_id, into_ref.clause_id)
    eq = _literal(from_clause, from_ref.literal)
    if not eq.is_equality or not eq.positive or len(from_ref.path) != 1:
        raise _ReplayError("para 출발 리터럴이 양성 등식이 아님")
    l, r = (eq.lhs, eq.rhs) if from_ref.path[0] == 1 else (eq.rhs, eq.lhs)
    into_literals = shift_clause_literals(into_clause.literals, from_clause.num_vars)
    j = into_ref.literal - 1
    target = _literal(into_clause, into_ref.literal)
    if target.is_answer:
        raise _ReplayError("$ans 리터럴로의 패러모듈레이션")
    try:
        sub = subterm_at(into_literals[j].atom, into_ref.path)
    except (IndexError, AttributeError):
        raise _ReplayError(f"위치 {into_ref} 가 존재하지 않음")
    if isinstance(sub, Var):
        raise _ReplayError("변수 위치로의 패러모듈레이션")
    s = unify(l, sub)
    if s is None:
        raise _ReplayError(f"{from_ref} 와 {into_ref} 단일화 실패")
    replaced = Literal(into_literals[j].positive, replace_at(into_literals[j].atom, into_ref.path, r))
    literals = [s.apply_literal(replaced if k == j else lit) for k, lit in enumerate(into_literals)]
    literals += [s.apply_literal(lit) for k, lit in enumerate(from_clause.literals) if k != from_ref.literal - 1]
    return [literals]


def _ur_candidates(nucleus: Clause, satellites: List[Clause]) -> List[List[Literal]]:
    core = [lit for lit in nucleus.literals if not lit.is_answer]
    candidates = []
    for t, target in enumerate(core):
        others = [lit for m, lit in enumerate(core) if m != t]
        offset = nucleus.num_vars
        shifted = []
        for sat in satellites:
            shifted.append(shift_clause_literals(sat.literals, offset))
            offset += sat.num_vars

        def search(k, bindings):
            if k == len(others):
                s = resolve(bindings)
                literals = [s.apply_literal(target)] + [s.apply_literal(a) for a in nucleus.answer_literals]
                for lits in shifted:
                    literals += [s.apply_literal(a) for a in lits if a.is_answer]
                candidates.append(literals)
                return
            unit_lit = next(a for a in shifted[k] if not a.is_answer)
            if unit_lit.positive == others[k].positive:
                return
            for b in _unify_atoms(others[k].atom, unit_lit.atom, bindings):
                search(k + 1, b)

        search(0, {})
    return candidates


def _replay_ur(step: UR, by_id) -> List[List[Literal]]:
    # 핵 절이 앞에 오지 않은 기록도 받아들임
    cited = [step.nucleus, *step.satellites]
    candidates = []
    for n, nucleus_id in enumerate(cited):
        nucleus = _clause(by_id, nucleus_id)
        satellites = [_clause(by_id, i) for m, i in enumerate(cited) if m != n]
        if nucleus.core_count != len(satellites) + 1 or any(not s.is_unit for s in satellites):
            continue
        candidates += _ur_candidates(nucleus, satellites)
    if not candidates:
        raise _ReplayError("UR 위성으로 핵 절을 해소할 수 없음")
    return candidates


def _replay_binary(step: Binary, by_id) -> List[List[Literal]]:
    c1 = _clause(by_id, step.c1.clause_id)
    c2 = _clause(by_id, step.c2.clause_id)
    lit1 = _literal(c1, step.c1.literal)
    offset = c1.num_vars
    lits2 = shift_clause_literals(c2.literals, offset)
    lit2 = lits2[step.c2.literal - 1] if 1 <= step.c2.literal <= len(lits2) else None
    if lit2 is None or lit1.positive == lit2.positive:
        raise _ReplayError("binary 리터럴 부호가 반대가 아님")
    if c1.core_count != 1 or c2.core_count != 1:
        raise _ReplayError("binary 는 단위 절끼리만 허용")
    candidates = []
    for b in _unify_atoms(lit1.atom, lit2.atom, {}):
        s = resolve(b)
        answers = [s.apply_literal(a) for a in c1.answer_literals]
        answers += [s.apply_literal(a) for a in lits2 if a.is_answer]
        candidates.append(answers or list(false_clause()))
    if not candidates:
        raise _ReplayError("binary 원자 단일화 실패")
    return candidates


def _apply_annotations(literals: List[Literal], annotations, demods: Dict[int, Demodulator],
                       by_id: Dict[int, Clause]) -> List[Literal]:
    for annotation in annotations:
        if isinstance(annotation, Demod):
            missing = [i for i in annotation.applied if i not in demods]
            if missing:
                raise _ReplayError(f"데모듈레이터 {missing} 가 증명에 없음")
            restricted = DemodulatorSet(demods[i] for i in set(annotation.applied))
            try:
                rewritten, trace = demodulate_literals(literals, restricted)
            except StepCapExceeded:
                raise _ReplayError("데모듈레이션 재생 단계 한도 초과")
            if sorted(trace) != sorted(annotation.applied):
                raise _ReplayError(f"데모듈레이션 기록 불일치: {trace} != {list(annotation.applied)}")
            literals = list(rewritten)
        elif isinstance(annotation, UnitDel):
            literals = _merge_symmetric(literals)
            for unit_id in annotation.units:
                unit = _clause(by_id, unit_id)
                if not unit.is_unit:
                    raise _ReplayError(f"unit_del 의 {unit_id} 가 단위 절이 아님")
                ulit = unit.unit_literal
                before = len(literals)
                literals = [lit for lit in literals
                            if lit.is_answer or lit.positive == ulit.positive
                            or not _match_atom(ulit.atom, lit.atom)]
                if len(literals) == before:
                    raise _ReplayError(f"단위 {unit_id} 로 삭제되는 리터럴 없음")
    return _merge_symmetric(literals) or list(false_clause())


def _check_line(clause: Clause, by_id: Dict[int, Clause], demods: Dict[int, Demodulator]) -> Optional[str]:
    justification = clause.justification
    for ref in justification.referenced_ids():
        if ref >= clause.id:
            return f"참조 번호 {ref} 가 절 번호 {clause.id} 보다 크거나 같음"
    primary = justification.primary
    if isinstance(primary, Input):
        return None
    try:
        if isinstance(primary, ParaFrom):
            candidates = _replay_para(primary.from_ref, primary.into_ref, by_id)
        elif isinstance(primary, ParaInto):
            candidates = _replay_para(primary.from_ref, primary.into_ref, by_id)
        elif isinstance(primary, UR):
            candidates = _replay_ur(primary, by_id)
        elif isinstance(primary, Binary):
            candidates = _replay_binary(primary, by_id)
        elif isinstance(primary, BackDemod):
            candidates = [list(_clause(by_id, primary.target).literals)]
        else:
            return f"알 수 없는 근거 {primary!r}"
        errors = []
        for literals in candidates:
            try:
                replayed = _apply_annotations(literals, justification.annotations, demods, by_id)
            except _ReplayError as e:
                errors.append(str(e))
                continue
            if clauses_equivalent(replayed, clause.literals):
                return None
            errors.append("재생 결과가 기록된 절과 다름")
        return errors[0] if errors else "재생 후보 없음"
    except _ReplayError as e:
        return str(e)


def check_proof(proof: Sequence[Clause]) -> ProofCheck:
    """
    증명 재생

    Returns:
        Valid 또는 처음 실패한 줄의 Invalid(line, reason)
    """
    by_id = {c.id: c for c in proof}
    demods: Dict[int, Demodulator] = {}
    for c in proof:
        if c.demod_id is not None and c.is_unit and c.unit_literal.is_equality:
            lit = c.unit_literal
            demods[c.demod_id] = Demodulator(c.demod_id, lit.lhs, lit.rhs, c.id)
    for c in proof:
        reason = _check_line(c, by_id, demods)
        if reason is not None:
            logger.debug(f"증명 검사 실패: {c.id} - {reason}")
            return Invalid(c.id, reason)
    return Valid()
