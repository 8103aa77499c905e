"""
생성/삭제 추론 규칙
- 패러모듈레이션 (from / into)
- UR-resolution (unit-resulting)
- 단위 충돌 (binary, 단위끼리만)
- 단위 삭제 (unit deletion)
"""

import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from core_terms import (
    UR, Binary, ClauseRef, Clause, Justification, Literal, ParaFrom, ParaInto, Term,
    UnitDel, Var, false_clause, normalize_variables, positions, replace_at,
    shift_clause_literals, shift_term,
)
from unify import Bindings, match_with, may_unify, resolve, unify_with

logger = logging.getLogger(__name__)


class UnitIndex:
    """보존된 단위 절 색인 (부호, 원자 기호) -> 절 목록"""

    def __init__(self, units: Sequence[Clause] = ()):
        self._by_key: Dict[Tuple[bool, str], Dict[int, Clause]] = {}
        for unit in units:
            self.add(unit)

    def __len__(self):
        return sum(len(bucket) for bucket in self._by_key.values())

    def __iter__(self) -> Iterator[Clause]:
        return iter(sorted((c for b in self._by_key.values() for c in b.values()), key=lambda c: c.id))

    def add(self, unit: Clause):
        lit = unit.unit_literal
        self._by_key.setdefault((lit.positive, lit.atom.name), {})[unit.id] = unit

    def remove(self, unit: Clause):
        lit = unit.unit_literal
        self._by_key.get((lit.positive, lit.atom.name), {}).pop(unit.id, None)

    def candidates(self, positive: bool, name: str) -> List[Clause]:
        return list(self._by_key.get((positive, name), {}).values())


def _unify_atoms(a1, a2, bindings: Bindings) -> Iterator[Bindings]:
    """원자 단일화. 등식은 양방향 모두 시도"""
    if a1.name != a2.name or len(a1.args) != len(a2.args):
        return
    if a1.name == "=":
        (l1, r1), (l2, r2) = a1.args, a2.args
        seen = []
        for x, y in ((l2, r2), (r2, l2)):
            if not (may_unify(l1, x) and may_unify(r1, y)):
                continue
            b = unify_with(l1, x, bindings)
            if b is not None:
                b = unify_with(r1, y, b)
            if b is not None and b not in seen:
                seen.append(b)
                yield b
        return
    b = bindings
    for x, y in zip(a1.args, a2.args):
        b = unify_with(x, y, b)
        if b is None:
            return
    yield b


def _match_atom(pattern, target) -> bool:
    """target 원자가 pattern 원자의 인스턴스인지 (등식은 양방향)"""
    if pattern.name != target.name or len(pattern.args) != len(target.args):
        return False
    if match_with(pattern, target, {}) is not None:
        return True
    if pattern.name == "=":
        flipped = type(pattern)(pattern.name, (pattern.args[1], pattern.args[0]))
        return match_with(flipped, target, {}) is not None
    return False


# ──────────────────────────────────────────────────────────────────────────────
# 패러모듈레이션
# ──────────────────────────────────────────────────────────────────────────────
def _from_equations(clause: Clause, knuth_bendix: bool) -> Iterator[Tuple[int, int, Term, Term]]:
    # knuth_bendix: 정렬된 등식과 비단위 절의 등식은 왼쪽에서만, 정렬 안 된 단위 등식은 양쪽
    left_only = knuth_bendix and not clause.is_unit
    for i, lit in enumerate(clause.literals):
        if lit.is_answer or not lit.is_equality or not lit.positive:
            continue
        sides = ((1, lit.lhs, lit.rhs), (2, lit.rhs, lit.lhs))
        if left_only or (knuth_bendix and clause.is_oriented(i)):
            sides = sides[:1]
        for side, l, r in sides:
            if not isinstance(l, Var):
                yield i, side, l, r


def _into_positions(clause: Clause, literals: Sequence[Literal],
                    knuth_bendix: bool) -> List[Tuple[int, Tuple[int, ...], Term]]:
    left_only = knuth_bendix and not clause.is_unit
    result = []
    for j, lit in enumerate(literals):
        if lit.is_answer:
            continue
        if lit.is_equality:
            sides = (1,) if left_only or (knuth_bendix and clause.is_oriented(j)) else (1, 2)
        else:
            sides = range(1, len(lit.atom.args) + 1)
        for k in sides:
            for path, sub in positions(lit.atom.args[k - 1], (k,)):
                result.append((j, path, sub))
    return result


def paramodulate(from_clause: Clause, into_clause: Clause, options,
                 given_is_from: bool = True) -> List[Clause]:
    """
    from 절의 양성 등식으로 into 절의 변수 아닌 부분항을 대체

    Args:
        options: knuth_bendix, para_from_units_only, para_into_units_only 속성
        given_is_from: 주어진 절이 from 쪽이면 para_from, 아니면 para_into 태그

    Returns:
        패러모듈런트 목록 (번호 미할당)
    """
    if options.para_from_units_only and not from_clause.is_unit:
        return []
    if options.para_into_units_only and not into_clause.is_unit:
        return []
    kb = options.knuth_bendix
    equations = list(_from_equations(from_clause, kb))
    if not equations:
        return []

    into_literals = shift_clause_literals(into_clause.literals, from_clause.num_vars)
    targets = _into_positions(into_clause, into_literals, kb)
    results = []
    for i, side, l, r in equations:
        for j, path, sub in targets:
            if not may_unify(l, sub):
                continue
            bindings = unify_with(l, sub, {})
            if bindings is None:
                continue
            s = resolve(bindings)
            replaced = Literal(into_literals[j].positive, replace_at(into_literals[j].atom, path, r))
            literals = [s.apply_literal(replaced if k == j else lit) for k, lit in enumerate(into_literals)]
            literals += [s.apply_literal(lit) for k, lit in enumerate(from_clause.literals) if k != i]
            from_ref = ClauseRef(from_clause.id, i + 1, (side,))
            into_ref = ClauseRef(into_clause.id, j + 1, path)
            primary = ParaFrom(from_ref, into_ref) if given_is_from else ParaInto(into_ref, from_ref)
            results.append(Clause(normalize_variables(literals), justification=Justification(primary)))
    return results


# ──────────────────────────────────────────────────────────────────────────────
# UR-resolution
# ──────────────────────────────────────────────────────────────────────────────
def ur_resolve(nucleus: Clause, units: UnitIndex, must_use: Optional[Clause] = None) -> List[Clause]:
    """
    핵 절의 리터럴 하나만 남기고 나머지를 단위 절로 모두 해소

    Args:
        must_use: 지정 시 이 단위가 위성으로 한 번 이상 쓰인 결과만 생성
    """
    core = [(k, lit) for k, lit in enumerate(nucleus.literals) if not lit.is_answer]
    if len(core) < 2:
        return []
    answers = nucleus.answer_literals
    base_offset = nucleus.num_vars
    results: List[Clause] = []

    def emit(target: Literal, bindings: Bindings, chosen):
        s = resolve(bindings)
        literals = [s.apply_literal(target)] + [s.apply_literal(a) for a in answers]
        for unit, offset in chosen:
            literals += [s.apply_literal(a) for a in shift_clause_literals(unit.answer_literals, offset)]
        justification = Justification(UR(nucleus.id, tuple(unit.id for unit, _ in chosen)))
        results.append(Clause(normalize_variables(literals), justification=justification))

    def search(target, others, k, bindings, offset, chosen, used):
        if k == len(others):
            if must_use is None or used:
                emit(target, bindings, chosen)
            return
        lit = others[k]
        for unit in units.candidates(not lit.positive, lit.atom.name):
            if unit.id == nucleus.id:
                continue
            atom = shift_term(unit.unit_literal.atom, offset)
            for b in _unify_atoms(lit.atom, atom, bindings):
                search(target, others, k + 1, b, offset + unit.num_vars,
                       chosen + [(unit, offset)], used or (must_use is not None and unit.id == must_use.id))

    for t, (_, target) in enumerate(core):
        others = [lit for m, (_, lit) in enumerate(core) if m != t]
        search(target, others, 0, {}, base_offset, [], False)
    return results


# ──────────────────────────────────────────────────────────────────────────────
# 단위 충돌 / 단위 삭제
# ──────────────────────────────────────────────────────────────────────────────
def unit_conflict(new_unit: Clause, units: UnitIndex) -> Optional[Clause]:
    """반대 부호 단위와 단일화되면 $ans 리터럴만 (없으면 $F) 남긴 성공 절"""
    lit = new_unit.unit_literal
    offset = new_unit.num_vars
    for unit in units.candidates(not lit.positive, lit.atom.name):
        if unit.id == new_unit.id:
            continue
        atom = shift_term(unit.unit_literal.atom, offset)
        for b in _unify_atoms(lit.atom, atom, {}):
            s = resolve(b)
            literals = [s.apply_literal(a) for a in new_unit.answer_literals]
            literals += [s.apply_literal(a) for a in shift_clause_literals(unit.answer_literals, offset)]
            justification = Justification(Binary(ClauseRef(new_unit.id, new_unit.unit_index),
                                                  ClauseRef(unit.id, unit.unit_index)))
            return Clause(normalize_variables(literals) or false_clause(), justification=justification)
    return None


def unit_delete(c: Clause, units: UnitIndex) -> Clause:
    """부정이 저장된 단위의 인스턴스인 리터럴 제거. 핵심 리터럴 2개 이상일 때만"""
    if c.core_count < 2:
        return c
    kept = []
    used: List[int] = []
    for lit in c.literals:
        deleted_by = None
        if not lit.is_answer:
            for unit in units.candidates(not lit.positive, lit.atom.name):
                if _match_atom(unit.unit_literal.atom, lit.atom):
                    deleted_by = unit.id
                    break
        if deleted_by is None:
            kept.append(lit)
        elif deleted_by not in used:
            used.append(deleted_by)
    if not used:
        return c
    return Clause(normalize_variables(kept) or false_clause(),
                  justification=c.justification.annotate(UnitDel(tuple(used))),
                  demod_id=None)
