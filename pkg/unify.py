"""
단일화(mgu)와 단방향 매칭
- 발생 검사(occurs check)는 항상 수행
- 실패는 예외 대신 None 으로 반환
"""

from typing import Dict, Optional

from core_terms import Fn, Substitution, Term, Var

Bindings = Dict[int, Term]


def _walk(t: Term, bindings: Bindings) -> Term:
    while isinstance(t, Var):
        bound = bindings.get(t.index)
        if bound is None:
            return t
        t = bound
    return t


def _occurs(index: int, t: Term, bindings: Bindings) -> bool:
    stack = [t]
    while stack:
        s = _walk(stack.pop(), bindings)
        if isinstance(s, Var):
            if s.index == index:
                return True
        else:
            stack.extend(s.args)
    return False


def unify_with(t1: Term, t2: Term, bindings: Bindings) -> Optional[Bindings]:
    """
    기존 삼각 바인딩을 확장하는 단일화

    Returns:
        새 바인딩 사전 (입력은 변경하지 않음) 또는 실패 시 None
    """
    b = dict(bindings)
    stack = [(t1, t2)]
    while stack:
        s, t = stack.pop()
        s = _walk(s, b)
        t = _walk(t, b)
        if s is t:
            continue
        if isinstance(s, Var):
            if isinstance(t, Var) and t.index == s.index:
                continue
            if _occurs(s.index, t, b):
                return None
            b[s.index] = t
            continue
        if isinstance(t, Var):
            if _occurs(t.index, s, b):
                return None
            b[t.index] = s
            continue
        if s.name != t.name or len(s.args) != len(t.args):
            return None
        if s._hash == t._hash and s == t:
            continue
        stack.extend(zip(s.args, t.args))
    return b


def resolve(bindings: Bindings) -> Substitution:
    """삼각 바인딩을 멱등 치환으로 펼친다"""
    return Substitution({i: _resolve_term(t, bindings) for i, t in bindings.items()})


def _resolve_term(t: Term, bindings: Bindings) -> Term:
    t = _walk(t, bindings)
    if isinstance(t, Var) or not t.args:
        return t
    args = tuple(_resolve_term(arg, bindings) for arg in t.args)
    return t if args == t.args else Fn(t.name, args)


def unify(t1: Term, t2: Term) -> Optional[Substitution]:
    """최일반 단일자. 기호/인자 수 불일치나 발생 검사 실패 시 None"""
    bindings = unify_with(t1, t2, {})
    return None if bindings is None else resolve(bindings)


def match_with(pattern: Term, target: Term, bindings: Bindings) -> Optional[Bindings]:
    b = dict(bindings)
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = b.get(p.index)
            if bound is None:
                b[p.index] = t
            elif bound != t:
                return None
            continue
        if isinstance(t, Var) or p.name != t.name or len(p.args) != len(t.args):
            return None
        stack.extend(zip(p.args, t.args))
    return b


def match(pattern: Term, target: Term) -> Optional[Substitution]:
    """apply(pattern, s) == target 인 s. 대상 항은 인스턴스화하지 않음"""
    bindings = match_with(pattern, target, {})
    return None if bindings is None else Substitution(bindings)


def may_unify(s: Term, t: Term) -> bool:
    """단일화 전 빠른 선별: 머리 기호와 한 단계 아래 인자만 비교"""
    if isinstance(s, Var) or isinstance(t, Var):
        return True
    if s.name != t.name or len(s.args) != len(t.args):
        return False
    for a, b in zip(s.args, t.args):
        if isinstance(a, Fn) and isinstance(b, Fn) and (a.name != b.name or len(a.args) != len(b.args)):
            return False
    return True
