"""
독립 조합자 재작성 엔진
- TRC / TRC* 규칙으로 바닥항(ground term) 정규화
- 새 상수에 적용해 외연적 동일성 확인
- 발견된 답과 명제 검증

증명기 코드(unify, rewrite, inference)를 쓰지 않고 자체 매처만 사용한다.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

from config import config
from core_terms import PAIR, Fn, Term, Var, app, const, var

logger = logging.getLogger(__name__)

Rule = Tuple[Term, Term]


@dataclass(frozen=True)
class RuleSet:
    name: str
    rules: Tuple[Rule, ...]

    def with_rules(self, extra: Iterable[Rule], name: Optional[str] = None) -> "RuleSet":
        extra = tuple(extra)
        if not extra:
            return self
        return RuleSet(name or f"{self.name}+{len(extra)}", self.rules + extra)

    def __len__(self):
        return len(self.rules)


def _pair(x: Term, y: Term) -> Fn:
    return Fn(PAIR, (x, y))


_x, _y, _z = var(0), var(1), var(2)
_k, _abst, _eq, _p1, _p2, _id, _F = (const(n) for n in ("k", "abst", "eq", "p1", "p2", "id", "F"))

_SHARED_RULES: Tuple[Rule, ...] = (
    (app(_p1, _pair(_x, _y)), _x),
    (app(_p2, _pair(_x, _y)), _y),
    (_pair(app(_p1, _x), app(_p2, _x)), _x),
    (app(_pair(_x, _y), _z), _pair(app(_x, _z), app(_y, _z))),
    (app(_eq, _pair(_x, _x)), _p1),
)

TRC_STAR = RuleSet("TRCstar", (
    (app(_k, _x, _y), _x),
    *_SHARED_RULES,
    (app(_abst, _x, _y, _z), app(_x, app(_k, _z), app(_y, _z))),
))

TRC = RuleSet("TRC", (
    (app(Fn("k", (_x,)), _y), _x),
    *_SHARED_RULES,
    (app(_abst, _x, _y, _z), app(_x, Fn("k", (_z,)), app(_y, _z))),
    (app(_id, _x), _x),
))

# F x y -> x x (대각 조합자 F 를 도입한 문제에서만)
DIAGONAL_RULE: Rule = (app(_F, _x, _y), app(_x, _x))

SYSTEMS: Dict[str, RuleSet] = {"trc": TRC, "trcstar": TRC_STAR}


def ruleset(name: str) -> RuleSet:
    try:
        return SYSTEMS[name.lower()]
    except KeyError:
        raise ValueError(f"알 수 없는 규칙 체계: {name} (trc | trcstar)")


# ──────────────────────────────────────────────────────────────────────────────
# 매칭
# ──────────────────────────────────────────────────────────────────────────────
def _match(pattern: Term, target: Term) -> Optional[Dict[int, Term]]:
    bindings: Dict[int, Term] = {}
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = bindings.get(p.index)
            if bound is None:
                bindings[p.index] = t
            elif bound != t:
                return None
            continue
        if isinstance(t, Var) or p.name != t.name or len(p.args) != len(t.args):
            return None
        stack.extend(zip(p.args, t.args))
    return bindings


def _substitute(t: Term, bindings: Dict[int, Term]) -> Term:
    if isinstance(t, Var):
        return bindings[t.index]
    if not t.args:
        return t
    return Fn(t.name, tuple(_substitute(a, bindings) for a in t.args))


def _is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    return all(_is_ground(a) for a in t.args)


def _symbols(t: Term, found: set) -> set:
    if isinstance(t, Fn):
        found.add(t.name)
        for a in t.args:
            _symbols(a, found)
    return found


# ──────────────────────────────────────────────────────────────────────────────
# 정규화
# ──────────────────────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class NormalForm:
    term: Term
    steps: int


@dataclass(frozen=True)
class CapExceeded:
    last: Term
    steps: int


Normalization = Union[NormalForm, CapExceeded]


def _rewrite_root(t: Fn, rules: RuleSet) -> Optional[Term]:
    for lhs, rhs in rules.rules:
        bindings = _match(lhs, t)
        if bindings is not None:
            return _substitute(rhs, bindings)
    return None


def _step_outermost(t: Term, rules: RuleSet) -> Optional[Term]:
    if isinstance(t, Var):
        return None
    reduct = _rewrite_root(t, rules)
    if reduct is not None:
        return reduct
    for i, arg in enumerate(t.args):
        new = _step_outermost(arg, rules)
        if new is not None:
            return Fn(t.name, t.args[:i] + (new,) + t.args[i + 1:])
    return None


def _step_innermost(t: Term, rules: RuleSet) -> Optional[Term]:
    if isinstance(t, Var):
        return None
    for i, arg in enumerate(t.args):
        new = _step_innermost(arg, rules)
        if new is not None:
            return Fn(t.name, t.args[:i] + (new,) + t.args[i + 1:])
    return _rewrite_root(t, rules)


_STRATEGIES: Dict[str, Callable[[Term, RuleSet], Optional[Term]]] = {
    "outermost": _step_outermost,
    "innermost": _step_innermost,
}


def normalize(t: Term, rules: RuleSet, cap: Optional[int] = None, strategy: str = "outermost") -> Normalization:
    """
    바닥항을 규칙으로 정규화 (기본은 최좌측-최외곽)

    Returns:
        NormalForm(term, steps) 또는 한도 도달 시 CapExceeded(last, steps)
    """
    if not _is_ground(t):
        raise ValueError("oracle 정규화는 변수 없는 항만 받음")
    step = _STRATEGIES[strategy]
    cap = config.ORACLE_STEP_CAP if cap is None else cap
    steps = 0
    try:
        while True:
            new = step(t, rules)
            if new is None:
                return NormalForm(t, steps)
            if steps >= cap:
                return CapExceeded(t, steps)
            t = new
            steps += 1
    except RecursionError:
        logger.debug(f"정규화 중 항 깊이 초과 ({steps}단계)")
        return CapExceeded(t, steps)


# ──────────────────────────────────────────────────────────────────────────────
# 외연적 비교
# ──────────────────────────────────────────────────────────────────────────────
class Verdict(str, Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


class Verification(str, Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


class FreshConstants:
    """입력에 없는 c1, c2, ... 를 차례로 발급"""

    def __init__(self, avoid: Iterable[str] = ()):
        self.avoid = set(avoid)
        self.counter = 0

    def __call__(self) -> Fn:
        while True:
            self.counter += 1
            name = f"c{self.counter}"
            if name not in self.avoid:
                self.avoid.add(name)
                return const(name)

    def take(self, n: int) -> List[Fn]:
        return [self() for _ in range(n)]


def check_extensional(lhs: Term, rhs: Term, n_args: int, rules: RuleSet,
                      cap: Optional[int] = None) -> Verdict:
    """양변을 n_args 개의 새 상수에 적용한 뒤 정규형이 같은지"""
    fresh = FreshConstants(_symbols(rhs, _symbols(lhs, set())))
    args = fresh.take(n_args)
    left = normalize(app(lhs, *args), rules, cap)
    right = normalize(app(rhs, *args), rules, cap)
    if isinstance(left, CapExceeded) or isinstance(right, CapExceeded):
        return Verdict.UNKNOWN
    return Verdict.EQUAL if left.term == right.term else Verdict.DISTINCT


def deep_check(lhs: Term, rhs: Term, rules: RuleSet, depth: int = 3, cap: Optional[int] = None,
               fresh: Optional[FreshConstants] = None) -> Verdict:
    """
    정규형이 다르면 합동(같은 머리, 인자별 비교)과 새 상수 적용을 depth 단계까지 재귀

    EQUAL 은 모든 말단 쌍이 같아졌을 때만. 한도 도달이 섞이면 UNKNOWN.
    """
    fresh = fresh or FreshConstants(_symbols(rhs, _symbols(lhs, set())))
    left, right = normalize(lhs, rules, cap), normalize(rhs, rules, cap)
    if isinstance(left, CapExceeded) or isinstance(right, CapExceeded):
        return Verdict.UNKNOWN
    s, t = left.term, right.term
    if s == t:
        return Verdict.EQUAL

    unknown = False
    if s.name == t.name and len(s.args) == len(t.args) and s.args:
        verdicts = [deep_check(a, b, rules, depth, cap, fresh) for a, b in zip(s.args, t.args)]
        if all(v is Verdict.EQUAL for v in verdicts):
            return Verdict.EQUAL
        unknown = any(v is Verdict.UNKNOWN for v in verdicts)
    if depth > 0:
        c = fresh()
        verdict = deep_check(app(s, c), app(t, c), rules, depth - 1, cap, fresh)
        if verdict is Verdict.EQUAL:
            return verdict
        unknown = unknown or verdict is Verdict.UNKNOWN
    return Verdict.UNKNOWN if unknown else Verdict.DISTINCT


def strategies_agree(t: Term, rules: RuleSet, cap: Optional[int] = None) -> Optional[bool]:
    """최외곽과 최내곽 정규형 비교. 어느 한쪽이 한도에 걸리면 None"""
    outer = normalize(t, rules, cap, "outermost")
    inner = normalize(t, rules, cap, "innermost")
    if isinstance(outer, CapExceeded) or isinstance(inner, CapExceeded):
        return None
    if outer.term != inner.term:
        logger.warning(f"전략별 정규형 불일치: {outer.term} / {inner.term}")
        return False
    return True


# ──────────────────────────────────────────────────────────────────────────────
# 답 / 명제 검증
# ──────────────────────────────────────────────────────────────────────────────
def verify_answer(problem, answer: Term, cap: Optional[int] = None, depth: int = 3) -> Verification:
    """
    문제의 정의 등식에 답을 넣어 확인

    Args:
        problem: expected 가 Answer 인 trc_corpus.Problem
    """
    expected = problem.expected
    equation = getattr(expected, "equation", None)
    if equation is None:
        raise ValueError(f"{problem.name}: 답 검증 등식이 없는 문제")
    rules = expected.rules()
    fresh = FreshConstants(_symbols(answer, set()))
    args = fresh.take(expected.n_args)
    lhs, rhs = equation(answer, args)
    verdict = deep_check(lhs, rhs, rules, depth, cap, fresh)
    logger.debug(f"{problem.name} 답 검증: {verdict.value}")
    return {
        Verdict.EQUAL: Verification.VERIFIED,
        Verdict.DISTINCT: Verification.REFUTED,
        Verdict.UNKNOWN: Verification.UNKNOWN,
    }[verdict]


@dataclass(frozen=True)
class Proposition:
    name: str
    lhs: Term
    rhs: Term
    n_args: int
    rules: RuleSet = TRC
    note: str = ""

    def check(self, cap: Optional[int] = None) -> Verdict:
        return check_extensional(self.lhs, self.rhs, self.n_args, self.rules, cap)


def _abst_power(n: int) -> Term:
    return app(*([_abst] * n))


def _k(t: Term) -> Fn:
    return Fn("k", (t,))


_b, _c1, _c2 = const("b"), const("c1"), const("c2")

PROPOSITIONS: Tuple[Proposition, ...] = (
    Proposition("1a", _abst_power(6), _id, 1, note="abst^6 = id"),
    Proposition("1b", _abst_power(4), _k(_k(_id)), 3, note="abst^4 = k(k(id))"),
    # x, y 를 상수로 고정하고 인자 하나 더 (모두 3개)
    Proposition("1c", app(_abst_power(4), _c1, _c2), _id, 1, note="abst^4 x y = id"),
    Proposition("2a", app(_abst, app(_abst, app(_abst, _b))), app(_abst, _b), 2,
                note="abst(abst(abst x)) = abst x"),
    Proposition("2b", app(_abst, app(_abst, _k(_b))), _k(_b), 2, note="abst(abst k(x)) = k(x)"),
    Proposition("2c", app(_abst, _k(_k(_b))), _k(_k(_b)), 3, note="abst k(k(x)) = k(k(x))"),
)


def check_propositions(cap: Optional[int] = None) -> Dict[str, Verdict]:
    return {p.name: p.check(cap) for p in PROPOSITIONS}
