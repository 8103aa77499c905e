"""
사전식 경로 순서(LPO)
- knuth_bendix 플래그 아래 등식을 재작성 규칙으로 정렬할 때 사용
"""

from enum import Enum
from typing import Dict, Iterable, Optional, Sequence, Tuple

from core_terms import Fn, Term, Var, occurs


class Order(str, Enum):
    GREATER = "greater"
    LESS = "less"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


class Orientation(str, Enum):
    LEFT_TO_RIGHT = "left-to-right"
    RIGHT_TO_LEFT = "right-to-left"
    UNORIENTABLE = "unorientable"


class Precedence:
    """
    기호의 전순서

    명시된 기호(precedence 지시문)가 항상 위이고, 나머지는 첫 등장 순서로
    나중에 등장한 기호가 더 크다.
    """

    def __init__(self, explicit: Sequence[str] = (), appearance: Sequence[str] = ()):
        self.explicit = tuple(explicit)
        self.appearance = tuple(appearance)
        self._rank: Dict[str, Tuple[int, int]] = {}
        for i, name in enumerate(appearance):
            self._rank.setdefault(name, (0, i))
        for i, name in enumerate(reversed(self.explicit)):
            self._rank[name] = (1, i)

    @classmethod
    def from_sequence(cls, names_greatest_first: Sequence[str]) -> "Precedence":
        return cls(explicit=names_greatest_first)

    @classmethod
    def from_appearance(cls, names: Iterable[str]) -> "Precedence":
        return cls(appearance=list(names))

    def rank(self, name: str) -> Tuple[int, int, str]:
        # 모르는 기호는 가장 아래, 이름으로 순서를 고정
        tier, position = self._rank.get(name, (-1, 0))
        return tier, position, name

    def greater(self, f: str, g: str) -> bool:
        return f != g and self.rank(f) > self.rank(g)

    def __repr__(self):
        ordered = sorted(self._rank, key=self.rank, reverse=True)
        return f"Precedence({' > '.join(ordered)})"


def lpo_greater(s: Term, t: Term, prec: Precedence) -> bool:
    """s >lpo t"""
    if isinstance(s, Var):
        return False
    if isinstance(t, Var):
        return occurs(t.index, s)
    for si in s.args:
        if si == t or lpo_greater(si, t, prec):
            return True
    if s.name == t.name and len(s.args) == len(t.args):
        for i, (si, ti) in enumerate(zip(s.args, t.args)):
            if si == ti:
                continue
            if not lpo_greater(si, ti, prec):
                return False
            return all(lpo_greater(s, tj, prec) for tj in t.args[i + 1:])
        return False
    if prec.greater(s.name, t.name):
        return all(lpo_greater(s, tj, prec) for tj in t.args)
    return False


def compare(t1: Term, t2: Term, prec: Precedence) -> Order:
    if t1 == t2:
        return Order.EQUAL
    if lpo_greater(t1, t2, prec):
        return Order.GREATER
    if lpo_greater(t2, t1, prec):
        return Order.LESS
    return Order.INCOMPARABLE


def orient(lhs: Term, rhs: Term, prec: Precedence) -> Orientation:
    order = compare(lhs, rhs, prec)
    if order is Order.GREATER:
        return Orientation.LEFT_TO_RIGHT
    if order is Order.LESS:
        return Orientation.RIGHT_TO_LEFT
    return Orientation.UNORIENTABLE
