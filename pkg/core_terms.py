"""
항, 리터럴, 절, 치환, 가중치와 출력 형식
- 모든 모듈이 공유하는 불변 값 타입
- 적용(application) 기호 a 는 이항 좌결합
- bird-print: a(x,y) 를 'x y' 로 출력
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

APPLY = "a"
PAIR = "pair"
EQUALS = "="
ANSWER = "$ans"
FALSE = "$F"

VARIABLE_INITIALS = "uvwxyz"
VARIABLE_NAMES = ("x", "y", "z", "u", "v", "w")

# 외연성 공리와 대각 탐색 목표에서 도입된 스콜렘 함수
SKOLEM_FUNCTIONS = frozenset({"n", "b", "c"})


class SymbolKind(str, Enum):
    APPLICATION = "application"
    PLAIN_FUNCTION = "plain-function"
    CONSTANT = "constant"
    SKOLEM = "skolem"
    ANSWER_PREDICATE = "answer-predicate"
    FALSE_PREDICATE = "false-predicate"


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int
    kind: SymbolKind

    @classmethod
    def infer(cls, name: str, arity: int, predicate: bool = False) -> "Symbol":
        """이름과 사용 위치로 기호 종류 결정"""
        if name == APPLY and arity == 2:
            kind = SymbolKind.APPLICATION
        elif name == ANSWER:
            kind = SymbolKind.ANSWER_PREDICATE
        elif name == FALSE:
            kind = SymbolKind.FALSE_PREDICATE
        elif arity == 0:
            kind = SymbolKind.CONSTANT
        elif name in SKOLEM_FUNCTIONS and not predicate:
            kind = SymbolKind.SKOLEM
        else:
            kind = SymbolKind.PLAIN_FUNCTION
        return cls(name, arity, kind)


def is_variable_name(name: str) -> bool:
    return bool(name) and name[0] in VARIABLE_INITIALS


class Var:
    """변수 (인덱스로 식별)"""

    __slots__ = ("index",)

    def __init__(self, index: int):
        self.index = index

    def __eq__(self, other):
        return isinstance(other, Var) and other.index == self.index

    def __hash__(self):
        return hash(("var", self.index))

    def __repr__(self):
        return f"Var({self.index})"

    @property
    def size(self) -> int:
        return 1


class Fn:
    """기호 적용 항. 해시와 크기는 생성 시 계산"""

    __slots__ = ("name", "args", "size", "_hash")

    def __init__(self, name: str, args: Tuple["Term", ...] = ()):
        self.name = name
        self.args = args
        self.size = 1 + sum(arg.size for arg in args)
        self._hash = hash((name, args))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Fn) and other._hash == self._hash
                and other.name == self.name and other.args == self.args)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Fn({self.name!r}, {self.args!r})"


Term = Union[Var, Fn]

_VAR_CACHE = [Var(i) for i in range(64)]


def var(index: int) -> Var:
    return _VAR_CACHE[index] if index < len(_VAR_CACHE) else Var(index)


def const(name: str) -> Fn:
    return Fn(name, ())


def app(*terms: Term) -> Term:
    """좌결합 적용: app(f, x, y) == a(a(f,x),y)"""
    result = terms[0]
    for arg in terms[1:]:
        result = Fn(APPLY, (result, arg))
    return result


def is_application(t: Term) -> bool:
    return isinstance(t, Fn) and t.name == APPLY and len(t.args) == 2


def spine(t: Term) -> Tuple[Term, List[Term]]:
    """적용 척추 분해: a(a(f,x),y) -> (f, [x, y])"""
    args = []
    while is_application(t):
        args.append(t.args[1])
        t = t.args[0]
    args.reverse()
    return t, args


def index_key(t: Term) -> Optional[Tuple[str, int]]:
    """인덱싱 키 (머리 기호, 척추 인자 수). 머리가 변수이면 None"""
    if isinstance(t, Var):
        return None
    nargs = 0
    while t.name == APPLY and len(t.args) == 2:
        nargs += 1
        t = t.args[0]
        if isinstance(t, Var):
            return None
    return t.name, nargs


def variables(t: Term) -> Iterator[int]:
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            yield s.index
        else:
            stack.extend(reversed(s.args))


def occurs(index: int, t: Term) -> bool:
    return any(i == index for i in variables(t))


def subterm_at(t: Term, path: Sequence[int]) -> Term:
    for i in path:
        t = t.args[i - 1]
    return t


def replace_at(t: Term, path: Sequence[int], new: Term) -> Term:
    if not path:
        return new
    i = path[0] - 1
    args = list(t.args)
    args[i] = replace_at(args[i], path[1:], new)
    return Fn(t.name, tuple(args))


def positions(t: Term, prefix: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], Term]]:
    """변수가 아닌 부분항 위치를 전위 순서로 나열"""
    if isinstance(t, Var):
        return
    yield prefix, t
    for i, arg in enumerate(t.args, start=1):
        yield from positions(arg, prefix + (i,))


def rename_term(t: Term, mapping: Dict[int, int]) -> Term:
    if isinstance(t, Var):
        return var(mapping[t.index])
    if not t.args:
        return t
    return Fn(t.name, tuple(rename_term(arg, mapping) for arg in t.args))


def shift_term(t: Term, offset: int) -> Term:
    if isinstance(t, Var):
        return var(t.index + offset)
    if not t.args or offset == 0:
        return t
    return Fn(t.name, tuple(shift_term(arg, offset) for arg in t.args))


# ──────────────────────────────────────────────────────────────────────────────
# 치환
# ──────────────────────────────────────────────────────────────────────────────
class Substitution:
    """변수 인덱스 -> 항. 동시 치환으로 적용 (멱등 치환을 전제)"""

    __slots__ = ("_map",)

    def __init__(self, bindings: Optional[Dict[int, Term]] = None):
        self._map = dict(bindings or {})

    @property
    def bindings(self) -> Dict[int, Term]:
        return dict(self._map)

    def __contains__(self, index: int) -> bool:
        return index in self._map

    def __len__(self):
        return len(self._map)

    def __eq__(self, other):
        return isinstance(other, Substitution) and other._map == self._map

    def __repr__(self):
        return f"Substitution({self._map!r})"

    def get(self, index: int) -> Optional[Term]:
        return self._map.get(index)

    def apply(self, t: Term) -> Term:
        if not self._map:
            return t
        return _apply(t, self._map)

    def apply_literal(self, lit: "Literal") -> "Literal":
        if not self._map:
            return lit
        return Literal(lit.positive, _apply(lit.atom, self._map))

    def restrict(self, indices: Iterable[int]) -> "Substitution":
        keep = set(indices)
        return Substitution({i: t for i, t in self._map.items() if i in keep})


def _apply(t: Term, mapping: Dict[int, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.index, t)
    if not t.args:
        return t
    args = tuple(_apply(arg, mapping) for arg in t.args)
    return t if args == t.args else Fn(t.name, args)


def apply_substitution(t: Term, s: Substitution) -> Term:
    return s.apply(t)


# ──────────────────────────────────────────────────────────────────────────────
# 리터럴
# ──────────────────────────────────────────────────────────────────────────────
class Literal:
    """부호 있는 원자. 등식 원자는 이름이 '=' 인 이항 Fn 으로 표현"""

    __slots__ = ("positive", "atom", "_hash")

    def __init__(self, positive: bool, atom: Fn):
        self.positive = positive
        self.atom = atom
        self._hash = hash((positive, atom))

    @classmethod
    def equality(cls, lhs: Term, rhs: Term, positive: bool = True) -> "Literal":
        return cls(positive, Fn(EQUALS, (lhs, rhs)))

    @classmethod
    def predicate(cls, name: str, args: Sequence[Term] = (), positive: bool = True) -> "Literal":
        return cls(positive, Fn(name, tuple(args)))

    def __eq__(self, other):
        return (isinstance(other, Literal) and other._hash == self._hash
                and other.positive == self.positive and other.atom == self.atom)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Literal({'+' if self.positive else '-'}{self.atom!r})"

    @property
    def is_equality(self) -> bool:
        return self.atom.name == EQUALS

    @property
    def is_answer(self) -> bool:
        return self.atom.name == ANSWER

    @property
    def is_false(self) -> bool:
        return self.atom.name == FALSE

    @property
    def lhs(self) -> Term:
        return self.atom.args[0]

    @property
    def rhs(self) -> Term:
        return self.atom.args[1]

    @property
    def weight(self) -> int:
        """기호/변수 출현 수. 등호는 세지 않고 $ans 는 0"""
        if self.is_answer:
            return 0
        if self.is_equality:
            return self.atom.size - 1
        return self.atom.size

    def negated(self) -> "Literal":
        return Literal(not self.positive, self.atom)

    def flipped(self) -> "Literal":
        return Literal(self.positive, Fn(EQUALS, (self.rhs, self.lhs)))

    def is_trivial_equality(self) -> bool:
        return self.is_equality and self.lhs == self.rhs


# ──────────────────────────────────────────────────────────────────────────────
# 도출 근거 (증명 태그)
# ──────────────────────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class ClauseRef:
    """'37.1.1' 형식: 절 번호, 리터럴 번호(1부터), 원자 내부 경로"""
    clause_id: int
    literal: int
    path: Tuple[int, ...] = ()

    def __str__(self):
        return ".".join(str(n) for n in (self.clause_id, self.literal) + self.path)


Position = ClauseRef


@dataclass(frozen=True)
class Input:
    def tags(self) -> List[str]:
        return []

    def parent_ids(self) -> Tuple[int, ...]:
        return ()


@dataclass(frozen=True)
class ParaFrom:
    from_ref: ClauseRef
    into_ref: ClauseRef

    def tags(self) -> List[str]:
        return ["para_from", str(self.from_ref), str(self.into_ref)]

    def parent_ids(self) -> Tuple[int, ...]:
        return self.from_ref.clause_id, self.into_ref.clause_id


@dataclass(frozen=True)
class ParaInto:
    into_ref: ClauseRef
    from_ref: ClauseRef

    def tags(self) -> List[str]:
        return ["para_into", str(self.into_ref), str(self.from_ref)]

    def parent_ids(self) -> Tuple[int, ...]:
        return self.into_ref.clause_id, self.from_ref.clause_id


@dataclass(frozen=True)
class UR:
    nucleus: int
    satellites: Tuple[int, ...]

    def tags(self) -> List[str]:
        return ["ur", str(self.nucleus)] + [str(s) for s in self.satellites]

    def parent_ids(self) -> Tuple[int, ...]:
        return (self.nucleus,) + self.satellites


@dataclass(frozen=True)
class Binary:
    c1: ClauseRef
    c2: ClauseRef

    def tags(self) -> List[str]:
        return ["binary", str(self.c1), str(self.c2)]

    def parent_ids(self) -> Tuple[int, ...]:
        return self.c1.clause_id, self.c2.clause_id


@dataclass(frozen=True)
class BackDemod:
    target: int

    def tags(self) -> List[str]:
        return ["back_demod", str(self.target)]

    def parent_ids(self) -> Tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class Demod:
    applied: Tuple[int, ...]

    def tags(self) -> List[str]:
        return ["demod"] + [str(i) for i in self.applied]


@dataclass(frozen=True)
class UnitDel:
    units: Tuple[int, ...]

    def tags(self) -> List[str]:
        return ["unit_del"] + [str(i) for i in self.units]


Primary = Union[Input, ParaFrom, ParaInto, UR, Binary, BackDemod]
Annotation = Union[Demod, UnitDel]


@dataclass(frozen=True)
class Justification:
    primary: Primary = field(default_factory=Input)
    annotations: Tuple[Annotation, ...] = ()

    def annotate(self, annotation: Annotation) -> "Justification":
        return Justification(self.primary, self.annotations + (annotation,))

    @property
    def demod_ids(self) -> Tuple[int, ...]:
        return tuple(i for a in self.annotations if isinstance(a, Demod) for i in a.applied)

    @property
    def unit_del_ids(self) -> Tuple[int, ...]:
        return tuple(i for a in self.annotations if isinstance(a, UnitDel) for i in a.units)

    def referenced_ids(self) -> Tuple[int, ...]:
        """근거에 등장하는 모든 번호 (데모듈레이터 사본 번호 포함)"""
        return self.primary.parent_ids() + self.demod_ids + self.unit_del_ids

    def render(self) -> str:
        tags = self.primary.tags()
        for annotation in self.annotations:
            tags.extend(annotation.tags())
        return "[" + ",".join(tags) + "]"


INPUT = Justification()


# ──────────────────────────────────────────────────────────────────────────────
# 절
# ──────────────────────────────────────────────────────────────────────────────
@dataclass(frozen=True, eq=False)
class Clause:
    literals: Tuple[Literal, ...]
    id: int = 0
    justification: Justification = INPUT
    demod_id: Optional[int] = None
    # knuth_bendix 아래 각 리터럴이 lhs > rhs 로 정렬되었는지 여부
    oriented: Tuple[bool, ...] = ()
    weight: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "weight", sum(lit.weight for lit in self.literals))

    @property
    def answer_literals(self) -> Tuple[Literal, ...]:
        return tuple(lit for lit in self.literals if lit.is_answer)

    @property
    def core_count(self) -> int:
        return sum(1 for lit in self.literals if not lit.is_answer)

    @property
    def is_unit(self) -> bool:
        return self.core_count == 1

    @property
    def is_success(self) -> bool:
        """$ans 리터럴(또는 $F)만 남은 절"""
        return all(lit.is_answer or lit.is_false for lit in self.literals)

    @property
    def unit_literal(self) -> Literal:
        return next(lit for lit in self.literals if not lit.is_answer)

    @property
    def unit_index(self) -> int:
        """단위 리터럴의 1부터 세는 번호"""
        return next(i for i, lit in enumerate(self.literals, start=1) if not lit.is_answer)

    @property
    def num_vars(self) -> int:
        indices = [i for lit in self.literals for i in variables(lit.atom)]
        return max(indices) + 1 if indices else 0

    def is_oriented(self, literal_index: int) -> bool:
        return bool(self.oriented) and self.oriented[literal_index]

    def with_id(self, clause_id: int) -> "Clause":
        return replace(self, id=clause_id)

    def __repr__(self):
        return f"Clause({self.id}, {render_literals(self.literals, bird=True)})"


def clause_weight(c: Clause) -> int:
    return c.weight


def normalize_variables(literals: Sequence[Literal]) -> Tuple[Literal, ...]:
    """첫 출현 순서대로 변수를 0부터 다시 번호 매김"""
    mapping: Dict[int, int] = {}
    for lit in literals:
        for i in variables(lit.atom):
            if i not in mapping:
                mapping[i] = len(mapping)
    if all(k == v for k, v in mapping.items()):
        return tuple(literals)
    return tuple(Literal(lit.positive, rename_term(lit.atom, mapping)) for lit in literals)


def shift_clause_literals(literals: Sequence[Literal], offset: int) -> Tuple[Literal, ...]:
    if offset == 0:
        return tuple(literals)
    return tuple(Literal(lit.positive, shift_term(lit.atom, offset)) for lit in literals)


def rename_apart(c1: Clause, c2: Clause) -> Tuple[Clause, Clause]:
    """c2 의 변수를 c1 의 변수 뒤로 밀어 공유 변수를 없앤다"""
    offset = c1.num_vars
    if offset == 0 or c2.num_vars == 0:
        return c1, c2
    return c1, replace(c2, literals=shift_clause_literals(c2.literals, offset))


def false_clause() -> Tuple[Literal, ...]:
    return (Literal.predicate(FALSE),)


# ──────────────────────────────────────────────────────────────────────────────
# 출력
# ──────────────────────────────────────────────────────────────────────────────
def variable_name(index: int) -> str:
    return VARIABLE_NAMES[index] if index < len(VARIABLE_NAMES) else f"v{index}"


def bird_print(t: Term) -> str:
    """a(x,y) 를 'x y' 로, 오른쪽 피연산자가 적용이면 괄호"""
    if isinstance(t, Var):
        return variable_name(t.index)
    if is_application(t):
        left, right = t.args
        right_text = bird_print(right)
        if is_application(right):
            right_text = f"({right_text})"
        return f"{bird_print(left)} {right_text}"
    if not t.args:
        return t.name
    return f"{t.name}({','.join(bird_print(arg) for arg in t.args)})"


def prefix_print(t: Term) -> str:
    if isinstance(t, Var):
        return variable_name(t.index)
    if not t.args:
        return t.name
    return f"{t.name}({','.join(prefix_print(arg) for arg in t.args)})"


def render_literal(lit: Literal, bird: bool = True) -> str:
    show = bird_print if bird else prefix_print
    if lit.is_equality:
        op = "=" if lit.positive else "!="
        if not bird:
            op = f" {op} "
        return f"{show(lit.lhs)}{op}{show(lit.rhs)}"
    text = show(lit.atom)
    return text if lit.positive else f"-{text}"


def render_literals(literals: Sequence[Literal], bird: bool = True) -> str:
    sep = "|" if bird else " | "
    return sep.join(render_literal(lit, bird) for lit in literals)
