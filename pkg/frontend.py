"""
OTTER 방언 입력 파서와 출력 렌더러
- set / clear / assign / precedence 지시문, list(usable|sos) 블록
- 병치(juxtaposition) 는 좌결합 적용, a(x,y) 접두 형식과 동일
- 증명 블록, 통계 출력, 증명 파일 읽기
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from core_terms import (
    APPLY, EQUALS, UR, BackDemod, Binary, Clause, ClauseRef, Demod, Fn, Input, Justification,
    Literal, ParaFrom, ParaInto, Symbol, Term, UnitDel, is_variable_name, render_literals, var,
)
from saturation import FLAG_NAMES, PARAMETER_NAMES, LimitReached, Outcome, ProofFound, ProverOptions
from term_order import Precedence
from utils import format_seconds

logger = logging.getLogger(__name__)

PROOF_HEADER = "---------------- PROOF ----------------"
PROOF_FOOTER = "------------ end of proof -------------"
STATISTICS_HEADER = "-------------- statistics -------------"


class ParseError(Exception):
    """입력 형식 오류 (줄/열 위치 포함)"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ArityError(ParseError):
    """같은 이름이 서로 다른 인자 수로 사용됨"""


# ──────────────────────────────────────────────────────────────────────────────
# 토큰화
# ──────────────────────────────────────────────────────────────────────────────
_TOKEN_RE = re.compile(r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>%[^\n]*)
  | (?P<ident>[A-Za-z0-9_$]+)
  | (?P<neq>!=)
  | (?P<op>[(),|=.>\[\]-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str       # ident / op
    text: str
    line: int
    column: int
    call: bool = False  # 식별자 바로 뒤에 '(' (공백 없음)


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise ParseError(f"알 수 없는 문자 {text[pos]!r}", line, column)
        kind = m.lastgroup
        if kind == "newline":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            call = m.end() < len(text) and text[m.end()] == "("
            tokens.append(Token("ident", m.group(), line, column, call))
        elif kind in ("neq", "op"):
            tokens.append(Token("op", m.group(), line, column))
        pos = m.end()
    return tokens


# ──────────────────────────────────────────────────────────────────────────────
# 파싱 결과
# ──────────────────────────────────────────────────────────────────────────────
@dataclass
class ParsedInput:
    options: ProverOptions
    usable: List[Clause] = field(default_factory=list)
    sos: List[Clause] = field(default_factory=list)
    source: str = "<input>"
    signature: Dict[str, Symbol] = field(default_factory=dict)
    # 기호 첫 등장 순서 (precedence 지시문이 없을 때의 기본 순서)
    appearance: List[str] = field(default_factory=list)

    def precedence_for(self, options: Optional[ProverOptions] = None) -> Precedence:
        options = options or self.options
        return Precedence(options.precedence or (), self.appearance)

    @property
    def clauses(self) -> List[Clause]:
        return list(self.usable) + list(self.sos)


class _Parser:
    def __init__(self, tokens: Sequence[Token]):
        self.tokens = tokens
        self.pos = 0
        self.signature: Dict[str, Symbol] = {}
        self.appearance: List[str] = []
        self._vars: Dict[str, int] = {}

    # ── 토큰 조작 ─────────────────────────────────────────────────────────────
    def peek(self, offset: int = 0) -> Optional[Token]:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, text: str) -> bool:
        token = self.peek()
        return token is not None and token.text == text

    def next(self) -> Token:
        token = self.peek()
        if token is None:
            last = self.tokens[-1] if self.tokens else None
            raise ParseError("입력이 예상보다 일찍 끝남", last.line if last else 1, last.column if last else 1)
        self.pos += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.next()
        if token.text != text:
            raise ParseError(f"'{text}' 가 필요한데 '{token.text}'", token.line, token.column)
        return token

    def expect_ident(self) -> Token:
        token = self.next()
        if token.kind != "ident":
            raise ParseError(f"식별자가 필요한데 '{token.text}'", token.line, token.column)
        return token

    # ── 기호표 ────────────────────────────────────────────────────────────────
    def declare(self, name: str, arity: int, token: Token, predicate: bool = False):
        known = self.signature.get(name)
        if known is None:
            self.signature[name] = Symbol.infer(name, arity, predicate)
            self.appearance.append(name)
        elif known.arity != arity:
            raise ArityError(f"'{name}' 가 인자 수 {known.arity} 와 {arity} 로 사용됨", token.line, token.column)

    # ── 항 ────────────────────────────────────────────────────────────────────
    def _starts_primary(self) -> bool:
        token = self.peek()
        return token is not None and (token.kind == "ident" or token.text == "(")

    def parse_term(self) -> Term:
        """병치 항: primary+ (좌결합)"""
        start = self.peek()
        term = self.parse_primary()
        while self._starts_primary():
            right = self.parse_primary()
            self.declare(APPLY, 2, start)
            term = Fn(APPLY, (term, right))
        return term

    def parse_primary(self) -> Term:
        token = self.next()
        if token.text == "(":
            term = self.parse_term()
            self.expect(")")
            return term
        if token.kind != "ident":
            raise ParseError(f"항이 필요한데 '{token.text}'", token.line, token.column)
        if token.call:
            if is_variable_name(token.text):
                raise ParseError(f"변수 '{token.text}' 에 인자 목록을 붙일 수 없음", token.line, token.column)
            self.expect("(")
            args = [self.parse_term()]
            while self.at(","):
                self.next()
                args.append(self.parse_term())
            self.expect(")")
            if token.text == APPLY and len(args) != 2:
                raise ArityError(f"적용 기호 '{APPLY}' 는 인자 2개만 허용", token.line, token.column)
            self.declare(token.text, len(args), token)
            return Fn(token.text, tuple(args))
        if is_variable_name(token.text):
            index = self._vars.setdefault(token.text, len(self._vars))
            return var(index)
        self.declare(token.text, 0, token)
        return Fn(token.text)

    # ── 리터럴 / 절 ───────────────────────────────────────────────────────────
    def parse_literal(self) -> Literal:
        start = self.peek()
        negated = False
        if self.at("-"):
            self.next()
            negated = True
        left = self.parse_term()
        if self.at("=") or self.at("!="):
            positive = self.next().text == "="
            right = self.parse_term()
            return Literal(positive != negated, Fn(EQUALS, (left, right)))
        if not isinstance(left, Fn) or left.name == APPLY:
            raise ParseError("리터럴은 등식이거나 술어 원자여야 함", start.line, start.column)
        # 술어로 쓰인 이름은 함수 기호표에서 술어로 다시 기록
        self.signature[left.name] = Symbol.infer(left.name, len(left.args), predicate=True)
        return Literal(not negated, left)

    def skip_clause_prefix(self):
        """'0 []' 접두 무시"""
        token, bracket = self.peek(), self.peek(1)
        if token is not None and token.kind == "ident" and token.text.isdigit() and bracket is not None \
                and bracket.text == "[":
            self.pos += 2
            while not self.at("]"):
                self.next()
            self.next()

    def parse_clause(self, end: str = ".") -> Tuple[Literal, ...]:
        self._vars = {}
        literals = [self.parse_literal()]
        while self.at("|"):
            self.next()
            literals.append(self.parse_literal())
        self.expect(end)
        return tuple(literals)

    # ── 지시문 ────────────────────────────────────────────────────────────────
    def parse_file(self) -> Tuple[dict, Dict[str, Token], List[Tuple[Literal, ...]], List[Tuple[Literal, ...]]]:
        values: dict = {}
        where: Dict[str, Token] = {}
        usable: List[Tuple[Literal, ...]] = []
        sos: List[Tuple[Literal, ...]] = []
        while self.peek() is not None:
            head = self.expect_ident()
            name = head.text
            if name in ("set", "clear"):
                self.expect("(")
                flag = self.expect_ident()
                self.expect(")")
                self.expect(".")
                if flag.text not in FLAG_NAMES:
                    raise ParseError(f"알 수 없는 플래그 '{flag.text}'", flag.line, flag.column)
                values[flag.text] = name == "set"
                where[flag.text] = flag
            elif name == "assign":
                self.expect("(")
                param = self.expect_ident()
                self.expect(",")
                value = self.expect_ident()
                self.expect(")")
                self.expect(".")
                if param.text not in PARAMETER_NAMES:
                    raise ParseError(f"알 수 없는 매개변수 '{param.text}'", param.line, param.column)
                if not value.text.isdigit():
                    raise ParseError(f"정수가 필요한데 '{value.text}'", value.line, value.column)
                values[param.text] = int(value.text)
                where[param.text] = param
            elif name == "precedence":
                self.expect("(")
                names = [self.expect_ident().text]
                while self.at(">"):
                    self.next()
                    names.append(self.expect_ident().text)
                self.expect(")")
                self.expect(".")
                values["precedence"] = tuple(names)
                where["precedence"] = head
            elif name == "list":
                self.expect("(")
                which = self.expect_ident()
                self.expect(")")
                self.expect(".")
                if which.text not in ("usable", "sos"):
                    raise ParseError(f"알 수 없는 목록 '{which.text}'", which.line, which.column)
                target = usable if which.text == "usable" else sos
                while not self.at("end_of_list"):
                    if self.peek() is None:
                        raise ParseError("end_of_list 없이 입력이 끝남", which.line, which.column)
                    self.skip_clause_prefix()
                    target.append(self.parse_clause())
                self.next()
                self.expect(".")
            else:
                raise ParseError(f"알 수 없는 지시문 '{name}'", head.line, head.column)
        return values, where, usable, sos


def _build_options(values: dict, where: Dict[str, Token]) -> ProverOptions:
    try:
        return ProverOptions(**values)
    except ValidationError as e:
        error = e.errors()[0]
        name = str(error["loc"][0]) if error.get("loc") else ""
        token = where.get(name)
        raise ParseError(f"'{name}' 값 오류: {error['msg']}",
                         token.line if token else 0, token.column if token else 0)


def parse(text: str, source: str = "<input>") -> ParsedInput:
    """
    입력 파일 파싱

    Raises:
        ParseError: 형식 오류, 알 수 없는 지시문
        ArityError: 한 이름을 서로 다른 인자 수로 사용
    """
    parser = _Parser(tokenize(text))
    values, where, usable, sos = parser.parse_file()
    options = _build_options(values, where)
    logger.debug(f"{source}: usable {len(usable)}개, sos {len(sos)}개")
    return ParsedInput(
        options=options,
        usable=[Clause(lits) for lits in usable],
        sos=[Clause(lits) for lits in sos],
        source=source,
        signature=parser.signature,
        appearance=parser.appearance,
    )


def parse_term(text: str) -> Term:
    """항 하나 파싱 (CLI normalize / verify 용)"""
    parser = _Parser(tokenize(text))
    term = parser.parse_term()
    token = parser.peek()
    if token is not None:
        raise ParseError(f"항 뒤에 남은 입력 '{token.text}'", token.line, token.column)
    return term


def parse_clause(text: str) -> Tuple[Literal, ...]:
    """마침표로 끝나는 절 하나 파싱"""
    parser = _Parser(tokenize(text))
    literals = parser.parse_clause()
    token = parser.peek()
    if token is not None:
        raise ParseError(f"절 뒤에 남은 입력 '{token.text}'", token.line, token.column)
    return literals


# ──────────────────────────────────────────────────────────────────────────────
# 출력
# ──────────────────────────────────────────────────────────────────────────────
def render_clause(c, bird: bool = True) -> str:
    literals = c.literals if isinstance(c, Clause) else c
    return render_literals(literals, bird)


def render_input(parsed: ParsedInput) -> str:
    """ParsedInput 을 다시 읽을 수 있는 입력 파일로"""
    options = parsed.options
    bird = options.bird_print
    lines = []
    for name in FLAG_NAMES:
        if getattr(options, name):
            lines.append(f"set({name}).")
    defaults = ProverOptions()
    for name in PARAMETER_NAMES:
        value = getattr(options, name)
        if value is not None and value != getattr(defaults, name):
            lines.append(f"assign({name},{int(value)}).")
    if options.precedence:
        lines.append(f"precedence({' > '.join(options.precedence)}).")
    for title, clauses in (("usable", parsed.usable), ("sos", parsed.sos)):
        lines.append("")
        lines.append(f"list({title}).")
        lines.extend(f"{render_clause(c, bird)}." for c in clauses)
        lines.append("end_of_list.")
    return "\n".join(lines) + "\n"


def render_proof_line(c: Clause, bird: bool = True) -> str:
    ids = f"{c.demod_id},{c.id}" if c.demod_id is not None else f"{c.id}"
    return f"{ids} {c.justification.render()} {render_clause(c, bird)}."


def render_statistics(statistics) -> List[str]:
    lines = [STATISTICS_HEADER]
    for label, value in statistics.rows():
        lines.append(f"{label:<28}{value:>10}")
    return lines


def render_outcome(outcome: Outcome, bird: bool = True, statistics: bool = True) -> str:
    """탐색 결과를 증명 블록과 통계 꼬리말로"""
    lines: List[str] = []
    if isinstance(outcome, ProofFound):
        success = outcome.success
        lines.append(f"----> UNIT CONFLICT at {format_seconds(outcome.elapsed)} sec ----> "
                     f"{success.id} {success.justification.render()}")
        lines.append("")
        lines.append(f"{render_clause(success, bird)}.")
        lines.append("")
        lines.append(PROOF_HEADER)
        lines.append("")
        lines.extend(render_proof_line(c, bird) for c in outcome.proof)
        lines.append("")
        lines.append(PROOF_FOOTER)
    elif isinstance(outcome, LimitReached):
        lines.append(f"Search stopped by {outcome.which} limit.")
    else:
        lines.append("Search stopped because sos empty.")
    if statistics:
        lines.append("")
        lines.extend(render_statistics(outcome.statistics))
    return "\n".join(lines) + "\n"


# ──────────────────────────────────────────────────────────────────────────────
# 증명 파일 읽기
# ──────────────────────────────────────────────────────────────────────────────
_ENTRY_START = re.compile(r"(?m)^\s*(?=\d+(?:,\d+)?\s*\[)")
_ENTRY_RE = re.compile(r"\s*(\d+)(?:,(\d+))?\s*\[([^\]]*)\](.*)", re.DOTALL)
_REF_RE = re.compile(r"\d+(?:\.\d+)+")


def _parse_ref(text: str) -> ClauseRef:
    if not _REF_RE.fullmatch(text):
        raise ValueError(f"위치 형식 오류: {text!r}")
    numbers = [int(n) for n in text.split(".")]
    return ClauseRef(numbers[0], numbers[1], tuple(numbers[2:]))


def parse_justification(text: str) -> Justification:
    """'[para_from,12.1.1,18.1.1.1,demod,3]' 의 괄호 안쪽을 근거 값으로"""
    items = [item.strip() for item in text.split(",") if item.strip()]
    primary = Input()
    annotations = []
    i = 0

    def numbers_from(k: int) -> Tuple[Tuple[int, ...], int]:
        found = []
        while k < len(items) and items[k].isdigit():
            found.append(int(items[k]))
            k += 1
        return tuple(found), k

    first = True
    while i < len(items):
        tag = items[i]
        if first and tag in ("para_from", "para_into", "binary"):
            a, b = _parse_ref(items[i + 1]), _parse_ref(items[i + 2])
            primary = {"para_from": lambda: ParaFrom(a, b),
                       "para_into": lambda: ParaInto(a, b),
                       "binary": lambda: Binary(a, b)}[tag]()
            i += 3
        elif first and tag == "ur":
            ids, i = numbers_from(i + 1)
            if len(ids) < 2:
                raise ValueError("ur 근거에는 핵과 위성 번호가 필요")
            primary = UR(ids[0], ids[1:])
        elif first and tag == "back_demod":
            ids, i = numbers_from(i + 1)
            if len(ids) != 1:
                raise ValueError("back_demod 근거에는 대상 번호 하나가 필요")
            primary = BackDemod(ids[0])
        elif tag == "demod":
            ids, i = numbers_from(i + 1)
            annotations.append(Demod(ids))
        elif tag == "unit_del":
            ids, i = numbers_from(i + 1)
            annotations.append(UnitDel(ids))
        else:
            raise ValueError(f"알 수 없는 근거 태그 {tag!r}")
        first = False
    return Justification(primary, tuple(annotations))


def parse_proof(text: str) -> List[Clause]:
    """
    증명 블록 (또는 증명 줄만 있는 파일) 을 절 목록으로

    Raises:
        ParseError: 줄 형식 오류
    """
    if PROOF_HEADER in text:
        text = text.split(PROOF_HEADER, 1)[1]
    if PROOF_FOOTER in text:
        text = text.split(PROOF_FOOTER, 1)[0]
    text = text.replace("\\$", "$")
    proof: List[Clause] = []
    for chunk in _ENTRY_START.split(text):
        if not chunk.strip():
            continue
        m = _ENTRY_RE.match(chunk)
        if m is None:
            raise ParseError(f"증명 줄 형식 오류: {chunk.strip()[:40]!r}")
        clause_id = int(m.group(2) or m.group(1))
        demod_id = int(m.group(1)) if m.group(2) else None
        try:
            justification = parse_justification(m.group(3))
        except (ValueError, IndexError) as e:
            raise ParseError(f"절 {clause_id} 근거 오류: {e}")
        literals = parse_clause(" ".join(m.group(4).split()))
        proof.append(Clause(literals, id=clause_id, justification=justification, demod_id=demod_id))
    return proof
