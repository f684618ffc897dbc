"""Syntax tree for MiniOO.

Every node carries a :class:`Span` with 1-based start/end lines and the
character offsets of its first and last token, so the instrumenter can
rewrite text around a node without re-printing it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .lexer import Token


@dataclass(frozen=True)
class Span:
    start_line: int
    end_line: int
    start: int
    end: int


# -- expressions ------------------------------------------------------------

@dataclass(frozen=True)
class Name:
    name: str
    span: Span


@dataclass(frozen=True)
class This:
    span: Span


@dataclass(frozen=True)
class Literal:
    kind: str  # "int" | "string" | "bool" | "null"
    text: str
    span: Span


@dataclass(frozen=True)
class Member:
    target: "Expr"
    name: str
    span: Span


@dataclass(frozen=True)
class Call:
    receiver: Optional["Expr"]  # None means implicit `this`
    name: str
    args: tuple["Expr", ...]
    text: str  # call text as written, whitespace runs collapsed
    span: Span

    @property
    def line(self) -> int:
        return self.span.start_line


@dataclass(frozen=True)
class New:
    type_name: str
    args: tuple["Expr", ...]
    span: Span


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    span: Span


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"
    span: Span


@dataclass(frozen=True)
class Paren:
    inner: "Expr"
    span: Span


Expr = Union[Name, This, Literal, Member, Call, New, Binary, Unary, Paren]


# -- statements -------------------------------------------------------------

@dataclass(frozen=True)
class Declarator:
    name: str
    init: Optional[Expr]
    line: int


@dataclass(frozen=True)
class LocalDecl:
    type_name: str
    declarators: tuple[Declarator, ...]
    span: Span


@dataclass(frozen=True)
class Assign:
    target: Expr  # Name or Member
    op: str  # "=" or a compound operator
    value: Expr
    span: Span


@dataclass(frozen=True)
class IncDec:
    op: str  # "++" | "--"
    target: Expr
    prefix: bool
    span: Span


@dataclass(frozen=True)
class ExprStmt:
    expr: Expr
    span: Span


@dataclass(frozen=True)
class Return:
    value: Optional[Expr]
    span: Span


@dataclass(frozen=True)
class Block:
    stmts: tuple["Stmt", ...]
    span: Span


@dataclass(frozen=True)
class If:
    cond: Expr
    then: "Stmt"
    orelse: Optional["Stmt"]
    span: Span


@dataclass(frozen=True)
class While:
    cond: Expr
    body: "Stmt"
    span: Span


Stmt = Union[LocalDecl, Assign, IncDec, ExprStmt, Return, Block, If, While]


# -- declarations -----------------------------------------------------------

@dataclass(frozen=True)
class Param:
    type_name: str
    name: str


@dataclass(frozen=True)
class FieldDecl:
    type_name: str
    declarators: tuple[Declarator, ...]
    modifiers: tuple[str, ...]
    span: Span


@dataclass(frozen=True)
class MethodDecl:
    name: str
    return_type: Optional[str]  # None for constructors
    params: tuple[Param, ...]
    body: Block
    is_constructor: bool
    modifiers: tuple[str, ...]
    param_text: str
    span: Span

    @property
    def signature(self) -> str:
        return f"{self.name}({self.param_text})"


@dataclass(frozen=True)
class ClassDecl:
    name: str
    base_names: tuple[str, ...]
    field_decls: tuple[FieldDecl, ...]
    constructors: tuple[MethodDecl, ...]
    methods: tuple[MethodDecl, ...]
    span: Span
    name_line: int = 0


@dataclass(frozen=True)
class SyntaxTree:
    classes: tuple[ClassDecl, ...]
    source_path: str
    tokens: tuple[Token, ...] = field(repr=False, default=())


# -- traversal helpers ------------------------------------------------------

def child_stmts(stmt: Stmt) -> Iterator[Stmt]:
    if isinstance(stmt, Block):
        yield from stmt.stmts
    elif isinstance(stmt, If):
        yield stmt.then
        if stmt.orelse is not None:
            yield stmt.orelse
    elif isinstance(stmt, While):
        yield stmt.body


def stmt_exprs(stmt: Stmt) -> Iterator[Expr]:
    """Expressions owned directly by *stmt* (not by nested statements)."""
    if isinstance(stmt, LocalDecl):
        for d in stmt.declarators:
            if d.init is not None:
                yield d.init
    elif isinstance(stmt, Assign):
        yield stmt.target
        yield stmt.value
    elif isinstance(stmt, IncDec):
        yield stmt.target
    elif isinstance(stmt, ExprStmt):
        yield stmt.expr
    elif isinstance(stmt, Return):
        if stmt.value is not None:
            yield stmt.value
    elif isinstance(stmt, (If, While)):
        yield stmt.cond


def sub_exprs(expr: Expr) -> Iterator[Expr]:
    if isinstance(expr, Member):
        yield expr.target
    elif isinstance(expr, Call):
        if expr.receiver is not None:
            yield expr.receiver
        yield from expr.args
    elif isinstance(expr, New):
        yield from expr.args
    elif isinstance(expr, Binary):
        yield expr.left
        yield expr.right
    elif isinstance(expr, Unary):
        yield expr.operand
    elif isinstance(expr, Paren):
        yield expr.inner


def walk_expr(expr: Expr) -> Iterator[Expr]:
    """Pre-order walk, receivers and arguments left to right."""
    yield expr
    for sub in sub_exprs(expr):
        yield from walk_expr(sub)


def walk_stmts(stmt: Stmt) -> Iterator[Stmt]:
    yield stmt
    for child in child_stmts(stmt):
        yield from walk_stmts(child)
