"""Recursive-descent parser for MiniOO, plus the lossless emitter.

Grammar (informal)::

    program    := class*
    class      := access? 'class' IDENT (':' IDENT)? '{' member* '}'
    member     := access* (ctor | method | field)
    ctor       := IDENT '(' params ')' block          -- IDENT is the class name
    method     := (type | 'void') IDENT '(' params ')' block
    field      := type declarator (',' declarator)* ';'
    stmt       := block | local | if | while | return | incdec ';'
                | expr assignop expr ';' | expr ';'
    expr       := precedence climbing over || && == != < > <= >= + - * / %
    unary      := ('-' | '!') unary | postfix
    postfix    := primary ('.' IDENT | '(' args ')')*

Parsing stops at the first error.
"""
from __future__ import annotations

import re
from typing import Optional

from .lexer import Token, TokenKind, tokenize, untokenize
from .syntax import (
    Assign, Binary, Block, Call, ClassDecl, Declarator, Expr, ExprStmt, FieldDecl,
    If, IncDec, Literal, LocalDecl, Member, MethodDecl, Name, New, Param, Paren,
    Return, Span, Stmt, SyntaxTree, This, Unary, While,
)

ACCESS_MODIFIERS = ("public", "private", "protected")
BUILTIN_TYPES = ("int", "string", "bool")
ASSIGN_OPS = ("=", "+=", "-=", "*=", "/=")

BINARY_PRECEDENCE = {
    "||": 1,
    "&&": 2,
    "==": 3, "!=": 3,
    "<": 4, ">": 4, "<=": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6, "%": 6,
}

_WS_RUN = re.compile(r"\s+")


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int, path: str = "<string>"):
        super().__init__(f"{path}:{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.path = path


def _describe(tok: Token) -> str:
    return "end of file" if tok.kind is TokenKind.EOF else repr(tok.lexeme)


class Parser:
    def __init__(self, tokens: list[Token], source: str, path: str = "<string>"):
        self.tokens = tokens
        self.source = source
        self.path = path
        self.index = 0

    # -- token utilities ----------------------------------------------------

    def _peek(self, ahead: int = 0) -> Token:
        i = min(self.index + ahead, len(self.tokens) - 1)
        return self.tokens[i]

    def _advance(self) -> Token:
        tok = self.tokens[self.index]
        if tok.kind is not TokenKind.EOF:
            self.index += 1
        return tok

    def _is(self, lexeme: str, ahead: int = 0) -> bool:
        tok = self._peek(ahead)
        return tok.lexeme == lexeme and tok.kind not in (TokenKind.STRING, TokenKind.EOF)

    def _is_ident(self, ahead: int = 0) -> bool:
        return self._peek(ahead).kind is TokenKind.IDENTIFIER

    def _error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self._peek()
        return ParseError(message, tok.line, tok.column, self.path)

    def _expect(self, lexeme: str) -> Token:
        if not self._is(lexeme):
            raise self._error(f"expected {lexeme!r}, found {_describe(self._peek())}")
        return self._advance()

    def _expect_ident(self) -> Token:
        if not self._is_ident():
            raise self._error(f"expected identifier, found {_describe(self._peek())}")
        return self._advance()

    def _span(self, first: Token) -> Span:
        last = self.tokens[self.index - 1]
        return Span(first.line, last.line, first.offset, last.end)

    def _text(self, first: Token) -> str:
        last = self.tokens[self.index - 1]
        return _WS_RUN.sub(" ", self.source[first.offset:last.end])

    # -- declarations -------------------------------------------------------

    def parse_program(self, path: str) -> SyntaxTree:
        classes = []
        while self._peek().kind is not TokenKind.EOF:
            classes.append(self._class())
        return SyntaxTree(tuple(classes), path, tuple(self.tokens))

    def _modifiers(self) -> tuple[str, ...]:
        mods = []
        while self._peek().lexeme in ACCESS_MODIFIERS and self._peek().kind is TokenKind.KEYWORD:
            mods.append(self._advance().lexeme)
        return tuple(mods)

    def _class(self) -> ClassDecl:
        first = self._peek()
        self._modifiers()
        self._expect("class")
        name_tok = self._expect_ident()
        bases: tuple[str, ...] = ()
        if self._is(":"):
            self._advance()
            bases = (self._expect_ident().lexeme,)
        self._expect("{")
        fields, ctors, methods = [], [], []
        while not self._is("}"):
            if self._peek().kind is TokenKind.EOF:
                raise self._error("expected '}', found end of file")
            member = self._member(name_tok.lexeme)
            if isinstance(member, FieldDecl):
                fields.append(member)
            elif member.is_constructor:
                ctors.append(member)
            else:
                methods.append(member)
        self._expect("}")
        return ClassDecl(
            name_tok.lexeme, bases, tuple(fields), tuple(ctors), tuple(methods),
            self._span(first), name_tok.line,
        )

    def _type(self) -> str:
        tok = self._peek()
        if tok.kind is TokenKind.IDENTIFIER or (
            tok.kind is TokenKind.KEYWORD and tok.lexeme in BUILTIN_TYPES
        ):
            return self._advance().lexeme
        raise self._error(f"expected type, found {_describe(tok)}")

    def _member(self, class_name: str):
        first = self._peek()
        mods = self._modifiers()
        if self._is_ident() and self._peek().lexeme == class_name and self._is("(", 1):
            name = self._advance().lexeme
            params, param_text = self._params()
            body = self._block()
            return MethodDecl(name, None, params, body, True, mods, param_text, self._span(first))
        if self._is("void"):
            return_type = self._advance().lexeme
        else:
            return_type = self._type()
        name_tok = self._expect_ident()
        if self._is("("):
            params, param_text = self._params()
            body = self._block()
            return MethodDecl(
                name_tok.lexeme, return_type, params, body, False, mods, param_text,
                self._span(first),
            )
        if return_type == "void":
            raise self._error(f"expected '(', found {_describe(self._peek())}")
        declarators = self._declarators(name_tok)
        self._expect(";")
        return FieldDecl(return_type, declarators, mods, self._span(first))

    def _params(self) -> tuple[tuple[Param, ...], str]:
        open_tok = self._expect("(")
        params = []
        if not self._is(")"):
            while True:
                type_name = self._type()
                params.append(Param(type_name, self._expect_ident().lexeme))
                if not self._is(","):
                    break
                self._advance()
        close_tok = self._expect(")")
        raw = self.source[open_tok.end:close_tok.offset]
        text = raw.strip() if "\n" not in raw else _WS_RUN.sub(" ", raw).strip()
        return tuple(params), text

    def _declarators(self, name_tok: Token) -> tuple[Declarator, ...]:
        out = []
        while True:
            init = None
            if self._is("="):
                self._advance()
                init = self._expr()
            out.append(Declarator(name_tok.lexeme, init, name_tok.line))
            if not self._is(","):
                return tuple(out)
            self._advance()
            name_tok = self._expect_ident()

    # -- statements ---------------------------------------------------------

    def _block(self) -> Block:
        first = self._expect("{")
        stmts = []
        while not self._is("}"):
            if self._peek().kind is TokenKind.EOF:
                raise self._error("expected '}', found end of file")
            stmts.append(self._stmt())
        self._expect("}")
        return Block(tuple(stmts), self._span(first))

    def _starts_local_decl(self) -> bool:
        tok = self._peek()
        if tok.kind is TokenKind.KEYWORD and tok.lexeme in BUILTIN_TYPES:
            return True
        return self._is_ident() and self._is_ident(1)

    def _stmt(self) -> Stmt:
        first = self._peek()
        if self._is("{"):
            return self._block()
        if self._is("if"):
            self._advance()
            self._expect("(")
            cond = self._expr()
            self._expect(")")
            then = self._stmt()
            orelse = None
            if self._is("else"):
                self._advance()
                orelse = self._stmt()
            return If(cond, then, orelse, self._span(first))
        if self._is("while"):
            self._advance()
            self._expect("(")
            cond = self._expr()
            self._expect(")")
            body = self._stmt()
            return While(cond, body, self._span(first))
        if self._is("return"):
            self._advance()
            value = None if self._is(";") else self._expr()
            self._expect(";")
            return Return(value, self._span(first))
        if self._starts_local_decl():
            type_name = self._type()
            declarators = self._declarators(self._expect_ident())
            self._expect(";")
            return LocalDecl(type_name, declarators, self._span(first))
        if self._is("++") or self._is("--"):
            op = self._advance().lexeme
            target = self._assign_target(self._postfix())
            self._expect(";")
            return IncDec(op, target, True, self._span(first))
        expr = self._expr()
        if self._is("++") or self._is("--"):
            op = self._advance().lexeme
            self._expect(";")
            return IncDec(op, self._assign_target(expr, first), False, self._span(first))
        if self._peek().kind is TokenKind.OPERATOR and self._peek().lexeme in ASSIGN_OPS:
            target = self._assign_target(expr, first)
            op = self._advance().lexeme
            value = self._expr()
            self._expect(";")
            return Assign(target, op, value, self._span(first))
        self._expect(";")
        return ExprStmt(expr, self._span(first))

    def _assign_target(self, expr: Expr, at: Optional[Token] = None) -> Expr:
        if isinstance(expr, (Name, Member)):
            return expr
        raise self._error("invalid assignment target", at)

    # -- expressions --------------------------------------------------------

    def _expr(self, min_prec: int = 1) -> Expr:
        first = self._peek()
        left = self._unary()
        while True:
            tok = self._peek()
            prec = BINARY_PRECEDENCE.get(tok.lexeme) if tok.kind is TokenKind.OPERATOR else None
            if prec is None or prec < min_prec:
                return left
            self._advance()
            right = self._expr(prec + 1)
            left = Binary(tok.lexeme, left, right, self._span(first))

    def _unary(self) -> Expr:
        first = self._peek()
        if first.kind is TokenKind.OPERATOR and first.lexeme in ("-", "!"):
            self._advance()
            operand = self._unary()
            return Unary(first.lexeme, operand, self._span(first))
        return self._postfix()

    def _postfix(self) -> Expr:
        first = self._peek()
        expr = self._primary()
        while True:
            if self._is("."):
                self._advance()
                name = self._expect_ident().lexeme
                expr = Member(expr, name, self._span(first))
            elif self._is("("):
                if isinstance(expr, Name):
                    receiver, name = None, expr.name
                elif isinstance(expr, Member):
                    receiver, name = expr.target, expr.name
                else:
                    raise self._error("expression is not callable")
                args = self._args()
                expr = Call(receiver, name, args, self._text(first), self._span(first))
            else:
                return expr

    def _args(self) -> tuple[Expr, ...]:
        self._expect("(")
        args = []
        if not self._is(")"):
            while True:
                args.append(self._expr())
                if not self._is(","):
                    break
                self._advance()
        self._expect(")")
        return tuple(args)

    def _primary(self) -> Expr:
        tok = self._peek()
        if tok.kind is TokenKind.IDENTIFIER:
            self._advance()
            return Name(tok.lexeme, self._span(tok))
        if tok.kind is TokenKind.INTEGER:
            self._advance()
            return Literal("int", tok.lexeme, self._span(tok))
        if tok.kind is TokenKind.STRING:
            self._advance()
            return Literal("string", tok.lexeme, self._span(tok))
        if tok.kind is TokenKind.KEYWORD:
            if tok.lexeme in ("true", "false"):
                self._advance()
                return Literal("bool", tok.lexeme, self._span(tok))
            if tok.lexeme == "null":
                self._advance()
                return Literal("null", tok.lexeme, self._span(tok))
            if tok.lexeme == "this":
                self._advance()
                return This(self._span(tok))
            if tok.lexeme == "new":
                self._advance()
                type_name = self._expect_ident().lexeme
                args = self._args()
                return New(type_name, args, self._span(tok))
        if self._is("("):
            self._advance()
            inner = self._expr()
            self._expect(")")
            return Paren(inner, self._span(tok))
        raise self._error(f"expected expression, found {_describe(tok)}")


def parse(source: str, path: str = "<string>") -> SyntaxTree:
    """Parse MiniOO *source*; raises LexError or ParseError on the first problem."""
    tokens = tokenize(source, path)
    return Parser(tokens, source, path).parse_program(path)


def emit(tree: SyntaxTree) -> str:
    """Source text of *tree*, trivia included."""
    return untokenize(list(tree.tokens))
