"""Lossless tokenizer for MiniOO source.

Whitespace and comments are kept as *leading trivia* on the following token;
whatever trails the last real token hangs off the EOF token.  Concatenating
``tok.leading + tok.lexeme`` over the whole stream gives back the input.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass


class TokenKind(enum.Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    INTEGER = "integer-literal"
    STRING = "string-literal"
    OPERATOR = "operator"
    PUNCTUATION = "punctuation"
    EOF = "eof"


KEYWORDS = frozenset({
    "class", "public", "private", "protected", "void", "int", "string", "bool",
    "return", "if", "else", "while", "new", "this", "true", "false", "null",
})

# longest first so that "++" wins over "+"
OPERATORS = (
    "++", "--", "+=", "-=", "*=", "/=", "==", "!=", "<=", ">=", "&&", "||",
    "+", "-", "*", "/", "%", "=", "<", ">", "!",
)
PUNCTUATION = frozenset("{}();,.:")


class LexError(Exception):
    def __init__(self, message: str, line: int, column: int, path: str = "<string>"):
        super().__init__(f"{path}:{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.path = path


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int
    column: int
    offset: int
    leading: str = ""

    @property
    def end(self) -> int:
        return self.offset + len(self.lexeme)

    def __repr__(self) -> str:
        return f"Token({self.kind.value} {self.lexeme!r} @{self.line}:{self.column})"


class _Scanner:
    def __init__(self, source: str, path: str):
        self.src = source
        self.path = path
        self.pos = 0
        self.line = 1
        self.line_start = 0

    def _advance_to(self, new_pos: int) -> None:
        chunk = self.src[self.pos:new_pos]
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self.line_start = self.pos + chunk.rindex("\n") + 1
        self.pos = new_pos

    @property
    def column(self) -> int:
        return self.pos - self.line_start + 1

    def _error(self, message: str) -> LexError:
        return LexError(message, self.line, self.column, self.path)

    def _skip_trivia(self) -> str:
        src, start = self.src, self.pos
        while self.pos < len(src):
            ch = src[self.pos]
            if ch in " \t\r\n\f\v":
                self._advance_to(self.pos + 1)
            elif src.startswith("//", self.pos):
                nl = src.find("\n", self.pos)
                self._advance_to(len(src) if nl < 0 else nl)
            elif src.startswith("/*", self.pos):
                close = src.find("*/", self.pos + 2)
                if close < 0:
                    raise self._error("unterminated block comment")
                self._advance_to(close + 2)
            else:
                break
        return src[start:self.pos]

    def _string_end(self) -> int:
        src, i = self.src, self.pos + 1
        while i < len(src):
            ch = src[i]
            if ch == "\\":
                i += 2
                continue
            if ch == '"':
                return i + 1
            if ch == "\n":
                break
            i += 1
        raise self._error("unterminated string literal")

    def tokens(self) -> list[Token]:
        out: list[Token] = []
        src = self.src
        while True:
            leading = self._skip_trivia()
            line, column, start = self.line, self.column, self.pos
            if self.pos >= len(src):
                out.append(Token(TokenKind.EOF, "", line, column, start, leading))
                return out
            ch = src[start]
            if ch.isalpha() or ch == "_":
                end = start
                while end < len(src) and (src[end].isalnum() or src[end] == "_"):
                    end += 1
                word = src[start:end]
                kind = TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENTIFIER
            elif ch.isdigit():
                end = start
                while end < len(src) and src[end].isdigit():
                    end += 1
                kind = TokenKind.INTEGER
            elif ch == '"':
                end = self._string_end()
                kind = TokenKind.STRING
            elif ch in PUNCTUATION:
                end = start + 1
                kind = TokenKind.PUNCTUATION
            else:
                op = next((o for o in OPERATORS if src.startswith(o, start)), None)
                if op is None:
                    raise self._error(f"illegal character {ch!r}")
                end = start + len(op)
                kind = TokenKind.OPERATOR
            out.append(Token(kind, src[start:end], line, column, start, leading))
            self._advance_to(end)


def tokenize(source: str, path: str = "<string>") -> list[Token]:
    """Split *source* into tokens, the last one being EOF."""
    return _Scanner(source, path).tokens()


def untokenize(tokens: list[Token]) -> str:
    return "".join(t.leading + t.lexeme for t in tokens)
