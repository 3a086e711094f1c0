"""ES5 tokenizer."""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass
from typing import Any, Optional

from .diagnostics import AnalysisError
from .tree import SourceSpan

KEYWORDS = frozenset("""
    break case catch continue debugger default delete do else finally for
    function if in instanceof new return switch this throw try typeof var void
    while with class const enum export extends import super
""".split())

TOKEN_KINDS = ("identifier", "keyword", "punctuator", "number", "string",
               "regex", "boolean", "null", "eof")

_LINE_TERMINATORS = "\n\r\u2028\u2029"
_NEWLINE_RE = re.compile("\r\n|[\n\r\u2028\u2029]")

_SKIP_RE = re.compile(
    r"[ \t\v\f\u00a0\ufeff\u1680\u2000-\u200a\u202f\u205f\u3000]+"
    r"|//[^\n\r\u2028\u2029]*"
    r"|/\*[\s\S]*?\*/"
    r"|\r\n|[\n\r\u2028\u2029]"
)
_IDENT_RE = re.compile(
    r"(?:[^\W\d]|\$|\\u[0-9a-fA-F]{4})(?:[\w$\u200c\u200d]|\\u[0-9a-fA-F]{4})*"
)
_NUMBER_RE = re.compile(r"0[xX][0-9a-fA-F]+|(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")
_STRING_RE = re.compile(
    r'"(?:[^"\\\n\r\u2028\u2029]|\\(?:\r\n|[\s\S]))*"'
    r"|'(?:[^'\\\n\r\u2028\u2029]|\\(?:\r\n|[\s\S]))*'"
)
_PUNCT_RE = re.compile(
    r">>>=|===|!==|>>>|<<=|>>=|==|!=|<=|>=|&&|\|\||\+\+|--|\+=|-=|\*=|/=|%=|&=|\|=|\^=|<<|>>"
    r"|[{}()\[\];,<>+\-*/%&|^!~?:=.]"
)
_REGEX_RE = re.compile(
    r"/(?:[^/\\\[\n\r\u2028\u2029]|\\[^\n\r\u2028\u2029]|\[(?:[^\]\\\n\r\u2028\u2029]|\\[^\n\r\u2028\u2029])*\])+/[\w$]*"
)
_OCTAL_RE = re.compile(r"0[0-7]+$")
_ESCAPE_RE = re.compile(
    r"\\(?:u([0-9a-fA-F]{4})|x([0-9a-fA-F]{2})|([0-3][0-7]{0,2}|[4-7][0-7]?)|(\r\n|[\n\r\u2028\u2029])|([\s\S]))"
)
_SIMPLE_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "b": "\b", "f": "\f", "v": "\v"}

# tokens after which a '/' starts a division, not a regex
_VALUE_END_PUNCT = frozenset({")", "]", "}"})


@dataclass(slots=True)
class Token:
    kind: str
    text: str
    start: int
    end: int
    line: int
    col: int
    end_line: int
    end_col: int
    preceded_by_newline: bool
    value: Any = None
    file_id: str = "<input>"

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.file_id, self.line, self.col, self.end_line, self.end_col)

    def is_punct(self, text: str) -> bool:
        return self.kind == "punctuator" and self.text == text

    def is_keyword(self, text: str) -> bool:
        return self.kind == "keyword" and self.text == text


def decode_string(body: str) -> str:
    """Decode the escape sequences of a string literal body (quotes removed)."""

    def replace(m: re.Match) -> str:
        uni, hexa, octal, continuation, other = m.groups()
        if uni:
            return chr(int(uni, 16))
        if hexa:
            return chr(int(hexa, 16))
        if octal:
            return chr(int(octal, 8))
        if continuation:
            return ""
        return _SIMPLE_ESCAPES.get(other, other)

    return _ESCAPE_RE.sub(replace, body) if "\\" in body else body


def number_value(text: str):
    if text[:2] in ("0x", "0X"):
        return int(text, 16)
    if _OCTAL_RE.match(text):
        return int(text, 8)
    if any(c in text for c in ".eE"):
        return float(text)
    return int(text)


def _decode_identifier(text: str) -> str:
    return decode_string(text) if "\\" in text else text


class _Lines:
    """Offset to (line, column) mapping."""

    def __init__(self, text: str):
        self.starts = [0] + [m.end() for m in _NEWLINE_RE.finditer(text)]

    def position(self, offset: int) -> tuple[int, int]:
        index = bisect.bisect_right(self.starts, offset) - 1
        return index + 1, offset - self.starts[index]


def _regex_allowed(prev: Optional[Token]) -> bool:
    if prev is None:
        return True
    if prev.kind == "punctuator":
        return prev.text not in _VALUE_END_PUNCT
    if prev.kind == "keyword":
        return prev.text != "this"
    return False


def tokenize(source_text: str, path: str = "<input>", *, lenient: bool = False) -> list[Token]:
    """Split ES5 source text into tokens, ending with a single eof token.

    Comments and whitespace are dropped; each token records whether a line
    terminator (possibly inside a comment) precedes it.  With ``lenient``,
    lexing never fails: illegal characters become one-character punctuator
    tokens and unterminated strings run to the end of the line.
    """
    text = source_text[1:] if source_text.startswith("\ufeff") else source_text
    lines = _Lines(text)
    tokens: list[Token] = []
    pos = 0
    size = len(text)
    newline = False
    prev: Optional[Token] = None

    def emit(kind: str, start: int, end: int, value: Any = None) -> Token:
        nonlocal newline, prev
        line, col = lines.position(start)
        end_line, end_col = lines.position(end)
        tok = Token(kind, text[start:end], start, end, line, col, end_line, end_col,
                    newline, value, path)
        tokens.append(tok)
        newline = False
        prev = tok
        return tok

    def fail(message: str, start: int) -> AnalysisError:
        line, col = lines.position(start)
        return AnalysisError("syntax", message, SourceSpan(path, line, col, line, col))

    while pos < size:
        ch = text[pos]
        m = _SKIP_RE.match(text, pos)
        if m:
            chunk = m.group()
            if chunk[0] in _LINE_TERMINATORS or (chunk.startswith("/*") and any(c in chunk for c in _LINE_TERMINATORS)):
                newline = True
            pos = m.end()
            continue
        if text.startswith("/*", pos):
            if not lenient:
                raise fail("unterminated block comment", pos)
            break
        if ch.isalpha() or ch in "$_\\" or (ord(ch) > 127 and _IDENT_RE.match(text, pos)):
            m = _IDENT_RE.match(text, pos)
            if m:
                word = _decode_identifier(m.group())
                if word in KEYWORDS and "\\" not in m.group():
                    kind = "keyword"
                elif word in ("true", "false"):
                    kind = "boolean"
                elif word == "null":
                    kind = "null"
                else:
                    kind = "identifier"
                value = {"true": True, "false": False}.get(word) if kind == "boolean" else word
                emit(kind, pos, m.end(), None if kind == "null" else value)
                pos = m.end()
                continue
        if ch.isdigit() or (ch == "." and pos + 1 < size and text[pos + 1].isdigit()):
            m = _NUMBER_RE.match(text, pos)
            if m:
                emit("number", pos, m.end(), number_value(m.group()))
                pos = m.end()
                continue
        if ch in "'\"":
            m = _STRING_RE.match(text, pos)
            if m:
                emit("string", pos, m.end(), decode_string(m.group()[1:-1]))
                pos = m.end()
                continue
            if not lenient:
                raise fail("unterminated string literal", pos)
            stop = pos + 1
            while stop < size and text[stop] not in _LINE_TERMINATORS:
                stop += 1
            emit("string", pos, stop, text[pos + 1:stop])
            pos = stop
            continue
        if ch == "/" and _regex_allowed(prev):
            m = _REGEX_RE.match(text, pos)
            if m:
                emit("regex", pos, m.end())
                pos = m.end()
                continue
            if not lenient:
                raise fail("unterminated regular expression", pos)
        m = _PUNCT_RE.match(text, pos)
        if m:
            emit("punctuator", pos, m.end())
            pos = m.end()
            continue
        if not lenient:
            raise fail(f"illegal character {ch!r}", pos)
        emit("punctuator", pos, pos + 1)
        pos += 1

    emit("eof", size, size)
    return tokens


def code_lines(source_text: str) -> set[int]:
    """Line numbers (1-based) covered by at least one non-comment token."""
    covered: set[int] = set()
    for tok in tokenize(source_text, lenient=True)[:-1]:
        covered.update(range(tok.line, tok.end_line + 1))
    return covered
