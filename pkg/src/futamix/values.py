"""Universal first-order data: symbols, integers and sequences.

Symbols are plain ``str``, integers are plain ``int`` and sequences are
:class:`Seq`, an immutable singly linked list.  ``car``/``cdr``/``cons`` are
O(1) and every node caches its hash and length, so structural comparison of
large programs-as-data stays cheap.
"""

from __future__ import annotations

import re
import sys
from typing import Iterable, Iterator, Union

__all__ = [
    "Seq", "NIL", "Value", "TRUE", "FALSE", "ParseError", "TrailingInput",
    "parse_datum", "parse_data", "print_datum", "is_symbol_name", "truthy",
    "from_py", "to_py",
]

# integers are arbitrary precision and must always print
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

TRUE = "true"
FALSE = "false"


class Seq:
    __slots__ = ("head", "tail", "_len", "_hash")

    def __init__(self, head=None, tail: "Seq | None" = None):
        if tail is None:
            # only NIL is built this way
            self.head = None
            self.tail = None
            self._len = 0
            self._hash = 0x5EC0
        else:
            self.head = head
            self.tail = tail
            self._len = tail._len + 1
            self._hash = hash((head, tail._hash))

    @staticmethod
    def of(*items) -> "Seq":
        return Seq.from_iter(items)

    @staticmethod
    def from_iter(items: Iterable) -> "Seq":
        if not isinstance(items, (list, tuple)):
            items = list(items)
        s = NIL
        for x in reversed(items):
            s = Seq(x, s)
        return s

    def __len__(self) -> int:
        return self._len

    def __bool__(self) -> bool:
        return self._len > 0

    def __iter__(self) -> Iterator:
        s = self
        while s._len:
            yield s.head
            s = s.tail

    def __getitem__(self, i: int):
        if i < 0:
            i += self._len
        if not 0 <= i < self._len:
            raise IndexError(i)
        s = self
        for _ in range(i):
            s = s.tail
        return s.head

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Seq):
            return NotImplemented
        a, b = self, other
        if a._len != b._len or a._hash != b._hash:
            return False
        while a._len:
            if a is b:
                return True
            x, y = a.head, b.head
            if x is not y and not (type(x) is type(y) and x == y):
                return False
            a, b = a.tail, b.tail
        return True

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __repr__(self) -> str:
        return f"Seq({print_datum(self)})"


NIL = Seq()

Value = Union[int, str, Seq]

_SYMBOL_RE = re.compile(r"[A-Za-z_+\-*=<>?!.:][A-Za-z0-9_+\-*=<>?!.:]*\Z")
_INT_RE = re.compile(r"-?[0-9]+\Z")


def is_symbol_name(name) -> bool:
    return (isinstance(name, str) and _SYMBOL_RE.match(name) is not None
            and _INT_RE.match(name) is None)


def truthy(v) -> bool:
    """Conditional truth: ``false`` and the empty sequence are false."""
    return not (v == FALSE or v is NIL or (isinstance(v, Seq) and not v._len))


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None):
        if line is not None:
            message = f"{message} at line {line}, column {column}"
        super().__init__(message)
        self.line = line
        self.column = column


class TrailingInput(ParseError):
    pass


_TOKEN_RE = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


def _tokens(text: str):
    pos = 0
    line, line_start = 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        tok = m.group()
        col = pos - line_start + 1
        if tok[0] in " \t\r\n\f\v":
            nl = tok.count("\n")
            if nl:
                line += nl
                line_start = pos + tok.rindex("\n") + 1
        elif tok[0] != ";":
            yield tok, line, col
        pos = m.end()


def _atom(tok: str, line: int, col: int):
    if _INT_RE.match(tok):
        return int(tok)
    if _SYMBOL_RE.match(tok):
        return tok
    raise ParseError(f"bad token {tok!r}", line, col)


def _read(tokens):
    """Read one datum from the token iterator, or return a sentinel at EOF."""
    stack: list[list] = []
    for tok, line, col in tokens:
        if tok == "(":
            stack.append([])
            continue
        if tok == ")":
            if not stack:
                raise ParseError("unbalanced ')'", line, col)
            item = Seq.from_iter(stack.pop())
        else:
            item = _atom(tok, line, col)
        if not stack:
            return item
        stack[-1].append(item)
    if stack:
        raise ParseError("unexpected end of input: unclosed '('")
    return _EOF


_EOF = object()


def parse_datum(text: str) -> Value:
    """Parse exactly one datum from ``text``."""
    toks = _tokens(text)
    v = _read(toks)
    if v is _EOF:
        raise ParseError("empty input", 1, 1)
    for tok, line, col in toks:
        raise TrailingInput(f"trailing input {tok!r}", line, col)
    return v


def parse_data(text: str) -> list:
    """Parse a whitespace-separated series of data."""
    toks = _tokens(text)
    out = []
    while True:
        v = _read(toks)
        if v is _EOF:
            return out
        out.append(v)


def print_datum(v: Value) -> str:
    parts: list[str] = []
    _emit(v, parts)
    return "".join(parts)


def _emit(v, parts: list) -> None:
    if isinstance(v, Seq):
        parts.append("(")
        first = True
        for x in v:
            if not first:
                parts.append(" ")
            first = False
            _emit(x, parts)
        parts.append(")")
    elif isinstance(v, bool):
        raise TypeError("booleans are not data; use the symbols true/false")
    elif isinstance(v, (int, str)):
        parts.append(str(v))
    else:
        raise TypeError(f"not a datum: {v!r}")


def from_py(x) -> Value:
    """Convert nested Python lists/tuples of ints and strs into a Value."""
    if isinstance(x, (list, tuple)):
        return Seq.from_iter([from_py(y) for y in x])
    if isinstance(x, bool):
        return TRUE if x else FALSE
    if isinstance(x, (int, str, Seq)):
        return x
    raise TypeError(f"cannot convert {x!r}")


def to_py(v: Value):
    if isinstance(v, Seq):
        return [to_py(x) for x in v]
    return v
