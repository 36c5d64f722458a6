"""Primitive operations of L, shared by the interpreter and the specializer."""

from __future__ import annotations

from .values import FALSE, TRUE, Seq


class PrimError(Exception):
    """A primitive was applied to values of the wrong shape."""


def _int(x, op):
    if type(x) is not int:
        raise PrimError(f"{op} expects integers")
    return x


def _quotient(a, b):
    _int(a, "quotient"), _int(b, "quotient")
    if b == 0:
        raise PrimError("quotient by zero")
    q = abs(a) // abs(b)
    return q if (a < 0) == (b < 0) else -q


def _remainder(a, b):
    return a - b * _quotient(a, b)


def _cons(x, s):
    if type(s) is not Seq:
        raise PrimError("cons onto a non-sequence")
    return Seq(x, s)


def _car(s):
    if type(s) is not Seq or not s._len:
        raise PrimError("car of empty sequence or non-sequence")
    return s.head


def _cdr(s):
    if type(s) is not Seq or not s._len:
        raise PrimError("cdr of empty sequence or non-sequence")
    return s.tail


def _bool(b):
    return TRUE if b else FALSE


PRIMS = {
    "cons": _cons,
    "car": _car,
    "cdr": _cdr,
    "atom?": lambda x: _bool(type(x) is not Seq),
    "eq?": lambda x, y: _bool(x == y),
    "+": lambda a, b: _int(a, "+") + _int(b, "+"),
    "-": lambda a, b: _int(a, "-") - _int(b, "-"),
    "*": lambda a, b: _int(a, "*") * _int(b, "*"),
    "quotient": _quotient,
    "remainder": _remainder,
    "<": lambda a, b: _bool(_int(a, "<") < _int(b, "<")),
    "=": lambda a, b: _bool(_int(a, "=") == _int(b, "=")),
    "not": lambda x: _bool(x == FALSE),
}

# opcode numbering used by the lowered form; order is part of the kernel ABI
OPCODES = ("cons", "car", "cdr", "atom?", "eq?", "+", "-", "*", "quotient",
           "remainder", "<", "=", "not")
OPCODE = {name: i for i, name in enumerate(OPCODES)}


def apply_prim(op: str, args):
    return PRIMS[op](*args)
