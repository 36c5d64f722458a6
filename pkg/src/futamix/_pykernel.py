"""Pure-Python interpreter kernel: lowered expressions become closures."""

from __future__ import annotations

from ._lower import (E_CONST, E_UN, E_VAR, J_GOTO, J_IF, UNSET, KernelFault,
                     Lowered)
from .prims import FALSE, OPCODES, PrimError, PRIMS
from .values import Seq

NAME = "python"


class _Fault(Exception):
    def __init__(self, kind, detail):
        self.kind = kind
        self.detail = detail


def _compile(e):
    tag = e[0]
    if tag == E_CONST:
        v = e[1]
        return lambda env: v
    if tag == E_VAR:
        i = e[1]

        def read(env):
            v = env[i]
            if v is UNSET:
                raise _Fault("Unset", i)
            return v
        return read
    op = OPCODES[e[1]]
    a = _compile(e[2])
    if tag == E_UN:
        if op == "car":
            def car(env):
                x = a(env)
                if type(x) is Seq and x._len:
                    return x.head
                raise _Fault("TypeError", "car of empty sequence or non-sequence")
            return car
        if op == "cdr":
            def cdr(env):
                x = a(env)
                if type(x) is Seq and x._len:
                    return x.tail
                raise _Fault("TypeError", "cdr of empty sequence or non-sequence")
            return cdr
        if op == "not":
            def not_(env):
                x = a(env)
                return "true" if type(x) is str and x == FALSE else FALSE
            return not_
        if op == "atom?":
            return lambda env: FALSE if type(a(env)) is Seq else "true"
        raise AssertionError(op)
    b = _compile(e[3])
    if op == "cons":
        def cons(env):
            x = a(env)
            s = b(env)
            if type(s) is Seq:
                return Seq(x, s)
            raise _Fault("TypeError", "cons onto a non-sequence")
        return cons
    if op == "eq?":
        return lambda env: "true" if a(env) == b(env) else FALSE
    if op == "+":
        def add(env):
            x = a(env)
            y = b(env)
            if type(x) is int and type(y) is int:
                return x + y
            raise _Fault("TypeError", "+ expects integers")
        return add
    if op == "-":
        def sub(env):
            x = a(env)
            y = b(env)
            if type(x) is int and type(y) is int:
                return x - y
            raise _Fault("TypeError", "- expects integers")
        return sub
    if op == "=":
        def num_eq(env):
            x = a(env)
            y = b(env)
            if type(x) is int and type(y) is int:
                return "true" if x == y else FALSE
            raise _Fault("TypeError", "= expects integers")
        return num_eq
    if op == "<":
        def less(env):
            x = a(env)
            y = b(env)
            if type(x) is int and type(y) is int:
                return "true" if x < y else FALSE
            raise _Fault("TypeError", "< expects integers")
        return less
    fn = PRIMS[op]

    def generic(env):
        try:
            return fn(a(env), b(env))
        except PrimError as err:
            raise _Fault("TypeError", str(err)) from None
    return generic


def _build(lw: Lowered):
    out = []
    for assigns, jump in lw.blocks:
        cassigns = tuple((slot, _compile(e)) for slot, e in assigns)
        if jump[0] == J_GOTO:
            cj = jump
        elif jump[0] == J_IF:
            cj = (J_IF, _compile(jump[1]), jump[2], jump[3])
        else:
            cj = (jump[0], _compile(jump[1]))
        out.append((cassigns, cj))
    return out


_cache: dict = {}


def execute(lw: Lowered, env: list, budget: int):
    """Run from the entry block; returns ``(value, steps)``."""
    blocks = _cache.get(id(lw))
    if blocks is None or blocks[0] is not lw:
        blocks = (lw, _build(lw))
        if len(_cache) > 64:
            _cache.clear()
        _cache[id(lw)] = blocks
    blocks = blocks[1]
    steps = 0
    bi = lw.entry
    ai = -1
    try:
        while True:
            assigns, jump = blocks[bi]
            ai = 0
            for slot, fn in assigns:
                steps += 1
                if steps > budget:
                    raise _Fault("StepBudgetExceeded", f"more than {budget} steps")
                env[slot] = fn(env)
                ai += 1
            ai = -1
            steps += 1
            if steps > budget:
                raise _Fault("StepBudgetExceeded", f"more than {budget} steps")
            tag = jump[0]
            if tag == J_GOTO:
                bi = jump[1]
            elif tag == J_IF:
                c = jump[1](env)
                if (type(c) is str and c == FALSE) or (type(c) is Seq and not c._len):
                    bi = jump[3]
                else:
                    bi = jump[2]
            else:
                return jump[1](env), steps
    except _Fault as f:
        raise KernelFault(f.kind, f.detail, bi, ai) from None
    except RecursionError:
        raise KernelFault("TypeError", "expression nesting too deep", bi, ai) from None
