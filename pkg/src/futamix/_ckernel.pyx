# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled interpreter kernel.  Same contract as ``_pykernel.execute``."""

from ._lower import UNSET, KernelFault
from .prims import FALSE, OPCODES, PrimError, PRIMS
from .values import Seq

NAME = "c"

cdef object _UNSET = UNSET
cdef object _FALSE = FALSE
cdef object _TRUE = "true"
cdef object _Seq = Seq
cdef object _PRIMS = PRIMS
cdef object _OPNAMES = OPCODES

# opcodes, in the order fixed by prims.OPCODES
cdef enum:
    OP_CONS = 0
    OP_CAR = 1
    OP_CDR = 2
    OP_ATOM = 3
    OP_EQ = 4
    OP_ADD = 5
    OP_SUB = 6
    OP_LT = 10
    OP_NUMEQ = 11
    OP_NOT = 12


class _Fault(Exception):
    def __init__(self, kind, detail):
        self.kind = kind
        self.detail = detail


cdef inline object _cons(object x, object s):
    cdef object n
    if type(s) is not _Seq:
        raise _Fault("TypeError", "cons onto a non-sequence")
    n = _Seq.__new__(_Seq)
    n.head = x
    n.tail = s
    n._len = s._len + 1
    n._hash = hash((x, s._hash))
    return n


cdef object _eval(tuple e, list env):
    cdef int tag = e[0]
    cdef int op
    cdef object a, b
    if tag == 1:
        a = env[<Py_ssize_t>e[1]]
        if a is _UNSET:
            raise _Fault("Unset", e[1])
        return a
    if tag == 0:
        return e[1]
    op = e[1]
    a = _eval(<tuple>e[2], env)
    if tag == 2:
        if op == OP_CAR or op == OP_CDR:
            if type(a) is _Seq and a._len:
                return a.head if op == OP_CAR else a.tail
            raise _Fault("TypeError", ("car" if op == OP_CAR else "cdr")
                         + " of empty sequence or non-sequence")
        if op == OP_NOT:
            return _TRUE if (type(a) is str and a == _FALSE) else _FALSE
        if op == OP_ATOM:
            return _FALSE if type(a) is _Seq else _TRUE
        raise _Fault("TypeError", "bad unary opcode")
    b = _eval(<tuple>e[3], env)
    if op == OP_CONS:
        return _cons(a, b)
    if op == OP_EQ:
        return _TRUE if a == b else _FALSE
    if op == OP_ADD or op == OP_SUB or op == OP_LT or op == OP_NUMEQ:
        if type(a) is not int or type(b) is not int:
            raise _Fault("TypeError", _OPNAMES[op] + " expects integers")
        if op == OP_ADD:
            return a + b
        if op == OP_SUB:
            return a - b
        if op == OP_LT:
            return _TRUE if a < b else _FALSE
        return _TRUE if a == b else _FALSE
    try:
        return _PRIMS[_OPNAMES[op]](a, b)
    except PrimError as err:
        raise _Fault("TypeError", str(err)) from None


cdef inline bint _falsy(object c):
    return (type(c) is str and c == _FALSE) or (type(c) is _Seq and not c._len)


def execute(lw, list env, long long budget):
    """Run from the entry block; returns ``(value, steps)``."""
    cdef tuple blocks = lw.blocks
    cdef tuple block, assigns, jump, asg
    cdef long long steps = 0
    cdef Py_ssize_t bi = lw.entry, ai = -1, i, n
    cdef int tag
    try:
        while True:
            block = <tuple>blocks[bi]
            assigns = <tuple>block[0]
            jump = <tuple>block[1]
            n = len(assigns)
            for i in range(n):
                ai = i
                steps += 1
                if steps > budget:
                    raise _Fault("StepBudgetExceeded", f"more than {budget} steps")
                asg = <tuple>assigns[i]
                env[<Py_ssize_t>asg[0]] = _eval(<tuple>asg[1], env)
            ai = -1
            steps += 1
            if steps > budget:
                raise _Fault("StepBudgetExceeded", f"more than {budget} steps")
            tag = jump[0]
            if tag == 0:
                bi = jump[1]
            elif tag == 1:
                if _falsy(_eval(<tuple>jump[1], env)):
                    bi = jump[3]
                else:
                    bi = jump[2]
            else:
                return _eval(<tuple>jump[1], env), steps
    except _Fault as f:
        raise KernelFault(f.kind, f.detail, bi, ai) from None
    except RecursionError:
        raise KernelFault("TypeError", "expression nesting too deep", bi, ai) from None
