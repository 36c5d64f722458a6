"""Lowering of L programs to the flat form both interpreter kernels execute.

Variables become slot numbers and labels become block indices.  Expressions
are nested tuples::

    (0, value)            constant
    (1, slot)             variable read
    (2, opcode, a)        unary primitive
    (3, opcode, a, b)     binary primitive

Jumps are ``(0, target)``, ``(1, cond, then, else)`` or ``(2, expr)``.
"""

from __future__ import annotations

from .lang import Const, Goto, If, Program, Var, program_vars
from .prims import OPCODE

E_CONST, E_VAR, E_UN, E_BIN = 0, 1, 2, 3
J_GOTO, J_IF, J_RETURN = 0, 1, 2


class Lowered:
    __slots__ = ("program", "names", "slots", "labels", "entry", "params",
                 "blocks", "assigned")

    def __init__(self, p: Program):
        self.program = p
        self.names = program_vars(p)
        self.slots = {x: i for i, x in enumerate(self.names)}
        self.labels = [b.label for b in p.blocks]
        index = {l: i for i, l in enumerate(self.labels)}
        self.entry = index[p.entry]
        self.params = tuple(self.slots[x] for x in p.params)
        self.assigned = set(self.params)
        blocks = []
        for b in p.blocks:
            assigns = []
            for x, e in b.assigns:
                self.assigned.add(self.slots[x])
                assigns.append((self.slots[x], self._expr(e)))
            j = b.jump
            if isinstance(j, Goto):
                jump = (J_GOTO, index[j.target])
            elif isinstance(j, If):
                jump = (J_IF, self._expr(j.cond), index[j.then], index[j.else_])
            else:
                jump = (J_RETURN, self._expr(j.expr))
            blocks.append((tuple(assigns), jump))
        self.blocks = tuple(blocks)

    def _expr(self, e):
        if isinstance(e, Const):
            return (E_CONST, e.value)
        if isinstance(e, Var):
            return (E_VAR, self.slots[e.name])
        args = [self._expr(a) for a in e.args]
        if len(args) == 1:
            return (E_UN, OPCODE[e.op], args[0])
        return (E_BIN, OPCODE[e.op], args[0], args[1])


class KernelFault(Exception):
    """Raised by a kernel; ``block``/``index`` locate the failing step
    (``index`` is the assignment number, or -1 for the jump)."""

    def __init__(self, kind: str, detail: str, block: int = -1, index: int = -1):
        super().__init__(kind, detail)
        self.kind = kind
        self.detail = detail
        self.block = block
        self.index = index


class _Unset:
    __slots__ = ()

    def __repr__(self):
        return "<unset>"


UNSET = _Unset()
