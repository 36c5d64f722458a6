"""The flowchart language L: syntax tree, concrete syntax, program-as-data
encoding, validation and canonical form.

A program reads its parameters, starts at an entry label and runs labelled
blocks of assignments, each ending in ``goto``, ``if`` or ``return``::

    (program (read b e) init
      ((init ((:= result (quote 1))) (goto test))
       (test () (if (op = (var e) (quote 0)) done body))
       ...))

The data encoding is positional: ``(params entry blocks)``, each block
``(label assigns jump)``; expressions and jumps are encoded exactly as they
are written.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .values import ParseError, Seq, Value, is_symbol_name, parse_datum, print_datum

__all__ = [
    "Const", "Var", "PrimApp", "Expr", "Goto", "If", "Return", "Jump", "Block",
    "Program", "Diagnostic", "ArityError", "DecodeError", "PRIM_ARITY",
    "parse_program", "print_program", "encode_program", "decode_program",
    "encode_expr", "decode_expr", "validate", "canonicalize", "expr_vars",
    "program_vars", "successors", "load_program",
]

PRIM_ARITY = {
    "cons": 2, "car": 1, "cdr": 1, "atom?": 1, "eq?": 2, "+": 2, "-": 2,
    "*": 2, "quotient": 2, "remainder": 2, "<": 2, "=": 2, "not": 1,
}


class ArityError(ParseError):
    pass


class DecodeError(ValueError):
    def __init__(self, message: str, offending: Value):
        super().__init__(f"{message}: {print_datum(offending)}")
        self.offending = offending


@dataclass(frozen=True, slots=True)
class Const:
    value: Value


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class PrimApp:
    op: str
    args: tuple


Expr = Union[Const, Var, PrimApp]


@dataclass(frozen=True, slots=True)
class Goto:
    target: Value


@dataclass(frozen=True, slots=True)
class If:
    cond: Expr
    then: Value
    else_: Value


@dataclass(frozen=True, slots=True)
class Return:
    expr: Expr


Jump = Union[Goto, If, Return]


@dataclass(frozen=True, slots=True)
class Block:
    label: Value
    assigns: tuple  # of (name, Expr)
    jump: Jump


@dataclass(frozen=True, slots=True)
class Program:
    params: tuple
    entry: Value
    blocks: tuple

    def block_map(self) -> dict:
        return {b.label: b for b in self.blocks}


@dataclass(frozen=True)
class Diagnostic:
    code: str
    location: str
    message: str = ""


# ---------------------------------------------------------------------------
# shared structural decoding (concrete syntax and data encoding agree on
# expressions, assignments and jumps)

def _items(v, what: str, err) -> list:
    if not isinstance(v, Seq):
        raise err(f"expected a list for {what}", v)
    return list(v)


def _name(v, what: str, err) -> str:
    if not is_symbol_name(v):
        raise err(f"expected a symbol for {what}", v)
    return v


def _expr(v, err) -> Expr:
    parts = _items(v, "expression", err)
    if not parts:
        raise err("empty expression", v)
    tag = parts[0]
    if tag == "quote" and len(parts) == 2:
        return Const(parts[1])
    if tag == "var" and len(parts) == 2:
        return Var(_name(parts[1], "variable", err))
    if tag == "op" and len(parts) >= 2:
        op = parts[1]
        if op not in PRIM_ARITY:
            raise err("unknown primitive", v)
        if len(parts) - 2 != PRIM_ARITY[op]:
            if err is _parse_err:
                raise ArityError(f"{op} takes {PRIM_ARITY[op]} argument(s), "
                                 f"got {len(parts) - 2}: {print_datum(v)}")
            raise err(f"{op} takes {PRIM_ARITY[op]} argument(s)", v)
        return PrimApp(op, tuple(_expr(a, err) for a in parts[2:]))
    raise err("malformed expression", v)


def _jump(v, err) -> Jump:
    parts = _items(v, "jump", err)
    tag = parts[0] if parts else None
    if tag == "goto" and len(parts) == 2:
        return Goto(parts[1])
    if tag == "if" and len(parts) == 4:
        return If(_expr(parts[1], err), parts[2], parts[3])
    if tag == "return" and len(parts) == 2:
        return Return(_expr(parts[1], err))
    raise err("malformed jump", v)


def _block(v, err) -> Block:
    parts = _items(v, "block", err)
    if len(parts) != 3:
        raise err("block must be (label (assign*) jump)", v)
    label, assigns, jump = parts
    out = []
    for a in _items(assigns, "assignments", err):
        ap = _items(a, "assignment", err)
        if len(ap) != 3 or ap[0] != ":=":
            raise err("assignment must be (:= var expr)", a)
        out.append((_name(ap[1], "assignment target", err), _expr(ap[2], err)))
    return Block(label, tuple(out), _jump(jump, err))


def _parse_err(msg, v):
    return ParseError(f"{msg}: {print_datum(v)}")


# ---------------------------------------------------------------------------
# concrete syntax

def parse_program(text: str) -> Program:
    """Parse ``.fcl`` text.  Label integrity is left to :func:`validate`."""
    v = parse_datum(text)
    parts = _items(v, "program", _parse_err)
    if len(parts) != 4 or parts[0] != "program":
        raise ParseError("expected (program (read v*) entry (block+))")
    read = _items(parts[1], "read list", _parse_err)
    if not read or read[0] != "read":
        raise _parse_err("expected (read v*)", parts[1])
    params = tuple(_name(p, "parameter", _parse_err) for p in read[1:])
    blocks = tuple(_block(b, _parse_err) for b in _items(parts[3], "blocks", _parse_err))
    if not blocks:
        raise ParseError("a program needs at least one block")
    return Program(params, parts[2], blocks)


def load_program(path) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse_program(fh.read())


def _pe(e: Expr) -> str:
    if isinstance(e, Const):
        return f"(quote {print_datum(e.value)})"
    if isinstance(e, Var):
        return f"(var {e.name})"
    return "(op " + " ".join([e.op] + [_pe(a) for a in e.args]) + ")"


def _pj(j: Jump) -> str:
    if isinstance(j, Goto):
        return f"(goto {print_datum(j.target)})"
    if isinstance(j, If):
        return f"(if {_pe(j.cond)} {print_datum(j.then)} {print_datum(j.else_)})"
    return f"(return {_pe(j.expr)})"


def print_program(p: Program) -> str:
    lines = [f"(program (read{''.join(' ' + x for x in p.params)}) {print_datum(p.entry)}"]
    for i, b in enumerate(p.blocks):
        opener = "  ((" if i == 0 else "   ("
        if b.assigns:
            lines.append(f"{opener}{print_datum(b.label)}")
            for k, (x, e) in enumerate(b.assigns):
                lead = "     ((" if k == 0 else "      ("
                lines.append(f"{lead}:= {x} {_pe(e)})" + (")" if k == len(b.assigns) - 1 else ""))
        else:
            lines.append(f"{opener}{print_datum(b.label)}")
            lines.append("     ()")
        lines.append(f"     {_pj(b.jump)})" + ("))" if i == len(p.blocks) - 1 else ""))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# program-as-data encoding

def encode_expr(e: Expr) -> Value:
    if isinstance(e, Const):
        return Seq.of("quote", e.value)
    if isinstance(e, Var):
        return Seq.of("var", e.name)
    return Seq.from_iter(["op", e.op] + [encode_expr(a) for a in e.args])


def _encode_jump(j: Jump) -> Value:
    if isinstance(j, Goto):
        return Seq.of("goto", j.target)
    if isinstance(j, If):
        return Seq.of("if", encode_expr(j.cond), j.then, j.else_)
    return Seq.of("return", encode_expr(j.expr))


def encode_program(p: Program) -> Value:
    blocks = [
        Seq.of(b.label,
               Seq.from_iter([Seq.of(":=", x, encode_expr(e)) for x, e in b.assigns]),
               _encode_jump(b.jump))
        for b in p.blocks
    ]
    return Seq.of(Seq.from_iter(p.params), p.entry, Seq.from_iter(blocks))


def decode_expr(v: Value) -> Expr:
    return _expr(v, DecodeError)


def decode_program(v: Value) -> Program:
    """Inverse of :func:`encode_program`.  Labels may be arbitrary data."""
    parts = _items(v, "program", DecodeError)
    if len(parts) != 3:
        raise DecodeError("program must be (params entry blocks)", v)
    params = tuple(_name(x, "parameter", DecodeError)
                   for x in _items(parts[0], "parameters", DecodeError))
    blocks = tuple(_block(b, DecodeError) for b in _items(parts[2], "blocks", DecodeError))
    if not blocks:
        raise DecodeError("a program needs at least one block", v)
    return Program(params, parts[1], blocks)


# ---------------------------------------------------------------------------
# queries

def expr_vars(e: Expr) -> Iterator[str]:
    stack = [e]
    while stack:
        e = stack.pop()
        if isinstance(e, Var):
            yield e.name
        elif isinstance(e, PrimApp):
            stack.extend(reversed(e.args))


def successors(j: Jump) -> tuple:
    if isinstance(j, Goto):
        return (j.target,)
    if isinstance(j, If):
        return (j.then, j.else_)
    return ()


def program_vars(p: Program) -> list:
    """All variable names of ``p`` in first-occurrence order."""
    seen = dict.fromkeys(p.params)
    for b in p.blocks:
        for x, e in b.assigns:
            seen.update(dict.fromkeys(expr_vars(e)))
            seen.setdefault(x)
        j = b.jump
        if isinstance(j, If):
            seen.update(dict.fromkeys(expr_vars(j.cond)))
        elif isinstance(j, Return):
            seen.update(dict.fromkeys(expr_vars(j.expr)))
    return list(seen)


def validate(p: Program) -> list:
    diags = []
    seen = set()
    for x in p.params:
        if x in seen:
            diags.append(Diagnostic("DuplicateParam", f"read {x}", f"parameter {x} repeated"))
        seen.add(x)
    labels = set()
    for b in p.blocks:
        if b.label in labels:
            diags.append(Diagnostic("DuplicateLabel", f"block {print_datum(b.label)}",
                                    "label defined twice"))
        labels.add(b.label)
    if p.entry not in labels:
        diags.append(Diagnostic("UnboundLabel", "entry",
                                f"entry label {print_datum(p.entry)} has no block"))
    for b in p.blocks:
        for t in successors(b.jump):
            if t not in labels:
                diags.append(Diagnostic("UnboundLabel", f"block {print_datum(b.label)}",
                                        f"jump to missing label {print_datum(t)}"))
    return diags


def canonicalize(p: Program) -> Program:
    """Reorder blocks into depth-first discovery order from the entry, drop
    unreachable blocks and rename labels ``l0, l1, ...``."""
    bm = p.block_map()
    order = [p.entry]
    names = {p.entry: "l0"}
    stack = [iter(successors(bm[p.entry].jump))]
    while stack:
        nxt = next(stack[-1], _DONE)
        if nxt is _DONE:
            stack.pop()
            continue
        if nxt in names:
            continue
        names[nxt] = f"l{len(order)}"
        order.append(nxt)
        stack.append(iter(successors(bm[nxt].jump)))

    def rename(j):
        if isinstance(j, Goto):
            return Goto(names[j.target])
        if isinstance(j, If):
            return If(j.cond, names[j.then], names[j.else_])
        return j

    blocks = tuple(Block(names[l], bm[l].assigns, rename(bm[l].jump)) for l in order)
    return Program(p.params, "l0", blocks)


_DONE = object()
