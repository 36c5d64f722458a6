"""Host specializer: polyvariant program-point specialization of L programs
under a uniform congruent division.

Each residual block corresponds to a specialization state: a source label
together with the values of the static variables live there.  Unconditional
jumps and conditionals with static tests are unfolded into the block being
built (transition compression), so residual blocks only break at dynamic
conditionals and returns.
"""

from __future__ import annotations

import hashlib
import os
from collections import deque
from dataclasses import dataclass, field

from .bta import D, S, analyze, check_congruence
from .interp import RunError
from .lang import (Block, Const, Goto, If, PrimApp, Program, Return, Var,
                   canonicalize, expr_vars, successors, validate)
from .prims import PRIMS, PrimError
from .values import NIL, Seq, Value, parse_datum, print_datum, truthy

__all__ = [
    "SpecializeOptions", "SpecState", "SpecializeError", "reduce_expr",
    "specialize", "mix", "liveness", "encode_store", "decode_store",
    "print_store", "parse_store", "default_options",
]

DEFAULT_BLOCK_BUDGET = 200_000
DEFAULT_STATIC_STEP_BUDGET = 10_000_000


@dataclass(frozen=True)
class SpecializeOptions:
    block_budget: int = DEFAULT_BLOCK_BUDGET
    step_budget_static: int = DEFAULT_STATIC_STEP_BUDGET
    compress_gotos: bool = True

    def __post_init__(self):
        if self.block_budget <= 0 or self.step_budget_static <= 0:
            raise ValueError("budgets must be positive")


def default_options(**overrides) -> SpecializeOptions:
    """Options with ``FUTAMIX_BUDGET_BLOCKS`` honoured for the block budget."""
    env = os.environ.get("FUTAMIX_BUDGET_BLOCKS")
    if env and "block_budget" not in overrides:
        overrides["block_budget"] = int(env)
    return SpecializeOptions(**overrides)


@dataclass(frozen=True)
class SpecState:
    label: Value
    vs: tuple = field(default=())  # ((name, value), ...) sorted by name

    def serialize(self) -> str:
        return print_datum(Seq.from_iter([Seq.of(x, v) for x, v in self.vs]))

    def __str__(self):
        return f"{print_datum(self.label)} {self.serialize()}"


class SpecializeError(Exception):
    """kind: BlockBudgetExceeded, StaticStepBudgetExceeded, CongruenceBreach,
    FoldTypeError or MissingStaticInput."""

    def __init__(self, kind: str, detail: str, state: SpecState | None = None,
                 states: int = 0):
        msg = f"{kind}: {detail}"
        if state is not None:
            shown = str(state)
            if len(shown) > 400:
                shown = shown[:400] + " ..."
            msg += f" (state {shown})"
        super().__init__(msg)
        self.kind = kind
        self.detail = detail
        self.state = state
        self.states = states


# ---------------------------------------------------------------------------
# static stores

def encode_store(vs: dict) -> Value:
    return Seq.from_iter([Seq.of(x, vs[x]) for x in sorted(vs)])


def decode_store(v: Value) -> dict:
    out = {}
    for item in v:
        if not isinstance(item, Seq) or len(item) != 2:
            raise ValueError(f"bad static store entry {print_datum(item)}")
        out[item[0]] = item[1]
    return out


def print_store(vs: dict) -> str:
    return print_datum(encode_store(vs))


def parse_store(text: str) -> dict:
    return decode_store(parse_datum(text))


# ---------------------------------------------------------------------------
# expression reduction

def _fold(op, args):
    try:
        return PRIMS[op](*args)
    except PrimError as err:
        raise RunError("TypeError", f"while folding {op}: {err}") from None


def reduce_expr(e, d: dict, vs: dict):
    """Replace static variables by their values and fold primitives whose
    arguments all reduce to constants."""
    if isinstance(e, Const):
        return e
    if isinstance(e, Var):
        if d.get(e.name) == S:
            return Const(vs.get(e.name, NIL))
        return e
    args = tuple(reduce_expr(a, d, vs) for a in e.args)
    if all(isinstance(a, Const) for a in args):
        return Const(_fold(e.op, [a.value for a in args]))
    return PrimApp(e.op, args)


def _has_dynamic(e, d) -> bool:
    return any(d.get(x) != S for x in expr_vars(e))


def _compile_eval(e, index):
    """Closure evaluating a fully static expression over the value list."""
    if isinstance(e, Const):
        v = e.value
        return lambda vals: v
    if isinstance(e, Var):
        i = index[e.name]
        return lambda vals: vals[i]
    fns = [_compile_eval(a, index) for a in e.args]
    fn = PRIMS[e.op]
    op = e.op
    if len(fns) == 1:
        (a,) = fns

        def un(vals):
            try:
                return fn(a(vals))
            except PrimError as err:
                raise RunError("TypeError", f"while folding {op}: {err}") from None
        return un
    a, b = fns

    def bin_(vals):
        try:
            return fn(a(vals), b(vals))
        except PrimError as err:
            raise RunError("TypeError", f"while folding {op}: {err}") from None
    return bin_


def _compile_reduce(e, d, index):
    """Closure computing the residual expression of a dynamic expression."""
    if not _has_dynamic(e, d):
        ev = _compile_eval(e, index)
        return lambda vals: Const(ev(vals))
    if isinstance(e, Var):
        return lambda vals: e
    fns = [_compile_reduce(a, d, index) for a in e.args]
    op = e.op
    return lambda vals: PrimApp(op, tuple(f(vals) for f in fns))


# ---------------------------------------------------------------------------
# liveness of static variables

def liveness(p: Program, statics) -> dict:
    """Static variables live at entry of each block (least fixpoint)."""
    statics = set(statics)

    def uses(e):
        return {x for x in expr_vars(e) if x in statics}

    live = {b.label: frozenset() for b in p.blocks}
    changed = True
    while changed:
        changed = False
        for b in reversed(p.blocks):
            j = b.jump
            cur = set()
            for t in successors(j):
                cur |= live[t]
            if isinstance(j, If):
                cur |= uses(j.cond)
            elif isinstance(j, Return):
                cur |= uses(j.expr)
            for x, e in reversed(b.assigns):
                cur.discard(x)
                cur |= uses(e)
            if cur != live[b.label]:
                live[b.label] = frozenset(cur)
                changed = True
    return live


# ---------------------------------------------------------------------------
# specialization

class _Plan:
    """Per-(program, division) precomputation shared by all states."""

    def __init__(self, p: Program, d: dict):
        self.svars = sorted(x for x, bt in d.items() if bt == S)
        index = {x: i for i, x in enumerate(self.svars)}
        live = liveness(p, self.svars)
        self.live = {l: tuple(x in s for x in self.svars) for l, s in live.items()}
        self.blocks = {}
        for b in p.blocks:
            steps = []
            for x, e in b.assigns:
                if d.get(x) == S:
                    if _has_dynamic(e, d):
                        steps.append(("breach", x, e))
                    else:
                        steps.append(("s", index[x], _compile_eval(e, index)))
                else:
                    steps.append(("d", x, _compile_reduce(e, d, index)))
            j = b.jump
            if isinstance(j, Goto):
                jump = ("goto", j.target)
            elif isinstance(j, If):
                if _has_dynamic(j.cond, d):
                    jump = ("dif", _compile_reduce(j.cond, d, index), j.then, j.else_)
                else:
                    jump = ("sif", _compile_eval(j.cond, index), j.then, j.else_)
            else:
                jump = ("return", _compile_reduce(j.expr, d, index))
            self.blocks[b.label] = (tuple(steps), jump)

    def project(self, label, vals) -> tuple:
        return tuple(v if keep else NIL for v, keep in zip(vals, self.live[label]))

    def public_state(self, key) -> SpecState:
        label, vals = key
        mask = self.live[label]
        return SpecState(label, tuple((x, v) for x, v, k in zip(self.svars, vals, mask) if k))


def _interim_label(plan: _Plan, key, taken: dict):
    st = plan.public_state(key)
    digest = hashlib.sha1(st.serialize().encode()).hexdigest()[:10]
    name = f"{print_datum(key[0])}@{digest}"
    while name in taken:
        name += "'"
    taken[name] = key
    return name


def specialize(p: Program, d: dict, vs0: dict, opts: SpecializeOptions | None = None) -> Program:
    """Residual program of ``p`` for the static store ``vs0`` under division ``d``."""
    opts = opts or SpecializeOptions()
    diags = validate(p) + check_congruence(p, d)
    if diags:
        if any(x.code == "CongruenceViolation" for x in diags):
            raise SpecializeError("CongruenceBreach",
                                  "; ".join(f"{x.location} {x.message}" for x in diags))
        raise ValueError("; ".join(f"{x.code} {x.location}: {x.message}" for x in diags))
    stray = sorted(x for x in vs0 if d.get(x) != S)
    if stray:
        raise ValueError(f"static store mentions non-static variables {stray}")
    missing = sorted(x for x in p.params if d.get(x) == S and x not in vs0)
    if missing:
        raise SpecializeError("MissingStaticInput", f"no value for static parameters {missing}")

    plan = _Plan(p, d)
    live0 = plan.live[p.entry]
    # statics live at entry but not parameters read as () until assigned
    start = (p.entry, tuple(vs0.get(x, NIL) if k else NIL for x, k in zip(plan.svars, live0)))

    names: dict = {}
    label_of = {start: _interim_label(plan, start, names)}
    pending = deque([start])
    out = []
    budget = opts.step_budget_static
    compress = opts.compress_gotos

    def state_for(label, vals):
        key = (label, plan.project(label, vals))
        name = label_of.get(key)
        if name is None:
            name = label_of[key] = _interim_label(plan, key, names)
            pending.append(key)
        return name

    while pending:
        if len(out) >= opts.block_budget:
            raise SpecializeError("BlockBudgetExceeded",
                                  f"more than {opts.block_budget} residual blocks",
                                  plan.public_state(pending[0]), states=len(out))
        key = pending.popleft()
        label, vals = key
        vals = list(vals)
        code = []
        steps = 0
        try:
            while True:
                block_steps, jump = plan.blocks[label]
                for step in block_steps:
                    kind = step[0]
                    if kind == "s":
                        vals[step[1]] = step[2](vals)
                    elif kind == "d":
                        code.append((step[1], step[2](vals)))
                    else:
                        raise SpecializeError(
                            "CongruenceBreach",
                            f"static {step[1]} assigned a dynamic expression",
                            plan.public_state(key))
                steps += len(block_steps) + 1
                if steps > budget:
                    raise SpecializeError(
                        "StaticStepBudgetExceeded",
                        f"more than {budget} static steps in one residual block",
                        plan.public_state(key), states=len(out))
                kind = jump[0]
                if kind == "goto":
                    if compress:
                        label = jump[1]
                        continue
                    rj = Goto(state_for(jump[1], vals))
                elif kind == "sif":
                    label = jump[2] if truthy(jump[1](vals)) else jump[3]
                    continue
                elif kind == "dif":
                    cond = jump[1](vals)
                    rj = If(cond, state_for(jump[2], vals), state_for(jump[3], vals))
                else:
                    rj = Return(jump[1](vals))
                break
        except RunError as err:
            raise SpecializeError("FoldTypeError", str(err), plan.public_state(key),
                                  states=len(out)) from None
        out.append(Block(label_of[key], tuple(code), rj))

    params = tuple(x for x in p.params if d.get(x) == D)
    return canonicalize(Program(params, label_of[start], tuple(out)))


def mix(p: Program, static_inputs: dict, opts: SpecializeOptions | None = None) -> Program:
    """Specialize ``p`` to the given parameter values; other parameters stay dynamic."""
    unknown = set(static_inputs) - set(p.params)
    if unknown:
        raise ValueError(f"not parameters of the program: {sorted(unknown)}")
    classes = {x: (S if x in static_inputs else D) for x in p.params}
    return specialize(p, analyze(p, classes), dict(static_inputs), opts)
