"""Reference semantics of L.

Two kernels execute the lowered program: a compiled one (``_ckernel``, built
with Cython) and a pure-Python fallback.  The compiled kernel is used when it
imports; set ``FUTAMIX_KERNEL=python`` to force the fallback.
"""

from __future__ import annotations

import os
from collections import OrderedDict

from . import _pykernel
from ._lower import UNSET, KernelFault, Lowered
from .lang import Program, validate
from .values import Value, print_datum, truthy

try:
    if os.environ.get("FUTAMIX_KERNEL", "").lower() == "python":
        raise ImportError("forced fallback")
    from . import _ckernel as _kernel
except ImportError:
    _kernel = _pykernel

DEFAULT_STEP_BUDGET = 10_000_000

__all__ = ["RunError", "run", "run_traced", "lower", "kernel_name",
           "DEFAULT_STEP_BUDGET", "set_kernel"]


class RunError(Exception):
    """Execution failure.  ``kind`` is one of UnboundVariable, TypeError,
    StepBudgetExceeded, Uninitialized or ArityMismatch."""

    def __init__(self, kind: str, detail: str, at=None):
        where = ""
        if at is not None:
            label, idx = at
            where = f" at {print_datum(label)}" + (f"[{idx}]" if idx >= 0 else " (jump)")
        super().__init__(f"{kind}: {detail}{where}")
        self.kind = kind
        self.detail = detail
        self.at = at


def kernel_name() -> str:
    return _kernel.NAME


def set_kernel(name: str) -> None:
    """Switch kernels at run time ("c" or "python"); used by benchmarks."""
    global _kernel
    if name == "python":
        _kernel = _pykernel
    else:
        from . import _ckernel
        _kernel = _ckernel


_lowered: OrderedDict = OrderedDict()


def lower(p: Program) -> Lowered:
    """Lower ``p`` once; recent programs are cached by identity."""
    key = id(p)
    hit = _lowered.get(key)
    if hit is not None and hit.program is p:
        _lowered.move_to_end(key)
        return hit
    lw = Lowered(p)
    _lowered[key] = lw
    if len(_lowered) > 32:
        _lowered.popitem(last=False)
    return lw


def _prepare(p: Program, inputs) -> tuple:
    if len(inputs) != len(p.params):
        raise RunError("ArityMismatch",
                       f"program reads {len(p.params)} input(s), got {len(inputs)}")
    lw = lower(p)
    env = [UNSET] * len(lw.names)
    for slot, v in zip(lw.params, inputs):
        env[slot] = v
    return lw, env


def _translate(lw: Lowered, f: KernelFault) -> RunError:
    at = (lw.labels[f.block], f.index) if f.block >= 0 else None
    if f.kind == "Unset":
        slot = f.detail
        name = lw.names[slot]
        if slot in lw.assigned:
            return RunError("Uninitialized", f"variable {name} read before assignment", at)
        return RunError("UnboundVariable", f"variable {name} is never assigned", at)
    return RunError(f.kind, f.detail, at)


def run(p: Program, inputs, step_budget: int = DEFAULT_STEP_BUDGET) -> Value:
    """Run ``p`` on ``inputs`` and return the value of its ``return``."""
    if step_budget <= 0:
        raise ValueError("step_budget must be positive")
    lw, env = _prepare(p, list(inputs))
    try:
        value, _ = _kernel.execute(lw, env, step_budget)
    except KernelFault as f:
        raise _translate(lw, f) from None
    return value


def run_counted(p: Program, inputs, step_budget: int = DEFAULT_STEP_BUDGET):
    """Like :func:`run` but also returns the number of steps taken."""
    lw, env = _prepare(p, list(inputs))
    try:
        return _kernel.execute(lw, env, step_budget)
    except KernelFault as f:
        raise _translate(lw, f) from None


def run_traced(p: Program, inputs, step_budget: int = DEFAULT_STEP_BUDGET):
    """Run ``p`` and record ``(label, store)`` at every block entry.

    Stores are dicts of the assigned variables in name order.
    """
    from .prims import apply_prim
    from .lang import Const, Goto, If, Var

    lw, env = _prepare(p, list(inputs))
    store = {x: v for x, v in zip(lw.names, env) if v is not UNSET}
    assigned = {lw.names[s] for s in lw.assigned}
    bm = p.block_map()
    trace = []
    steps = 0
    label = p.entry

    def ev(e, at):
        if isinstance(e, Const):
            return e.value
        if isinstance(e, Var):
            if e.name not in store:
                kind = "Uninitialized" if e.name in assigned else "UnboundVariable"
                raise RunError(kind, f"variable {e.name} is unset", at)
            return store[e.name]
        from .prims import PrimError
        try:
            return apply_prim(e.op, [ev(a, at) for a in e.args])
        except PrimError as err:
            raise RunError("TypeError", str(err), at) from None

    def tick(at):
        nonlocal steps
        steps += 1
        if steps > step_budget:
            raise RunError("StepBudgetExceeded", f"more than {step_budget} steps", at)

    while True:
        trace.append((label, dict(sorted(store.items()))))
        b = bm[label]
        for i, (x, e) in enumerate(b.assigns):
            tick((label, i))
            store[x] = ev(e, (label, i))
        tick((label, -1))
        j = b.jump
        if isinstance(j, Goto):
            label = j.target
        elif isinstance(j, If):
            label = j.then if truthy(ev(j.cond, (label, -1))) else j.else_
        else:
            return ev(j.expr, (label, -1)), trace


def check_runnable(p: Program) -> None:
    diags = validate(p)
    if diags:
        raise ValueError("; ".join(f"{d.code} {d.location}: {d.message}" for d in diags))

