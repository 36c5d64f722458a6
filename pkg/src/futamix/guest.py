"""The guest language W and its interpreter written in L.

A W program is a datum::

    (wprogram (b e)
      ((set r (const 1))
       (while (prim < (const 0) (ref e)) (...))
       (return (ref r))))

Statements are ``set``, ``while``, ``if`` and ``return``; expressions are
``(const d)``, ``(ref x)`` and ``(prim name e...)`` with one argument for
the unary primitives of L and two for the others.  Conditions use L's truth:
``false`` and ``()`` are false.  Running off the end returns ``()``.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .interp import DEFAULT_STEP_BUDGET, run
from .lang import PRIM_ARITY, Program, parse_program
from .prims import PrimError, apply_prim
from .values import NIL, ParseError, Seq, Value, is_symbol_name, parse_datum, print_datum, truthy

__all__ = ["WSyntaxError", "WRunError", "parse_w", "check_w", "load_w", "asset_w",
           "load_interp_w", "run_w", "eval_w"]


class WSyntaxError(ValueError):
    """Malformed W program.  ``path`` lists the indices leading to the bad datum."""

    def __init__(self, message: str, path=()):
        self.path = tuple(path)
        where = "/".join(str(i) for i in self.path) or "top"
        super().__init__(f"{message} at {where}")


class WRunError(Exception):
    """Raised by the host-side evaluator (unbound variable, bad primitive use, fuel)."""


def _seq(v, path, what):
    if not isinstance(v, Seq):
        raise WSyntaxError(f"{what} must be a list", path)
    return list(v)


def _check_expr(e, path):
    items = _seq(e, path, "expression")
    if not items or not isinstance(items[0], str):
        raise WSyntaxError("expression needs a tag", path)
    tag = items[0]
    if tag == "const":
        if len(items) != 2:
            raise WSyntaxError("const takes one datum", path)
    elif tag == "ref":
        if len(items) != 2 or not is_symbol_name(items[1]):
            raise WSyntaxError("ref takes a variable name", path)
    elif tag == "prim":
        if len(items) < 2 or items[1] not in PRIM_ARITY:
            raise WSyntaxError("unknown primitive", path + (1,))
        if len(items) - 2 != PRIM_ARITY[items[1]]:
            raise WSyntaxError(f"{items[1]} takes {PRIM_ARITY[items[1]]} argument(s)", path)
        for i in range(2, len(items)):
            _check_expr(items[i], path + (i,))
    else:
        raise WSyntaxError(f"unknown expression {print_datum(tag)}", path)


def _check_stmts(ss, path):
    for i, s in enumerate(_seq(ss, path, "statement list")):
        p = path + (i,)
        items = _seq(s, p, "statement")
        tag = items[0] if items else None
        if tag == "set":
            if len(items) != 3 or not is_symbol_name(items[1]):
                raise WSyntaxError("set takes a variable and an expression", p)
            _check_expr(items[2], p + (2,))
        elif tag == "return":
            if len(items) != 2:
                raise WSyntaxError("return takes one expression", p)
            _check_expr(items[1], p + (1,))
        elif tag == "while":
            if len(items) != 3:
                raise WSyntaxError("while takes a condition and a body", p)
            _check_expr(items[1], p + (1,))
            _check_stmts(items[2], p + (2,))
        elif tag == "if":
            if len(items) != 4:
                raise WSyntaxError("if takes a condition and two branches", p)
            _check_expr(items[1], p + (1,))
            _check_stmts(items[2], p + (2,))
            _check_stmts(items[3], p + (3,))
        else:
            raise WSyntaxError(f"unknown statement {print_datum(tag) if tag is not None else '()'}", p)


def check_w(wp: Value) -> Value:
    """Validate a W program datum and return it unchanged."""
    items = _seq(wp, (), "program")
    if len(items) != 3 or items[0] != "wprogram":
        raise WSyntaxError("expected (wprogram (params...) (stmt...))")
    params = _seq(items[1], (1,), "parameter list")
    for i, x in enumerate(params):
        if not is_symbol_name(x):
            raise WSyntaxError("parameter must be a symbol", (1, i))
    if len(set(params)) != len(params):
        raise WSyntaxError("duplicate parameter", (1,))
    _check_stmts(items[2], (2,))
    return wp


def parse_w(text: str) -> Value:
    try:
        v = parse_datum(text)
    except ParseError as err:
        raise WSyntaxError(f"not a datum: {err}") from None
    return check_w(v)


def load_w(path) -> Value:
    with open(path) as f:
        return parse_w(f.read())


def _asset_text(name: str) -> str:
    return resources.files("futamix").joinpath("assets", name).read_text()


def asset_w(name: str) -> Value:
    """A shipped W program, e.g. ``asset_w("pow.w")``."""
    return parse_w(_asset_text(name))


@lru_cache(maxsize=None)
def load_interp_w(name: str = "interp_w.fcl") -> Program:
    return parse_program(_asset_text(name))


def run_w(wp: Value, inputs, step_budget: int = DEFAULT_STEP_BUDGET,
          interp: Program | None = None) -> Value:
    """Run ``wp`` on ``inputs`` through the L interpreter for W."""
    inputs = list(inputs)
    n = len(check_w(wp)[1])
    if len(inputs) != n:
        raise ValueError(f"W program reads {n} input(s), got {len(inputs)}")
    return run(interp or load_interp_w(), [wp, Seq.from_iter(inputs)], step_budget)


# host-side evaluator, kept independent of the L interpreter on purpose

def _ev(e, env):
    tag = e[0]
    if tag == "const":
        return e[1]
    if tag == "ref":
        if e[1] not in env:
            raise WRunError(f"unbound variable {e[1]}")
        return env[e[1]]
    args = [_ev(a, env) for a in list(e)[2:]]
    try:
        return apply_prim(e[1], args)
    except PrimError as err:
        raise WRunError(str(err)) from None


class _Return(Exception):
    def __init__(self, value):
        self.value = value


def _exec(ss, env, fuel):
    for s in ss:
        tag = s[0]
        if tag == "set":
            env[s[1]] = _ev(s[2], env)
        elif tag == "return":
            raise _Return(_ev(s[1], env))
        elif tag == "if":
            _exec(s[2] if truthy(_ev(s[1], env)) else s[3], env, fuel)
        else:
            while truthy(_ev(s[1], env)):
                fuel[0] -= 1
                if fuel[0] < 0:
                    raise WRunError("loop fuel exhausted")
                _exec(s[2], env, fuel)


def eval_w(wp: Value, inputs, fuel: int = 100_000) -> Value:
    """Evaluate ``wp`` directly in Python (test oracle for :func:`run_w`)."""
    check_w(wp)
    params = list(wp[1])
    inputs = list(inputs)
    if len(inputs) != len(params):
        raise ValueError(f"W program reads {len(params)} input(s), got {len(inputs)}")
    env = dict(zip(params, inputs))
    try:
        _exec(wp[2], env, [fuel])
    except _Return as r:
        return r.value
    return NIL

