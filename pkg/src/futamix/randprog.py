"""Seeded generators of small terminating programs, for property suites.

L programs read three integer parameters and use only integer arithmetic,
so they never fault.  Loops come in two shapes that keep specialization
finite under every division:

* counted loops whose counter starts from a constant (always static), and
* loops driven by a parameter ``n``, where every assignment in the body
  mentions ``n`` (so nothing static changes under dynamic control).
"""

from __future__ import annotations

import random
import time

from .bta import D, S, analyze, close_division
from .interp import RunError, run
from .lang import Block, Const, Goto, If, PrimApp, Program, Return, Var
from .mix import SpecializeError, specialize
from .report import EQUAL, ERROR, UNEQUAL, EquivalenceReport, Verdict
from .values import Seq

__all__ = ["random_program", "random_division", "random_wprogram",
           "soundness_suite", "SOUNDNESS_SEED"]

SOUNDNESS_SEED = 0xF47A
PARAMS = ("x", "y", "n")
LOCALS = ("a", "b", "c")


class _Gen:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.blocks = []
        self.k = 0

    def label(self):
        self.k += 1
        return f"b{self.k}"

    def expr(self, names, depth=2, must=None):
        r = self.rng
        if must is not None:
            e = self.expr(names, depth - 1) if depth > 0 else Const(r.randint(0, 3))
            return PrimApp(r.choice(["+", "-", "*"]), (Var(must), e) if r.random() < 0.5 else (e, Var(must)))
        if depth == 0 or r.random() < 0.35:
            if r.random() < 0.6:
                return Var(r.choice(names))
            return Const(r.randint(-3, 5))
        op = r.choice(["+", "-", "*", "+", "-"])
        return PrimApp(op, (self.expr(names, depth - 1), self.expr(names, depth - 1)))

    def cond(self, names):
        r = self.rng
        return PrimApp(r.choice(["<", "="]), (self.expr(names, 1), self.expr(names, 1)))

    def assigns(self, names, lo=0, hi=2, must=None):
        out = []
        for _ in range(self.rng.randint(lo, hi)):
            out.append((self.rng.choice(LOCALS), self.expr(names, 2, must)))
        return tuple(out)

    def seq(self, names, then, budget):
        """Emit a fragment that continues to ``then``; return its entry label."""
        r = self.rng
        here = self.label()
        kind = r.random() if budget > 0 else 0.0
        if kind < 0.4:
            self.blocks.append(Block(here, self.assigns(names, 1, 2), Goto(then)))
        elif kind < 0.7:
            join = self.seq(names, then, budget - 1)
            t = self.seq(names, join, budget - 2)
            f = self.seq(names, join, budget - 2)
            self.blocks.append(Block(here, self.assigns(names), If(self.cond(names), t, f)))
        elif kind < 0.85:
            # counted loop: k starts from a constant, so it is always static
            test, body = self.label(), self.label()
            self.blocks.append(Block(here, (("k", Const(r.randint(0, 3))),), Goto(test)))
            self.blocks.append(Block(test, (), If(PrimApp("=", (Var("k"), Const(0))), then, body)))
            asg = self.assigns(names, 1, 2) + (("k", PrimApp("-", (Var("k"), Const(1)))),)
            self.blocks.append(Block(body, asg, Goto(test)))
        else:
            # loop driven by n; the body only writes values that mention n
            test, body = self.label(), self.label()
            self.blocks.append(Block(here, (("m", Var("n")),), Goto(test)))
            self.blocks.append(Block(test, (), If(PrimApp("<", (Var("m"), Const(1))), then, body)))
            asg = self.assigns(names, 1, 2, must="m") + (("m", PrimApp("-", (Var("m"), Const(1)))),)
            self.blocks.append(Block(body, asg, Goto(test)))
        return here


def random_program(rng: random.Random) -> Program:
    """A small terminating L program over integer parameters (x y n)."""
    g = _Gen(rng)
    names = PARAMS + LOCALS
    exit_ = "exit"
    init = Block("init", tuple((x, Const(rng.randint(0, 2))) for x in LOCALS), Goto("b1"))
    first = g.seq(names, exit_, 3)
    assert first == "b1"
    ret = Block(exit_, (), Return(g.expr(names, 2)))
    return Program(PARAMS, "init", (init,) + tuple(g.blocks) + (ret,))


def random_division(p: Program, rng: random.Random) -> dict:
    """A random congruent division: random parameter classes, some extra
    variables forced dynamic, then closed."""
    seed = {x: rng.choice([S, D]) for x in p.params}
    for x in ("a", "b", "c", "k", "m"):
        if rng.random() < 0.15:
            seed[x] = D
    div = analyze(p, {x: seed[x] for x in p.params})
    extra = {x: D for x, c in seed.items() if c == D and x in div}
    return close_division(p, {**div, **extra})


def _inputs(rng):
    return {"x": rng.randint(-4, 6), "y": rng.randint(-4, 6), "n": rng.randint(-1, 4)}


def soundness_suite(programs: int = 200, tuples: int = 8, seed: int = SOUNDNESS_SEED,
                    step_budget: int = 1_000_000) -> EquivalenceReport:
    """Specialize random programs under random divisions and compare runs."""
    rng = random.Random(seed)
    verdicts = []
    t0 = time.perf_counter()
    for i in range(programs):
        p = random_program(rng)
        div = random_division(p, rng)
        statics = [x for x in p.params if div[x] == S]
        vs0 = {x: v for x, v in _inputs(rng).items() if x in statics}
        try:
            r = specialize(p, div, vs0)
        except SpecializeError as err:
            verdicts.append(Verdict((i,), ERROR, note=str(err)[:200]))
            continue
        for _ in range(tuples):
            full = {**_inputs(rng), **vs0}
            want = run(p, [full[x] for x in p.params], step_budget)
            try:
                got = run(r, [full[x] for x in r.params], step_budget)
            except RunError as err:
                verdicts.append(Verdict((i,), ERROR, note=str(err)[:200]))
                continue
            verdicts.append(Verdict((i,), EQUAL if got == want else UNEQUAL,
                                    note="" if got == want else f"{got} vs {want}"))
    rep = EquivalenceReport("functional", (), tuple(verdicts))
    rep.notes.append(f"{programs} programs x {tuples} inputs, seed {seed:#x}, "
                     f"{time.perf_counter() - t0:.1f}s")
    return rep


# W programs -----------------------------------------------------------------

def _wexpr(rng, names, depth=2):
    if depth == 0 or rng.random() < 0.4:
        if rng.random() < 0.6:
            return Seq.of("ref", rng.choice(names))
        return Seq.of("const", rng.randint(-2, 4))
    op = rng.choice(["+", "-", "*"])
    return Seq.of("prim", op, _wexpr(rng, names, depth - 1), _wexpr(rng, names, depth - 1))


def _wcond(rng, names):
    return Seq.of("prim", rng.choice(["<", "="]), _wexpr(rng, names, 1), _wexpr(rng, names, 1))


def _wstmts(rng, names, depth, counters):
    out = []
    for _ in range(rng.randint(1, 3)):
        r = rng.random()
        if depth > 0 and r < 0.2:
            out.append(Seq.of("if", _wcond(rng, names),
                              Seq.from_iter(_wstmts(rng, names, depth - 1, counters)),
                              Seq.from_iter(_wstmts(rng, names, depth - 1, counters))))
        elif depth > 0 and r < 0.35:
            k = f"k{len(counters)}"
            counters.append(k)
            body = _wstmts(rng, names, depth - 1, counters)
            body.append(Seq.of("set", k, Seq.of("prim", "-", Seq.of("ref", k), Seq.of("const", 1))))
            out.append(Seq.of("set", k, Seq.of("const", rng.randint(0, 3))))
            out.append(Seq.of("while", Seq.of("prim", "<", Seq.of("const", 0), Seq.of("ref", k)),
                              Seq.from_iter(body)))
        else:
            out.append(Seq.of("set", rng.choice(names[2:]), _wexpr(rng, names)))
    return out


def random_wprogram(rng: random.Random) -> Seq:
    """A small terminating W program reading (p q); locals u v are set first."""
    names = ("p", "q", "u", "v")
    body = [Seq.of("set", "u", Seq.of("const", 0)), Seq.of("set", "v", Seq.of("const", 1))]
    body += _wstmts(rng, names, 2, [])
    if rng.random() < 0.9:
        body.append(Seq.of("return", _wexpr(rng, names)))
    return Seq.of("wprogram", Seq.of("p", "q"), Seq.from_iter(body))
