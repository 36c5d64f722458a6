"""The three Futamura projections, the cogen fixpoint, and equivalence checks.

Residual compilers and compiler generators take a single parameter: the
static store that mix-in-L would have received as ``vs0``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .bta import D, S, analyze, encode_division
from .guest import asset_w, load_interp_w
from .interp import RunError, run
from .lang import (DecodeError, Program, canonicalize, decode_program,
                   encode_program, print_program, validate)
from .mix import SpecializeOptions, encode_store, specialize
from .mixobj import DEFAULT_MIX_STEP_BUDGET, MixObjectBundle, load_mix_object
from .report import EQUAL, ERROR, UNEQUAL, EquivalenceReport, Verdict
from .values import Seq, Value, print_datum

__all__ = [
    "project1", "project2", "project3", "apply_compiler", "apply_cogen",
    "cogen_fixpoint_check", "check_equivalence", "first_difference",
    "alpha_equivalent", "interp_division", "pow_grid", "ProjectionArtifacts",
    "FixpointReport", "run_pipeline", "RUN_STEP_BUDGET", "GRID_SEED",
]

RUN_STEP_BUDGET = DEFAULT_MIX_STEP_BUDGET
GRID_SEED = 0xF47A
INTERP_CLASSES = {"wprog": S, "input": D}


def interp_division(interp: Program) -> dict:
    return analyze(interp, dict(INTERP_CLASSES))


def pow_grid() -> tuple:
    """Inputs (b e) for b in 0..10 and e in 0..6, packed as the interpreter expects."""
    return tuple((Seq.of(b, e),) for b in range(11) for e in range(7))


def project1(interp: Program, guest: Value, opts: SpecializeOptions | None = None) -> Program:
    """Compile ``guest`` by specializing the interpreter to it."""
    return canonicalize(specialize(interp, interp_division(interp), {"wprog": guest}, opts))


def project2(interp: Program, bundle: MixObjectBundle | None = None,
             opts: SpecializeOptions | None = None) -> Program:
    """A compiler: mix-in-L specialized to the interpreter."""
    b = bundle or load_mix_object()
    vs0 = {"program": encode_program(interp), "division": encode_division(interp_division(interp))}
    return canonicalize(specialize(b.mix_l, b.div_mix, vs0, opts))


def project3(bundle: MixObjectBundle | None = None,
             opts: SpecializeOptions | None = None) -> Program:
    """A compiler generator: mix-in-L specialized to itself."""
    b = bundle or load_mix_object()
    vs0 = {"program": b.mix_l_encoded, "division": encode_division(b.div_mix)}
    return canonicalize(specialize(b.mix_l, b.div_mix, vs0, opts))


def _run_residual(prog: Program, store: dict, step_budget: int) -> Program:
    diags = validate(prog)
    if diags:
        raise ValueError("ill-formed program: " + "; ".join(str(x) for x in diags[:3]))
    if len(prog.params) != 1:
        raise ValueError(f"expected a one-parameter program, got params {prog.params}")
    return canonicalize(decode_program(run(prog, [encode_store(store)], step_budget)))


def apply_compiler(compiler: Program, guest: Value, step_budget: int = RUN_STEP_BUDGET) -> Program:
    return _run_residual(compiler, {"wprog": guest}, step_budget)


def apply_cogen(cogen: Program, interp: Program, step_budget: int = RUN_STEP_BUDGET,
                division: dict | None = None) -> Program:
    """The generating extension of ``interp`` (a compiler, for an interpreter)."""
    d = division if division is not None else interp_division(interp)
    return _run_residual(cogen, {"program": encode_program(interp),
                                 "division": encode_division(d)}, step_budget)


def first_difference(a: Program, b: Program) -> str | None:
    """Describe where the canonical forms of ``a`` and ``b`` first differ."""
    a, b = canonicalize(a), canonicalize(b)
    if a.params != b.params:
        return f"params {a.params} vs {b.params}"
    for i, (x, y) in enumerate(zip(a.blocks, b.blocks)):
        if x != y:
            for j, (s, t) in enumerate(zip(x.assigns, y.assigns)):
                if s != t:
                    return f"block {x.label} assignment {j}"
            if len(x.assigns) != len(y.assigns):
                return f"block {x.label}: {len(x.assigns)} vs {len(y.assigns)} assignments"
            return f"block {x.label} jump"
    if len(a.blocks) != len(b.blocks):
        return f"{len(a.blocks)} vs {len(b.blocks)} blocks"
    return None


_SYNTAX = frozenset({"quote", "var", "op", ":=", "goto", "if", "return", "true", "false",
                     "cons", "car", "cdr", "atom?", "eq?", "+", "-", "*", "quotient",
                     "remainder", "<", "=", "not"})


def alpha_equivalent(a: Program, b: Program) -> bool:
    """Equal canonical forms up to a one-to-one renaming of symbols.

    Syntax keywords and primitive names must match exactly.
    """
    fwd: dict = {}
    back: dict = {}
    stack = [(encode_program(canonicalize(a)), encode_program(canonicalize(b)))]
    while stack:
        x, y = stack.pop()
        if isinstance(x, Seq) or isinstance(y, Seq):
            if not (isinstance(x, Seq) and isinstance(y, Seq)) or len(x) != len(y):
                return False
            stack.extend(zip(x, y))
        elif isinstance(x, str) and isinstance(y, str):
            if x in _SYNTAX or y in _SYNTAX:
                if x != y:
                    return False
            elif fwd.setdefault(x, y) != y or back.setdefault(y, x) != x:
                return False
        elif x != y or type(x) is not type(y):
            return False
    return True


def _outcome(fa, fb) -> tuple:
    try:
        ra = ("ok", fa())
    except RunError as err:
        ra = ("error", err.kind)
    try:
        rb = ("ok", fb())
    except RunError as err:
        rb = ("error", err.kind)
    return ra, rb


def check_equivalence(a: Program, b: Program, grid, step_budget: int = 10_000_000) -> EquivalenceReport:
    """Structural check on canonical forms, else pointwise runs over ``grid``."""
    grid = tuple(tuple(pt) for pt in grid)
    diff = first_difference(a, b)
    if diff is None:
        return EquivalenceReport("structural", grid, (Verdict("canonical", EQUAL, "structural"),))
    verdicts = []
    for pt in grid:
        ra, rb = _outcome(lambda: run(a, list(pt), step_budget), lambda: run(b, list(pt), step_budget))
        if ra == rb:
            verdicts.append(Verdict(pt, EQUAL, "functional"))
        elif ra[0] == "error" or rb[0] == "error":
            verdicts.append(Verdict(pt, ERROR, note=f"{_show(ra)} vs {_show(rb)}"))
        else:
            verdicts.append(Verdict(pt, UNEQUAL, note=f"{_show(ra)} vs {_show(rb)}"))
    rep = EquivalenceReport("functional", grid, tuple(verdicts))
    rep.notes.append(f"canonical forms differ: {diff}")
    if not grid:
        rep.verdicts = (Verdict("canonical", UNEQUAL, note=diff),)
    return rep


def _show(r) -> str:
    return print_datum(r[1]) if r[0] == "ok" else f"error {r[1]}"


@dataclass
class FixpointReport(EquivalenceReport):
    """Functional verdicts in ``verdicts``; the structural one kept aside."""

    structural: bool = False
    difference: str | None = None
    cogen2: Program | None = None

    def to_json(self) -> dict:
        out = super().to_json()
        out["structural"] = "pass" if self.structural else "fail"
        if self.difference:
            out["first_difference"] = self.difference
        return out


def cogen_fixpoint_check(cogen: Program, bundle: MixObjectBundle | None = None,
                         interp: Program | None = None,
                         step_budget: int = RUN_STEP_BUDGET) -> FixpointReport:
    """Apply ``cogen`` to mix-in-L and compare the result with ``cogen``."""
    b = bundle or load_mix_object()
    interp = interp or load_interp_w()
    rep = FixpointReport("functional", ("interp_w",))
    try:
        cogen2 = apply_cogen(cogen, b.mix_l, step_budget, division=b.div_mix)
    except (RunError, DecodeError, ValueError) as err:
        rep.difference = f"cogen applied to mix failed: {err}"
        rep.verdicts = (Verdict("interp_w", ERROR, note=rep.difference[:300]),)
        return rep
    rep.cogen2 = cogen2
    rep.difference = first_difference(cogen2, cogen)
    rep.structural = rep.difference is None
    try:
        c1 = apply_cogen(cogen, interp, step_budget)
        c2 = c1 if rep.structural else apply_cogen(cogen2, interp, step_budget)
    except (RunError, DecodeError, ValueError) as err:
        rep.verdicts = (Verdict("interp_w", ERROR, note=str(err)[:300]),)
        return rep
    d = first_difference(c1, c2)
    rep.verdicts = (Verdict("interp_w", EQUAL if d is None else UNEQUAL, "structural", d or ""),)
    if not rep.structural:
        rep.notes.append(f"cogen(mix) differs from cogen at {rep.difference}")
    return rep


@dataclass
class ProjectionArtifacts:
    target_l: Program | None = None
    compiler_l: Program | None = None
    cogen_l: Program | None = None
    provenance: dict = field(default_factory=dict)

    def files(self, guest_name: str = "pow") -> dict:
        out = {}
        if self.target_l is not None:
            out[f"p1_{guest_name}.fcl"] = print_program(self.target_l)
        if self.compiler_l is not None:
            out["p2_compiler.fcl"] = print_program(self.compiler_l)
        if self.cogen_l is not None:
            out["p3_cogen.fcl"] = print_program(self.cogen_l)
        return out


def run_pipeline(guest: Value | None = None, interp: Program | None = None,
                 upto: int = 3, opts: SpecializeOptions | None = None) -> ProjectionArtifacts:
    """Run projections 1..``upto`` on ``guest`` (default pow.w) and interpW."""
    guest = guest if guest is not None else asset_w("pow.w")
    interp = interp or load_interp_w()
    opts = opts or SpecializeOptions()
    art = ProjectionArtifacts()
    timings = {}
    t = time.perf_counter()
    art.target_l = project1(interp, guest, opts)
    timings["p1"] = time.perf_counter() - t
    if upto >= 2:
        t = time.perf_counter()
        art.compiler_l = project2(interp, opts=opts)
        timings["p2"] = time.perf_counter() - t
    if upto >= 3:
        t = time.perf_counter()
        art.cogen_l = project3(opts=opts)
        timings["p3"] = time.perf_counter() - t
    art.provenance = {
        "guest": print_datum(guest),
        "budgets": {"block_budget": opts.block_budget,
                    "step_budget_static": opts.step_budget_static,
                    "compress_gotos": opts.compress_gotos,
                    "run_step_budget": RUN_STEP_BUDGET},
        "timings": timings,
        "blocks": {k: len(v.blocks) for k, v in
                   (("p1", art.target_l), ("p2", art.compiler_l), ("p3", art.cogen_l)) if v is not None},
    }
    return art
