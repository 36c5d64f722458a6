"""``futamix verify``: every suite in order, then the out/ artifacts.

Each suite stops at its first failure; all suites run regardless.  Wall
clock times go to stderr only, so out/ stays byte-identical between runs.
"""

from __future__ import annotations

import json
import random
import sys
import time
from pathlib import Path

from .bta import D, S, analyze, check_congruence
from .corpus import conformance_corpus
from .guest import asset_w, load_interp_w, run_w
from .interp import run
from .lang import (decode_program, encode_program, load_program, parse_program,
                   print_program)
from .mix import SpecializeOptions
from .mixobj import conformance_check, load_mix_object
from .projections import (RUN_STEP_BUDGET, apply_cogen, apply_compiler,
                          check_equivalence, cogen_fixpoint_check, first_difference,
                          pow_grid, project1, project2, project3)
from .randprog import SOUNDNESS_SEED, random_division, random_program, soundness_suite
from .report import EQUAL, UNEQUAL, EquivalenceReport, Verdict
from .values import Seq, parse_datum, print_datum

__all__ = ["run_verify", "SUITES"]

SUITES = ("round-trip", "congruence", "soundness", "conformance", "projections", "cogen-fixpoint")


def _random_datum(rng, depth=3):
    r = rng.random()
    if depth == 0 or r < 0.3:
        return rng.randint(-50, 50)
    if r < 0.55:
        return rng.choice(["a", "foo", "x1", "true", "false", "+", "eq?", ":="])
    return Seq.from_iter(_random_datum(rng, depth - 1) for _ in range(rng.randint(0, 4)))


def _assets():
    from importlib import resources
    root = resources.files("futamix").joinpath("assets")
    return [load_program(str(root.joinpath(n))) for n in
            ("pow.fcl", "identity.fcl", "mix.fcl", "interp_w.fcl", "interp_w_alt.fcl", "toy.fcl")]


def suite_round_trip(seed) -> EquivalenceReport:
    rng = random.Random(seed)
    verdicts = []
    for i in range(200):
        v = _random_datum(rng)
        ok = parse_datum(print_datum(v)) == v
        verdicts.append(Verdict(f"datum {i}", EQUAL if ok else UNEQUAL))
        if not ok:
            return EquivalenceReport("structural", (), tuple(verdicts))
    progs = _assets() + [random_program(rng) for _ in range(50)]
    for i, p in enumerate(progs):
        ok = parse_program(print_program(p)) == p and decode_program(encode_program(p)) == p
        verdicts.append(Verdict(f"program {i}", EQUAL if ok else UNEQUAL))
        if not ok:
            break
    return EquivalenceReport("structural", (), tuple(verdicts))


def suite_congruence(seed) -> EquivalenceReport:
    rng = random.Random(seed)
    cases = [(p, {x: rng.choice([S, D]) for x in p.params}) for p in _assets()]
    cases += [(p, None) for p in (random_program(rng) for _ in range(50))]
    verdicts = []
    for i, (p, classes) in enumerate(cases):
        div = analyze(p, classes) if classes is not None else random_division(p, rng)
        bad = check_congruence(p, div)
        verdicts.append(Verdict(f"case {i}", UNEQUAL if bad else EQUAL,
                                note=str(bad[0]) if bad else ""))
        if bad:
            break
    return EquivalenceReport("structural", (), tuple(verdicts))


def suite_projections(state) -> EquivalenceReport:
    interp, pw = load_interp_w(), asset_w("pow.w")
    opts = SpecializeOptions()
    verdicts = []

    def add(name, ok, note=""):
        verdicts.append(Verdict(name, EQUAL if ok else UNEQUAL, note=note))
        return ok

    p1 = state["p1"] = project1(interp, pw, opts)
    if not add("p1 run (3 2) = 9", run(p1, [Seq.of(3, 2)]) == 9):
        return EquivalenceReport("functional", (), tuple(verdicts))
    grid = pow_grid()
    bad = [pt for pt in grid if run(p1, list(pt)) != run_w(pw, list(pt[0]))]
    if not add("p1 = run_w on the pow grid", not bad, f"first mismatch {bad[0]}" if bad else ""):
        return EquivalenceReport("functional", (), tuple(verdicts))
    comp = state["p2"] = project2(interp, opts=opts)
    d = first_difference(apply_compiler(comp, pw, RUN_STEP_BUDGET), p1)
    if not add("p2 compiler(pow.w) = p1", d is None, d or ""):
        return EquivalenceReport("structural", (), tuple(verdicts))
    cogen = state["p3"] = project3(opts=opts)
    d = first_difference(apply_cogen(cogen, interp, RUN_STEP_BUDGET), comp)
    add("p3 cogen(interp) = p2", d is None, d or "")
    rep = EquivalenceReport("structural", (), tuple(verdicts))
    rep.grid = grid
    return rep


def _row(name, rep, secs):
    status = "pass" if rep.overall else "FAIL"
    print(f"  {name:<16} {status:<5} {rep.summary()}")
    print(f"{name}: {secs:.1f}s", file=sys.stderr)


def run_verify(out: Path, seed: int | None = None) -> bool:
    seed = SOUNDNESS_SEED if seed is None else seed
    out.mkdir(parents=True, exist_ok=True)
    state: dict = {}
    reports = {}
    print("futamix verify")
    for name in SUITES:
        t = time.perf_counter()
        if name == "round-trip":
            rep = suite_round_trip(seed)
        elif name == "congruence":
            rep = suite_congruence(seed)
        elif name == "soundness":
            rep = soundness_suite(seed=seed)
            rep.notes = [n.rsplit(",", 1)[0] for n in rep.notes]  # drop the clock
        elif name == "conformance":
            rep = conformance_check(load_mix_object(), conformance_corpus())
        elif name == "projections":
            rep = suite_projections(state)
        else:
            if "p3" in state:
                rep = cogen_fixpoint_check(state["p3"])
            else:
                rep = EquivalenceReport("functional", (), (Verdict("cogen", UNEQUAL,
                                                                   note="projection 3 did not run"),))
        reports[name] = rep
        _row(name, rep, time.perf_counter() - t)

    files = {}
    if "p1" in state:
        files["p1_pow.fcl"] = print_program(state["p1"])
    if "p2" in state:
        files["p2_compiler.fcl"] = print_program(state["p2"])
    if "p3" in state:
        files["p3_cogen.fcl"] = print_program(state["p3"])
    opts = SpecializeOptions()
    report = {
        "mode": "verify",
        "seed": seed,
        "grids": {"pow": [print_datum(pt[0]) for pt in pow_grid()],
                  "soundness": "200 random programs x 8 inputs"},
        "verdicts": {k: r.to_json() for k, r in reports.items()},
        "blocks": {k: len(v.blocks) for k, v in state.items()},
        "timings": "wall clock printed on stderr; omitted here so out/ is byte-stable",
        "budgets": {"block_budget": opts.block_budget,
                    "step_budget_static": opts.step_budget_static,
                    "run_step_budget": RUN_STEP_BUDGET},
    }
    files["report.json"] = json.dumps(report, indent=2, sort_keys=True) + "\n"
    for name, text in files.items():
        (out / name).write_text(text)
    ok = all(r.overall for r in reports.values())
    print("overall:", "pass" if ok else "FAIL")
    return ok
