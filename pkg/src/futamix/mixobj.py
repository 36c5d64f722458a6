"""The specializer written in L, loaded from its asset and checked against
the host specializer."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .bta import D, S, analyze, check_congruence, encode_division
from .interp import RunError, run
from .lang import (DecodeError, Program, canonicalize, decode_program,
                   encode_program, parse_program, validate)
from .mix import SpecializeError, SpecializeOptions, encode_store, specialize
from .report import EQUAL, ERROR, UNEQUAL, EquivalenceReport, Verdict
from .values import ParseError, Value

__all__ = ["AssetError", "MixObjectBundle", "load_mix_object", "run_mix_object",
           "conformance_check", "ConformanceCase", "DEFAULT_MIX_STEP_BUDGET",
           "MIX_PARAMS"]

MIX_PARAMS = ("program", "division", "vs0")
# mix-in-L is an interpreter over encoded programs; it needs far more steps
# than the programs it specializes
DEFAULT_MIX_STEP_BUDGET = 2_000_000_000


class AssetError(Exception):
    """A shipped asset is missing or violates its invariants."""


@dataclass(frozen=True)
class MixObjectBundle:
    mix_l: Program
    mix_l_encoded: Value
    div_mix: dict


def bundle_from_text(text: str) -> MixObjectBundle:
    try:
        p = parse_program(text)
    except ParseError as err:
        raise AssetError(f"mix asset does not parse: {err}") from None
    diags = validate(p)
    if diags:
        raise AssetError("mix asset is ill-formed: " + "; ".join(map(str, diags)))
    if p.params != MIX_PARAMS:
        raise AssetError(f"mix asset must read {MIX_PARAMS}, reads {p.params}")
    enc = encode_program(p)
    if decode_program(enc) != p:
        raise AssetError("mix asset does not survive encoding")
    div = analyze(p, {"program": S, "division": S, "vs0": D})
    bad = check_congruence(p, div)
    if bad:
        raise AssetError("mix asset division is not congruent: " + "; ".join(map(str, bad)))
    return MixObjectBundle(p, enc, div)


@lru_cache(maxsize=1)
def load_mix_object() -> MixObjectBundle:
    try:
        text = resources.files("futamix").joinpath("assets", "mix.fcl").read_text()
    except OSError as err:
        raise AssetError(f"mix asset missing: {err}") from None
    return bundle_from_text(text)


def _precheck(target: Program, d: dict, vs0: dict):
    diags = validate(target)
    if diags:
        raise ValueError("; ".join(f"{x.code} {x.location}: {x.message}" for x in diags))
    bad = check_congruence(target, d)
    if bad:
        raise SpecializeError("CongruenceBreach", "; ".join(f"{x.location} {x.message}" for x in bad))
    missing = sorted(x for x in target.params if d.get(x) == S and x not in vs0)
    if missing:
        raise SpecializeError("MissingStaticInput", f"no value for static parameters {missing}")


def run_mix_object(bundle: MixObjectBundle, target: Program, d: dict, vs0: dict,
                   step_budget: int = DEFAULT_MIX_STEP_BUDGET) -> Program:
    """Specialize ``target`` by running mix-in-L under the interpreter."""
    _precheck(target, d, vs0)
    out = run(bundle.mix_l, [encode_program(target), encode_division(d), encode_store(vs0)],
              step_budget)
    return decode_program(out)


@dataclass(frozen=True)
class ConformanceCase:
    name: str
    program: Program
    division: dict
    vs0: dict
    grid: tuple = ()            # dynamic input tuples for the functional tier
    expected: Program | None = None   # golden residual; the host result if None


def _functional(a: Program, b: Program, grid) -> str | None:
    """None if ``a`` and ``b`` agree on every point of ``grid``, else a note."""
    if not grid:
        return "no grid for a functional comparison"
    for pt in grid:
        try:
            ra = run(a, list(pt))
        except RunError as err:
            ra = ("error", err.kind)
        try:
            rb = run(b, list(pt))
        except RunError as err:
            rb = ("error", err.kind)
        if ra != rb:
            return f"runs differ at {pt}"
    return None


def conformance_check(bundle: MixObjectBundle, corpus, opts: SpecializeOptions | None = None,
                      step_budget: int = DEFAULT_MIX_STEP_BUDGET) -> EquivalenceReport:
    """Compare mix-in-L against the host specializer (or a golden) per case."""
    verdicts = []
    for case in corpus:
        try:
            want = case.expected
            if want is None:
                want = specialize(case.program, case.division, case.vs0, opts)
            want = canonicalize(want)
            got = canonicalize(run_mix_object(bundle, case.program, case.division,
                                              case.vs0, step_budget))
        except (SpecializeError, RunError, DecodeError, ValueError) as err:
            verdicts.append(Verdict(case.name, ERROR, note=str(err)[:300]))
            continue
        if got == want:
            verdicts.append(Verdict(case.name, EQUAL, "structural"))
            continue
        note = _functional(got, want, case.grid)
        if note is None:
            verdicts.append(Verdict(case.name, EQUAL, "functional",
                                    "residuals differ structurally but agree on the grid"))
        else:
            verdicts.append(Verdict(case.name, UNEQUAL, note=note))
    mode = "structural" if all(v.tier == "structural" for v in verdicts) else "functional"
    return EquivalenceReport(mode, tuple(c.name for c in corpus), tuple(verdicts))
