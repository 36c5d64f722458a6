"""Offline binding-time analysis: uniform, congruent divisions."""

from __future__ import annotations

from .lang import Diagnostic, Program, expr_vars, program_vars
from .values import Seq, Value, parse_datum, print_datum

S, D = "S", "D"

__all__ = ["S", "D", "analyze", "close_division", "check_congruence",
           "encode_division", "decode_division", "print_division",
           "parse_division"]


def _flows(p: Program):
    """Yield ``(target, source variables, location)`` for every assignment."""
    for b in p.blocks:
        for i, (x, e) in enumerate(b.assigns):
            yield x, set(expr_vars(e)), f"{print_datum(b.label)}[{i}] {x} :="


def close_division(p: Program, seed: dict) -> dict:
    """Least congruent division at least as dynamic as ``seed``.

    Variables missing from ``seed`` start static.
    """
    div = {x: S for x in program_vars(p)}
    div.update(seed)
    flows = [(x, srcs) for x, srcs, _ in _flows(p) if srcs]
    changed = True
    while changed:
        changed = False
        for x, srcs in flows:
            if div[x] == S and any(div[y] == D for y in srcs):
                div[x] = D
                changed = True
    return dict(sorted(div.items()))


def analyze(p: Program, param_classes: dict) -> dict:
    """Division of every variable of ``p`` given the class of each parameter."""
    if set(param_classes) != set(p.params):
        raise ValueError("param_classes must cover exactly the program parameters")
    bad = {v for v in param_classes.values()} - {S, D}
    if bad:
        raise ValueError(f"binding times are S or D, got {bad}")
    return close_division(p, dict(param_classes))


def check_congruence(p: Program, div: dict) -> list:
    diags = []
    for x, srcs, where in _flows(p):
        if div.get(x) == S:
            dyn = sorted(y for y in srcs if div.get(y) == D)
            if dyn:
                diags.append(Diagnostic("CongruenceViolation", where,
                                        f"static {x} depends on dynamic {', '.join(dyn)}"))
    for x in program_vars(p):
        if div.get(x) not in (S, D):
            diags.append(Diagnostic("UnclassifiedVariable", x, "variable missing from division"))
    return diags


def encode_division(div: dict) -> Value:
    return Seq.from_iter([Seq.of(x, div[x]) for x in sorted(div)])


def decode_division(v: Value) -> dict:
    out = {}
    for item in v:
        if not isinstance(item, Seq) or len(item) != 2 or item[1] not in (S, D):
            raise ValueError(f"bad division entry {print_datum(item)}")
        out[item[0]] = item[1]
    return out


def print_division(div: dict) -> str:
    return print_datum(encode_division(div))


def parse_division(text: str) -> dict:
    return decode_division(parse_datum(text))

