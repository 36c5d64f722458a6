"""Command-line entry point: ``futamix <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 parse or validation
error, 3 budget exceeded, 4 runtime or type error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bta import D, S, analyze, check_congruence, parse_division, print_division
from .guest import WSyntaxError, asset_w, load_interp_w, parse_w, run_w
from .interp import DEFAULT_STEP_BUDGET, RunError, run_counted
from .lang import DecodeError, parse_program, print_program, validate
from .mix import SpecializeError, default_options, specialize
from .values import ParseError, Seq, parse_datum, print_datum

OK, VERIFY_FAIL, PARSE_ERROR, BUDGET, RUNTIME = 0, 1, 2, 3, 4


class _Exit(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _read(path: str) -> str:
    """Read ``path``; ``assets/...`` falls back to the packaged assets."""
    try:
        return Path(path).read_text()
    except OSError as err:
        parts = Path(path).parts
        if parts and parts[0] == "assets" and not Path(path).exists():
            from importlib import resources
            res = resources.files("futamix").joinpath(*parts)
            if res.is_file():
                return res.read_text()
        raise _Exit(PARSE_ERROR, f"cannot read {path}: {err.strerror}") from None


def _program(path: str):
    p = parse_program(_read(path))
    diags = validate(p)
    if diags:
        raise _Exit(PARSE_ERROR, "; ".join(f"{d.code} {d.location}: {d.message}" for d in diags))
    return p


def _statics(text: str | None) -> dict:
    """``x=3,xs=(1 2)`` -> {x: 3, xs: (1 2)}; a bare name maps to None."""
    out = {}
    if not text:
        return out
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, eq, datum = part.partition("=")
        out[name.strip()] = parse_datum(datum) if eq else None
    return out


def _inputs(text: str | None) -> list:
    if text is None:
        return []
    v = parse_datum(text)
    if not isinstance(v, Seq):
        raise _Exit(PARSE_ERROR, "--input takes a parenthesized list of data")
    return list(v)


def _opts(args):
    over = {}
    if args.budget_blocks is not None:
        over["block_budget"] = args.budget_blocks
    if args.budget_steps is not None:
        over["step_budget_static"] = args.budget_steps
    if args.no_compress:
        over["compress_gotos"] = False
    return default_options(**over)


def _emit(text: str, out: str | None):
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_run(args):
    budget = args.budget_steps or DEFAULT_STEP_BUDGET
    inputs = _inputs(args.input)
    if args.program.endswith(".w"):
        wp = parse_w(_read(args.program))
        value = run_w(wp, inputs, budget)
    else:
        p = _program(args.program)
        value, _ = run_counted(p, inputs, budget)
    _emit(print_datum(value) + "\n", args.output)
    return OK


def _division_for(p, args):
    if args.division:
        div = parse_division(_read(args.division))
        bad = check_congruence(p, div)
        if bad:
            raise _Exit(PARSE_ERROR, "; ".join(f"{d.location} {d.message}" for d in bad))
        return div
    statics = _statics(args.static)
    unknown = set(statics) - set(p.params)
    if unknown:
        raise _Exit(PARSE_ERROR, f"not parameters: {', '.join(sorted(unknown))}")
    return analyze(p, {x: (S if x in statics else D) for x in p.params})


def cmd_bta(args):
    p = _program(args.program)
    _emit(print_division(_division_for(p, args)) + "\n", args.output)
    return OK


def cmd_mix(args):
    p = _program(args.program)
    div = _division_for(p, args)
    vs0 = {x: v for x, v in _statics(args.static).items() if v is not None}
    r = specialize(p, div, vs0, _opts(args))
    _emit(print_program(r), args.output)
    return OK


def _guest(args):
    if args.guest:
        return Path(args.guest).stem, parse_w(_read(args.guest))
    return "pow", asset_w("pow.w")


def cmd_project(args):
    from .projections import project1, project2, project3
    out = Path(args.output or "out")
    opts = _opts(args)
    interp = _program(args.interp) if args.interp else load_interp_w()
    t = time.perf_counter()
    if args.n == "1":
        name, wp = _guest(args)
        r, fname = project1(interp, wp, opts), f"p1_{name}.fcl"
    elif args.n == "2":
        r, fname = project2(interp, opts=opts), "p2_compiler.fcl"
    else:
        r, fname = project3(opts=opts), "p3_cogen.fcl"
    out.mkdir(parents=True, exist_ok=True)
    (out / fname).write_text(print_program(r))
    print(f"wrote {out / fname}: {len(r.blocks)} blocks", file=sys.stderr)
    print(f"time {time.perf_counter() - t:.2f}s", file=sys.stderr)
    return OK


def cmd_cogen_fix(args):
    from .projections import cogen_fixpoint_check, project3
    cogen = project3(opts=_opts(args))
    rep = cogen_fixpoint_check(cogen)
    print(f"structural: {'pass' if rep.structural else 'fail'}"
          + (f" (first difference: {rep.difference})" if rep.difference else ""))
    print(f"functional: {'pass' if rep.overall else 'fail'}")
    if args.output:
        _emit(json.dumps(rep.to_json(), indent=2, sort_keys=True) + "\n", args.output)
    return OK if rep.overall else VERIFY_FAIL


def cmd_verify(args):
    from .verify import run_verify
    return OK if run_verify(Path(args.output or "out"), seed=args.seed) else VERIFY_FAIL


def cmd_diagram(args):
    from .diagram import DiagramSpec, emit_diagram
    labels = {}
    for item in args.labels:
        slot, eq, name = item.partition("=")
        if not eq:
            raise _Exit(PARSE_ERROR, f"labels are slot=name, got {item!r}")
        labels[slot] = name
    try:
        spec = DiagramSpec(args.kind, labels)
    except ValueError as err:
        raise _Exit(PARSE_ERROR, str(err)) from None
    _emit(emit_diagram(spec), args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="futamix", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"futamix {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, spec=False):
        p.add_argument("-o", "--output", help="output path (directory for project/verify)")
        if spec:
            p.add_argument("--static", help='static inputs, "var=datum[,...]"')
            p.add_argument("--division", help="division file ((var S|D) ...)")
            p.add_argument("--budget-blocks", type=int)
            p.add_argument("--budget-steps", type=int)
            p.add_argument("--no-compress", action="store_true")

    p = sub.add_parser("run", help="run an L program (or a .w program)")
    p.add_argument("program")
    p.add_argument("--input", help='inputs as a list, e.g. "(3 2)"')
    p.add_argument("--budget-steps", type=int)
    common(p)
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("bta", help="print the division for the given static parameters")
    p.add_argument("program")
    common(p, spec=True)
    p.set_defaults(fn=cmd_bta)

    p = sub.add_parser("mix", help="specialize a program to static inputs")
    p.add_argument("program")
    common(p, spec=True)
    p.set_defaults(fn=cmd_mix)

    p = sub.add_parser("project", help="run projection 1, 2 or 3")
    p.add_argument("n", choices=["1", "2", "3"])
    p.add_argument("guest", nargs="?", help="W program for projection 1 (default pow.w)")
    p.add_argument("--interp", help="interpreter in L (default the shipped W interpreter)")
    common(p, spec=True)
    p.set_defaults(fn=cmd_project)

    p = sub.add_parser("cogen-fix", help="check that cogen regenerates itself from mix")
    common(p, spec=True)
    p.set_defaults(fn=cmd_cogen_fix)

    p = sub.add_parser("verify", help="run every suite and write out/ artifacts")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("diagram", help="emit a machine diagram in DOT")
    p.add_argument("kind")
    p.add_argument("labels", nargs="*", help="slot=name pairs")
    common(p)
    p.set_defaults(fn=cmd_diagram)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return PARSE_ERROR if e.code else OK
    try:
        return args.fn(args)
    except _Exit as e:
        print(f"futamix: {e}", file=sys.stderr)
        return e.code
    except (ParseError, WSyntaxError, DecodeError) as e:
        print(f"futamix: {e}", file=sys.stderr)
        return PARSE_ERROR
    except RunError as e:
        print(f"futamix: {e}", file=sys.stderr)
        if e.kind == "ArityMismatch":
            return PARSE_ERROR
        return BUDGET if e.kind == "StepBudgetExceeded" else RUNTIME
    except SpecializeError as e:
        print(f"futamix: {e}", file=sys.stderr)
        if e.kind in ("BlockBudgetExceeded", "StaticStepBudgetExceeded"):
            return BUDGET
        return PARSE_ERROR if e.kind in ("CongruenceBreach", "MissingStaticInput") else RUNTIME
    except ValueError as e:
        print(f"futamix: {e}", file=sys.stderr)
        return PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
