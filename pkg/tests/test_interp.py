import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from futamix import interp
from futamix.interp import RunError, run, run_counted, run_traced
from futamix.lang import Block, Const, If, PrimApp, Program, Return, Var, parse_program
from futamix.randprog import random_program
from futamix.values import FALSE, NIL, TRUE, Seq, parse_datum


def one(op, *args):
    """A program returning ``op`` applied to constant arguments."""
    return Program((), "a", (Block("a", (), Return(PrimApp(op, tuple(Const(a) for a in args)))),))


def test_pow_examples(pow_l):
    assert run(pow_l, [3, 2]) == 9
    assert run(pow_l, [5, 0]) == 1
    assert run(pow_l, [2, 10]) == 2 ** 10


def test_identity_trace(identity_l):
    assert run_traced(identity_l, [7]) == (7, [("init", {"x": 7})])


def test_trace_agrees_with_run(pow_l):
    value, trace = run_traced(pow_l, [3, 2])
    assert value == run(pow_l, [3, 2])
    assert [t[0] for t in trace] == ["init", "test", "body", "test", "body", "test", "done"]
    assert trace[-1][1] == {"b": 3, "e": 0, "result": 9}


def test_step_budget(pow_l):
    with pytest.raises(RunError) as info:
        run(pow_l, [3, 2], step_budget=1)
    assert info.value.kind == "StepBudgetExceeded"
    _, steps = run_counted(pow_l, [3, 2])
    assert run(pow_l, [3, 2], step_budget=steps) == 9
    with pytest.raises(RunError):
        run(pow_l, [3, 2], step_budget=steps - 1)


def test_arity_mismatch(pow_l):
    with pytest.raises(RunError) as info:
        run(pow_l, [3])
    assert info.value.kind == "ArityMismatch"


def test_unbound_and_uninitialized():
    p = parse_program("(program (read) a ((a () (return (var ghost)))))")
    with pytest.raises(RunError) as info:
        run(p, [])
    assert info.value.kind == "UnboundVariable"
    q = parse_program("(program (read c) a ((a () (if (var c) b d)) (b ((:= y (quote 1))) (goto d))"
                      " (d () (return (var y)))))")
    assert run(q, ["true"]) == 1
    with pytest.raises(RunError) as info:
        run(q, ["false"])
    assert info.value.kind == "Uninitialized"


def test_error_location():
    p = parse_program("(program (read x) a ((a ((:= y (quote 1)) (:= z (op car (var x)))) (return (var z)))))")
    with pytest.raises(RunError) as info:
        run(p, [5])
    assert info.value.kind == "TypeError" and info.value.at == ("a", 1)


@pytest.mark.parametrize("op,args,want", [
    ("cons", (1, Seq.of(2)), Seq.of(1, 2)),
    ("car", (Seq.of(1, 2),), 1),
    ("cdr", (Seq.of(1, 2),), Seq.of(2)),
    ("atom?", (NIL,), FALSE),
    ("atom?", ("x",), TRUE),
    ("eq?", (Seq.of(1, Seq.of("a")), Seq.of(1, Seq.of("a"))), TRUE),
    ("eq?", (1, "1"), FALSE),
    ("+", (2, 3), 5),
    ("-", (2, 3), -1),
    ("*", (-4, 3), -12),
    ("quotient", (-7, 2), -3),
    ("remainder", (-7, 2), -1),
    ("<", (2, 3), TRUE),
    ("=", (3, 3), TRUE),
    ("not", (FALSE,), TRUE),
    ("not", (NIL,), FALSE),
    ("not", (0,), FALSE),
])
def test_primitives(op, args, want):
    assert run(one(op, *args), []) == want


@pytest.mark.parametrize("op,args", [
    ("car", (NIL,)), ("cdr", (NIL,)), ("car", (3,)), ("cons", (1, 2)),
    ("+", ("a", 1)), ("<", (NIL, 1)), ("=", ("a", "a")), ("quotient", (1, 0)),
])
def test_primitive_type_errors(op, args):
    with pytest.raises(RunError) as info:
        run(one(op, *args), [])
    assert info.value.kind == "TypeError"


def test_conditional_truth():
    def pick(c):
        p = Program((), "a", (Block("a", (), If(Const(c), "t", "f")),
                              Block("t", (), Return(Const("yes"))),
                              Block("f", (), Return(Const("no")))))
        return run(p, [])
    assert pick(FALSE) == "no" and pick(NIL) == "no"
    assert pick(TRUE) == "yes" and pick(0) == "yes" and pick(Seq.of(NIL)) == "yes"


def test_determinism(pow_l):
    assert run_traced(pow_l, [4, 3]) == run_traced(pow_l, [4, 3])


# kernel parity -----------------------------------------------------------

def _outcome(p, args):
    try:
        return ("ok", run_counted(p, args, 100_000))
    except RunError as err:
        return ("error", err.kind, err.at)


def _both(p, args):
    prev = interp.kernel_name()
    try:
        interp.set_kernel("python")
        a = _outcome(p, args)
        interp.set_kernel("c")
        b = _outcome(p, args)
    finally:
        interp.set_kernel(prev)
    return a, b


needs_c = pytest.mark.skipif(
    __import__("importlib").util.find_spec("futamix._ckernel") is None,
    reason="compiled kernel not built")


@needs_c
@given(st.integers(0, 2**32 - 1), st.integers(-4, 6), st.integers(-4, 6), st.integers(-1, 4))
@settings(max_examples=80, deadline=None)
def test_kernels_agree_on_random_programs(seed, x, y, n):
    a, b = _both(random_program(random.Random(seed)), [x, y, n])
    assert a == b


datum = st.recursive(st.one_of(st.integers(-5, 5), st.sampled_from(["a", "true", "false"])),
                     lambda inner: st.lists(inner, max_size=3).map(Seq.from_iter), max_leaves=6)


@needs_c
@given(st.sampled_from(["cons", "car", "cdr", "atom?", "eq?", "+", "-", "*", "quotient",
                        "remainder", "<", "=", "not"]), datum, datum)
@settings(max_examples=200, deadline=None)
def test_kernels_agree_on_primitives(op, x, y):
    from futamix.lang import PRIM_ARITY
    args = (x, y)[:PRIM_ARITY[op]]
    a, b = _both(one(op, *args), [])
    assert a == b


@needs_c
def test_kernels_agree_on_the_w_interpreter(interp_w, pow_w):
    a, b = _both(interp_w, [pow_w, Seq.of(3, 5)])
    assert a == b and a[1][0] == 243


def test_python_fallback_is_selectable():
    code = "from futamix import interp; print(interp.kernel_name())"
    env = dict(os.environ, FUTAMIX_KERNEL="python")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


def test_big_arithmetic_is_exact(pow_l):
    assert run(pow_l, [3, 100]) == 3 ** 100
    assert run(one("*", 10**40, -(10**40)), []) == -(10**80)
    assert parse_datum(str(3**100)) == 3**100
