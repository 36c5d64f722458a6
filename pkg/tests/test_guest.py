import random

import pytest
from hypothesis import given, settings, strategies as st

from futamix.bta import D, S, analyze, check_congruence
from futamix.guest import WRunError, WSyntaxError, eval_w, load_interp_w, parse_w, run_w
from futamix.interp import RunError
from futamix.lang import validate
from futamix.randprog import random_wprogram
from futamix.values import NIL, Seq


def test_pow_w_parses(pow_w):
    assert pow_w[0] == "wprogram" and pow_w[1] == Seq.of("b", "e")


def test_identity_w(identity_w):
    assert parse_w("(wprogram (x) ((return (ref x))))") == identity_w


@pytest.mark.parametrize("text,path", [
    ("(wprogram (x) ((sett x (const 1))))", (2, 0)),
    ("(wprogram (x) ((set x (cnst 1))))", (2, 0, 2)),
    ("(wprogram (x x) ())", (1,)),
    ("(wprogram (x) ((while (ref x))))", (2, 0)),
    ("(wprogram (x) ((return (prim car (ref x) (ref x)))))", (2, 0, 1)),
])
def test_syntax_errors(text, path):
    with pytest.raises(WSyntaxError) as info:
        parse_w(text)
    assert tuple(info.value.path) == path


def test_not_a_program():
    for text in ["(program (x) ())", "(wprogram (x))", "7", "(wprogram"]:
        with pytest.raises(WSyntaxError):
            parse_w(text)


def test_run_examples(pow_w, identity_w):
    assert run_w(pow_w, [3, 2]) == 9
    assert run_w(identity_w, [42]) == 42
    assert run_w(pow_w, [2, 10]) == 1024


def test_arity(pow_w):
    with pytest.raises(ValueError):
        run_w(pow_w, [3])


def test_fall_off_returns_empty():
    wp = parse_w("(wprogram (x) ((set y (ref x))))")
    assert run_w(wp, [1]) == NIL == eval_w(wp, [1])


def test_shadowing_and_reassignment():
    wp = parse_w("""(wprogram (x) ((set x (prim + (ref x) (const 1)))
                                  (set y (ref x)) (set x (const 0))
                                  (return (prim cons (ref y) (prim cons (ref x) (const ()))))))""")
    assert run_w(wp, [4]) == Seq.of(5, 0) == eval_w(wp, [4])


def test_if_and_data():
    wp = parse_w("""(wprogram (xs) ((if (prim eq? (ref xs) (const ()))
                      ((return (const empty)))
                      ((return (prim cons (const 0) (ref xs)))))))""")
    assert run_w(wp, [NIL]) == "empty"
    assert run_w(wp, [Seq.of(1)]) == Seq.of(0, 1)


def test_runtime_errors_in_both():
    wp = parse_w("(wprogram (x) ((return (prim + (ref x) (ref nope)))))")
    with pytest.raises(RunError):
        run_w(wp, [1])
    with pytest.raises(WRunError):
        eval_w(wp, [1])
    bad = parse_w("(wprogram (x) ((return (prim + (ref x) (const a)))))")
    with pytest.raises(RunError) as info:
        run_w(bad, [1])
    assert info.value.kind == "TypeError"


def test_interp_well_formed(interp_w):
    assert interp_w.params == ("wprog", "input")
    assert validate(interp_w) == []


def test_program_counter_is_static(interp_w):
    d = analyze(interp_w, {"wprog": S, "input": D})
    assert check_congruence(interp_w, d) == []
    assert d["pc"] == S
    assert d["env"] == D


def test_pow_grid_against_oracle(pow_w):
    for b in range(11):
        for e in range(7):
            assert run_w(pow_w, [b, e]) == eval_w(pow_w, [b, e]) == b ** e


def test_fidelity_on_random_programs():
    rng = random.Random(0xF47A)
    for _ in range(30):
        wp = random_wprogram(rng)
        for _ in range(4):
            args = [rng.randint(-3, 5), rng.randint(-3, 5)]
            assert run_w(wp, args) == eval_w(wp, args)


@given(st.integers(0, 2**32 - 1), st.integers(-3, 5), st.integers(-3, 5))
@settings(max_examples=40, deadline=None)
def test_fidelity_property(seed, p, q):
    wp = random_wprogram(random.Random(seed))
    assert run_w(wp, [p, q]) == eval_w(wp, [p, q])


def test_renamed_interpreter_agrees(pow_w):
    alt = load_interp_w("interp_w_alt.fcl")
    assert validate(alt) == []
    assert all(run_w(pow_w, [b, e], interp=alt) == b ** e for b in range(4) for e in range(4))
