import random

from hypothesis import given, settings, strategies as st

from futamix.bta import (D, S, analyze, check_congruence, close_division, decode_division,
                         encode_division, parse_division, print_division)
from futamix.corpus import conformance_corpus
from futamix.lang import parse_program, program_vars
from futamix.randprog import PARAMS, random_division, random_program

seeds = st.integers(0, 2**32 - 1)


def test_pow_static_exponent(pow_l):
    # result starts at 1 and is multiplied by the dynamic b
    assert analyze(pow_l, {"b": D, "e": S}) == {"b": D, "e": S, "result": D}


def test_pow_all_dynamic(pow_l):
    assert set(analyze(pow_l, {"b": D, "e": D}).values()) == {D}


def test_identity_static(identity_l):
    assert analyze(identity_l, {"x": S}) == {"x": S}


def test_analyze_is_congruent(pow_l):
    assert check_congruence(pow_l, analyze(pow_l, {"b": D, "e": S})) == []


def test_hand_checked_violation(pow_l):
    bad = check_congruence(pow_l, {"b": D, "e": S, "result": S})
    assert len(bad) == 1
    assert bad[0].code == "CongruenceViolation" and "body" in bad[0].location


def test_missing_variable_is_reported(pow_l):
    assert check_congruence(pow_l, {"b": D, "e": S})


def test_corpus_divisions_are_congruent():
    for case in conformance_corpus():
        assert check_congruence(case.program, case.division) == [], case.name


def test_division_text_round_trip(pow_l):
    d = analyze(pow_l, {"b": D, "e": S})
    text = print_division(d)
    assert text == "((b D) (e S) (result D))"
    assert parse_division(text) == d
    assert decode_division(encode_division(d)) == d


def test_close_division_forces_dependants():
    p = parse_program("(program (read x) a ((a ((:= y (var x)) (:= z (var y))) (return (var z)))))")
    assert close_division(p, {"x": S, "y": D, "z": S}) == {"x": S, "y": D, "z": D}


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_random_divisions_congruent(seed):
    rng = random.Random(seed)
    p = random_program(rng)
    assert check_congruence(p, random_division(p, rng)) == []
    classes = {x: rng.choice([S, D]) for x in p.params}
    d = analyze(p, classes)
    assert check_congruence(p, d) == []
    assert set(d) == set(program_vars(p))
    assert all(d[x] == classes[x] for x in p.params)


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_all_dynamic_always_congruent(seed):
    p = random_program(random.Random(seed))
    assert check_congruence(p, {x: D for x in program_vars(p)}) == []


@given(seeds, st.sampled_from(PARAMS))
@settings(max_examples=100, deadline=None)
def test_monotone(seed, flip):
    rng = random.Random(seed)
    p = random_program(rng)
    classes = {x: rng.choice([S, D]) for x in p.params}
    classes[flip] = S
    before = analyze(p, classes)
    after = analyze(p, {**classes, flip: D})
    assert all(after[x] == D for x in before if before[x] == D)
