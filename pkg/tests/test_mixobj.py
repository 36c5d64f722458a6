import dataclasses

import pytest

from futamix.bta import D, S, analyze, check_congruence
from futamix.corpus import conformance_corpus
from futamix.interp import run
from futamix.lang import (Program, canonicalize, decode_program, parse_program, print_program,
                          validate)
from futamix.mix import SpecializeError, mix, specialize
from futamix.mixobj import (MIX_PARAMS, AssetError, ConformanceCase, conformance_check,
                            load_mix_object, run_mix_object)
from futamix.mixobj import bundle_from_text
from importlib import resources


@pytest.fixture(scope="module")
def bundle():
    return load_mix_object()


def _mix_text():
    return resources.files("futamix").joinpath("assets", "mix.fcl").read_text()


def test_bundle_is_sound(bundle):
    assert validate(bundle.mix_l) == []
    assert bundle.mix_l.params == MIX_PARAMS
    assert decode_program(bundle.mix_l_encoded) == bundle.mix_l
    assert bundle.div_mix == analyze(bundle.mix_l, {"program": S, "division": S, "vs0": D})
    assert check_congruence(bundle.mix_l, bundle.div_mix) == []


def test_renamed_param_is_rejected():
    text = _mix_text().replace("(read program division vs0)", "(read prog division vs0)", 1)
    assert text != _mix_text()
    with pytest.raises(AssetError):
        bundle_from_text(text)


def test_broken_asset_is_rejected():
    with pytest.raises(AssetError):
        bundle_from_text(_mix_text()[:-40])
    p = parse_program(_mix_text())
    broken = Program(p.params, p.entry, p.blocks[1:])
    with pytest.raises(AssetError):
        bundle_from_text(print_program(broken))


def test_pow_square(bundle, pow_l):
    d = analyze(pow_l, {"b": D, "e": S})
    r = run_mix_object(bundle, pow_l, d, {"e": 2})
    host = mix(pow_l, {"e": 2})
    assert r.params == ("b",)
    assert all(run(r, [b]) == run(host, [b]) == b * b for b in range(11))
    assert canonicalize(r) == canonicalize(host)


def test_identity_total(bundle, identity_l):
    r = run_mix_object(bundle, identity_l, {"x": S}, {"x": 7})
    assert r.params == () and run(r, []) == 7


def test_precheck(bundle, pow_l):
    with pytest.raises(SpecializeError) as info:
        run_mix_object(bundle, pow_l, {"b": D, "e": S, "result": D}, {})
    assert info.value.kind == "MissingStaticInput"
    with pytest.raises(SpecializeError) as info:
        run_mix_object(bundle, pow_l, {"b": D, "e": S, "result": S}, {"e": 1})
    assert info.value.kind == "CongruenceBreach"


def test_corpus_shape():
    corpus = conformance_corpus()
    assert len(corpus) == 20
    assert len({c.name for c in corpus}) == 20
    for c in corpus:
        assert validate(c.program) == [] and check_congruence(c.program, c.division) == []


def test_conformance_on_corpus(bundle):
    rep = conformance_check(bundle, conformance_corpus())
    assert rep.overall, rep.summary()
    assert len(rep.verdicts) == 20
    # every case reached structural equality
    assert rep.mode == "structural"


def test_empty_corpus(bundle):
    rep = conformance_check(bundle, ())
    assert rep.overall and rep.verdicts == ()


def test_broken_golden_fails_only_that_case(bundle, pow_l):
    corpus = list(conformance_corpus()[:3])
    wrong = mix(pow_l, {"e": 3})
    corpus[1] = dataclasses.replace(corpus[1], expected=wrong)
    rep = conformance_check(bundle, corpus)
    outcomes = [v.outcome for v in rep.verdicts]
    assert outcomes[0] == "equal" and outcomes[2] == "equal"
    assert outcomes[1] != "equal"
    assert not rep.overall


def test_functional_tier_is_flagged(bundle, pow_l):
    # a golden that differs in shape but not in behaviour
    host = specialize(pow_l, analyze(pow_l, {"b": D, "e": S}), {"e": 2})
    padded = parse_program(print_program(host).replace(
        "((:= result (quote 1))", "((:= result (quote 1)) (:= result (op + (var result) (quote 0)))"))
    assert canonicalize(padded) != canonicalize(host)
    case = ConformanceCase("padded", pow_l, analyze(pow_l, {"b": D, "e": S}), {"e": 2},
                           grid=tuple((b,) for b in range(11)), expected=padded)
    rep = conformance_check(bundle, [case])
    assert rep.overall and rep.mode == "functional"
    assert rep.verdicts[0].tier == "functional" and rep.verdicts[0].note
