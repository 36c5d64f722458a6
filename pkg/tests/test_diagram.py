import re

import pydot
import pytest
from hypothesis import given, strategies as st

from futamix.diagram import KINDS, DiagramSpec, emit_diagram


def nodes(dot):
    (g,) = pydot.graph_from_dot_data(dot)
    return g, {n.get_name().strip('"'): n for n in g.get_nodes()}


def test_mix_instance():
    dot = emit_diagram(DiagramSpec("mix", {"program": "pow_T", "static": "e=2"}))
    g, ns = nodes(dot)
    assert "pow" in ns and "square" in ns
    dashed = [e for e in g.get_edges() if e.get("style") == "dashed"]
    assert len(dashed) == 1
    assert dashed[0].get_destination().strip('"').startswith("pow")
    assert "gray" in ns["pow"].get("fillcolor")
    assert ns["square"].get("style") == "rounded"


def test_execution_two_slots():
    dot = emit_diagram(DiagramSpec("execution", {"program": "pow"}))
    _, ns = nodes(dot)
    label = ns["pow"].get("label")
    assert ns["pow"].get("shape") == "record"
    assert label.count("<s") == 2


def test_projection3_three_mixes():
    dot = emit_diagram(DiagramSpec("projection3"))
    g, ns = nodes(dot)
    mixes = [n for n in ns if n.startswith("mix_")]
    assert sorted(mixes) == ["mix_inner", "mix_middle", "mix_outer"]
    assert all("mix_T" in ns[n].get("label") for n in mixes)
    assert any(e.get("style") == "dashed" for e in g.get_edges())


@pytest.mark.parametrize("kind", KINDS)
def test_every_kind_parses_and_is_stable(kind):
    a = emit_diagram(DiagramSpec(kind))
    assert a == emit_diagram(DiagramSpec(kind))
    assert pydot.graph_from_dot_data(a)


def test_fused_override():
    dot = emit_diagram(DiagramSpec("mix", fused="none"))
    assert "dashed" not in dot


def test_bad_specs():
    with pytest.raises(ValueError):
        DiagramSpec("tower")
    with pytest.raises(ValueError):
        DiagramSpec("compile", {"mix": "mix_T"})


labels = st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126), min_size=1, max_size=12)


@given(st.sampled_from(["program", "static", "mix"]), labels)
def test_arbitrary_labels_stay_valid(slot, text):
    dot = emit_diagram(DiagramSpec("mix", {slot: text}))
    assert pydot.graph_from_dot_data(dot)
    assert re.search(r"^digraph ", dot)
