"""Machine diagrams in DOT.

A program is drawn as a record node: its name on top and an input bar of
slots below.  Inputs are gray boxes wired into slots; a static input fused
into a program is drawn with a dashed edge; results are rounded boxes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["DiagramSpec", "emit_diagram", "KINDS"]

KINDS = ("execution", "compile", "interpret", "mix",
         "projection1", "projection2", "projection3")

# display names used when a slot is not given
_DEFAULTS = {
    "execution": {"program": "program", "inputs": "a1,a2", "output": "output"},
    "compile": {"compiler": "compiler^{S->T}_T", "program": "program_S", "output": "program_T"},
    "interpret": {"interpreter": "interpreter^S_T", "program": "program_S",
                  "input": "input", "output": "output"},
    "mix": {"mix": "mix_T", "program": "program_T", "static": "partial input_static",
            "output": None},
    "projection1": {"mix": "mix_T", "interpreter": "interpreter^S_T",
                    "program": "program_S", "output": "program_T"},
    "projection2": {"mix": "mix_T", "interpreter": "interpreter^S_T",
                    "output": "compiler^{S->T}_T"},
    "projection3": {"mix": "mix_T", "output": "compiler generator_T"},
}

# the fused slot of each kind (None: nothing is fused)
_FUSED = {"execution": None, "compile": None, "interpret": None, "mix": "static",
          "projection1": "program", "projection2": "interpreter", "projection3": "inner"}

# well-known residual names
_RESIDUALS = {("pow", "e=2"): "square"}


@dataclass(frozen=True)
class DiagramSpec:
    kind: str
    labels: dict = field(default_factory=dict)
    fused: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown diagram kind {self.kind!r}; expected one of {KINDS}")
        unknown = set(self.labels) - set(_DEFAULTS[self.kind])
        if unknown:
            raise ValueError(f"{self.kind} diagrams have no slot(s) {sorted(unknown)}")

    def label(self, slot: str) -> str:
        v = self.labels.get(slot)
        return v if v is not None else _DEFAULTS[self.kind][slot]

    @property
    def fused_slot(self):
        return self.fused if self.fused is not None else _FUSED[self.kind]


def _base(name: str) -> str:
    """Node id of a display name: the part before any language tag."""
    for sep in ("^", "_"):
        if sep in name and not name.startswith(sep):
            name = name.split(sep, 1)[0]
    return name.strip() or "node"


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _rec(s: str) -> str:
    # characters with meaning inside record labels
    for ch in "{}|<>":
        s = s.replace(ch, "\\" + ch)
    return s


class _Dot:
    def __init__(self, name):
        self.name = name
        self.lines = []

    def machine(self, nid, title, slots, gray=False):
        bar = "|".join(f"<s{i}> {_rec(s)}" for i, s in enumerate(slots))
        style = ', style=filled, fillcolor="gray85"' if gray else ""
        self.lines.append(f"  {_q(nid)} [shape=record, label={_q('{' + _rec(title) + '|{' + bar + '}}')}{style}];")

    def data(self, nid, title):
        self.lines.append(f"  {_q(nid)} [shape=box, style=filled, fillcolor=\"gray85\", label={_q(title)}];")

    def product(self, nid, title):
        self.lines.append(f"  {_q(nid)} [shape=box, style=rounded, label={_q(title)}];")

    def edge(self, a, b, port=None, dashed=False, label=None):
        tgt = _q(b) + (f":s{port}" if port is not None else "")
        attrs = []
        if dashed:
            attrs.append("style=dashed")
        if label:
            attrs.append(f"label={_q(label)}")
        tail = f" [{', '.join(attrs)}]" if attrs else ""
        self.lines.append(f"  {_q(a)} -> {tgt}{tail};")

    def text(self):
        head = [f"digraph {_q(self.name)} {{", "  rankdir=TB;",
                '  node [fontname="Helvetica"];', '  edge [fontname="Helvetica"];']
        return "\n".join(head + self.lines + ["}"]) + "\n"


def emit_diagram(spec: DiagramSpec) -> str:
    """DOT text for ``spec``; equal specs give identical text."""
    k = spec.kind
    g = _Dot(k)
    fused = spec.fused_slot
    if k == "execution":
        prog = spec.label("program")
        slots = [s.strip() for s in spec.label("inputs").split(",") if s.strip()] or ["input"]
        g.machine(_base(prog), prog, slots)
        g.product("output", spec.label("output"))
        g.edge(_base(prog), "output")
    elif k == "compile":
        comp, prog = spec.label("compiler"), spec.label("program")
        g.machine("compiler", comp, ["program"])
        g.data("source", prog)
        g.edge("source", "compiler", 0)
        g.product("target", spec.label("output"))
        g.edge("compiler", "target")
    elif k == "interpret":
        g.machine("interpreter", spec.label("interpreter"), ["program", "input"])
        g.data("source", spec.label("program"))
        g.data("input", spec.label("input"))
        g.edge("source", "interpreter", 0)
        g.edge("input", "interpreter", 1)
        g.product("output", spec.label("output"))
        g.edge("interpreter", "output")
    elif k == "mix":
        prog, static = spec.label("program"), spec.label("static")
        pid = _base(prog)
        out = spec.label("output")
        if out is None:
            out = _RESIDUALS.get((pid, static.replace(" ", "")), pid + "'")
        g.machine("mix", spec.label("mix"), ["program", "static"])
        g.machine(pid, prog, ["dynamic", "static"], gray=True)
        g.data("static", static)
        g.edge(pid, "mix", 0)
        g.edge("static", "mix", 1)
        if fused == "static":
            g.edge("static", pid, 1, dashed=True)
        g.product(_base(out), out)
        g.edge("mix", _base(out))
    elif k == "projection1":
        interp, prog = spec.label("interpreter"), spec.label("program")
        g.machine("mix", spec.label("mix"), ["program", "static"])
        g.machine("interpreter", interp, ["program", "input"], gray=True)
        g.data("source", prog)
        g.edge("interpreter", "mix", 0)
        g.edge("source", "mix", 1)
        if fused == "program":
            g.edge("source", "interpreter", 0, dashed=True)
        g.product("target", spec.label("output"))
        g.edge("mix", "target")
    elif k == "projection2":
        m = spec.label("mix")
        g.machine("mix_outer", m, ["program", "static"])
        g.machine("mix_inner", m, ["program", "static"], gray=True)
        g.machine("interpreter", spec.label("interpreter"), ["program", "input"], gray=True)
        g.edge("mix_inner", "mix_outer", 0)
        g.edge("interpreter", "mix_outer", 1)
        if fused == "interpreter":
            g.edge("interpreter", "mix_inner", 0, dashed=True)
        g.product("compiler", spec.label("output"))
        g.edge("mix_outer", "compiler")
    else:
        m = spec.label("mix")
        g.machine("mix_outer", m, ["program", "static"])
        g.machine("mix_middle", m, ["program", "static"], gray=True)
        g.machine("mix_inner", m, ["program", "static"], gray=True)
        g.edge("mix_middle", "mix_outer", 0)
        g.edge("mix_inner", "mix_outer", 1)
        if fused == "inner":
            g.edge("mix_inner", "mix_middle", 0, dashed=True)
        g.product("cogen", spec.label("output"))
        g.edge("mix_outer", "cogen")
    return g.text()
