"""Input/output: the quiver JSON schema, module literals, report rendering
and DOT export.

Quiver files look like

    {"field": "Q" | {"Fp": p},
     "vertices": ["1", "2"],
     "arrows": [{"name": "a", "source": "2", "target": "1"}],
     "relations": [[{"coeff": "1", "path": ["b", "a"]}]]}

Relation paths are given in traversal order [first, ..., last]; the rendered
name of a path reverses the word, so ["b", "a"] prints as "ab".
"""

from __future__ import annotations

import json

from .algebra import BasedAlgebra, QuiverPresentation, presentation
from .errors import ParseError
from .fields import Field, GF, QQ


def parse_field(spec) -> Field:
    if spec == "Q":
        return QQ
    if isinstance(spec, dict) and "Fp" in spec:
        return GF(int(spec["Fp"]))
    raise ParseError(f"unknown field spec {spec!r}")


def load_presentation(path: str, field: Field | None = None) -> QuiverPresentation:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(str(exc)) from exc
    return presentation_from_json(data, field)


def presentation_from_json(data: dict, field: Field | None = None) -> QuiverPresentation:
    try:
        f = field if field is not None else parse_field(data.get("field", "Q"))
        vertices = [str(v) for v in data["vertices"]]
        arrows = [(str(a["name"]), str(a["source"]), str(a["target"]))
                  for a in data.get("arrows", [])]
        relations = []
        for rel in data.get("relations", []):
            terms = []
            for term in rel:
                terms.append((term.get("coeff", "1"),
                              [str(n) for n in term["path"]]))
            relations.append(terms)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed quiver JSON: {exc}") from exc
    return presentation(vertices, arrows, relations, f)


def presentation_to_json(q: QuiverPresentation) -> dict:
    return {
        "field": q.field.json(),
        "vertices": list(q.vertices),
        "arrows": [
            {"name": a.name, "source": q.vertices[a.source],
             "target": q.vertices[a.target]}
            for a in q.arrows
        ],
        "relations": [
            [{"coeff": str(c), "path": [q.arrows[i].name for i in word]}
             for c, word in rel]
            for rel in q.relations
        ],
    }


# ---------------------------------------------------------------------------
# module literals ("S1", "P2", "A", "A/Ae1A")


def resolve_module_literal(a: BasedAlgebra, text: str):
    from .modules import (
        free_module,
        projective_module,
        quotient_algebra_as_right_module,
        simple_module,
    )

    text = text.strip()
    if text == "A":
        return free_module(a)
    if text.startswith("S"):
        return simple_module(a, _vertex_index(a, text[1:]))
    if text.startswith("P"):
        return projective_module(a, _vertex_index(a, text[1:]))
    if text.startswith("A/Ae") and text.endswith("A"):
        v = _vertex_index(a, text[4:-1])
        mod, _ = quotient_algebra_as_right_module(a, [v])
        return mod
    raise ParseError(f"unknown module literal {text!r}")


def _vertex_index(a: BasedAlgebra, label: str) -> int:
    label = label.strip()
    for i, v in enumerate(a.vertices):
        if v == label:
            return i
    raise ParseError(f"unknown vertex {label!r}")


# ---------------------------------------------------------------------------
# text rendering


def composition_diagram(layers: list[list[int]], vertices: list[str]) -> str:
    """Layered vertex labels, one radical layer per line."""
    lines = []
    for layer in layers:
        row = []
        for v, m in enumerate(layer):
            row.extend([vertices[v]] * m)
        lines.append(" ".join(row) if row else ".")
    return " / ".join(lines)


def render_tribool(t) -> str:
    return {True: "yes", False: "no", None: "unknown"}[t.value]


# ---------------------------------------------------------------------------
# DOT export of stratification trees


def trees_to_dot(trees) -> str:
    lines = ["digraph stratification {", '  node [shape=box, fontname="monospace"];']
    counter = [0]

    def emit(node, tree_idx):
        my_id = f"n{tree_idx}_{counter[0]}"
        counter[0] += 1
        fp = node.fingerprint_
        label = f"dim {fp.dim}"
        if fp.num_simples is not None:
            label += f", r={fp.num_simples}"
        label += ", comm" if fp.commutative else ", noncomm"
        if node.tag != "Node":
            label += f"\\n[{node.tag}]"
        lines.append(f'  {my_id} [label="{label}"];')
        if node.tag == "Node":
            lid = emit(node.left, tree_idx)
            rid = emit(node.right, tree_idx)
            everts = ",".join(str(v) for v in node.idempotent)
            lines.append(f'  {my_id} -> {lid} [label="A/AeA (e={everts})"];')
            lines.append(f'  {my_id} -> {rid} [label="eAe (e={everts})"];')
        return my_id

    for i, t in enumerate(trees):
        emit(t.root, i)
    lines.append("}")
    return "\n".join(lines) + "\n"
