"""Graphviz DOT text for structure digraphs.

Node shape encodes parity (triangle with flat bottom for even classes, flat
top for odd ones), the border encodes smoothness for odd classes (doubled
when smooth, dotted when rough), and edge style encodes the deficiency change
(solid when it drops by one, dashed when unchanged).  Output is byte-stable
for a given digraph.
"""

from __future__ import annotations

from .digraph import StructureDigraph

_LEGEND = [
    "  subgraph cluster_legend {",
    '    label="legend";',
    "    fontsize=10;",
    "    node [fontsize=9];",
    '    l_even [label="even class", shape=triangle];',
    '    l_smooth [label="smooth odd class", shape=invtriangle, peripheries=2];',
    '    l_rough [label="rough odd class", shape=invtriangle, style=dotted];',
    '    l_a [label="", shape=point];',
    '    l_b [label="", shape=point];',
    '    l_a -> l_b [style=solid, fontsize=9, label="deficiency drops by one"];',
    '    l_c [label="", shape=point];',
    '    l_d [label="", shape=point];',
    '    l_c -> l_d [style=dashed, fontsize=9, label="same deficiency"];',
    "  }",
]


def emit_dot(digraph: StructureDigraph) -> str:
    if not digraph.typed:
        raise ValueError("types have not been computed for this digraph")
    name = digraph.group.name.replace("\\", "\\\\").replace('"', '\\"')
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", '  node [fontname="Helvetica"];']
    for cid, cls in enumerate(digraph.classes):
        p, e, o, s = cls.etype
        attrs = [f'label="({p},{e},{o},{s})\\n{cls.subgroup.label()}"']
        if cls.parity == 0:
            attrs.append("shape=triangle")
        else:
            attrs.append("shape=invtriangle")
            attrs.append("peripheries=2" if cls.smoothness == 1 else "style=dotted")
        lines.append(f"  c{cid} [{', '.join(attrs)}];")
    for cid, cls in enumerate(digraph.classes):
        for j in cls.options:
            style = "solid" if digraph.classes[j].deficiency == cls.deficiency - 1 else "dashed"
            lines.append(f"  c{cid} -> c{j} [style={style}];")
    lines.extend(_LEGEND)
    lines.append("}")
    return "\n".join(lines) + "\n"
