"""Graphviz DOT export for scene graphs."""

from __future__ import annotations

from .graph import SceneGraph


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(graph: SceneGraph, name: str = "scene") -> str:
    """Render a graph in DOT form.

    Attributes appear as a second label line under the class; the merge count
    is exposed as the node tooltip so viewers can surface salience on hover.
    """
    lines = [f"digraph {name} {{"]
    lines.append("  node [shape=box, style=rounded];")
    for obj in graph.objects:
        parts = [_escape(obj.class_label)]
        if obj.attributes:
            parts.append(_escape(", ".join(obj.sorted_attributes())))
        label = "\\n".join(parts)
        tooltip = f"merge_count={obj.merge_count}"
        lines.append(
            f'  "{_escape(obj.id)}" [label="{label}", tooltip="{tooltip}"];'
        )
    for edge in graph.edges:
        lines.append(
            f'  "{_escape(edge.source)}" -> "{_escape(edge.target)}" '
            f'[label="{_escape(edge.relation)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
