"""JSON, DOT and ASCII output."""
from __future__ import annotations

import json

import numpy as np


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in canonical output")
    return obj


def canonical_json(obj) -> str:
    """Sorted keys, no whitespace, integers only."""
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"))


def vector_json(Q, v) -> dict:
    return {str(i): int(c) for i, c in enumerate(v) if c}


def quiver_dot(Q, named=None) -> str:
    names = {v: k for k, v in (named or {}).items() if not k.startswith("S") or Q.diagram is not None}
    lines = [f'digraph "{Q.group}" {{', "  rankdir=LR;"]
    for v in range(Q.size):
        label = names.get(v, Q.name_of(v))
        shape = "doublecircle" if v == Q.R else "circle"
        lines.append(f'  v{v} [label="{label}\\nrank {Q.ranks[v]}", shape={shape}];')
    for (u, v), m in sorted(Q.arrows.items()):
        extra = f' [label="{m}"]' if m > 1 else ""
        lines.append(f"  v{u} -> v{v}{extra};")
    lines.append("}")
    return "\n".join(lines)


def graph_dot(G, zf=None) -> str:
    lines = ["graph dual {"]
    for i, s in enumerate(G.self_ints):
        tag = f"{s}" if zf is None else f"{s} ({zf[i]})"
        lines.append(f'  e{i} [label="{tag}"];')
    for u, v in G.edges:
        lines.append(f"  e{u} -- e{v};")
    lines.append("}")
    return "\n".join(lines)


def ascii_quiver(Q, values=None, width=None) -> str:
    """One text row per drawing row, one column per label, R at the left edge.

    Without values R prints as R, omega as w and other vertices as *.
    """
    if Q.diagram is None:
        cells = []
        for j in range(Q.size):
            tag = "R" if j == Q.R else str(values[j]) if values is not None else "*"
            cells.append(f"{j}:{tag}")
        return " ".join(cells)
    width = width or 2 * Q.period + 1
    cellw = 1 if values is None else max(1, max(len(str(int(x))) for x in values))
    out = []
    for row in Q.diagram.rows:
        chars = []
        for off in range(width):
            node = row.get(off % 2)
            if node is None:
                chars.append(" " * cellw)
                continue
            v = Q.at_label(node, off)
            if v == Q.R:
                tag = "R"
            elif values is not None:
                tag = str(int(values[v]))
            else:
                tag = "w" if v == Q.omega else "*"
            chars.append(tag.rjust(cellw))
        out.append(" ".join(chars).rstrip())
    return "\n".join(out)
