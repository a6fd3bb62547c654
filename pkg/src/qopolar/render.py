"""Figure emitters: DOT for trees, SVG for polyhedra of dimension <= 2.

Figures are decorative; exact data is printed by the text formats.
"""

from __future__ import annotations

from typing import Sequence

from .eggers import EggersWallTree
from .qvec import dot, fmt_qval


def tree_dot(tree: EggersWallTree, name: str = "tree") -> str:
    """Graphviz source of the tree, edges labelled by the coefficient of ``gamma``.

    >>> from qopolar.eggers import BranchData
    >>> print(tree_dot(EggersWallTree([BranchData(2, ["3/2"], "c")], [["inf"]])), end="")
    digraph tree {
      rankdir=BT;
      "P0" [label="P0\\n(0)"];
      "P1" [label="P1\\n(3/2)"];
      "c" [label="c", shape=plaintext];
      "P0" -> "P1" [label="1"];
      "P1" -> "c" [label="2"];
    }
    """
    labels = tree.labels()
    out = [f"digraph {name} {{", "  rankdir=BT;"]
    for P in tree.vertices:
        lab = labels[P]
        if tree.is_extremal(P) and P != tree.root:
            out.append(f'  "{lab}" [label="{lab}", shape=plaintext];')
        else:
            out.append(f'  "{lab}" [label="{lab}\\n{fmt_qval(P.value)}"];')
    for P, Q, c in tree.edges():
        out.append(f'  "{labels[P]}" -> "{labels[Q]}" [label="{c}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def polyhedron_svg(vertices: Sequence[Sequence], w: Sequence | None = None,
                   size: int = 320) -> str:
    """SVG of a Newton polyhedron in ``R^{d+1}``, ``d <= 2``.

    Points ``(x, t)`` are drawn at ``(<w, x>, t)``; ``w`` defaults to all ones.
    The vertical and horizontal recession rays are drawn from the extreme
    vertices.
    """
    if not vertices:
        raise ValueError("no vertices")
    d = len(vertices[0]) - 1
    if d > 2:
        raise ValueError("figures are drawn for d <= 2 only")
    w = tuple(w) if w is not None else (1,) * d
    pts = sorted(((float(dot(w, v[:-1])), float(v[-1])) for v in vertices),
                 key=lambda p: (p[0], -p[1]))
    xs = [p[0] for p in pts]
    ts = [p[1] for p in pts]
    xmax = max(max(xs) * 1.2, 1.0)
    tmax = max(max(ts) * 1.2, 1.0)
    pad = 20
    span = size - 2 * pad

    def sx(x):
        return pad + span * x / xmax

    def sy(t):
        return size - pad - span * t / tmax

    top, right = pts[0], pts[-1]
    path = [(sx(top[0]), sy(tmax))] + [(sx(x), sy(t)) for x, t in pts] \
        + [(sx(xmax), sy(right[1]))]
    poly = " ".join(f"{x:.1f},{y:.1f}" for x, y in path)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">',
           f'  <line x1="{pad}" y1="{size - pad}" x2="{size - pad}" y2="{size - pad}" '
           'stroke="gray"/>',
           f'  <line x1="{pad}" y1="{size - pad}" x2="{pad}" y2="{pad}" stroke="gray"/>',
           f'  <polyline points="{poly}" fill="#dde8f5" stroke="black"/>']
    for v, (x, t) in zip(sorted(vertices, key=lambda v: (dot(w, v[:-1]), -v[-1])), pts):
        label = fmt_qval(tuple(v))
        out.append(f'  <circle cx="{sx(x):.1f}" cy="{sy(t):.1f}" r="3"/>')
        out.append(f'  <text x="{sx(x) + 4:.1f}" y="{sy(t) - 4:.1f}" '
                   f'font-size="10">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
