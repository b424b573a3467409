"""TikZ pictures of pong diagrams.

Each strand is drawn in the strip between the walls at heights 1/2 and
m - 1/2, bouncing off a wall every time its lift crosses one.

Usage::

    from pongalg.strands import parse_pong
    from pongalg.tikz import render_tikz

    g = parse_pong("m=4 k=2 ((1,-2),(2,1))")
    tex = render_tikz(g)                      # returns the tikzpicture
    render_tikz(g, path="diagram.tex")        # also writes to file
"""

from __future__ import annotations

import json
from fractions import Fraction

from .strands import PongData, cross, local_multiplicities

WIDTH = 3

_TIKZ_TEMPLATE = r"""% pong diagram __DATA__
\begin{tikzpicture}[x=1cm, y=1cm]
  \fill[gray!15] (0,0) rectangle (__WIDTH__,0.5);
  \fill[gray!15] (0,__TOP_WALL__) rectangle (__WIDTH__,__TOP__);
  \draw[thick] (0,0.5) -- (__WIDTH__,0.5);
  \draw[thick] (0,__TOP_WALL__) -- (__WIDTH__,__TOP_WALL__);
__BODY__
\end{tikzpicture}
"""


def _fold_height(m: int, y: Fraction) -> Fraction:
    period = 2 * (m - 1)
    u = (y - Fraction(1, 2)) % period
    return Fraction(1, 2) + (u if u <= m - 1 else period - u)


def strand_path(m: int, source: int, target: int) -> list[tuple[Fraction, Fraction]]:
    """Corner points ``(x, height)`` of the strand lifted from ``source`` to ``target``."""
    lo, hi = sorted((source, target))
    walls = []
    level = Fraction(1, 2) + (m - 1) * ((Fraction(lo) - Fraction(1, 2)) // (m - 1))
    while level < hi:
        if level > lo:
            walls.append(level)
        level += m - 1
    if source > target:
        walls.reverse()
    points = [(Fraction(0), Fraction(source))]
    for level in walls:
        t = (level - source) / (target - source)
        points.append((t * WIDTH, _fold_height(m, level)))
    points.append((Fraction(WIDTH), _fold_height(m, Fraction(target))))
    return points


def build_diagram_data(g: PongData) -> dict:
    """Extract strands, walls and gradings from a pong generator."""
    w = local_multiplicities(g)
    strands = []
    for s, n in g.pairs():
        strands.append(
            {
                "source": s,
                "target": n,
                "points": [[float(x), float(y)] for x, y in strand_path(g.m, s, n)],
            }
        )
    return {
        "m": g.m,
        "k": g.k,
        "left": list(g.left),
        "right": list(g.right),
        "weight": w.to_json(),
        "cross": cross(g),
        "walls": [0.5, g.m - 0.5],
        "strands": strands,
    }


def _fmt(value: float) -> str:
    return f"{value:g}"


def render_tikz(g: PongData, path: str | None = None) -> str:
    """Generate a standalone ``tikzpicture`` for a pong generator.

    Parameters
    ----------
    g : PongData
        The generator to draw.
    path : str, optional
        If given, write the picture to this file path.

    Returns
    -------
    str
        The TikZ source.
    """
    data = build_diagram_data(g)
    body: list[str] = []
    for height in range(1, g.m):
        body.append(f"  \\node[left] at (0,{height}) {{${height}$}};")
        body.append(f"  \\node[right] at ({WIDTH},{height}) {{${height}$}};")
        mark = "fill" if height in g.left else "draw"
        body.append(f"  \\{mark} (0,{height}) circle (0.06);")
        mark = "fill" if height in g.right else "draw"
        body.append(f"  \\{mark} ({WIDTH},{height}) circle (0.06);")
    for strand in data["strands"]:
        coords = " -- ".join(f"({_fmt(x)},{_fmt(y)})" for x, y in strand["points"])
        body.append(f"  \\draw[very thick] {coords};")

    tex = (
        _TIKZ_TEMPLATE.replace("__DATA__", json.dumps(data, sort_keys=True))
        .replace("__WIDTH__", str(WIDTH))
        .replace("__TOP_WALL__", _fmt(g.m - 0.5))
        .replace("__TOP__", str(g.m))
        .replace("__BODY__", "\n".join(body))
    )

    if path is not None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(tex)

    return tex
