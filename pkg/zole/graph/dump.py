"""Text dump of a :class:`PatchGraph` for debugging and oracle tests.

Format::

    m=<m> eps=<ε>
    <i> <j> <w_ij>        one line per edge, i < j, sorted by (i, j)

Floats are written with ``repr`` so a dump parses back bit-exactly.
"""

from __future__ import annotations

import re

import numpy as np

from zole.graph.errors import GraphError
from zole.graph.laplacian import PatchGraph

_HEADER_RE = re.compile(r"^m=(\d+)\s+eps=(\S+)$")


def format_graph(g: PatchGraph) -> str:
    lines = [f"m={g.m} eps={g.epsilon!r}"]
    for i, j, w in zip(g.rows.tolist(), g.cols.tolist(), g.weights.tolist()):
        lines.append(f"{i} {j} {w!r}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> PatchGraph:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise GraphError("empty graph dump")
    header = _HEADER_RE.match(lines[0])
    if header is None:
        raise GraphError(f"malformed graph dump header {lines[0]!r}")
    m = int(header.group(1))
    try:
        epsilon = float(header.group(2))
    except ValueError as exc:
        raise GraphError(f"malformed epsilon in header {lines[0]!r}") from exc

    rows: list[int] = []
    cols: list[int] = []
    weights: list[float] = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected 'i j w', got {line!r}")
        try:
            rows.append(int(parts[0]))
            cols.append(int(parts[1]))
            weights.append(float(parts[2]))
        except ValueError as exc:
            raise GraphError(f"line {lineno}: {exc}") from exc

    w = np.asarray(weights, dtype=np.float64)
    if w.size and (np.any(w <= 0.0) or np.any(w > 1.0)):
        raise GraphError("edge weights must lie in (0, 1]")
    return PatchGraph(
        m=m,
        rows=np.asarray(rows, dtype=np.int64),
        cols=np.asarray(cols, dtype=np.int64),
        weights=w,
        epsilon=epsilon,
    )
