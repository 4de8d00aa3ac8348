"""Approximate a straight segment between two wall vertices by a wall path.

For a segment that descends ``n`` rows, every row ``k`` it crosses gets a
target column: the ideal crossing ``pi_k`` is snapped to the nearest column
(ties go to the smaller column) and, if that vertex has no edge going up, it
is replaced by the horizontal neighbor closer to the segment. The path then
walks each row horizontally to the next target column and drops one row
through the up-edge of that target. Every visited vertex stays within
Euclidean distance 2 of the segment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ContractError
from .geometry import Segment, dist2_point_segment
from .paths import WallPath
from .wall import WallDims, WallVertex, _check, has_up_edge

_U, _D, _L, _R = 0, 1, 2, 3


@dataclass(frozen=True)
class SegmentTrace:
    """Per-row construction data for a non-horizontal segment, rows ``1..n``."""

    ideal: list[Fraction]
    snapped: list[WallVertex]
    adjusted: list[WallVertex]


def _ordered(a: WallVertex, b: WallVertex) -> tuple[WallVertex, WallVertex]:
    if a.row == b.row:
        raise ContractError("segment is horizontal")
    return (a, b) if a.row < b.row else (b, a)


def snap_and_adjust(
    dims: WallDims, segment: tuple[WallVertex, WallVertex], k: int
) -> tuple[Fraction, WallVertex, WallVertex]:
    """Ideal column, snapped vertex and up-edge vertex for row ``k`` of the segment.

    Exact reference version of the vectorised loop in :func:`route_segment`.
    """
    a, b = (WallVertex(*p) for p in segment)
    if a.row >= b.row:
        raise ContractError("segment rows must be strictly increasing")
    n = b.row - a.row
    if not 1 <= k <= n:
        raise ContractError(f"k must lie in [1, {n}]")
    pi = a.col + Fraction(k * (b.col - a.col), n)
    col = _nearest_col(pi)
    row = a.row + k
    p = WallVertex(row, col)
    if has_up_edge(dims, p):
        return pi, p, p
    cands = [WallVertex(row, c) for c in (col - 1, col + 1) if 1 <= c <= dims.cols]
    if not cands:
        raise ContractError(f"no column next to {tuple(p)} in a wall with {dims.cols} columns")
    seg = Segment(a, b)
    best = min(cands, key=lambda v: (dist2_point_segment(v, seg), v.col))
    return pi, p, best


def _nearest_col(pi: Fraction) -> int:
    # ceil(pi - 1/2): rounds halves down
    x = pi - Fraction(1, 2)
    return -((-x.numerator) // x.denominator)


def trace_segment(dims: WallDims, a: WallVertex, b: WallVertex) -> SegmentTrace:
    a, b = _ordered(WallVertex(*a), WallVertex(*b))
    ideal, snapped, adjusted = [], [], []
    for k in range(1, b.row - a.row + 1):
        pi, p, q = snap_and_adjust(dims, (a, b), k)
        ideal.append(pi)
        snapped.append(p)
        adjusted.append(q)
    return SegmentTrace(ideal, snapped, adjusted)


def _adjusted_columns(dims: WallDims, a: WallVertex, b: WallVertex) -> np.ndarray:
    """Columns of the adjusted vertices for rows a.row+1 .. b.row (requires a.row < b.row)."""
    n = b.row - a.row
    dc = b.col - a.col
    k = np.arange(1, n + 1, dtype=np.int64)
    # pi_k = num / n exactly
    num = a.col * n + k * dc
    col = -((n - 2 * num) // (2 * n))
    rows = a.row + k
    need = (rows + col) % 2 == 0
    left, right = col - 1, col + 1
    # Strictly inside the segment a candidate's distance to the segment equals its
    # distance to the supporting line, which is proportional to |c - pi_k|.
    dl = np.abs(left * n - num)
    dr = np.abs(right * n - num)
    pick = np.where(dl <= dr, left, right)
    pick = np.where(left < 1, right, np.where(right > dims.cols, left, pick))
    out = np.where(need, pick, col)
    if need[-1]:
        # Last row: the snapped vertex is b itself, compare true segment distances.
        _, _, q = snap_and_adjust(dims, (a, b), n)
        out[-1] = q.col
    if out.min() < 1 or out.max() > dims.cols:
        raise ContractError("wall too narrow to adjust the segment's target columns")
    return out


def route_segment(dims: WallDims, a: WallVertex, b: WallVertex) -> WallPath:
    """Simple wall path from ``a`` to ``b`` staying within distance 2 of the segment [a, b]."""
    a, b = WallVertex(*a), WallVertex(*b)
    _check(dims, a)
    _check(dims, b)
    if a == b:
        raise ContractError("segment endpoints coincide")
    if a.row == b.row:
        dc = b.col - a.col
        return WallPath(a, [_R if dc > 0 else _L], [abs(dc)])
    if a.row > b.row:
        return route_segment(dims, b, a).reversed()
    n = b.row - a.row
    cols = _adjusted_columns(dims, a, b)
    prev = np.concatenate(([a.col], cols))
    h = np.diff(prev)  # horizontal move on the row above each target
    tail = b.col - int(cols[-1])
    letters = np.empty(2 * n + 1, dtype=np.uint8)
    counts = np.empty(2 * n + 1, dtype=np.int64)
    letters[0:-1:2] = np.where(h > 0, _R, _L)
    counts[0:-1:2] = np.abs(h)
    letters[1:-1:2] = _D
    counts[1:-1:2] = 1
    letters[-1] = _R if tail > 0 else _L
    counts[-1] = abs(tail)
    return WallPath(a, letters, counts)
