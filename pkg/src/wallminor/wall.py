"""Implicit (r, s)-wall graphs.

A wall is never stored. Vertices are ``(row, col)`` pairs with 1-based
coordinates, all horizontal edges ``(i, j) -- (i, j+1)`` are present, and the
vertical edge between rows ``i`` and ``i+1`` at column ``j`` exists exactly when
``i + j`` is even. That is the closed form of the generating rule
``(i, j) -- (i + (-1)**(i+j), j)`` once edges leaving the vertex range are
dropped.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Protocol

from .errors import InvalidVertexError, OutOfBoundsError


@dataclass(frozen=True)
class WallDims:
    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"wall dimensions must be positive, got {self.rows}x{self.cols}")

    def contains(self, row: int, col: int) -> bool:
        return 1 <= row <= self.rows and 1 <= col <= self.cols

    def __len__(self) -> int:
        return self.rows * self.cols


class WallVertex(NamedTuple):
    row: int
    col: int


def _check(dims: WallDims, v: WallVertex) -> None:
    if not dims.contains(v[0], v[1]):
        raise InvalidVertexError(f"{tuple(v)} is not a vertex of the {dims.rows}x{dims.cols} wall")


def vertical_edge(dims: WallDims, upper_row: int, col: int) -> bool:
    """True iff the wall has an edge between ``(upper_row, col)`` and ``(upper_row + 1, col)``."""
    return 1 <= upper_row < dims.rows and 1 <= col <= dims.cols and (upper_row + col) % 2 == 0


def neighbors_ordered(dims: WallDims, v: WallVertex) -> list[WallVertex]:
    """Neighbors of ``v`` in the fixed order up, down, left, right."""
    _check(dims, v)
    i, j = v
    out = []
    if i > 1 and (i + j) % 2 == 1:
        out.append(WallVertex(i - 1, j))
    if i < dims.rows and (i + j) % 2 == 0:
        out.append(WallVertex(i + 1, j))
    if j > 1:
        out.append(WallVertex(i, j - 1))
    if j < dims.cols:
        out.append(WallVertex(i, j + 1))
    return out


def neighbors(dims: WallDims, v: WallVertex) -> set[WallVertex]:
    return set(neighbors_ordered(dims, v))


def has_up_edge(dims: WallDims, v: WallVertex) -> bool:
    _check(dims, v)
    return v[0] > 1 and (v[0] + v[1]) % 2 == 1


def adjacent(dims: WallDims, u: WallVertex, v: WallVertex) -> bool:
    if not (dims.contains(*u) and dims.contains(*v)):
        return False
    (i, j), (k, l) = u, v
    if i == k:
        return abs(j - l) == 1
    if j == l and abs(i - k) == 1:
        return (min(i, k) + j) % 2 == 0
    return False


def iter_edges(dims: WallDims) -> Iterator[tuple[WallVertex, WallVertex]]:
    """Every edge of the wall, once. Only meant for small walls."""
    for i in range(1, dims.rows + 1):
        for j in range(1, dims.cols + 1):
            if j < dims.cols:
                yield WallVertex(i, j), WallVertex(i, j + 1)
            if vertical_edge(dims, i, j):
                yield WallVertex(i, j), WallVertex(i + 1, j)


@dataclass(frozen=True)
class BoxSubgraph:
    """Subgraph of a wall induced by a closed Chebyshev ball."""

    dims: WallDims
    center: WallVertex
    radius: int

    def __contains__(self, v) -> bool:
        return (
            abs(v[0] - self.center[0]) <= self.radius
            and abs(v[1] - self.center[1]) <= self.radius
            and self.dims.contains(v[0], v[1])
        )

    def __len__(self) -> int:
        return (2 * self.radius + 1) ** 2

    def vertices(self) -> Iterator[WallVertex]:
        ci, cj = self.center
        for i in range(ci - self.radius, ci + self.radius + 1):
            for j in range(cj - self.radius, cj + self.radius + 1):
                yield WallVertex(i, j)

    def neighbors(self, v: WallVertex) -> list[WallVertex]:
        return [w for w in neighbors_ordered(self.dims, v) if w in self]


def box_subgraph(dims: WallDims, center: WallVertex, radius: int) -> BoxSubgraph:
    _check(dims, center)
    if radius < 1:
        raise ValueError(f"box radius must be positive, got {radius}")
    ci, cj = center
    if ci - radius < 1 or cj - radius < 1 or ci + radius > dims.rows or cj + radius > dims.cols:
        raise OutOfBoundsError(
            f"ball of radius {radius} around {tuple(center)} leaves the {dims.rows}x{dims.cols} wall"
        )
    return BoxSubgraph(dims, WallVertex(*center), radius)


class _Graph(Protocol):
    def __contains__(self, v) -> bool: ...
    def neighbors(self, v: WallVertex) -> Iterable[WallVertex]: ...


def bfs_path(graph: _Graph, source: WallVertex, target: WallVertex) -> list[WallVertex] | None:
    """Shortest path from ``source`` to ``target``; neighbors are expanded up, down, left, right.

    Returns None when ``target`` is unreachable.
    """
    if source == target:
        return [source]
    parent = {source: source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in graph.neighbors(v):
            if w in parent:
                continue
            parent[w] = v
            if w == target:
                path = [w]
                while path[-1] != source:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            queue.append(w)
    return None


def is_connected(graph: _Graph, vertices: Iterable[WallVertex]) -> bool:
    vs = list(vertices)
    if not vs:
        return True
    seen = {vs[0]}
    queue = deque([vs[0]])
    while queue:
        v = queue.popleft()
        for w in graph.neighbors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(vs)
