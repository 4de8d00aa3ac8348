"""Named degree-3 planar graphs with rotation systems, and a random generator.

Rotations of the named graphs are read off hand-placed straight-line
drawings by sorting neighbors counterclockwise by angle.
"""

from __future__ import annotations

import math
import random

from .drawing import GraphInput, edge_key


def rotation_from_coords(coords: dict[int, tuple[float, float]], edges) -> dict[int, tuple[int, ...]]:
    adj: dict[int, list[int]] = {v: [] for v in coords}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)

    def angle(v, w):
        return math.atan2(coords[w][1] - coords[v][1], coords[w][0] - coords[v][0])

    return {v: tuple(sorted(ws, key=lambda w: angle(v, w))) for v, ws in adj.items()}


def _from_coords(coords: dict[int, tuple[float, float]], edges) -> GraphInput:
    return GraphInput.from_edges(len(coords), edges, rotation_from_coords(coords, edges))


def cycle(n: int) -> GraphInput:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    coords = {i: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)}
    return _from_coords(coords, [(i, (i + 1) % n) for i in range(n)])


def k4() -> GraphInput:
    coords = {0: (0, 0), 1: (6, 0), 2: (3, 6), 3: (3, 2)}
    return _from_coords(coords, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def prism() -> GraphInput:
    coords = {0: (0, 0), 1: (10, 0), 2: (5, 10), 3: (3, 2), 4: (7, 2), 5: (5, 6)}
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    return _from_coords(coords, edges)


def cube() -> GraphInput:
    coords = {0: (0, 0), 1: (10, 0), 2: (10, 10), 3: (0, 10), 4: (3, 3), 5: (7, 3), 6: (7, 7), 7: (3, 7)}
    edges = [(i, (i + 1) % 4) for i in range(4)]
    edges += [(4 + i, 4 + (i + 1) % 4) for i in range(4)]
    edges += [(i, i + 4) for i in range(4)]
    return _from_coords(coords, edges)


NAMED = {"c3": lambda: cycle(3), "c4": lambda: cycle(4), "k4": k4, "prism": prism, "q3": cube}
CORPUS = ("c3", "c4", "k4", "prism", "q3")


def named(name: str) -> GraphInput:
    try:
        return NAMED[name]()
    except KeyError:
        raise ValueError(f"unknown graph {name!r}; choose from {', '.join(NAMED)}") from None


def random_planar_cubic(n: int, seed: int | None = None, flips: int | None = None) -> GraphInput:
    """Random planar graph of maximum degree 3 with a consistent rotation system.

    Builds a random stacked triangulation, scrambles it with edge flips,
    then greedily keeps a random subset of edges with degree at most 3.
    Deleting edges keeps a planar rotation planar, so the rotation is the
    triangulation's rotation restricted to the kept edges.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    rng = random.Random(seed)
    # third[(a, b)] = vertex of the face to the left of the directed edge a -> b
    third: dict[tuple[int, int], int] = {}

    def add_face(a, b, c):
        third[(a, b)] = c
        third[(b, c)] = a
        third[(c, a)] = b

    add_face(0, 1, 2)
    add_face(0, 2, 1)
    faces = [(0, 1, 2)]
    for v in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        add_face(a, b, v)
        add_face(b, c, v)
        add_face(c, a, v)
        faces += [(a, b, v), (b, c, v), (c, a, v)]
    for _ in range(flips if flips is not None else 4 * n):
        a, b = rng.choice(sorted(third))
        c, d = third[(a, b)], third[(b, a)]
        if c == d or (c, d) in third:
            continue
        # faces (a, b, c) and (b, a, d) become (a, d, c) and (b, c, d)
        for key in ((a, b), (b, c), (c, a), (b, a), (a, d), (d, b)):
            del third[key]
        add_face(a, d, c)
        add_face(b, c, d)
    rot = _rotation(third, n)
    edges = sorted({edge_key(a, b) for a, b in third})
    rng.shuffle(edges)
    deg = [0] * n
    kept = []
    for u, v in edges:
        if deg[u] < 3 and deg[v] < 3:
            kept.append((u, v))
            deg[u] += 1
            deg[v] += 1
    kept.sort()
    keep = set(kept) | {(v, u) for u, v in kept}
    rotation = {v: tuple(w for w in rot[v] if (v, w) in keep) for v in range(n)}
    return GraphInput.from_edges(n, kept, rotation)


def _rotation(third: dict[tuple[int, int], int], n: int) -> dict[int, tuple[int, ...]]:
    # around v, the neighbor after w (counterclockwise) is third[(v, w)]
    out_edges: dict[int, list[int]] = {v: [] for v in range(n)}
    for a, b in third:
        out_edges[a].append(b)
    rot = {}
    for v in range(n):
        start = min(out_edges[v])
        order = [start]
        w = third[(v, start)]
        while w != start:
            order.append(w)
            w = third[(v, w)]
        if len(order) != len(out_edges[v]):
            raise AssertionError("inconsistent triangulation")
        rot[v] = tuple(order)
    return rot
