"""Degree-3 planar graphs and their straight-line integer grid drawings.

Text formats (whitespace separated, ``#`` starts a comment)::

    # graph file              # drawing file
    n 4                       N 3
    e 0 1                     p 0 0 0
    r 0 1 2 3                 p 1 2 0

``r`` lines give the cyclic neighbor order of a vertex.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import networkx as nx
from networkx.algorithms.planar_drawing import combinatorial_embedding_to_pos

from .errors import EmbeddingError, FormatError, ValidationError
from .geometry import LatticePoint, Relation, Segment, on_segment, segment_relation

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class GraphInput:
    n: int
    edges: tuple[Edge, ...]
    rotation: dict[int, tuple[int, ...]] | None = field(default=None, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges, rotation=None) -> "GraphInput":
        rot = None if rotation is None else {v: tuple(ws) for v, ws in rotation.items()}
        return cls(n, tuple((int(u), int(v)) for u, v in edges), rot)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edge_keys(self) -> list[Edge]:
        """Sorted, de-duplicated ``(u, v)`` pairs with ``u < v``."""
        return sorted({edge_key(u, v) for u, v in self.edges})

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(self.n)}
        for u, v in self.edge_keys():
            adj[u].append(v)
            adj[v].append(u)
        return adj


@dataclass(frozen=True)
class GridDrawing:
    bound: int
    coords: dict[int, LatticePoint]

    def point(self, v: int) -> LatticePoint:
        return self.coords[v]


def validate_graph(g: GraphInput) -> list[str]:
    """Return every violation of simplicity, the degree bound, or rotation consistency."""
    out = []
    if g.n < 0:
        return [f"negative vertex count {g.n}"]
    seen: Counter = Counter()
    for u, v in g.edges:
        if not (0 <= u < g.n and 0 <= v < g.n):
            out.append(f"edge ({u}, {v}) references an unknown vertex")
            continue
        if u == v:
            out.append(f"loop at vertex {u}")
            continue
        seen[edge_key(u, v)] += 1
    for (u, v), c in sorted(seen.items()):
        if c > 1:
            out.append(f"multi-edge {{{u}, {v}}} appears {c} times")
    deg: Counter = Counter()
    for u, v in seen:
        deg[u] += 1
        deg[v] += 1
    for v in sorted(deg):
        if deg[v] > 3:
            out.append(f"degree {deg[v]} at vertex {v}")
    if g.rotation is not None:
        adj = {v: set() for v in range(g.n)}
        for u, v in seen:
            adj[u].add(v)
            adj[v].add(u)
        for v, order in sorted(g.rotation.items()):
            if not 0 <= v < g.n:
                out.append(f"rotation given for unknown vertex {v}")
            elif len(order) != len(set(order)) or set(order) != adj[v]:
                out.append(f"rotation at vertex {v} does not list exactly its neighbors")
    return out


def full_rotation(g: GraphInput) -> dict[int, tuple[int, ...]]:
    """Rotation for every vertex; vertices of degree <= 2 may be omitted from the input."""
    if not g.rotation:
        raise EmbeddingError("rotation required: the graph file has no 'r' lines")
    adj = g.adjacency()
    rot = {}
    for v in range(g.n):
        if v in g.rotation:
            rot[v] = tuple(g.rotation[v])
        elif len(adj[v]) <= 2:
            rot[v] = tuple(adj[v])
        else:
            raise EmbeddingError(f"rotation required for vertex {v} of degree {len(adj[v])}")
    return rot


def trace_faces(rotation: dict[int, tuple[int, ...]]) -> list[list[tuple[int, int]]]:
    """Faces of a rotation system as cycles of half-edges.

    After arriving at ``v`` along ``u -> v`` the face continues with the
    successor of ``u`` in the cyclic order at ``v``.
    """
    succ = {}
    for v, order in rotation.items():
        for i, w in enumerate(order):
            succ[(v, w)] = order[(i + 1) % len(order)]
    faces = []
    seen = set()
    for v in sorted(rotation):
        for w in rotation[v]:
            if (v, w) in seen:
                continue
            face = []
            he = (v, w)
            while he not in seen:
                seen.add(he)
                face.append(he)
                a, b = he
                he = (b, succ[(b, a)])
            faces.append(face)
    return faces


def check_rotation_planar(g: GraphInput) -> dict[int, tuple[int, ...]]:
    """Validate the rotation system with Euler's formula per component; return it completed."""
    problems = validate_graph(g)
    if problems:
        raise ValidationError("invalid graph", problems)
    rot = full_rotation(g)
    comp = {}
    for s in range(g.n):
        if s in comp:
            continue
        comp[s] = s
        stack = [s]
        while stack:
            v = stack.pop()
            for w in rot[v]:
                if w not in comp:
                    comp[w] = s
                    stack.append(w)
    faces = trace_faces(rot)
    nv: Counter = Counter(comp.values())
    ne: Counter = Counter(comp[u] for u, _ in g.edge_keys())
    nf: Counter = Counter(comp[f[0][0]] for f in faces)
    for c in sorted(nv):
        if ne[c] == 0:
            continue
        chi = nv[c] - ne[c] + nf[c]
        if chi != 2:
            raise EmbeddingError(
                f"rotation system is not planar: component of vertex {c} has "
                f"V - E + F = {nv[c]} - {ne[c]} + {nf[c]} = {chi}"
            )
    return rot


def validate_drawing(g: GraphInput, d: GridDrawing) -> list[str]:
    """Return every reason why ``d`` is not a crossing-free injective grid drawing of ``g``."""
    for v in d.coords:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise FormatError(f"drawing places unknown vertex {v!r}")
    out = []
    if d.bound < 1:
        out.append(f"grid bound must be positive, got {d.bound}")
    for v in range(g.n):
        if v not in d.coords:
            out.append(f"vertex {v} has no position")
            continue
        x, y = d.coords[v]
        if not (0 <= x < d.bound and 0 <= y < d.bound):
            out.append(f"vertex {v} at ({x}, {y}) lies outside [0, {d.bound - 1}]^2")
    at: dict[tuple, list[int]] = {}
    for v, p in sorted(d.coords.items()):
        at.setdefault(tuple(p), []).append(v)
    for p, vs in sorted(at.items()):
        if len(vs) > 1:
            out.append(f"not injective: vertices {vs} share point {p}")
    if out:
        return out
    edges = g.edge_keys()
    segs = {e: Segment(d.coords[e[0]], d.coords[e[1]]) for e in edges}
    for e1, e2 in combinations(edges, 2):
        rel = segment_relation(segs[e1], segs[e2])
        shared = set(e1) & set(e2)
        if rel is Relation.CROSSING or (rel is Relation.SHARED_ENDPOINTS_ONLY and not shared):
            out.append(f"crossing of edges {e1} and {e2}")
    for w in range(g.n):
        for e in edges:
            if w not in e and on_segment(d.coords[w], segs[e]):
                out.append(f"vertex {w} lies on edge {e}")
    return out


def shift_draw(g: GraphInput) -> GridDrawing:
    """Straight-line grid drawing of ``g`` following its rotation system.

    The rotation is triangulated and placed with the canonical-ordering shift
    method, which keeps every coordinate in ``[0, 2n - 4]``.
    """
    rot = check_rotation_planar(g)
    if g.n < 3:
        raise ValueError("shift_draw needs at least 3 vertices")
    emb = nx.PlanarEmbedding()
    emb.add_nodes_from(range(g.n))
    for v in range(g.n):
        order = rot[v]
        for i, w in enumerate(order):
            if i == 0:
                emb.add_half_edge(v, w)
            else:
                # cw=reference inserts the new half-edge counterclockwise of it
                emb.add_half_edge(v, w, cw=order[i - 1])
    pos = combinatorial_embedding_to_pos(emb, fully_triangulate=True)
    xs = [pos[v][0] for v in range(g.n)]
    ys = [pos[v][1] for v in range(g.n)]
    x0, y0 = min(xs), min(ys)
    coords = {v: LatticePoint(int(pos[v][0] - x0), int(pos[v][1] - y0)) for v in range(g.n)}
    bound = max(max(p) for p in coords.values()) + 1
    d = GridDrawing(bound, coords)
    problems = validate_drawing(g, d)
    if problems or bound > 2 * g.n - 3:
        raise ValidationError(f"shift method produced an invalid drawing (N={bound})", problems)
    return d


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield lineno, body


def _ints(lineno: int, fields: list[str], count: int | None = None) -> list[int]:
    if count is not None and len(fields) != count:
        raise FormatError(f"line {lineno}: expected {count} values, got {len(fields)}")
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise FormatError(f"line {lineno}: non-integer field in {' '.join(fields)!r}") from None


def parse_graph(text: str) -> GraphInput:
    n = None
    edges = []
    rotation: dict[int, tuple[int, ...]] = {}
    for lineno, (tag, *rest) in _lines(text):
        if tag == "n":
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate 'n' line")
            (n,) = _ints(lineno, rest, 1)
        elif tag == "e":
            edges.append(tuple(_ints(lineno, rest, 2)))
        elif tag == "r":
            vals = _ints(lineno, rest)
            if not vals:
                raise FormatError(f"line {lineno}: empty rotation line")
            if vals[0] in rotation:
                raise FormatError(f"line {lineno}: duplicate rotation for vertex {vals[0]}")
            rotation[vals[0]] = tuple(vals[1:])
        else:
            raise FormatError(f"line {lineno}: unknown record {tag!r}")
    if n is None:
        raise FormatError("graph file has no 'n' line")
    return GraphInput.from_edges(n, edges, rotation or None)


def format_graph(g: GraphInput) -> str:
    lines = [f"n {g.n}"]
    lines += [f"e {u} {v}" for u, v in g.edges]
    if g.rotation:
        lines += [" ".join(map(str, ("r", v, *ws))) for v, ws in sorted(g.rotation.items())]
    return "\n".join(lines) + "\n"


def load_graph(path) -> GraphInput:
    return parse_graph(Path(path).read_text())


def save_graph(path, g: GraphInput) -> None:
    Path(path).write_text(format_graph(g))


def parse_drawing(text: str) -> GridDrawing:
    bound = None
    coords: dict[int, LatticePoint] = {}
    for lineno, (tag, *rest) in _lines(text):
        if tag == "N":
            if bound is not None:
                raise FormatError(f"line {lineno}: duplicate 'N' line")
            (bound,) = _ints(lineno, rest, 1)
        elif tag == "p":
            v, x, y = _ints(lineno, rest, 3)
            if v in coords:
                raise FormatError(f"line {lineno}: vertex {v} placed twice")
            coords[v] = LatticePoint(x, y)
        else:
            raise FormatError(f"line {lineno}: unknown record {tag!r}")
    if bound is None:
        raise FormatError("drawing file has no 'N' line")
    return GridDrawing(bound, coords)


def format_drawing(d: GridDrawing) -> str:
    lines = [f"N {d.bound}"]
    lines += [f"p {v} {p[0]} {p[1]}" for v, p in sorted(d.coords.items())]
    return "\n".join(lines) + "\n"


def load_drawing(path, graph: GraphInput) -> GridDrawing:
    """Read a drawing file and validate it against ``graph``."""
    d = parse_drawing(Path(path).read_text())
    problems = validate_drawing(graph, d)
    if problems:
        raise ValidationError(f"invalid drawing in {path}", problems)
    return d


def save_drawing(path, d: GridDrawing) -> None:
    Path(path).write_text(format_drawing(d))
