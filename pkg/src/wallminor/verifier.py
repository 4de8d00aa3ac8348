"""Check that a vertex map ``f`` and path map ``g`` form a topological embedding into a wall.

``literal`` mode checks the bare definition: ``f`` injective, every edge
mapped to a path between the images of its endpoints, inner vertices of
different paths disjoint. ``strict`` mode also forbids inner vertices from
hitting any vertex image. The production check is linear in total path
length (one sort over all inner vertices); :func:`reference_verify` is a
quadratic brute force used to cross-check it on small walls.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .drawing import Edge, GraphInput
from .embedder import EmbeddingResult
from .errors import ContractError
from .paths import WallPath
from .wall import WallDims, WallVertex, adjacent

MODES = ("strict", "literal")


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    edge: Edge | None = None

    def __str__(self) -> str:
        return f"[{self.kind}] {self.message}"


@dataclass
class VerifyReport:
    mode: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "OK" if self.ok else f"FAIL {len(self.violations)}"

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __str__(self) -> str:
        return "\n".join([*map(str, self.violations), self.verdict])


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ContractError(f"mode must be one of {MODES}, got {mode!r}")


def _check_vertex_map(graph: GraphInput, dims: WallDims, f: dict, out: list[Violation]) -> None:
    seen: dict[WallVertex, int] = {}
    for v in graph.vertices:
        if v not in f:
            out.append(Violation("vertex-map", f"vertex {v} has no image"))
            continue
        x = f[v]
        if not dims.contains(*x):
            out.append(Violation("vertex-map", f"image {tuple(x)} of vertex {v} lies outside the wall"))
        if x in seen:
            out.append(Violation("non-injective", f"vertices {seen[x]} and {v} both map to {tuple(x)}"))
        else:
            seen[x] = v
    for v in sorted(set(f) - set(graph.vertices)):
        out.append(Violation("vertex-map", f"image given for unknown vertex {v}"))


def _check_path(dims: WallDims, e: Edge, path: WallPath, f: dict, out: list[Violation]) -> bool:
    """Per-path checks; returns True when the path is usable for the disjointness pass."""
    rows, cols = path.vertices()
    u, v = e
    if len(rows) < 2:
        out.append(Violation("empty-path", f"edge {e} is mapped to a path without edges", e))
        return False
    inside = (rows >= 1) & (rows <= dims.rows) & (cols >= 1) & (cols <= dims.cols)
    if not inside.all():
        k = int(np.flatnonzero(~inside)[0])
        out.append(Violation("out-of-range", f"edge {e} vertex {k} ({rows[k]}, {cols[k]}) is outside the wall", e))
        return False
    # horizontal steps always exist; a vertical step between rows i, i+1 at column j needs i + j even
    vertical = rows[1:] != rows[:-1]
    upper = np.minimum(rows[1:], rows[:-1])
    bad = vertical & ((upper + cols[1:]) % 2 == 1)
    if bad.any():
        k = int(np.flatnonzero(bad)[0])
        out.append(
            Violation(
                "broken-adjacency",
                f"edge {e} step {k}: ({rows[k]}, {cols[k]}) -> ({rows[k + 1]}, {cols[k + 1]}) is not a wall edge",
                e,
            )
        )
    ends = {(int(rows[0]), int(cols[0])), (int(rows[-1]), int(cols[-1]))}
    if u in f and v in f and ends != {tuple(f[u]), tuple(f[v])}:
        out.append(Violation("endpoint-mismatch", f"edge {e} path does not join f({u}) and f({v})", e))
    keys = rows * (dims.cols + 1) + cols
    if len(np.unique(keys)) != len(keys):
        out.append(Violation("non-simple", f"path of edge {e} visits a vertex twice", e))
    return True


def verify_embedding(
    graph: GraphInput,
    dims: WallDims,
    result: EmbeddingResult,
    mode: str = "strict",
    format_violations=(),
) -> VerifyReport:
    _check_mode(mode)
    out = [Violation("format", str(m)) for m in format_violations]
    f, g = result.f, result.g
    _check_vertex_map(graph, dims, f, out)
    edges = graph.edge_keys()
    for e in sorted(set(g) - set(edges)):
        out.append(Violation("unknown-edge", f"path given for non-edge {e}", e))
    usable = []
    for e in edges:
        if e not in g:
            if not any(m.edge == e or f"edge {e}" in m.message for m in out):
                out.append(Violation("missing-path", f"edge {e} has no path", e))
            continue
        if _check_path(dims, e, g[e], f, out):
            usable.append(e)

    stride = dims.cols + 1
    key_parts, owner_parts = [], []
    for i, e in enumerate(usable):
        rows, cols = g[e].vertices()
        inner = rows[1:-1] * stride + cols[1:-1]
        key_parts.append(inner)
        owner_parts.append(np.full(len(inner), i, np.int64))
    if key_parts:
        keys = np.concatenate(key_parts)
        owner = np.concatenate(owner_parts)
        order = np.argsort(keys, kind="stable")
        keys, owner = keys[order], owner[order]
        clash = np.flatnonzero((keys[1:] == keys[:-1]) & (owner[1:] != owner[:-1]))
        reported = set()
        for k in clash.tolist():
            e1, e2 = usable[owner[k]], usable[owner[k + 1]]
            pair = (min(e1, e2), max(e1, e2))
            if pair in reported:
                continue
            reported.add(pair)
            r, c = divmod(int(keys[k]), stride)
            out.append(Violation("inner-collision", f"edges {pair[0]} and {pair[1]} share inner vertex ({r}, {c})", pair[0]))
        if mode == "strict" and f:
            images = {x.row * stride + x.col: v for v, x in f.items()}
            img = np.array(sorted(images), dtype=np.int64)
            pos = np.searchsorted(img, keys)
            hit = (pos < len(img)) & (img[np.minimum(pos, len(img) - 1)] == keys)
            done = set()
            for k in np.flatnonzero(hit).tolist():
                e = usable[owner[k]]
                w = images[int(keys[k])]
                if (e, w) in done:
                    continue
                done.add((e, w))
                out.append(Violation("image-collision", f"edge {e} passes through f({w})", e))
    return VerifyReport(mode, out)


def reference_verify(graph: GraphInput, dims: WallDims, result: EmbeddingResult, mode: str = "strict") -> bool:
    """Brute-force verdict from explicit vertex lists; quadratic, for small walls only."""
    _check_mode(mode)
    f, g = result.f, result.g
    images = [f.get(v) for v in graph.vertices]
    if None in images or len(set(images)) != len(images):
        return False
    if set(f) != set(graph.vertices) or set(g) != set(graph.edge_keys()):
        return False
    if any(not (1 <= x[0] <= dims.rows and 1 <= x[1] <= dims.cols) for x in images):
        return False
    inner = {}
    for e in graph.edge_keys():
        vs = g[e].vertex_list()
        if len(vs) < 2 or len(set(vs)) != len(vs):
            return False
        if any(not (1 <= x[0] <= dims.rows and 1 <= x[1] <= dims.cols) for x in vs):
            return False
        if any(not adjacent(dims, a, b) for a, b in zip(vs, vs[1:])):
            return False
        if {vs[0], vs[-1]} != {f[e[0]], f[e[1]]}:
            return False
        inner[e] = vs[1:-1]
    for e1, e2 in combinations(inner, 2):
        if any(a == b for a in inner[e1] for b in inner[e2]):
            return False
    if mode == "strict":
        for vs in inner.values():
            if any(x == y for x in vs for y in images):
                return False
    return True
