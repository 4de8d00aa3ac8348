"""Scale a grid drawing into a wall and turn it into a topological embedding.

Pipeline: every drawing point ``(a, b)`` becomes wall vertex
``(sigma*(a+1), sigma*(b+1))``; each edge is routed along its scaled
segment; the separation claims are checked on the routed vertices; each
routed path is trimmed at the large boxes around its endpoints; inside every
box the entry vertices are reconnected by internally disjoint paths, which
fixes the image of the graph vertex.

Embedding file format::

    wall <rows> <cols>
    v <vertex> <row> <col>
    e <u> <v> <start_row> <start_col> <moves>
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Callable

import numpy as np

from .drawing import Edge, GraphInput, GridDrawing, shift_draw, validate_drawing, validate_graph
from .errors import ClaimsError, ContractError, FormatError, InvariantError, ValidationError
from .geometry import GeoBox, Segment
from .paths import WallPath
from .router import route_segment
from .wall import BoxSubgraph, WallDims, WallVertex, bfs_path, box_subgraph

PathFinder = Callable[[BoxSubgraph, WallVertex, WallVertex], "list[WallVertex] | None"]

MARGIN = 2


# ---------------------------------------------------------------------------
# Scale parameters and layout
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScaleParams:
    N: int
    eps: Fraction
    sigma: int
    dims: WallDims
    offset: int
    overridden: bool = False

    @property
    def inner_radius(self) -> int:
        """Radius of the small box, sigma * eps."""
        return int(self.sigma * self.eps)

    @property
    def box_radius(self) -> int:
        """Radius of the large box, sigma * eps + 2."""
        return self.inner_radius + MARGIN

    def to_wall(self, p) -> WallVertex:
        return WallVertex(self.sigma * p[0] + self.offset, self.sigma * p[1] + self.offset)

    def failed_invariants(self) -> list[str]:
        """Conditions the separation argument needs that these constants do not meet."""
        N, s, se, R = self.N, self.sigma, self.inner_radius, self.box_radius
        out = []
        if s % 2:
            out.append(f"sigma={s} is odd")
        if se % 2:
            out.append(f"sigma*eps={se} is odd")
        if not 2 * se + 4 < s:
            out.append(f"boxes may touch: 2*sigma*eps + 4 = {2 * se + 4} >= sigma = {s}")
        if not se >= 10 * N * N:
            out.append(f"sigma*eps = {se} < 10 N^2 = {10 * N * N}: shared-endpoint margins may meet outside boxes")
        # distance from a vertex to a foreign segment, sigma/(sqrt2 N), must beat sqrt2 (sigma eps + 2) + 2
        slack = Fraction(s, N) - 2 * R
        if not (slack > 0 and slack * slack > 8):
            out.append("a large box may meet the margin of a foreign segment")
        if not s * s > 32 * N * N:
            out.append("margins of endpoint-disjoint segments may meet")
        if not R < s:
            out.append(f"box radius {R} does not fit in the padding sigma = {s}")
        return out


def compute_scale_params(N: int, sigma_override: int | None = None) -> ScaleParams:
    """Constants for a drawing on the ``N x N`` grid: eps = 1/(4N), sigma = 40 N^3."""
    if N < 1:
        raise ContractError(f"grid bound must be positive, got {N}")
    eps = Fraction(1, 4 * N)
    if sigma_override is None:
        sigma = 40 * N**3
    else:
        sigma = int(sigma_override)
        if sigma <= 0:
            raise ContractError(f"sigma override must be positive, got {sigma}")
        if sigma % 2:
            raise ContractError(f"sigma override must be even, got {sigma}")
        if sigma % (4 * N):
            raise ContractError(
                f"sigma override {sigma} must be a multiple of 4N = {4 * N} so that sigma*eps is integral"
            )
    side = sigma * (N + 1)
    return ScaleParams(N, eps, sigma, WallDims(side, side), sigma, sigma_override is not None)


@dataclass
class ScaledLayout:
    params: ScaleParams
    centers: dict[int, WallVertex]
    small_boxes: dict[int, GeoBox]
    large_boxes: dict[int, GeoBox]
    margins: dict[Edge, Segment] = field(default_factory=dict)

    def subgraph(self, v: int) -> BoxSubgraph:
        return box_subgraph(self.params.dims, self.centers[v], self.params.box_radius)


def scale_layout(d: GridDrawing, p: ScaleParams, edges=()) -> ScaledLayout:
    centers = {v: p.to_wall(pt) for v, pt in sorted(d.coords.items())}
    small = {v: GeoBox(c, p.inner_radius) for v, c in centers.items()}
    large = {v: GeoBox(c, p.box_radius) for v, c in centers.items()}
    margins = {(u, v): Segment(centers[u], centers[v]) for u, v in edges}
    return ScaledLayout(p, centers, small, large, margins)


# ---------------------------------------------------------------------------
# Separation claims
# ---------------------------------------------------------------------------


@dataclass
class SeparationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "separation claims hold"
        return "\n".join(self.violations)


def _in_box(rows, cols, box: GeoBox) -> np.ndarray:
    return (np.abs(rows - box.center[0]) <= box.radius) & (np.abs(cols - box.center[1]) <= box.radius)


def _in_margin(rows, cols, seg: Segment, dist: int) -> np.ndarray:
    """Exact test dist(point, seg)^2 <= dist^2 on integer arrays."""
    (ar, ac), (br, bc) = seg.a, seg.b
    dr, dc = br - ar, bc - ac
    wr, wc = rows - ar, cols - ac
    length2 = dr * dr + dc * dc
    t = wr * dr + wc * dc
    cross = np.abs(dr * wc - dc * wr)
    d2 = dist * dist
    mid = cross <= math.isqrt(d2 * length2)
    before = wr * wr + wc * wc <= d2
    after = (rows - br) ** 2 + (cols - bc) ** 2 <= d2
    return np.where(t <= 0, before, np.where(t >= length2, after, mid))


def _first(mask: np.ndarray) -> int:
    return int(np.flatnonzero(mask)[0])


def check_claims(layout: ScaledLayout, routed: dict[Edge, WallPath]) -> SeparationReport:
    """Check the four separation claims on the actual routed vertices.

    (i) large boxes are pairwise disjoint; (ii) paths of edges sharing an
    endpoint only meet inside that endpoint's box; (iii) no path enters the
    box of a vertex other than its endpoints; (iv) paths of endpoint-disjoint
    edges never meet. Also reported: vertices outside their margin and paths
    that re-enter an endpoint box after leaving it.
    """
    p = layout.params
    R = p.box_radius
    out = []
    verts = sorted(layout.centers)
    for u, v in combinations(verts, 2):
        cu, cv = layout.centers[u], layout.centers[v]
        if max(abs(cu[0] - cv[0]), abs(cu[1] - cv[1])) <= 2 * R:
            out.append(f"(i) boxes of vertices {u} and {v} intersect")

    decoded = {e: routed[e].vertices() for e in sorted(routed)}
    for e, (rows, cols) in decoded.items():
        u, v = e
        bu, bv = layout.large_boxes[u], layout.large_boxes[v]
        in_u, in_v = _in_box(rows, cols, bu), _in_box(rows, cols, bv)
        seg = layout.margins.get(e) or Segment(layout.centers[u], layout.centers[v])
        stray = ~(_in_margin(rows, cols, seg, MARGIN) | in_u | in_v)
        if stray.any():
            k = _first(stray)
            out.append(f"(margin) edge {e} vertex ({rows[k]}, {cols[k]}) is farther than {MARGIN} from its segment")
        if not in_u[0] or not in_v[-1]:
            out.append(f"(trim) edge {e} does not start and end at its box centers")
        else:
            leave = int(np.argmin(in_u)) if not in_u.all() else len(in_u)
            enter = len(in_v) - (int(np.argmin(in_v[::-1])) if not in_v.all() else len(in_v))
            if in_u[leave:].any():
                out.append(f"(trim) edge {e} re-enters the box of {u}")
            if (~in_v[enter:]).any():
                out.append(f"(trim) edge {e} leaves the box of {v} after entering it")
        rlo, rhi, clo, chi = rows.min(), rows.max(), cols.min(), cols.max()
        for w in verts:
            if w in e:
                continue
            cw = layout.centers[w]
            if rlo > cw[0] + R or rhi < cw[0] - R or clo > cw[1] + R or chi < cw[1] - R:
                continue
            hit = _in_box(rows, cols, layout.large_boxes[w])
            if hit.any():
                k = _first(hit)
                out.append(f"(iii) edge {e} vertex ({rows[k]}, {cols[k]}) lies in the box of vertex {w}")

    if len(decoded) > 1:
        stride = p.dims.cols + 1
        edges = list(decoded)
        keys = np.concatenate([r * stride + c for r, c in decoded.values()])
        owner = np.concatenate([np.full(len(r), i, np.int64) for i, (r, _) in enumerate(decoded.values())])
        order = np.argsort(keys, kind="stable")
        keys, owner = keys[order], owner[order]
        dup = np.flatnonzero(keys[1:] == keys[:-1])
        reported = set()
        if len(dup):
            starts = np.unique(np.concatenate((dup, dup + 1)))
            # group equal keys
            for key in np.unique(keys[starts]).tolist():
                lo, hi = np.searchsorted(keys, [key, key + 1])
                owners = sorted(set(owner[lo:hi].tolist()))
                row, col = divmod(key, stride)
                for i, j in combinations(owners, 2):
                    e1, e2 = edges[i], edges[j]
                    shared = set(e1) & set(e2)
                    if shared:
                        (w,) = shared
                        if abs(row - layout.centers[w][0]) <= R and abs(col - layout.centers[w][1]) <= R:
                            continue
                        tag = "(ii)"
                    else:
                        tag = "(iv)"
                    if (tag, e1, e2) in reported:
                        continue
                    reported.add((tag, e1, e2))
                    out.append(f"{tag} edges {e1} and {e2} share vertex ({row}, {col}) outside every allowed box")
    return SeparationReport(out)


# ---------------------------------------------------------------------------
# Trimming
# ---------------------------------------------------------------------------


@dataclass
class TrimmedPath:
    """A routed path cut at the large boxes of its endpoints.

    ``head`` runs from the first box center to ``u_e``, ``tail`` from ``v_e``
    to the second box center, and ``bridge`` is ``u_e``, then ``inner``, then ``v_e``.
    """

    edge: Edge | None
    u_e: WallVertex
    v_e: WallVertex
    inner: WallPath | None
    head: list[WallVertex]
    tail: list[WallVertex]
    bridge: WallPath


def trim_path(path: WallPath, bu: GeoBox, bv: GeoBox, edge: Edge | None = None) -> TrimmedPath:
    rows, cols = path.vertices()
    if (rows[0], cols[0]) != tuple(bu.center) or (rows[-1], cols[-1]) != tuple(bv.center):
        raise ContractError("path must run from the center of the first box to the center of the second")
    in_u, in_v = _in_box(rows, cols, bu), _in_box(rows, cols, bv)
    iu = (int(np.argmin(in_u)) if not in_u.all() else len(in_u)) - 1
    if in_u[iu + 1 :].any():
        raise InvariantError(f"path of edge {edge} re-enters the first box after leaving it")
    iv = len(in_v) - (int(np.argmin(in_v[::-1])) if not in_v.all() else len(in_v))
    if (~in_v[iv:]).any():
        raise InvariantError(f"path of edge {edge} leaves the second box after entering it")
    if iv <= iu:
        # only possible when the boxes overlap
        iv = iu
    u_e = WallVertex(int(rows[iu]), int(cols[iu]))
    v_e = WallVertex(int(rows[iv]), int(cols[iv]))
    inner = WallPath.from_vertices(rows[iu + 1 : iv], cols[iu + 1 : iv]) if iv - iu > 1 else None
    head = [WallVertex(r, c) for r, c in zip(rows[: iu + 1].tolist(), cols[: iu + 1].tolist())]
    tail = [WallVertex(r, c) for r, c in zip(rows[iv:].tolist(), cols[iv:].tolist())]
    bridge = WallPath.from_vertices(rows[iu : iv + 1], cols[iu : iv + 1])
    return TrimmedPath(edge, u_e, v_e, inner, head, tail, bridge)


# ---------------------------------------------------------------------------
# Fixing the boxes
# ---------------------------------------------------------------------------


def bfs_finder(sub: BoxSubgraph, a: WallVertex, b: WallVertex) -> list[WallVertex] | None:
    return bfs_path(sub, a, b)


def loop_erase(walk: list[WallVertex]) -> list[WallVertex]:
    """Chronological loop erasure: a simple path with the same endpoints using only walk vertices."""
    out: list[WallVertex] = []
    pos: dict[WallVertex, int] = {}
    for v in walk:
        i = pos.get(v)
        if i is None:
            pos[v] = len(out)
            out.append(v)
        else:
            for w in out[i + 1 :]:
                del pos[w]
            del out[i + 1 :]
    return out


class CenterWalkFinder:
    """Simple in-box paths between entry vertices, threaded through the box center.

    ``walks`` maps each entry vertex to a walk from the box center to it (the
    head of its routed path, which never leaves the box). A path from ``a`` to
    ``b`` is the loop-erased walk ``a -> center -> b``. This avoids searching
    boxes with tens of millions of vertices.
    """

    def __init__(self, walks: dict[WallVertex, list[WallVertex]]):
        self.walks = walks

    def __call__(self, sub: BoxSubgraph, a: WallVertex, b: WallVertex) -> list[WallVertex] | None:
        if a not in self.walks or b not in self.walks:
            return bfs_path(sub, a, b)
        return loop_erase(self.walks[a][::-1] + self.walks[b][1:])


def _simple_path(find: PathFinder, sub: BoxSubgraph, a: WallVertex, b: WallVertex) -> list[WallVertex]:
    path = find(sub, a, b)
    if path is None:
        raise ContractError(f"{tuple(a)} and {tuple(b)} are not connected in the box")
    if path[0] != a or path[-1] != b or len(set(path)) != len(path):
        raise InvariantError("path finder returned an invalid path")
    if any(v not in sub for v in path):
        raise InvariantError("path finder left the box")
    return path


def three_disjoint_paths(
    sub: BoxSubgraph,
    p: WallVertex,
    q: WallVertex,
    r: WallVertex,
    find_path: PathFinder = bfs_finder,
) -> tuple[WallVertex, tuple[WallPath, WallPath, WallPath]]:
    """A branch vertex ``x`` and paths from ``x`` to ``p``, ``q``, ``r`` meeting only at ``x``."""
    p, q, r = (WallVertex(*t) for t in (p, q, r))
    if len({p, q, r}) != 3:
        raise ContractError("p, q, r must be distinct")
    for t in (p, q, r):
        if t not in sub:
            raise ContractError(f"{tuple(t)} is not in the box")
    pq = _simple_path(find_path, sub, p, q)
    if r in pq:
        i = pq.index(r)
        x, to_p, to_q, to_r = r, pq[: i + 1][::-1], pq[i:], [r]
    else:
        on_pq = {v: i for i, v in enumerate(pq)}
        rp = _simple_path(find_path, sub, r, p)
        j = next(j for j, v in enumerate(rp) if v in on_pq)
        x = rp[j]
        i = on_pq[x]
        to_p, to_q, to_r = pq[: i + 1][::-1], pq[i:], rp[: j + 1][::-1]
    return x, tuple(WallPath.from_vertices(t) for t in (to_p, to_q, to_r))


@dataclass
class BoxFixResult:
    vertex: int | None
    x: WallVertex
    paths: dict[Edge, WallPath]


def fix_box(
    sub: BoxSubgraph,
    center: WallVertex,
    entries: list[tuple[Edge, WallVertex]],
    find_path: PathFinder = bfs_finder,
    vertex: int | None = None,
) -> BoxFixResult:
    """Pick the image of a graph vertex inside its box and connect it to every entry vertex."""
    if len(entries) > 3:
        raise ContractError("at most three entries per box")
    if len({e for e, _ in entries}) != len(entries):
        raise ContractError("entries must belong to distinct edges")
    for e, w in entries:
        if w not in sub:
            raise ContractError(f"entry {tuple(w)} of edge {e} lies outside the box")
    entries = [(e, WallVertex(*w)) for e, w in entries]
    if not entries:
        return BoxFixResult(vertex, WallVertex(*center), {})
    points = [w for _, w in entries]
    distinct = list(dict.fromkeys(points))
    if len(distinct) == 1:
        x = distinct[0]
        return BoxFixResult(vertex, x, {e: WallPath(x) for e, _ in entries})
    if len(distinct) == 2:
        # two entries coincide (or degree 2): the first-listed vertex becomes the image
        x = points[0] if len(entries) == 2 else next(w for w in points if points.count(w) == 2)
        other = next(w for w in distinct if w != x)
        link = WallPath.from_vertices(_simple_path(find_path, sub, x, other))
        return BoxFixResult(vertex, x, {e: (WallPath(x) if w == x else link) for e, w in entries})
    x, trio = three_disjoint_paths(sub, *points, find_path=find_path)
    result = BoxFixResult(vertex, x, {e: t for (e, _), t in zip(entries, trio)})
    seen: set = set()
    for t in result.paths.values():
        vs = set(t.vertex_list()) - {x}
        if vs & seen:
            raise InvariantError("in-box paths overlap")
        seen |= vs
    return result


# ---------------------------------------------------------------------------
# The full embedding
# ---------------------------------------------------------------------------


@dataclass
class EmbeddingResult:
    dims: WallDims
    f: dict[int, WallVertex]
    g: dict[Edge, WallPath]
    params: ScaleParams | None = None
    stats: dict = field(default_factory=dict)


def _trivial_embedding(graph: GraphInput) -> EmbeddingResult:
    dims = WallDims(1, 2)
    f = {v: WallVertex(1, v + 1) for v in range(graph.n)}
    g = {e: WallPath.from_vertices([f[e[0]], f[e[1]]]) for e in graph.edge_keys()}
    return EmbeddingResult(dims, f, g, None, {"wall_side": None, "trivial": True})


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("WALLMINOR_THREADS", "1")))
    except ValueError:
        return 1


def embed(
    graph: GraphInput,
    drawing: GridDrawing | None = None,
    *,
    sigma_override: int | None = None,
) -> EmbeddingResult:
    """Embed ``graph`` as a topological minor of a wall built from ``drawing``.

    Without a drawing the graph's rotation system is drawn with the shift
    method. Raises :class:`ClaimsError` if the separation claims fail, which
    can only happen with ``sigma_override``.
    """
    problems = validate_graph(graph)
    if problems:
        raise ValidationError("invalid graph", problems)
    if graph.n <= 2:
        return _trivial_embedding(graph)
    if drawing is None:
        drawing = shift_draw(graph)
    problems = validate_drawing(graph, drawing)
    if problems:
        raise ValidationError("invalid drawing", problems)

    params = compute_scale_params(drawing.bound, sigma_override)
    edges = graph.edge_keys()
    if params.box_radius >= params.sigma:
        raise ClaimsError(SeparationReport(params.failed_invariants()))
    layout = scale_layout(drawing, params, edges)

    def route(e: Edge) -> WallPath:
        return route_segment(params.dims, layout.centers[e[0]], layout.centers[e[1]])

    with ThreadPoolExecutor(_threads()) as pool:
        routed = dict(zip(edges, pool.map(route, edges)))

    report = check_claims(layout, routed)
    if not report.ok:
        raise ClaimsError(report)

    trimmed = {
        e: trim_path(routed[e], layout.large_boxes[e[0]], layout.large_boxes[e[1]], e) for e in edges
    }
    del routed

    adj = graph.adjacency()
    fixes: dict[int, BoxFixResult] = {}
    for v in graph.vertices:
        entries, walks = [], {}
        for w in sorted(adj[v]):
            e = (min(v, w), max(v, w))
            t = trimmed[e]
            if v == e[0]:
                entry, walk = t.u_e, t.head
            else:
                entry, walk = t.v_e, t.tail[::-1]
            entries.append((e, entry))
            walks.setdefault(entry, walk)
        finder = CenterWalkFinder(walks)
        fixes[v] = fix_box(layout.subgraph(v), layout.centers[v], entries, finder, vertex=v)

    f = {v: fixes[v].x for v in graph.vertices}
    g = {}
    for e in edges:
        u, v = e
        g[e] = fixes[u].paths[e].then(trimmed[e].bridge).then(fixes[v].paths[e].reversed())

    stats = {
        "n": graph.n,
        "m": len(edges),
        "N": params.N,
        "sigma": params.sigma,
        "eps": str(params.eps),
        "box_radius": params.box_radius,
        "wall_side": params.dims.rows,
        "path_lengths": {f"{u}-{v}": len(g[(u, v)]) for u, v in edges},
        "total_path_vertices": sum(len(p) for p in g.values()),
    }
    return EmbeddingResult(params.dims, f, g, params, stats)


# ---------------------------------------------------------------------------
# Embedding file
# ---------------------------------------------------------------------------


def format_embedding(result: EmbeddingResult) -> str:
    parts = [f"wall {result.dims.rows} {result.dims.cols}\n"]
    parts += [f"v {v} {x.row} {x.col}\n" for v, x in sorted(result.f.items())]
    for (u, v), path in sorted(result.g.items()):
        parts.append(f"e {u} {v} {path.start.row} {path.start.col} {path.moves}\n")
    return "".join(parts)


def write_embedding(path, result: EmbeddingResult) -> None:
    Path(path).write_text(format_embedding(result))


def parse_embedding(text: str) -> tuple[EmbeddingResult, list[str]]:
    """Parse an embedding file.

    Structural errors raise :class:`FormatError`; malformed move strings are
    returned as problems (the affected edge is left out of ``g``) so a
    verifier can report them.
    """
    dims = None
    f: dict[int, WallVertex] = {}
    g: dict[Edge, WallPath] = {}
    problems = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        tag, rest = fields[0], fields[1:]
        try:
            if tag == "wall":
                if dims is not None or len(rest) != 2:
                    raise FormatError(f"line {lineno}: bad or duplicate 'wall' header")
                dims = WallDims(int(rest[0]), int(rest[1]))
            elif tag == "v":
                if len(rest) != 3:
                    raise FormatError(f"line {lineno}: expected 'v <vertex> <row> <col>'")
                v, r, c = map(int, rest)
                if v in f:
                    raise FormatError(f"line {lineno}: vertex {v} mapped twice")
                f[v] = WallVertex(r, c)
            elif tag == "e":
                if len(rest) not in (4, 5):
                    raise FormatError(f"line {lineno}: expected 'e <u> <v> <row> <col> <moves>'")
                u, v, r, c = map(int, rest[:4])
                key = (min(u, v), max(u, v))
                if key in g:
                    raise FormatError(f"line {lineno}: duplicate path for edge {key}")
                moves = rest[4] if len(rest) == 5 else ""
                try:
                    path = WallPath.from_moves((r, c), moves)
                except FormatError as exc:
                    problems.append(f"edge {key}: {exc}")
                    continue
                g[key] = path if u <= v else path.reversed()
            else:
                raise FormatError(f"line {lineno}: unknown record {tag!r}")
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    if dims is None:
        raise FormatError("embedding file has no 'wall' header")
    return EmbeddingResult(dims, f, g), problems


def read_embedding(path) -> tuple[EmbeddingResult, list[str]]:
    return parse_embedding(Path(path).read_text())
