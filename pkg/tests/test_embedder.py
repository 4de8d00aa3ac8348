from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wallminor import corpus
from wallminor.drawing import GraphInput, GridDrawing, shift_draw
from wallminor.embedder import (
    CenterWalkFinder,
    ScaleParams,
    check_claims,
    compute_scale_params,
    embed,
    fix_box,
    format_embedding,
    loop_erase,
    parse_embedding,
    scale_layout,
    three_disjoint_paths,
    trim_path,
)
from wallminor.errors import ClaimsError, ContractError, FormatError, InvariantError
from wallminor.geometry import GeoBox, LatticePoint, Segment, chebyshev_in_box, euclid_in_margin
from wallminor.paths import WallPath
from wallminor.router import route_segment
from wallminor.verifier import verify_embedding
from wallminor.wall import BoxSubgraph, WallDims, WallVertex, box_subgraph, is_connected

V = WallVertex
TRIANGLE = GraphInput.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def tri_drawing(bound):
    return GridDrawing(bound, {0: LatticePoint(0, 0), 1: LatticePoint(1, 0), 2: LatticePoint(0, 1)})


# -- scale parameters ------------------------------------------------------


def test_scale_params_examples():
    p = compute_scale_params(3)
    assert (p.eps, p.sigma, p.inner_radius, p.box_radius, p.dims.rows) == (Fraction(1, 12), 1080, 90, 92, 4320)
    p = compute_scale_params(1)
    assert (p.sigma, p.inner_radius, p.box_radius, p.dims.cols) == (40, 10, 12, 80)
    with pytest.raises(ContractError):
        compute_scale_params(3, sigma_override=200)
    with pytest.raises(ContractError):
        compute_scale_params(3, sigma_override=13)
    with pytest.raises(ContractError):
        compute_scale_params(0)
    q = compute_scale_params(3, sigma_override=120)
    assert q.overridden and q.eps == Fraction(1, 12) and q.inner_radius == 10


@pytest.mark.parametrize("N", range(1, 60))
def test_default_constants_meet_invariants(N):
    p = compute_scale_params(N)
    assert p.failed_invariants() == []
    assert Fraction(p.inner_radius, 2 * N * N) == 5
    assert 2 * (20 * N * N) ** 2 * N * N <= p.sigma**2
    # a box around any grid point fits strictly inside the wall
    assert p.sigma - p.box_radius > 0
    assert p.sigma * (N - 1) + p.offset + p.box_radius <= p.dims.rows


def test_scale_layout_triangle():
    p = compute_scale_params(2)
    lay = scale_layout(tri_drawing(2), p, TRIANGLE.edge_keys())
    assert p.sigma == 320 and lay.centers[0] == (320, 320)
    for v, c in lay.centers.items():
        assert min(c.row - 1, c.col - 1, p.dims.rows - c.row, p.dims.cols - c.col) >= p.sigma - p.box_radius
        assert lay.small_boxes[v].radius < lay.large_boxes[v].radius
    assert lay.margins[(0, 1)] == Segment(lay.centers[0], lay.centers[1])


# -- claims ----------------------------------------------------------------


def routed_for(g, d, sigma_override=None):
    p = compute_scale_params(d.bound, sigma_override)
    lay = scale_layout(d, p, g.edge_keys())
    routed = {e: route_segment(p.dims, lay.centers[e[0]], lay.centers[e[1]]) for e in g.edge_keys()}
    return lay, routed


@pytest.mark.parametrize("name", ["c3", "c4", "k4", "prism"])
def test_claims_hold_with_default_constants(name):
    g = corpus.named(name)
    lay, routed = routed_for(g, shift_draw(g))
    assert check_claims(lay, routed).ok


def test_claims_negative_control():
    lay, routed = routed_for(TRIANGLE, tri_drawing(2), sigma_override=8)
    report = check_claims(lay, routed)
    assert not report.ok
    with pytest.raises(ClaimsError):
        embed(TRIANGLE, tri_drawing(2), sigma_override=8)


def test_claims_detect_overlapping_boxes():
    # no admissible override makes boxes overlap, so build the parameters by hand
    p = ScaleParams(2, Fraction(1, 2), 4, WallDims(12, 12), 4)
    assert p.failed_invariants()
    d = GridDrawing(2, {0: LatticePoint(0, 0), 1: LatticePoint(1, 0)})
    lay = scale_layout(d, p, [(0, 1)])
    routed = {(0, 1): route_segment(p.dims, lay.centers[0], lay.centers[1])}
    assert any(v.startswith("(i)") for v in check_claims(lay, routed).violations)


# -- trimming --------------------------------------------------------------


def test_trim_simple():
    path = WallPath.from_moves((5, 5), "R7")
    t = trim_path(path, GeoBox((5, 5), 2), GeoBox((5, 12), 2))
    assert (t.u_e, t.v_e) == ((5, 7), (5, 10))
    assert t.inner.vertex_list() == [(5, 8), (5, 9)]
    assert t.head == [(5, 5), (5, 6), (5, 7)]
    assert t.tail == [(5, 10), (5, 11), (5, 12)]
    assert t.bridge.vertex_list() == [(5, 7), (5, 8), (5, 9), (5, 10)]


def test_trim_inside_boxes_only():
    t = trim_path(WallPath.from_moves((5, 5), "R5"), GeoBox((5, 5), 2), GeoBox((5, 10), 2))
    assert t.inner is None
    assert (t.u_e, t.v_e) == ((5, 7), (5, 8))


def test_trim_rejects_reentry():
    path = WallPath.from_moves((5, 5), "R2D1L1R11")
    with pytest.raises(InvariantError):
        trim_path(path, GeoBox((5, 5), 1), GeoBox((6, 17), 1))
    with pytest.raises(ContractError):
        trim_path(path, GeoBox((5, 6), 1), GeoBox((6, 17), 1))


def test_trim_k4_paths_avoid_all_boxes():
    g = corpus.k4()
    lay, routed = routed_for(g, shift_draw(g))
    for (u, v), path in routed.items():
        t = trim_path(path, lay.large_boxes[u], lay.large_boxes[v])
        assert chebyshev_in_box(lay.large_boxes[u], t.u_e)
        assert chebyshev_in_box(lay.large_boxes[v], t.v_e)
        assert t.inner is not None
        rows, cols = t.inner.vertices()
        for box in lay.large_boxes.values():
            (cr, cc), rad = box.center, box.radius
            assert not ((np.abs(rows - cr) <= rad) & (np.abs(cols - cc) <= rad)).any()


# -- boxes -----------------------------------------------------------------


def test_three_paths_examples():
    whole = BoxSubgraph(WallDims(1, 3), V(1, 2), 1)
    x, (a, b, c) = three_disjoint_paths(whole, V(1, 1), V(1, 3), V(1, 2))
    assert x == (1, 2)
    assert a.vertex_list() == [(1, 2), (1, 1)]
    assert b.vertex_list() == [(1, 2), (1, 3)]
    assert c.vertex_list() == [(1, 2)]
    whole = BoxSubgraph(WallDims(2, 2), V(1, 1), 1)
    x, (a, b, c) = three_disjoint_paths(whole, V(1, 1), V(1, 2), V(2, 1))
    assert x == (1, 1)
    assert a.vertex_list() == [(1, 1)]
    assert b.vertex_list() == [(1, 1), (1, 2)]
    assert c.vertex_list() == [(1, 1), (2, 1)]
    with pytest.raises(ContractError):
        three_disjoint_paths(whole, V(1, 1), V(1, 1), V(2, 1))


def check_three(sub, pts, x, paths):
    sets = [set(p.vertex_list()) for p in paths]
    for p, t in zip(paths, pts):
        vs = p.vertex_list()
        assert vs[0] == x and vs[-1] == t
        assert all(v in sub for v in vs)
        assert len(set(vs)) == len(vs)
    assert sets[0] & sets[1] == sets[0] & sets[2] == sets[1] & sets[2] == {x}


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.data())
def test_three_paths_random(radius, data):
    center = V(radius + 1 + data.draw(st.integers(0, 3)), radius + 1 + data.draw(st.integers(0, 3)))
    sub = box_subgraph(WallDims(center.row + radius + 2, center.col + radius + 2), center, radius)
    verts = list(sub.vertices())
    if not is_connected(sub, verts):
        return
    pts = data.draw(st.lists(st.sampled_from(verts), min_size=3, max_size=3, unique=True))
    x, paths = three_disjoint_paths(sub, *pts)
    check_three(sub, pts, x, paths)


def test_fix_box_cases():
    sub = box_subgraph(WallDims(20, 20), V(10, 10), 4)
    e1, e2, e3 = (0, 1), (0, 2), (0, 3)
    r = fix_box(sub, V(10, 10), [])
    assert r.x == (10, 10) and r.paths == {}
    r = fix_box(sub, V(10, 10), [(e1, V(7, 9))])
    assert r.x == (7, 9) and len(r.paths[e1]) == 1
    r = fix_box(sub, V(10, 10), [(e1, V(7, 9)), (e2, V(7, 9))])
    assert r.x == (7, 9) and all(len(p) == 1 for p in r.paths.values())
    r = fix_box(sub, V(10, 10), [(e1, V(7, 9)), (e2, V(13, 12))])
    assert r.x == (7, 9) and r.paths[e2].end == (13, 12)
    r = fix_box(sub, V(10, 10), [(e1, V(7, 9)), (e2, V(13, 12)), (e3, V(13, 12))])
    assert r.x == (13, 12) and r.paths[e1].end == (7, 9) and len(r.paths[e3]) == 1
    r = fix_box(sub, V(10, 10), [(e1, V(6, 6)), (e2, V(6, 6)), (e3, V(6, 6))])
    assert r.x == (6, 6)
    r = fix_box(sub, V(10, 10), [(e1, V(6, 6)), (e2, V(14, 14)), (e3, V(6, 14))])
    check_three(sub, [V(6, 6), V(14, 14), V(6, 14)], r.x, [r.paths[e] for e in (e1, e2, e3)])
    with pytest.raises(ContractError):
        fix_box(sub, V(10, 10), [(e1, V(1, 1))])


def test_loop_erase_and_center_walks():
    walk = [V(1, 1), V(1, 2), V(1, 3), V(1, 2), V(2, 2)]
    assert loop_erase(walk) == [V(1, 1), V(1, 2), V(2, 2)]
    sub = box_subgraph(WallDims(20, 20), V(10, 10), 3)
    heads = {
        V(10, 13): [V(10, 10), V(10, 11), V(10, 12), V(10, 13)],
        V(10, 7): [V(10, 10), V(10, 9), V(10, 8), V(10, 7)],
    }
    find = CenterWalkFinder(heads)
    assert find(sub, V(10, 13), V(10, 7)) == [V(10, c) for c in range(13, 6, -1)]


# -- full pipeline ---------------------------------------------------------


def test_trivial_sizes():
    r = embed(GraphInput.from_edges(1, []))
    assert r.dims == WallDims(1, 2) and r.f == {0: (1, 1)} and r.g == {}
    g = GraphInput.from_edges(2, [(0, 1)])
    r = embed(g)
    assert r.f == {0: (1, 1), 1: (1, 2)}
    assert r.g[(0, 1)].vertex_list() == [(1, 1), (1, 2)]
    assert verify_embedding(g, r.dims, r).ok


def check_result(g, d, r):
    assert verify_embedding(g, r.dims, r, "strict").ok
    assert verify_embedding(g, r.dims, r, "literal").ok
    p = r.params
    lay = scale_layout(d, p, g.edge_keys())
    for v, x in r.f.items():
        assert chebyshev_in_box(lay.large_boxes[v], x)
    for (u, v), path in r.g.items():
        seg = lay.margins[(u, v)]
        for w in path.vertex_list()[:: max(1, len(path) // 400)]:
            assert (
                euclid_in_margin(seg, w, 2)
                or chebyshev_in_box(lay.large_boxes[u], w)
                or chebyshev_in_box(lay.large_boxes[v], w)
            )


def test_triangle_end_to_end():
    r = embed(TRIANGLE, tri_drawing(3))
    assert r.dims == WallDims(4320, 4320)
    check_result(TRIANGLE, tri_drawing(3), r)


@pytest.mark.parametrize("name", ["c3", "c4", "k4", "prism"])
def test_corpus_end_to_end(name):
    g = corpus.named(name)
    d = shift_draw(g)
    r = embed(g, d)
    assert r.dims.rows == 40 * d.bound**3 * (d.bound + 1)
    check_result(g, d, r)


@settings(max_examples=15, deadline=None)
@given(st.integers(3, 6), st.integers(0, 10**6))
def test_random_graphs_default_constants(n, seed):
    g = corpus.random_planar_cubic(n, seed=seed)
    d = shift_draw(g)
    check_result(g, d, embed(g, d))


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 12), st.integers(0, 10**6), st.integers(1, 30))
def test_override_gate_never_lets_bad_output_through(n, seed, k):
    g = corpus.random_planar_cubic(n, seed=seed)
    d = shift_draw(g)
    try:
        r = embed(g, d, sigma_override=4 * d.bound * k)
    except ClaimsError as exc:
        assert not exc.report.ok
        return
    assert verify_embedding(g, r.dims, r, "strict").ok


def test_embedding_file_roundtrip():
    r = embed(corpus.k4(), shift_draw(corpus.k4()))
    text = format_embedding(r)
    back, problems = parse_embedding(text)
    assert problems == []
    assert back.dims == r.dims and back.f == r.f and back.g == r.g
    assert format_embedding(back) == text


def test_embedding_file_errors():
    with pytest.raises(FormatError):
        parse_embedding("v 0 1 1\n")
    with pytest.raises(FormatError):
        parse_embedding("wall 3 3\nq 1\n")
    with pytest.raises(FormatError):
        parse_embedding("wall 3 3\nv 0 1 x\n")
    res, problems = parse_embedding("wall 3 3\nv 0 1 1\nv 1 1 2\ne 0 1 1 1 R1X\n")
    assert problems and (0, 1) not in res.g
    res, _ = parse_embedding("wall 3 3\ne 1 0 1 2 L1\n")
    assert res.g[(0, 1)].vertex_list() == [(1, 1), (1, 2)]
