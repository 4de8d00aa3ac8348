from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from wallminor import corpus
from wallminor.drawing import (
    GraphInput,
    GridDrawing,
    check_rotation_planar,
    format_graph,
    load_drawing,
    parse_drawing,
    parse_graph,
    save_drawing,
    shift_draw,
    validate_drawing,
    validate_graph,
)
from wallminor.errors import EmbeddingError, FormatError, ValidationError
from wallminor.geometry import LatticePoint, Relation, Segment, segment_relation

TRIANGLE = GraphInput.from_edges(3, [(0, 1), (1, 2), (0, 2)])
TRI_DRAWING = GridDrawing(2, {0: LatticePoint(0, 0), 1: LatticePoint(1, 0), 2: LatticePoint(0, 1)})


def naive_drawing_ok(g, d):
    pts = [d.coords.get(v) for v in g.vertices]
    if None in pts or len(set(pts)) != len(pts):
        return False
    if any(not (0 <= c < d.bound) for p in pts for c in p):
        return False
    edges = g.edge_keys()
    for e1, e2 in combinations(edges, 2):
        rel = segment_relation(Segment(pts[e1[0]], pts[e1[1]]), Segment(pts[e2[0]], pts[e2[1]]))
        if rel is Relation.CROSSING or (rel is Relation.SHARED_ENDPOINTS_ONLY and not set(e1) & set(e2)):
            return False
    return True


def test_validate_graph_examples():
    assert validate_graph(corpus.k4()) == []
    dup = GraphInput.from_edges(3, [(0, 1), (1, 2), (0, 2), (1, 0)])
    assert any("multi-edge" in m for m in validate_graph(dup))
    k5 = GraphInput.from_edges(5, list(combinations(range(5), 2)))
    assert any(m.startswith("degree 4 at vertex") for m in validate_graph(k5))
    assert any("loop" in m for m in validate_graph(GraphInput.from_edges(2, [(1, 1)])))


def test_validate_drawing_examples():
    assert validate_drawing(TRIANGLE, TRI_DRAWING) == []
    path = GraphInput.from_edges(3, [(0, 1), (1, 2)])
    d = GridDrawing(3, {0: LatticePoint(0, 0), 1: LatticePoint(2, 2), 2: LatticePoint(1, 1)})
    assert any("crossing" in m for m in validate_drawing(path, d))
    same = GridDrawing(3, {0: LatticePoint(0, 0), 1: LatticePoint(0, 0), 2: LatticePoint(1, 1)})
    assert any("not injective" in m for m in validate_drawing(path, same))
    out = GridDrawing(2, {0: LatticePoint(0, 0), 1: LatticePoint(2, 0), 2: LatticePoint(1, 1)})
    assert validate_drawing(path, out)


def test_validate_drawing_unknown_vertex():
    d = GridDrawing(2, {**TRI_DRAWING.coords, 7: LatticePoint(1, 1)})
    with pytest.raises(FormatError):
        validate_drawing(TRIANGLE, d)


@pytest.mark.parametrize("name,limit", [("c3", 3), ("k4", 5), ("q3", 13), ("c4", 5), ("prism", 9)])
def test_shift_draw_corpus(name, limit):
    g = corpus.named(name)
    d = shift_draw(g)
    assert d.bound <= limit
    assert validate_drawing(g, d) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 16), st.integers(0, 10**6))
def test_shift_draw_random(n, seed):
    g = corpus.random_planar_cubic(n, seed=seed)
    assert validate_graph(g) == []
    d = shift_draw(g)
    assert d.bound <= 2 * n - 3
    assert validate_drawing(g, d) == []
    assert naive_drawing_ok(g, d)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 6), st.data())
def test_validate_drawing_matches_naive(n, data):
    g = corpus.random_planar_cubic(n, seed=data.draw(st.integers(0, 1000)))
    bound = data.draw(st.integers(2, 4))
    pts = data.draw(st.lists(st.tuples(st.integers(0, bound - 1), st.integers(0, bound - 1)), min_size=n, max_size=n))
    d = GridDrawing(bound, {v: LatticePoint(*p) for v, p in enumerate(pts)})
    assert (validate_drawing(g, d) == []) == naive_drawing_ok(g, d)


def test_rotation_errors():
    with pytest.raises(EmbeddingError, match="rotation required"):
        shift_draw(GraphInput.from_edges(4, corpus.k4().edges))
    bad = GraphInput.from_edges(4, corpus.k4().edges, {0: (1, 2, 3), 1: (0, 2, 3), 2: (0, 1, 3), 3: (0, 1, 2)})
    with pytest.raises(EmbeddingError):
        check_rotation_planar(bad)


def test_graph_text_roundtrip():
    g = corpus.cube()
    h = parse_graph("# cube\n" + format_graph(g))
    assert h == g and h.rotation == g.rotation
    with pytest.raises(FormatError):
        parse_graph("n 3\ne 0 x\n")
    with pytest.raises(FormatError):
        parse_graph("e 0 1\n")


def test_drawing_file_roundtrip(tmp_path):
    path = tmp_path / "tri.drawing"
    save_drawing(path, TRI_DRAWING)
    assert load_drawing(path, TRIANGLE) == TRI_DRAWING
    path.write_text("N 2\np 0 0 0\np 1 2 0\np 2 0 1\n")
    with pytest.raises(ValidationError):
        load_drawing(path, TRIANGLE)
    path.write_text("N 2\np 0 0 0\np 1 1 0\np 2 0 1\np 9 1 1\n")
    with pytest.raises(FormatError):
        load_drawing(path, TRIANGLE)
    with pytest.raises(FormatError):
        parse_drawing("p 0 0 0\n")
