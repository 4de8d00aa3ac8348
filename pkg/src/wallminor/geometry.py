"""Exact rational geometry for lattice drawings.

Every predicate works on squared distances with :class:`fractions.Fraction`,
so bounds such as ``dist >= 1 / (sqrt(2) N)`` are compared as
``dist**2 >= 1 / (2 N**2)`` without any rounding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import ContractError

Rat = Fraction
Num = Union[int, Fraction]
Point = tuple  # any pair of exact numbers


class LatticePoint(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self) -> None:
        if tuple(self.a) == tuple(self.b):
            raise ValueError(f"degenerate segment at {tuple(self.a)}")


@dataclass(frozen=True)
class GeoBox:
    """Closed axis-parallel square: all points within Chebyshev distance ``radius`` of ``center``."""

    center: Point
    radius: Num

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValueError("box radius must be positive")


class Relation(enum.Enum):
    DISJOINT = "disjoint"
    SHARED_ENDPOINTS_ONLY = "shared_endpoints_only"
    CROSSING = "crossing"


def _sub(p: Point, q: Point) -> tuple:
    return (p[0] - q[0], p[1] - q[1])


def _dot(u: tuple, v: tuple):
    return u[0] * v[0] + u[1] * v[1]


def _cross(u: tuple, v: tuple):
    return u[0] * v[1] - u[1] * v[0]


def dist2(p: Point, q: Point) -> Fraction:
    d = _sub(p, q)
    return Fraction(_dot(d, d))


def dist2_point_segment(q: Point, s: Segment) -> Fraction:
    """Squared Euclidean distance from ``q`` to the closed segment ``s``."""
    d = _sub(s.b, s.a)
    w = _sub(q, s.a)
    t_num = _dot(w, d)
    if t_num <= 0:
        return Fraction(_dot(w, w))
    length2 = _dot(d, d)
    if t_num >= length2:
        return dist2(q, s.b)
    c = _cross(d, w)
    return Fraction(c * c) / length2


def on_segment(q: Point, s: Segment) -> bool:
    d = _sub(s.b, s.a)
    w = _sub(q, s.a)
    return _cross(d, w) == 0 and 0 <= _dot(w, d) <= _dot(d, d)


def segment_relation(s1: Segment, s2: Segment) -> Relation:
    """Classify two closed segments.

    Any common point other than an endpoint shared by both segments makes
    the pair ``CROSSING``; this includes touching and collinear overlap.
    """
    a, b, c, d = s1.a, s1.b, s2.a, s2.b
    r = _sub(b, a)
    t = _sub(d, c)
    denom = _cross(r, t)
    ca = _sub(c, a)
    if denom == 0:
        if _cross(ca, r) != 0:
            return Relation.DISJOINT
        # Collinear: compare parameters along s1.
        rr = _dot(r, r)
        t0 = Fraction(_dot(ca, r), rr)
        t1 = Fraction(_dot(_sub(d, a), r), rr)
        lo, hi = max(min(t0, t1), 0), min(max(t0, t1), 1)
        if lo > hi:
            return Relation.DISJOINT
        if lo == hi and lo in (0, 1) and lo in (t0, t1):
            return Relation.SHARED_ENDPOINTS_ONLY
        return Relation.CROSSING
    tp = Fraction(_cross(ca, t), denom)
    up = Fraction(_cross(ca, r), denom)
    if not (0 <= tp <= 1 and 0 <= up <= 1):
        return Relation.DISJOINT
    if tp in (0, 1) and up in (0, 1):
        return Relation.SHARED_ENDPOINTS_ONLY
    return Relation.CROSSING


def chebyshev(p: Point, q: Point):
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def chebyshev_in_box(b: GeoBox, pt: Point) -> bool:
    return chebyshev(b.center, pt) <= b.radius


def euclid_in_margin(s: Segment, pt: Point, d: Num) -> bool:
    return dist2_point_segment(pt, s) <= Fraction(d) ** 2


# ---------------------------------------------------------------------------
# Bound checks
# ---------------------------------------------------------------------------


def _in_grid(p: Point, n: int) -> bool:
    return all(isinstance(c, int) and 0 <= c < n for c in p)


def pass_bound_holds(p: Point, q: Point, r: Point, n: int) -> bool:
    """Check that a lattice point off a lattice segment keeps squared distance >= 1/(2 n^2)."""
    if len({tuple(p), tuple(q), tuple(r)}) != 3:
        raise ContractError("p, q, r must be pairwise distinct")
    if not (_in_grid(p, n) and _in_grid(q, n) and _in_grid(r, n)):
        raise ContractError(f"points must be integer and lie in [0, {n - 1}]^2")
    s = Segment(p, r)
    if on_segment(q, s):
        raise ContractError("q lies on [p, r]")
    return dist2_point_segment(q, s) >= Fraction(1, 2 * n * n)


def boxdist_bound_holds(
    p: Point, q: Point, r: Point, eps: Num, n: int, q1: Point, r1: Point
) -> bool:
    """Check ``|q1 r1|^2 >= eps^2 / (4 n^4)`` for points on [p,q] and [p,r] outside the eps-box at p."""
    if len({tuple(p), tuple(q), tuple(r)}) != 3:
        raise ContractError("p, q, r must be pairwise distinct")
    if not (_in_grid(p, n) and _in_grid(q, n) and _in_grid(r, n)):
        raise ContractError(f"p, q, r must be integer and lie in [0, {n - 1}]^2")
    if _cross(_sub(q, p), _sub(r, p)) == 0:
        raise ContractError("[p,q] and [p,r] are collinear")
    eps = Fraction(eps)
    if eps <= 0:
        raise ContractError("eps must be positive")
    if not on_segment(q1, Segment(p, q)) or not on_segment(r1, Segment(p, r)):
        raise ContractError("q1 and r1 must lie on [p,q] and [p,r]")
    box = GeoBox(p, eps)
    if chebyshev_in_box(box, q1) or chebyshev_in_box(box, r1):
        raise ContractError("q1 and r1 must lie outside the box of radius eps around p")
    return dist2(q1, r1) >= eps * eps / (4 * n**4)


def _on_ray_beyond(x: Point, origin: Point, direction: tuple) -> bool:
    w = _sub(x, origin)
    return _cross(w, direction) == 0 and _dot(w, direction) >= 0


def ray_claim_holds(p: Point, q2: Point, r2: Point, q: Point, r: Point) -> bool:
    """Points pushed outward along the rays p->q2 and p->r2 never get closer than q2 and r2."""
    u = _sub(q2, p)
    v = _sub(r2, p)
    if _cross(u, v) == 0:
        raise ContractError("triangle p, q2, r2 is degenerate")
    if _dot(_sub(p, q2), _sub(r2, q2)) <= 0 or _dot(_sub(p, r2), _sub(q2, r2)) <= 0:
        raise ContractError("angles at q2 and r2 must be acute")
    if not _on_ray_beyond(q, q2, u) or not _on_ray_beyond(r, r2, v):
        raise ContractError("q and r must lie on the outward rays from q2 and r2")
    return dist2(q, r) >= dist2(q2, r2)
