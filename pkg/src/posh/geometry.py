"""Exact planar predicates over rational coordinates.

All predicates work on pairs ``(x, y)`` of ``int`` or ``fractions.Fraction``
and never touch floating point, so results are identical across runs and
platforms.  This matters because the exploding double chain has coordinates
that are exponential in n.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError

Point = tuple  # (x, y) with int or Fraction entries

LEFT = 1
ON = 0
RIGHT = -1


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the 3x3 orientation determinant of the triple (a, b, c).

    Returns +1 if c lies strictly left of the directed line a->b, -1 if
    strictly right, 0 if the points are collinear.
    """
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if d > 0:
        return LEFT
    if d < 0:
        return RIGHT
    return ON


def side_of_line(a: Point, b: Point, c: Point) -> str:
    """Classify c against the directed line a->b as 'left', 'right' or 'on'."""
    if a == b:
        raise InputError("side_of_line needs two distinct line points")
    s = orientation(a, b, c)
    if s == LEFT:
        return "left"
    if s == RIGHT:
        return "right"
    return "on"


def _between(a: Point, b: Point, c: Point) -> bool:
    # assumes collinear; is c within the closed box spanned by a, b?
    return (
        min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])
    )


def segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Exact closed-segment intersection test (shared points count)."""
    d1 = orientation(q1, q2, p1)
    d2 = orientation(q1, q2, p2)
    d3 = orientation(p1, p2, q1)
    d4 = orientation(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if d1 == 0 and _between(q1, q2, p1):
        return True
    if d2 == 0 and _between(q1, q2, p2):
        return True
    if d3 == 0 and _between(p1, p2, q1):
        return True
    if d4 == 0 and _between(p1, p2, q2):
        return True
    return False


def segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Do two segments share a point other than a common endpoint?

    Collinear overlap counts as a crossing.  Segments that merely share an
    endpoint are fine, unless they overlap in more than that endpoint.
    """
    shared = {pt for pt in (p1, p2) if pt in (q1, q2)}
    if len(shared) == 2:
        # same segment twice is a degenerate overlap
        return True
    if len(shared) == 1:
        s = shared.pop()
        a = p2 if p1 == s else p1
        b = q2 if q1 == s else q1
        # overlap through the shared endpoint requires collinearity with
        # the free endpoints on the same side
        if orientation(s, a, b) != ON:
            return False
        if _between(s, a, b) or _between(s, b, a):
            return True
        return False
    return segments_intersect(p1, p2, q1, q2)


def point_on_segment(p: Point, a: Point, b: Point) -> bool:
    """Is p on the closed segment ab?"""
    return orientation(a, b, p) == ON and _between(a, b, p)


def as_fraction_point(p) -> tuple[Fraction, Fraction]:
    return (Fraction(p[0]), Fraction(p[1]))
