"""Integral points on the quartic curves Y^2 = t X^4 + s.

Every decomposed pair yields the point (X, Y) = (D, mT) on the curve
with its own (t, s), which is what makes the scan output a source of
curve points.
"""

from __future__ import annotations

from typing import NamedTuple

from .arith import isqrt
from .decomp import CounterexampleError, DecompRecord


class CurvePoint(NamedTuple):
    t: int
    s: int
    X: int
    Y: int


def curve_point_of(rec: DecompRecord) -> CurvePoint:
    """The point (D, mT) on Y^2 = t X^4 + s attached to a decomposition."""
    t = rec.pair.t
    point = CurvePoint(t, rec.s, rec.D, rec.m * rec.T)
    if point.Y * point.Y != t * point.X**4 + rec.s:
        raise CounterexampleError(
            f"({point.X}, {point.Y}) is not on Y^2 = {t} X^4 + {rec.s}"
        )
    return point


def enumerate_points(t: int, s: int, x_max: int) -> list[CurvePoint]:
    """All integral points with 0 <= X <= x_max and Y >= 0, X ascending.

    s may be negative; X values making t X^4 + s negative are skipped.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if x_max < 0:
        raise ValueError("x_max must be >= 0")
    points = []
    for x in range(x_max + 1):
        v = t * x**4 + s
        if v < 0:
            continue
        y = isqrt(v)
        if y * y == v:
            points.append(CurvePoint(t, s, x, y))
    return points
