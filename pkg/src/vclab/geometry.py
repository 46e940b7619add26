"""Exact axis-aligned geometry: points, intervals, boxes, cubes.

All concepts handled by this package are products of closed intervals of the
real line (boxes), or sup-norm balls (cubes, which are boxes with equal side
lengths).  A box side may be unbounded; a box whose every side is unbounded
in at least one direction is called a *degenerate ball* because it arises as
the limit of balls whose centers run away to infinity.

Everything here is immutable and exact.  Constructors normalize coordinates
through :func:`vclab.scalars.as_scalar` and reject floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .errors import (
    DimensionMismatchError,
    DomainError,
    DuplicateAfterProjectionError,
    EmptySetError,
)
from .scalars import (
    NEG_INF,
    POS_INF,
    ExtendedScalar,
    Scalar,
    as_scalar,
    is_finite,
)

Point = Tuple[Scalar, ...]


def as_point(coords: Sequence) -> Point:
    return tuple(as_scalar(c) for c in coords)


@dataclass(frozen=True)
class PointSet:
    """An ordered, duplicate-free, finite set of points in R^dim.

    Order matters: subset masks index into it, bit i of a mask selecting
    ``points[i]``.
    """

    dim: int
    points: Tuple[Point, ...]

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise DomainError(f"dimension must be a positive int, got {self.dim!r}")
        pts = tuple(as_point(p) for p in self.points)
        if not pts:
            raise EmptySetError("point set must be nonempty")
        for p in pts:
            if len(p) != self.dim:
                raise DimensionMismatchError(
                    f"point {p!r} has {len(p)} coordinates, expected {self.dim}"
                )
        if len(set(pts)) != len(pts):
            raise DomainError("duplicate points rejected")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable[Sequence], dim: int | None = None) -> "PointSet":
        pts = [as_point(p) for p in points]
        if dim is None:
            if not pts:
                raise EmptySetError("cannot infer dimension of an empty point set")
            dim = len(pts[0])
        return cls(dim=dim, points=tuple(pts))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def subset(self, mask: int) -> Tuple[Point, ...]:
        """Points selected by the mask, in set order."""
        return tuple(p for i, p in enumerate(self.points) if mask >> i & 1)

    def subset_indices(self, mask: int) -> Tuple[int, ...]:
        return tuple(i for i in range(len(self.points)) if mask >> i & 1)

    def restrict(self, indices: Sequence[int]) -> "PointSet":
        """Sub-point-set at the given indices, order preserved."""
        return PointSet(self.dim, tuple(self.points[i] for i in indices))

    def translate(self, vector: Sequence) -> "PointSet":
        v = as_point(vector)
        if len(v) != self.dim:
            raise DimensionMismatchError("translation vector dimension mismatch")
        return PointSet(
            self.dim,
            tuple(tuple(as_scalar(c + w) for c, w in zip(p, v)) for p in self.points),
        )


@dataclass(frozen=True)
class Interval:
    """A nonempty closed interval of the extended real line.

    ``lo`` may be -inf and ``hi`` may be +inf; ``lo <= hi`` always.  The
    empty set is deliberately not representable.
    """

    lo: ExtendedScalar
    hi: ExtendedScalar

    def __post_init__(self):
        lo = self.lo if self.lo is NEG_INF else as_scalar(self.lo)
        hi = self.hi if self.hi is POS_INF else as_scalar(self.hi)
        if lo is POS_INF or hi is NEG_INF:
            raise DomainError("interval endpoints out of range")
        if not lo <= hi:
            raise DomainError(f"interval requires lo <= hi, got [{lo!r}, {hi!r}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def full_line(cls) -> "Interval":
        return cls(NEG_INF, POS_INF)

    @property
    def unbounded_below(self) -> bool:
        return self.lo is NEG_INF

    @property
    def unbounded_above(self) -> bool:
        return self.hi is POS_INF

    @property
    def is_bounded(self) -> bool:
        return is_finite(self.lo) and is_finite(self.hi)

    @property
    def is_degenerate_side(self) -> bool:
        """Unbounded in at least one direction (a degenerate-ball factor)."""
        return self.unbounded_below or self.unbounded_above

    def width(self) -> Scalar:
        if not self.is_bounded:
            raise DomainError("width of an unbounded interval")
        return as_scalar(self.hi - self.lo)

    def contains(self, x: Scalar) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


@dataclass(frozen=True)
class Box:
    """A product of closed intervals, one per coordinate."""

    intervals: Tuple[Interval, ...]

    def __post_init__(self):
        ivals = tuple(self.intervals)
        if not ivals:
            raise DomainError("box needs at least one interval")
        for iv in ivals:
            if not isinstance(iv, Interval):
                raise DomainError(f"box factors must be Interval, got {iv!r}")
        object.__setattr__(self, "intervals", ivals)

    @classmethod
    def from_bounds(cls, lows: Sequence, highs: Sequence) -> "Box":
        if len(lows) != len(highs):
            raise DimensionMismatchError("bounds length mismatch")
        return cls(tuple(Interval(lo, hi) for lo, hi in zip(lows, highs)))

    @classmethod
    def full_space(cls, dim: int) -> "Box":
        return cls(tuple(Interval.full_line() for _ in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.intervals)

    @property
    def is_bounded(self) -> bool:
        return all(iv.is_bounded for iv in self.intervals)

    @property
    def is_degenerate_ball(self) -> bool:
        """Every side unbounded in at least one direction."""
        return all(iv.is_degenerate_side for iv in self.intervals)

    def contains(self, point: Sequence[Scalar]) -> bool:
        if len(point) != self.dim:
            raise DimensionMismatchError("point/box dimension mismatch")
        return all(iv.lo <= x and x <= iv.hi for iv, x in zip(self.intervals, point))

    def contains_box(self, other: "Box") -> bool:
        if other.dim != self.dim:
            raise DimensionMismatchError("box/box dimension mismatch")
        return all(
            a.contains_interval(b) for a, b in zip(self.intervals, other.intervals)
        )


@dataclass(frozen=True)
class Cube:
    """A closed sup-norm ball: center plus radius r >= 0.

    Radius zero is allowed (a single point); it is never required by any
    class-level verdict but keeping it total simplifies witnesses.
    """

    center: Point
    radius: Scalar

    def __post_init__(self):
        center = as_point(self.center)
        if not center:
            raise DomainError("cube needs at least one coordinate")
        radius = as_scalar(self.radius)
        if radius < 0:
            raise DomainError(f"cube radius must be >= 0, got {radius!r}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)

    @property
    def dim(self) -> int:
        return len(self.center)

    def contains(self, point: Sequence[Scalar]) -> bool:
        if len(point) != self.dim:
            raise DimensionMismatchError("point/cube dimension mismatch")
        r = self.radius
        for c, x in zip(self.center, point):
            d = x - c
            if d > r or -d > r:
                return False
        return True

    def to_box(self) -> Box:
        return Box.from_bounds(
            [c - self.radius for c in self.center],
            [c + self.radius for c in self.center],
        )


def membership(concept, point: Sequence[Scalar]) -> bool:
    """Exact membership test for any concept (Box, Cube, AxisCut)."""
    return concept.contains(as_point(point))


def rect_hull(points) -> Box:
    """Smallest box containing the given points (their rectangular envelope)."""
    if isinstance(points, PointSet):
        pts = points.points
    else:
        pts = tuple(as_point(p) for p in points)
    if not pts:
        raise EmptySetError("rect_hull of an empty collection")
    dim = len(pts[0])
    for p in pts:
        if len(p) != dim:
            raise DimensionMismatchError("mixed dimensions in rect_hull")
    lows = [min(p[i] for p in pts) for i in range(dim)]
    highs = [max(p[i] for p in pts) for i in range(dim)]
    return Box.from_bounds(lows, highs)


def project(ps: PointSet, keep: Sequence[int]) -> PointSet:
    """Drop all coordinates not in ``keep`` (0-based axis indices, in the
    given order).  Raises if two points collide after projection."""
    axes = list(keep)
    if not axes:
        raise DomainError("projection must keep at least one axis")
    if len(set(axes)) != len(axes):
        raise DomainError("projection axes must be distinct")
    for a in axes:
        if not isinstance(a, int) or not 0 <= a < ps.dim:
            raise DimensionMismatchError(f"projection axis {a!r} out of range")
    projected = [tuple(p[a] for a in axes) for p in ps.points]
    if len(set(projected)) != len(projected):
        raise DuplicateAfterProjectionError(
            "distinct points collide after projection"
        )
    return PointSet(len(axes), tuple(projected))
