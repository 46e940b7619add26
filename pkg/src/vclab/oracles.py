"""Reference oracles, deliberately independent of the carve deciders.

The interval-shaped classes (boxes, degenerate balls, anchored degenerate
balls, axis cuts) are checked by brute enumeration: per axis, list every
distinct trace an admissible interval can leave on the point coordinates
(endpoints drawn from a finite grid: the coordinates themselves, anchor
corners, midpoints of consecutive grid values, and sentinels beyond the
extremes), then intersect axiswise.  The midpoints matter only for the
nondegenerate-box variant, where a carve can genuinely need an endpoint
strictly between two data values; for the closed classes they are redundant
but harmless.

Cubes get two oracles: an unpruned enumeration over all assignments of
excluded points to (axis, side) slots, and a finite center/radius grid that
exhibits concrete cubes (sound but not complete, so it is only used in the
direction "grid found one => decider must agree").
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import FrozenSet, Optional, Set

from .carve import ClassDescriptor, ClassKind
from .errors import DomainError
from .geometry import Box, Cube, PointSet
from .scalars import NEG_INF, POS_INF, midpoint


def _axis_grid(coords, anchor_iv) -> list:
    vals = set(coords)
    if anchor_iv is not None:
        vals.add(anchor_iv.lo)
        vals.add(anchor_iv.hi)
    vals = sorted(vals)
    grid = [vals[0] - 2, vals[0] - 1]
    for a, b in zip(vals, vals[1:]):
        grid.append(a)
        grid.append(midpoint(a, b))
    grid.append(vals[-1])
    grid.append(vals[-1] + 1)
    grid.append(vals[-1] + 2)
    return grid


def _axis_traces(coords, kind: ClassKind, anchor_iv) -> Set[int]:
    grid = _axis_grid(coords, anchor_iv)
    lows = [NEG_INF] + grid
    highs = grid + [POS_INF]
    traces: Set[int] = set()
    for lo in lows:
        for hi in highs:
            if lo is not NEG_INF and hi is not POS_INF:
                if lo > hi:
                    continue
                if kind is ClassKind.BOXES_NONDEGENERATE and lo == hi:
                    continue
                if kind in (
                    ClassKind.DEGENERATE_BALLS,
                    ClassKind.ANCHORED_DEGENERATE_BALLS,
                ):
                    continue  # both sides bounded: not a degenerate factor
            if anchor_iv is not None:
                if not (lo <= anchor_iv.lo and anchor_iv.hi <= hi):
                    continue
            m = 0
            for i, c in enumerate(coords):
                if lo <= c <= hi:
                    m |= 1 << i
            traces.add(m)
    return traces


def trace_set(ps: PointSet, descriptor: ClassDescriptor) -> FrozenSet[int]:
    """Every subset mask some concept of the class realizes on ps."""
    if ps.dim != descriptor.dim:
        raise DomainError("dimension mismatch")
    kind = descriptor.kind
    n = len(ps)
    if kind is ClassKind.AXIS_CUTS:
        out = {0}
        for i in range(ps.dim):
            coords = [p[i] for p in ps.points]
            for v in set(coords):
                m = 0
                for j, c in enumerate(coords):
                    if c <= v:
                        m |= 1 << j
                out.add(m)
        return frozenset(out)
    if kind is ClassKind.CUBES:
        raise DomainError("use the cube-specific oracles for cubes")
    cur: Optional[Set[int]] = None
    for i in range(ps.dim):
        coords = [p[i] for p in ps.points]
        anchor_iv = (
            descriptor.anchor.intervals[i]
            if kind is ClassKind.ANCHORED_DEGENERATE_BALLS
            else None
        )
        opts = _axis_traces(coords, kind, anchor_iv)
        cur = opts if cur is None else {a & b for a in cur for b in opts}
    assert cur is not None
    return frozenset(cur)


def oracle_feasible(ps: PointSet, mask: int, descriptor: ClassDescriptor) -> bool:
    """Reference verdict for the interval-shaped classes."""
    return mask in trace_set(ps, descriptor)


def oracle_count(ps: PointSet, descriptor: ClassDescriptor) -> int:
    return len(trace_set(ps, descriptor))


def cube_feasible_unpruned(ps: PointSet, mask: int) -> bool:
    """Unpruned enumeration over all (axis, side) assignments of excluded points.

    For an assignment, only the tightest threshold per (axis, side) matters:
    feasibility needs every high threshold strictly above the subset hull,
    every low threshold strictly below it, and on axes carrying both a gap
    strictly exceeding the largest hull width (the forced diameter).
    """
    n = len(ps)
    d = ps.dim
    inc = [p for i, p in enumerate(ps.points) if mask >> i & 1]
    exc = [p for i, p in enumerate(ps.points) if not mask >> i & 1]
    if not inc or not exc:
        return True
    lo = [min(p[i] for p in inc) for i in range(d)]
    hi = [max(p[i] for p in inc) for i in range(d)]
    max_width = max(h - l for h, l in zip(hi, lo))
    slots = [(i, s) for i in range(d) for s in (0, 1)]  # 0 = low, 1 = high
    for assign in product(range(2 * d), repeat=len(exc)):
        hi_min = [None] * d
        lo_max = [None] * d
        for q, slot in zip(exc, assign):
            i, s = slots[slot]
            v = q[i]
            if s == 1:
                if hi_min[i] is None or v < hi_min[i]:
                    hi_min[i] = v
            else:
                if lo_max[i] is None or v > lo_max[i]:
                    lo_max[i] = v
        ok = True
        for i in range(d):
            if hi_min[i] is not None and not hi_min[i] > hi[i]:
                ok = False
                break
            if lo_max[i] is not None and not lo_max[i] < lo[i]:
                ok = False
                break
            if (
                hi_min[i] is not None
                and lo_max[i] is not None
                and not hi_min[i] - lo_max[i] > max_width
            ):
                ok = False
                break
        if ok:
            return True
    return False


def cube_feasible_grid(ps: PointSet, mask: int) -> bool:
    """Exhibit a carving cube with center/radius on a finite grid, or give up.

    Sound (any hit is membership-checked) but not complete; intended for
    small instances only.
    """
    n = len(ps)
    d = ps.dim
    inc = [p for i, p in enumerate(ps.points) if mask >> i & 1]
    if not inc or len(inc) == n:
        return True

    radii = {Fraction(0)}
    for i in range(d):
        coords = sorted({p[i] for p in ps.points})
        for a in coords:
            for b in coords:
                if a < b:
                    radii.add(Fraction(b - a, 2))
    radii = sorted(radii)
    extended = list(radii)
    for a, b in zip(radii, radii[1:]):
        extended.append(midpoint(a, b))
    extended.append(radii[-1] + 1)

    lo = [min(p[i] for p in inc) for i in range(d)]
    hi = [max(p[i] for p in inc) for i in range(d)]

    def trace(cube: Cube) -> int:
        m = 0
        for j, p in enumerate(ps.points):
            if cube.contains(p):
                m |= 1 << j
        return m

    for r in sorted(set(extended)):
        per_axis = []
        feasible_r = True
        for i in range(d):
            cands = set()
            for p in ps.points:
                cands.add(p[i] - r)
                cands.add(p[i] + r)
            cands = sorted(cands)
            full = list(cands)
            for a, b in zip(cands, cands[1:]):
                full.append(midpoint(a, b))
            # containment window for this axis
            window = [c for c in full if hi[i] - r <= c <= lo[i] + r]
            if not window:
                feasible_r = False
                break
            per_axis.append(sorted(set(window)))
        if not feasible_r:
            continue
        for center in product(*per_axis):
            if trace(Cube(tuple(center), r)) == mask:
                return True
    return False


def box_trace_oracle(ps: PointSet, descriptor: ClassDescriptor, mask: int) -> bool:
    """Convenience alias used by tests: interval classes via trace_set,
    cubes via the unpruned assignment enumeration."""
    if descriptor.kind is ClassKind.CUBES:
        return cube_feasible_unpruned(ps, mask)
    return oracle_feasible(ps, mask, descriptor)
