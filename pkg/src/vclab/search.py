"""Exhaustive and randomized searches for shattered configurations.

For every class here except cubes in dimension >= 2, carve feasibility is
invariant under per-axis strictly increasing reparametrizations, so whether
a set is shattered depends only on its order type: the matrix of per-axis
ranks.  Restricting to injective projections loses nothing (a shattered set
can always be perturbed to one with injective projections), so the exact VC
dimension over all of R^d is computed by enumerating rank matrices with
distinct ranks per axis, one representative per symmetry orbit, realizing
ranks as integer coordinates, and running the exact shattering checker.

Symmetries: relabeling points, permuting axes, and reflecting an axis
(rank r -> m-1-r).  Reflection is dropped for axis cuts, which are
one-sided.  Origin-anchored classes get an extra phantom entity for the
origin, which participates in the ranking but is pinned to coordinate 0.

Cubes in dimension >= 2 are genuinely metric, so they get a seeded random
search with hill climbing instead; absence of a witness there is evidence,
not proof.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, List, Optional, Sequence, Tuple

from .carve import (
    ClassDescriptor,
    ClassKind,
    boxes,
    carve_feasible,
    cubes,
    degenerate_balls,
    origin_anchored,
)
from .errors import BudgetExceededError, DomainError
from .geometry import PointSet
from .shatter import is_shattered, shattering_count

EVIDENCE_NOTE = (
    "randomized search: absence of a shattered configuration is evidence, not proof"
)


# ---------------------------------------------------------------------------
# Order types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetryGroup:
    point_relabel: bool = True
    axis_permute: bool = True
    axis_reflect: bool = True


def symmetries_for(kind: ClassKind) -> SymmetryGroup:
    if kind is ClassKind.AXIS_CUTS:
        return SymmetryGroup(axis_reflect=False)
    return SymmetryGroup()


@dataclass(frozen=True)
class OrderConfig:
    """Rank matrix: ranks[axis][point] are distinct within an axis.

    With ``with_origin`` one rank slot per axis is reserved for the origin
    (the missing value); realization shifts ranks so the origin lands at 0.
    """

    n: int
    dim: int
    with_origin: bool
    ranks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        m = self.n + (1 if self.with_origin else 0)
        if len(self.ranks) != self.dim:
            raise DomainError("one rank row per axis required")
        for row in self.ranks:
            if len(row) != self.n or len(set(row)) != self.n:
                raise DomainError("ranks must be distinct per axis")
            if not all(isinstance(v, int) and 0 <= v < m for v in row):
                raise DomainError(f"ranks must lie in 0..{m - 1}")

    def origin_rank(self, axis: int) -> int:
        if not self.with_origin:
            raise DomainError("configuration has no origin slot")
        missing = set(range(self.n + 1)) - set(self.ranks[axis])
        return missing.pop()

    def realize(self) -> PointSet:
        """Integer realization: coordinate = rank, shifted so origin = 0."""
        shifts = [
            self.origin_rank(axis) if self.with_origin else 0
            for axis in range(self.dim)
        ]
        pts = [
            tuple(self.ranks[axis][i] - shifts[axis] for axis in range(self.dim))
            for i in range(self.n)
        ]
        return PointSet.of(pts)


def _relabel_sorted(mat: Tuple[Tuple[int, ...], ...]) -> Tuple[Tuple[int, ...], ...]:
    order = sorted(range(len(mat[0])), key=lambda i: mat[0][i])
    return tuple(tuple(row[i] for i in order) for row in mat)


def _canonical(
    mat: Tuple[Tuple[int, ...], ...], m: int, sym: SymmetryGroup
) -> Tuple[Tuple[int, ...], ...]:
    d = len(mat)
    axis_orders = permutations(range(d)) if sym.axis_permute else [tuple(range(d))]
    best = None
    for tau in axis_orders:
        reflect_choices = (
            product((False, True), repeat=d) if sym.axis_reflect else [(False,) * d]
        )
        for refl in reflect_choices:
            rows = []
            for new_axis, old_axis in enumerate(tau):
                row = mat[old_axis]
                if refl[new_axis]:
                    row = tuple(m - 1 - v for v in row)
                rows.append(row)
            cand = tuple(rows)
            if sym.point_relabel:
                cand = _relabel_sorted(cand)
            if best is None or cand < best:
                best = cand
    return best


def transform_config(
    config: OrderConfig,
    axis_order: Sequence[int],
    reflect: Sequence[bool],
    point_order: Optional[Sequence[int]] = None,
) -> OrderConfig:
    """Apply a symmetry group element; used by the orbit-soundness tests."""
    m = config.n + (1 if config.with_origin else 0)
    rows = []
    for old_axis, refl in zip(axis_order, reflect):
        row = config.ranks[old_axis]
        if refl:
            row = tuple(m - 1 - v for v in row)
        rows.append(row)
    if point_order is not None:
        rows = [tuple(row[i] for i in point_order) for row in rows]
    return OrderConfig(config.n, config.dim, config.with_origin, tuple(rows))


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def charge(self) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceededError(
                f"examined {self.used} raw configurations; budget {self.limit}"
            )


@dataclass
class EnumerationCounters:
    examined: int = 0
    emitted: int = 0


def _axis_rows(n: int, with_origin: bool, relabel_slice: bool) -> List[Tuple[int, ...]]:
    m = n + 1 if with_origin else n
    if not relabel_slice:
        return list(permutations(range(m), n))
    if with_origin:
        # axis-0 ranks ascending; the origin occupies slot s
        return [tuple(i if i < s else i + 1 for i in range(n)) for s in range(n + 1)]
    return [tuple(range(n))]


def _enumerate(
    n: int,
    dim: int,
    with_origin: bool,
    sym: SymmetryGroup,
    budget: _Budget,
    counters: EnumerationCounters,
) -> Iterator[OrderConfig]:
    m = n + 1 if with_origin else n
    first_rows = _axis_rows(n, with_origin, sym.point_relabel)
    other_rows = list(permutations(range(m), n))
    for first in first_rows:
        for rest in product(other_rows, repeat=dim - 1):
            budget.charge()
            counters.examined += 1
            mat = (first,) + rest
            if _canonical(mat, m, sym) != mat:
                continue
            counters.emitted += 1
            yield OrderConfig(n, dim, with_origin, mat)


def enumerate_order_types(
    n: int,
    dim: int,
    with_origin: bool = False,
    symmetry: Optional[SymmetryGroup] = None,
    budget: Optional[int] = None,
    counters: Optional[EnumerationCounters] = None,
) -> Iterator[OrderConfig]:
    """One representative per symmetry orbit, in a deterministic order.

    Representatives are the lexicographically least rank matrices of their
    orbits.  When point relabeling is on, enumeration is restricted to the
    slice with axis-0 ranks ascending, which every relabel-orbit meets
    exactly once.
    """
    if n < 1 or dim < 1:
        raise DomainError("need n >= 1 and dim >= 1")
    sym = symmetry if symmetry is not None else SymmetryGroup()
    tracker = _Budget(budget)
    ctr = counters if counters is not None else EnumerationCounters()
    return _enumerate(n, dim, with_origin, sym, tracker, ctr)


# ---------------------------------------------------------------------------
# Exact VC by exhaustion
# ---------------------------------------------------------------------------

ORDINAL_KINDS = (
    ClassKind.BOXES,
    ClassKind.BOXES_NONDEGENERATE,
    ClassKind.DEGENERATE_BALLS,
    ClassKind.ANCHORED_DEGENERATE_BALLS,
    ClassKind.AXIS_CUTS,
)

ORDINAL_ASSUMPTIONS = (
    "carve feasibility for this class depends only on per-axis coordinate order",
    "restriction to injective projections is lossless (small perturbations preserve shattering)",
)


@dataclass(frozen=True)
class LevelOutcome:
    n: int
    shattered: bool
    witness: Optional[OrderConfig]
    witness_points: Optional[PointSet]
    configs_examined: int
    configs_after_symmetry: int


@dataclass(frozen=True)
class VcSearchReport:
    kind: ClassKind
    dim: int
    n_max: int
    budget: Optional[int]
    levels: Tuple[LevelOutcome, ...]
    vc_exact: Optional[int]
    assumptions: Tuple[str, ...]

    @property
    def configs_examined(self) -> int:
        return sum(lv.configs_examined for lv in self.levels)

    @property
    def configs_after_symmetry(self) -> int:
        return sum(lv.configs_after_symmetry for lv in self.levels)

    @property
    def vc_lower_bound(self) -> int:
        best = 0
        for lv in self.levels:
            if lv.shattered:
                best = max(best, lv.n)
        return best


def _default_n_max(kind: ClassKind, dim: int) -> int:
    if kind is ClassKind.ANCHORED_DEGENERATE_BALLS:
        return 3 * dim // 2 + 1
    if kind in (ClassKind.BOXES, ClassKind.BOXES_NONDEGENERATE):
        return 2 * dim + 1
    if kind is ClassKind.DEGENERATE_BALLS:
        return (3 * dim + 1) // 2 + 1
    if kind is ClassKind.AXIS_CUTS:
        return dim + 1
    if kind is ClassKind.CUBES:
        return (3 * dim + 1) // 2 + 1
    raise DomainError(f"no default search depth for {kind.value}")


def _search_descriptor(kind: ClassKind, dim: int) -> ClassDescriptor:
    if kind is ClassKind.ANCHORED_DEGENERATE_BALLS:
        return origin_anchored(dim)
    if kind is ClassKind.BOXES:
        return boxes(dim)
    if kind is ClassKind.BOXES_NONDEGENERATE:
        return boxes(dim, nondegenerate=True)
    if kind is ClassKind.DEGENERATE_BALLS:
        return degenerate_balls(dim)
    if kind is ClassKind.CUBES:
        return cubes(dim)
    if kind is ClassKind.AXIS_CUTS:
        return ClassDescriptor(ClassKind.AXIS_CUTS, dim)
    raise DomainError(f"unsupported kind {kind.value}")


def exact_vc_ordinal(
    kind: ClassKind,
    dim: int,
    n_max: Optional[int] = None,
    budget: Optional[int] = None,
    jobs: int = 1,
) -> VcSearchReport:
    """Exact VC dimension of an order-driven class by exhausting order types.

    Scans n = 1..n_max; at each level, stops early once a shattered
    configuration is found.  The exact value n* is reported only when level
    n*+1 was exhausted with no shattered configuration.  On budget overrun a
    BudgetExceededError carrying the partial report (``error.report``) is
    raised.
    """
    if dim < 1:
        raise DomainError("dimension must be positive")
    if kind not in ORDINAL_KINDS and not (kind is ClassKind.CUBES and dim == 1):
        raise DomainError(
            f"{kind.value} is not order-driven in dimension {dim}; "
            "use the randomized cube search instead"
        )
    if n_max is None:
        n_max = _default_n_max(kind, dim)
    with_origin = kind is ClassKind.ANCHORED_DEGENERATE_BALLS
    sym = symmetries_for(kind)
    descriptor = _search_descriptor(kind, dim)
    tracker = _Budget(budget)
    levels: List[LevelOutcome] = []
    vc_exact: Optional[int] = None

    def make_report() -> VcSearchReport:
        return VcSearchReport(
            kind=kind,
            dim=dim,
            n_max=n_max,
            budget=budget,
            levels=tuple(levels),
            vc_exact=vc_exact,
            assumptions=ORDINAL_ASSUMPTIONS,
        )

    for n in range(1, n_max + 1):
        counters = EnumerationCounters()
        found: Optional[OrderConfig] = None
        found_points: Optional[PointSet] = None
        try:
            for config in _enumerate(n, dim, with_origin, sym, tracker, counters):
                ps = config.realize()
                verdict = is_shattered(
                    ps, descriptor, jobs=jobs, want_certificate=False
                )
                if verdict.shattered:
                    found = config
                    found_points = ps
                    break
        except BudgetExceededError as err:
            levels.append(
                LevelOutcome(
                    n, False, None, None, counters.examined, counters.emitted
                )
            )
            err.report = make_report()
            raise
        levels.append(
            LevelOutcome(
                n,
                found is not None,
                found,
                found_points,
                counters.examined,
                counters.emitted,
            )
        )
        if found is None:
            vc_exact = n - 1
            break
    return make_report()


@dataclass(frozen=True)
class ResolveReport:
    dim: int
    bracket: Tuple[int, int]
    search: VcSearchReport
    definitive: bool
    value: Optional[int]
    within_bracket: Optional[bool]


def resolve_even_degenerate(
    dim: int,
    n_max: Optional[int] = None,
    budget: Optional[int] = None,
    jobs: int = 1,
) -> ResolveReport:
    """Pin down VC of unanchored degenerate balls in an even dimension.

    Known bracket: at least 3d/2 (anchored witnesses embed) and at most
    3d/2 + 1.  The exhaustive order-type search turns the bracket into a
    definitive value when the budget allows full exhaustion.
    """
    if dim < 2 or dim % 2:
        raise DomainError("resolver applies to even dimensions >= 2")
    if n_max is None:
        n_max = 3 * dim // 2 + 2
    lo = 3 * dim // 2
    bracket = (lo, lo + 1)
    search = exact_vc_ordinal(
        ClassKind.DEGENERATE_BALLS, dim, n_max=n_max, budget=budget, jobs=jobs
    )
    definitive = search.vc_exact is not None
    value = search.vc_exact
    within = (bracket[0] <= value <= bracket[1]) if definitive else None
    return ResolveReport(
        dim=dim,
        bracket=bracket,
        search=search,
        definitive=definitive,
        value=value,
        within_bracket=within,
    )


# ---------------------------------------------------------------------------
# Rank realization (shared by the ordinal-soundness property tests)
# ---------------------------------------------------------------------------


def rank_realization(ps: PointSet, with_origin: bool = False) -> PointSet:
    """Replace each coordinate by its per-axis rank (origin included if asked).

    The result is the canonical integer representative of the point set's
    order type; for order-driven classes every carve verdict is preserved.
    """
    cols = []
    for j in range(ps.dim):
        values = {p[j] for p in ps.points}
        if with_origin:
            values.add(0)
        ranking = {v: r for r, v in enumerate(sorted(values))}
        shift = ranking[0] if with_origin else 0
        cols.append({v: r - shift for v, r in ranking.items()})
    pts = [tuple(cols[j][p[j]] for j in range(ps.dim)) for p in ps.points]
    return PointSet.of(pts)


# ---------------------------------------------------------------------------
# Randomized cube search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchCandidate:
    points: PointSet
    score: int
    total_masks: int
    shattered: bool
    trial: int


@dataclass(frozen=True)
class CubeSearchReport:
    dim: int
    n: int
    trials: int
    seed: int
    coordinate_range: int
    evaluations: int
    best: Tuple[SearchCandidate, ...]
    shattered_found: Tuple[SearchCandidate, ...]
    note: str = EVIDENCE_NOTE


def _trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * 0x9E3779B1 + trial)


def _matrix_points(cols: List[List[int]], n: int) -> PointSet:
    return PointSet.of([tuple(col[i] for col in cols) for i in range(n)])


def _cube_score(ps: PointSet, descriptor: ClassDescriptor) -> int:
    # The empty and full masks are always carvable (a faraway cube / the
    # bounding cube), so only the 2^n - 2 proper masks are decided.
    full = (1 << len(ps)) - 1
    return 2 + sum(
        1 for mask in range(1, full) if carve_feasible(ps, mask, descriptor)
    )


def _order_key(ps: PointSet) -> Tuple[Tuple[int, ...], ...]:
    ranked = rank_realization(ps)
    mat = tuple(
        tuple(p[j] for p in ranked.points) for j in range(ranked.dim)
    )
    return _canonical(mat, len(ps), SymmetryGroup())


def _search_trials(args) -> Tuple[int, List[SearchCandidate], List[SearchCandidate]]:
    dim, n, t0, t1, seed, rng_range, climb_steps, local_keep = args
    descriptor = cubes(dim)
    total = 1 << n
    evaluations = 0
    candidates: List[SearchCandidate] = []
    shattered: List[SearchCandidate] = []
    for t in range(t0, t1):
        rng = _trial_rng(seed, t)
        cols = [rng.sample(range(-rng_range, rng_range + 1), n) for _ in range(dim)]
        ps = _matrix_points(cols, n)
        score = _cube_score(ps, descriptor)
        evaluations += 1
        if total - 2 <= score < total:
            for _ in range(climb_steps):
                j = rng.randrange(dim)
                i = rng.randrange(n)
                others = {cols[j][k] for k in range(n) if k != i}
                choices = [
                    v for v in range(-rng_range, rng_range + 1) if v not in others
                ]
                old = cols[j][i]
                cols[j][i] = rng.choice(choices)
                trial_ps = _matrix_points(cols, n)
                trial_score = _cube_score(trial_ps, descriptor)
                evaluations += 1
                if trial_score > score:
                    score = trial_score
                    ps = trial_ps
                else:
                    cols[j][i] = old
                if score == total:
                    break
        cand = SearchCandidate(ps, score, total, score == total, t)
        candidates.append(cand)
        if score == total:
            shattered.append(cand)
    candidates.sort(key=lambda c: (-c.score, _order_key(c.points), c.trial))
    return evaluations, candidates[:local_keep], shattered


def random_cube_search(
    dim: int,
    n: int,
    trials: int,
    seed: int = 0,
    coordinate_range: int = 16,
    jobs: int = 1,
    keep: int = 3,
    climb_steps: int = 16,
) -> CubeSearchReport:
    """Seeded random search for cube-shattered n-point sets in dimension dim.

    Each trial draws integer coordinates with injective projections; trials
    whose mask-coverage score comes within 2 of full get a short hill climb.
    Per-trial randomness depends only on (seed, trial index), so reports are
    identical for any worker count.  Shattered finds are re-validated from
    scratch by the shattering checker.
    """
    if trials < 1:
        raise DomainError("need at least one trial")
    if n < 1 or dim < 1:
        raise DomainError("need n >= 1 and dim >= 1")
    if n > 2 * coordinate_range + 1:
        raise DomainError("coordinate range too small for injective projections")
    jobs = max(1, jobs)
    ranges: List[Tuple[int, int]] = []
    step = -(-trials // jobs)
    for t0 in range(0, trials, step):
        ranges.append((t0, min(trials, t0 + step)))
    # Each worker keeps at least its local top-`keep`; any globally top-`keep`
    # candidate is in its own worker's local top-`keep`, so the merge below is
    # independent of how trials were partitioned.
    local_keep = max(8, keep)
    work = [
        (dim, n, t0, t1, seed, coordinate_range, climb_steps, local_keep)
        for t0, t1 in ranges
    ]
    if jobs == 1 or len(work) == 1:
        parts = [_search_trials(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_search_trials, work))
    evaluations = 0
    merged: List[SearchCandidate] = []
    shattered: List[SearchCandidate] = []
    for ev, cands, shat in parts:
        evaluations += ev
        merged.extend(cands)
        shattered.extend(shat)
    merged.sort(key=lambda c: (-c.score, _order_key(c.points), c.trial))
    shattered.sort(key=lambda c: (_order_key(c.points), c.trial))
    for cand in shattered:
        verdict = is_shattered(cand.points, cubes(dim), want_certificate=False)
        if not verdict.shattered:
            raise DomainError("internal error: shattered candidate failed revalidation")
    return CubeSearchReport(
        dim=dim,
        n=n,
        trials=trials,
        seed=seed,
        coordinate_range=coordinate_range,
        evaluations=evaluations,
        best=tuple(merged[:keep]),
        shattered_found=tuple(shattered),
    )


# ---------------------------------------------------------------------------
# Maximum shattering coefficient over order types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaxCoefficientReport:
    kind: ClassKind
    dim: int
    n: int
    best_count: int
    best_config: OrderConfig
    best_points: PointSet
    configs_examined: int
    configs_after_symmetry: int


def max_shattering_coefficient(
    kind: ClassKind,
    dim: int,
    n: int,
    budget: Optional[int] = None,
    jobs: int = 1,
) -> MaxCoefficientReport:
    """Largest number of realizable subsets over all order types at size n."""
    if kind not in ORDINAL_KINDS and not (kind is ClassKind.CUBES and dim == 1):
        raise DomainError(f"{kind.value} is not order-driven in dimension {dim}")
    with_origin = kind is ClassKind.ANCHORED_DEGENERATE_BALLS
    sym = symmetries_for(kind)
    descriptor = _search_descriptor(kind, dim)
    counters = EnumerationCounters()
    tracker = _Budget(budget)
    best = None
    for config in _enumerate(n, dim, with_origin, sym, tracker, counters):
        ps = config.realize()
        report = shattering_count(ps, descriptor, jobs=jobs)
        if best is None or report.realized > best[0]:
            best = (report.realized, config, ps)
    assert best is not None
    return MaxCoefficientReport(
        kind=kind,
        dim=dim,
        n=n,
        best_count=best[0],
        best_config=best[1],
        best_points=best[2],
        configs_examined=counters.examined,
        configs_after_symmetry=counters.emitted,
    )
