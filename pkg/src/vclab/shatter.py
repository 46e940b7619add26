"""Shattering checks, shattering coefficients, and the Sauer-Shelah bound.

Masks are visited in a fixed canonical order (singletons, then complements
of singletons, then everything else by (popcount, numeric value)), so the
minimal failing mask reported for a non-shattered set is deterministic and
independent of the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .carve import CarveWitness, ClassDescriptor, carve, carve_feasible
from .errors import CapExceededError, DomainError
from .geometry import PointSet

DEFAULT_MASK_CAP = 20

# Rational upper approximation of Euler's number: the series through 1/15!
# plus the tail bound 1/(15 * 15!), which exceeds the true tail.  The excess
# is below 1e-12, keeping the growth bound valid and nearly tight.
E_UPPER = sum(Fraction(1, math.factorial(k)) for k in range(16)) + Fraction(
    1, 15 * math.factorial(15)
)


def canonical_mask_order(n: int) -> List[int]:
    """Singletons, complements of singletons, then (popcount, value)."""
    if n < 1:
        raise DomainError("need at least one point")
    full = (1 << n) - 1
    head: List[int] = []
    seen = set()
    for i in range(n):
        m = 1 << i
        if m not in seen:
            head.append(m)
            seen.add(m)
    for i in range(n):
        m = full ^ (1 << i)
        if m not in seen:
            head.append(m)
            seen.add(m)
    rest = sorted(
        (m for m in range(full + 1) if m not in seen),
        key=lambda m: (bin(m).count("1"), m),
    )
    return head + rest


@dataclass(frozen=True)
class ShatteringCertificate:
    """One validated carve witness per subset mask."""

    points: PointSet
    descriptor: ClassDescriptor
    witnesses: Tuple[CarveWitness, ...]  # indexed by mask value

    def __post_init__(self):
        if len(self.witnesses) != 1 << len(self.points):
            raise DomainError("certificate must cover every subset mask")

    def witness_for(self, mask: int) -> CarveWitness:
        return self.witnesses[mask]

    def validate(self) -> bool:
        from .carve import _trace_mask  # local import to keep module load light

        for mask, w in enumerate(self.witnesses):
            if w.mask != mask:
                return False
            if _trace_mask(w.concept, self.points) != mask:
                return False
        return True


@dataclass(frozen=True)
class ShatterVerdict:
    points: PointSet
    descriptor: ClassDescriptor
    shattered: bool
    masks_checked: int
    failing_mask: Optional[int] = None
    certificate: Optional[ShatteringCertificate] = None


@dataclass(frozen=True)
class CoefficientReport:
    points: PointSet
    descriptor: ClassDescriptor
    realized: int
    total_masks: int
    feasible_masks: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class VcLowerBound:
    points: PointSet
    descriptor: ClassDescriptor
    size: int
    indices: Tuple[int, ...]
    subset: Optional[PointSet]
    certificate: Optional[ShatteringCertificate]
    realized: int


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceededError(
            f"{n} points would need {1 << n} masks; cap is {cap} points"
        )


def _eval_chunk(args):
    ps, descriptor, masks, want_witness = args
    out = []
    for m in masks:
        if want_witness:
            w = carve(ps, m, descriptor)
            out.append((m, w is not None, w))
        else:
            out.append((m, carve_feasible(ps, m, descriptor), None))
    return out


def _chunked(seq: Sequence[int], pieces: int) -> List[List[int]]:
    pieces = max(1, min(pieces, len(seq)))
    size = -(-len(seq) // pieces)
    return [list(seq[i : i + size]) for i in range(0, len(seq), size)]


def _scan_masks(
    ps: PointSet,
    descriptor: ClassDescriptor,
    masks: Sequence[int],
    jobs: int,
    want_witness: bool,
    stop_on_infeasible: bool,
):
    """Yield (mask, feasible, witness) in the given order; honors early stop."""
    if jobs <= 1 or len(masks) < 64:
        for m in masks:
            if want_witness:
                w = carve(ps, m, descriptor)
                row = (m, w is not None, w)
            else:
                row = (m, carve_feasible(ps, m, descriptor), None)
            yield row
            if stop_on_infeasible and not row[1]:
                return
        return

    chunks = _chunked(masks, jobs * 4)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_eval_chunk, (ps, descriptor, chunk, want_witness))
            for chunk in chunks
        ]
        try:
            for fut in futures:
                for row in fut.result():
                    yield row
                    if stop_on_infeasible and not row[1]:
                        return
        finally:
            for fut in futures:
                fut.cancel()


def is_shattered(
    ps: PointSet,
    descriptor: ClassDescriptor,
    jobs: int = 1,
    cap: int = DEFAULT_MASK_CAP,
    want_certificate: bool = True,
) -> ShatterVerdict:
    """Decide every subset mask; report the first failing mask in canonical order.

    On success, optionally carries a full certificate (one validated witness
    per mask).
    """
    n = len(ps)
    _check_cap(n, cap)
    order = canonical_mask_order(n)
    witnesses: Dict[int, CarveWitness] = {}
    checked = 0
    for mask, feasible, w in _scan_masks(
        ps, descriptor, order, jobs, want_certificate, stop_on_infeasible=True
    ):
        checked += 1
        if not feasible:
            return ShatterVerdict(ps, descriptor, False, checked, failing_mask=mask)
        if want_certificate:
            witnesses[mask] = w
    cert = None
    if want_certificate:
        cert = ShatteringCertificate(
            ps, descriptor, tuple(witnesses[m] for m in range(1 << n))
        )
    return ShatterVerdict(ps, descriptor, True, checked, certificate=cert)


def shattering_count(
    ps: PointSet,
    descriptor: ClassDescriptor,
    jobs: int = 1,
    cap: int = DEFAULT_MASK_CAP,
    include_masks: bool = False,
) -> CoefficientReport:
    """Number of subsets realizable as intersections with class concepts."""
    n = len(ps)
    _check_cap(n, cap)
    masks = list(range(1 << n))
    feasible: List[int] = []
    for mask, ok, _ in _scan_masks(
        ps, descriptor, masks, jobs, want_witness=False, stop_on_infeasible=False
    ):
        if ok:
            feasible.append(mask)
    return CoefficientReport(
        ps,
        descriptor,
        realized=len(feasible),
        total_masks=1 << n,
        feasible_masks=tuple(feasible) if include_masks else None,
    )


def vc_lower_bound_on(
    ps: PointSet,
    descriptor: ClassDescriptor,
    jobs: int = 1,
    cap: int = DEFAULT_MASK_CAP,
) -> VcLowerBound:
    """Largest shattered subset of ps, by projecting the feasible mask set.

    Every mask is decided once (with witnesses); a candidate subset T is
    shattered iff the feasible masks restricted to T hit all 2^|T| patterns,
    and the stored witnesses transfer because a concept's trace on T is its
    trace on ps intersected with T.
    """
    n = len(ps)
    _check_cap(n, cap)
    masks = list(range(1 << n))
    witness_by_mask: Dict[int, CarveWitness] = {}
    feasible: List[int] = []
    for mask, ok, w in _scan_masks(
        ps, descriptor, masks, jobs, want_witness=True, stop_on_infeasible=False
    ):
        if ok:
            feasible.append(mask)
            witness_by_mask[mask] = w
    feasible.sort()
    for k in range(n, 0, -1):
        for combo in combinations(range(n), k):
            tmask = 0
            for i in combo:
                tmask |= 1 << i
            patterns: Dict[int, int] = {}
            for m in feasible:
                patterns.setdefault(m & tmask, m)
            if len(patterns) != 1 << k:
                continue
            subset = ps.restrict(combo)
            from .carve import _trace_mask

            local_witnesses = []
            for local in range(1 << k):
                pattern = 0
                for bit, i in enumerate(combo):
                    if local >> bit & 1:
                        pattern |= 1 << i
                source = witness_by_mask[patterns[pattern]]
                local_trace = _trace_mask(source.concept, subset)
                if local_trace != local:
                    raise DomainError(
                        "internal error: projected witness trace mismatch"
                    )
                local_witnesses.append(
                    CarveWitness(descriptor, local, source.concept)
                )
            cert = ShatteringCertificate(subset, descriptor, tuple(local_witnesses))
            return VcLowerBound(
                ps,
                descriptor,
                size=k,
                indices=combo,
                subset=subset,
                certificate=cert,
                realized=len(feasible),
            )
    # k = 0: the empty set is always shattered (some concept misses ps,
    # e.g. the empty trace is feasible for every class here); report size 0.
    return VcLowerBound(
        ps,
        descriptor,
        size=0,
        indices=(),
        subset=None,
        certificate=None,
        realized=len(feasible),
    )


def sauer_shelah_bound(vc: int, n: int) -> Fraction:
    """Exact rational (E_UPPER * n / vc) ** vc, valid for n >= vc >= 1."""
    if not isinstance(vc, int) or not isinstance(n, int):
        raise DomainError("vc and n must be integers")
    if vc < 1 or n < vc:
        raise DomainError("growth bound requires n >= vc >= 1")
    return (E_UPPER * n / vc) ** vc
