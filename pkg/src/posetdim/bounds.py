"""Counting lower bounds for Boolean dimension.

The machinery: a distinguishing set D, per-element signatures counting the
D-members strictly below each element in every order, and the capacity
inequality (|D|+1)**d >= |P| that any realizer must satisfy.  All threshold
decisions are made with exact integer power comparisons; floating-point
values are reported for display only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, IndexOutOfRange, NotDistinguishing, SizeMismatch
from .poset import LinearOrder, Poset


@dataclass(frozen=True)
class BoundReport:
    """A raw log-ratio bound plus the exact smallest integer satisfying it."""

    raw: float          # natural-log ratio; base-invariant
    integer_bound: int  # smallest d consistent with the bound, decided exactly
    formula: str        # provenance tag


@dataclass(frozen=True)
class DistinguishingCheck:
    ok: bool
    failing_pair: tuple[int, int] | None = None


def singletons_of_grid(n: int, m: int) -> list[int]:
    """Indices of grid elements with exactly one nonzero coordinate,
    ascending; there are n*(m-1) of them."""
    if n < 1 or m < 1:
        raise BadParameter(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    return sorted(v * m**i for i in range(n) for v in range(1, m))


def _row_classes(rows: np.ndarray) -> dict[bytes, list[int]]:
    """Group row indices of a 2-D array by row content."""
    rows = np.ascontiguousarray(rows)
    classes: dict[bytes, list[int]] = {}
    for x in range(rows.shape[0]):
        classes.setdefault(rows[x].tobytes(), []).append(x)
    return classes


def _first_collision(rows: np.ndarray) -> tuple[int, int] | None:
    """First pair of equal rows in ascending (x, then y) scan order."""
    best: tuple[int, int] | None = None
    for members in _row_classes(rows).values():
        if len(members) >= 2 and (best is None or members[0] < best[0]):
            best = (members[0], members[1])
    return best


def is_distinguishing(p: Poset, d_set: list[int]) -> DistinguishingCheck:
    """Check that every pair of distinct elements relates differently to some
    member of the set (Equal counts as a relation, so members distinguish any
    pair containing them)."""
    members = sorted(set(d_set))
    for z in members:
        if not 0 <= z < p.n:
            raise IndexOutOfRange(f"index {z} not in 0..{p.n - 1}")
    if not members:
        if p.n <= 1:
            return DistinguishingCheck(ok=True)
        return DistinguishingCheck(ok=False, failing_pair=(0, 1))
    sel = np.asarray(members)
    # relation code of (z, x): 3 equal, 1 less, 2 greater, 0 incomparable
    code = p.leq[sel, :].astype(np.uint8) + 2 * p.leq[:, sel].T.astype(np.uint8)
    pair = _first_collision(code.T)
    if pair is None:
        return DistinguishingCheck(ok=True)
    return DistinguishingCheck(ok=False, failing_pair=pair)


def signature_map(orders: list[LinearOrder], d_set: list[int]) -> np.ndarray:
    """(n, d) matrix of signatures: entry (a, i) counts the members of the
    set ranked strictly below element a in order i."""
    if not orders:
        raise BadParameter("need at least one order")
    n = orders[0].n
    if any(o.n != n for o in orders):
        raise SizeMismatch("orders cover different ground sets")
    members = sorted(set(d_set))
    for z in members:
        if not 0 <= z < n:
            raise IndexOutOfRange(f"index {z} not in 0..{n - 1}")
    sig = np.empty((n, len(orders)), dtype=np.int64)
    for i, o in enumerate(orders):
        d_ranks = np.sort(o.rank[members]) if members else np.empty(0, np.int64)
        sig[:, i] = np.searchsorted(d_ranks, o.rank, side="left")
    return sig


def signature_collision(sig: np.ndarray) -> tuple[int, int] | None:
    """First pair of elements sharing a signature, or None if all distinct."""
    return _first_collision(sig)


def capacity_ok(poset_size: int, d_size: int, d: int) -> bool:
    """Exact check of the counting inequality (|D|+1)**d >= |P|."""
    if poset_size < 0 or d_size < 0 or d < 0:
        raise BadParameter("counts must be nonnegative")
    return (d_size + 1) ** d >= poset_size


def _smallest_power_bound(base: int, size: int) -> int:
    """Smallest d >= 0 with base**d >= size (base >= 2 unless size <= 1)."""
    d, power = 0, 1
    while power < size:
        power *= base
        d += 1
    return d


def mn_lower_bound(n: int, m: int) -> BoundReport:
    """Realizer-size lower bound for the (n, m) grid from signature counting.

    raw = n*ln(m)/ln(n*(m-1)+1); the integer bound is the smallest d with
    (n*(m-1)+1)**d >= m**n, decided in exact integer arithmetic.  m = 1 is
    the one-element grid and yields bound 0.
    """
    if n < 1 or m < 1:
        raise BadParameter(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    tag = f"mn({n},{m})"
    if m == 1:
        return BoundReport(raw=0.0, integer_bound=0, formula=tag)
    base = n * (m - 1) + 1
    raw = n * math.log(m) / math.log(base)
    return BoundReport(
        raw=raw, integer_bound=_smallest_power_bound(base, m**n), formula=tag
    )


def lat_lower_bound(n: int) -> BoundReport:
    """Boolean-lattice specialization: raw = n/log2(n+1)."""
    report = mn_lower_bound(n, 2)
    return BoundReport(raw=report.raw, integer_bound=report.integer_bound,
                       formula=f"lat({n})")


def distinguishing_lower_bound(p: Poset, d_set: list[int]) -> BoundReport:
    """Smallest d with (|D|+1)**d >= |P|, valid whenever D distinguishes P."""
    check = is_distinguishing(p, d_set)
    if not check.ok:
        raise NotDistinguishing(
            f"set does not distinguish elements {check.failing_pair}"
        )
    members = sorted(set(d_set))
    base = len(members) + 1
    raw = 0.0 if p.n == 1 else math.log(p.n) / math.log(base)
    return BoundReport(
        raw=raw,
        integer_bound=_smallest_power_bound(base, p.n),
        formula=f"dist({len(members)})",
    )


def min_multiplicity_for_target(n: int, target: int) -> int:
    """Smallest multiplicity cap m >= 2 whose grid bound exceeds target - 1,
    decided exactly: m**n > (n*(m-1)+1)**(target-1).

    The raw bound is nondecreasing in m and approaches n, so the predicate is
    a threshold; for target = n the answer is at most n**(n-1).
    """
    if not 2 <= target <= n:
        raise BadParameter(f"need 2 <= target <= n, got target={target}, n={n}")

    def exceeds(m: int) -> bool:
        return m**n > (n * (m - 1) + 1) ** (target - 1)

    hi = 2
    while not exceeds(hi):
        hi *= 2
    lo = max(2, hi // 2)
    while lo < hi:
        mid = (lo + hi) // 2
        if exceeds(mid):
            hi = mid
        else:
            lo = mid + 1
    return hi
