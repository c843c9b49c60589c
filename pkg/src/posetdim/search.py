"""Exact dimension and Boolean dimension by brute force on small posets.

The key reduction: for a fixed tuple of linear orders, a suitable phi exists
iff every query-tuple class of ordered pairs needs a uniform answer, so phi
is never enumerated.  Ordered pairs are packed into per-order "x before y"
bitmasks, which makes the class checks a handful of big-integer operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations

import numpy as np

from .errors import GuardExceeded
from .poset import LinearOrder, Poset, linear_extensions
from .realizer import (
    REFLEXIVE_INCLUSIVE,
    BooleanRealizer,
    TruthTable,
    _check_mode,
    verify,
)

MAX_DIM_ELEMENTS = 10
MAX_DIM_EXTENSIONS = 2000
MAX_BDIM_ELEMENTS = 5
MAX_BDIM_D = 3


@dataclass(frozen=True)
class Inconsistent:
    """Two ordered pairs sharing a query tuple but needing different answers.

    pair_a is the first pair that established the class answer ((0, 0) when
    the answer was forced by the reflexive requirement), pair_b the first
    pair conflicting with it.
    """

    pair_a: tuple[int, int]
    pair_b: tuple[int, int]


def _before_mask(rank: np.ndarray, n: int) -> int:
    """Bitmask over ordered pairs: bit x*n + y set iff rank[x] < rank[y]."""
    bits = (rank[:, None] < rank[None, :]).ravel()
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _leq_masks(p: Poset) -> tuple[int, int]:
    """(comparable-pair answers, all off-diagonal pairs) as bitmasks."""
    n = p.n
    off_diag = ~np.eye(n, dtype=bool)
    ones = (p.leq & off_diag).ravel()
    univ = off_diag.ravel()
    return (
        int.from_bytes(np.packbits(ones, bitorder="little").tobytes(), "little"),
        int.from_bytes(np.packbits(univ, bitorder="little").tobytes(), "little"),
    )


def _consistent_phi(
    masks: tuple[int, ...], answers: int, universe: int, d: int, reflexive: bool
) -> list[int] | None:
    """Truth-table bits if the tuple classes are answer-uniform, else None.

    masks[i] holds the before-bits of order i over all ordered pairs;
    answers/universe come from _leq_masks.  Unconstrained tuples default to 0.
    """
    bits = [0] * (1 << d)
    for t in range(1 << d):
        cls = universe
        for i in range(d):
            cls &= masks[i] if (t >> i) & 1 else ~masks[i]
        req1 = cls & answers
        if req1 and req1 != cls:
            return None
        if t == (1 << d) - 1 and reflexive:
            if cls and not req1:
                return None
            bits[t] = 1
        elif req1:
            bits[t] = 1
    return bits


def _first_pair_bit(mask: int, n: int) -> tuple[int, int]:
    k = (mask & -mask).bit_length() - 1
    return divmod(k, n)


def phi_consistent(
    p: Poset, orders: list[LinearOrder], mode: str = REFLEXIVE_INCLUSIVE
) -> TruthTable | Inconsistent:
    """Decide whether some phi turns the given orders into a realizer of p.

    Ordered pairs are grouped by query tuple; each class must need a uniform
    answer.  Unconstrained tuples default to 0, and in reflexive_inclusive
    mode the all-ones tuple is additionally required to be 1.
    """
    _check_mode(mode)
    n = p.n
    d = len(orders)
    reflexive = mode == REFLEXIVE_INCLUSIVE
    masks = tuple(_before_mask(o.rank, n) for o in orders)
    answers, universe = _leq_masks(p)
    bits = _consistent_phi(masks, answers, universe, d, reflexive)
    if bits is not None:
        return TruthTable(arity=d, bits=np.array(bits, dtype=np.uint8))

    # Reconstruct the first conflicting class for the report.
    for t in range(1 << d):
        cls = universe
        for i in range(d):
            cls &= masks[i] if (t >> i) & 1 else ~masks[i]
        req1, req0 = cls & answers, cls & ~answers
        if t == (1 << d) - 1 and reflexive and req0:
            # The all-ones answer is forced to 1 by the diagonal.
            return Inconsistent(pair_a=(0, 0), pair_b=_first_pair_bit(req0, n))
        if req1 and req0:
            lowest = cls & -cls
            a = _first_pair_bit(cls, n)
            b = _first_pair_bit(req0 if lowest & req1 else req1, n)
            return Inconsistent(pair_a=a, pair_b=b)
    raise AssertionError("inconsistency vanished on second pass")


def exact_dim(
    p: Poset,
    d_max: int | None = None,
    max_elements: int | None = MAX_DIM_ELEMENTS,
    max_extensions: int | None = MAX_DIM_EXTENSIONS,
) -> tuple[int, list[LinearOrder]] | None:
    """Smallest d such that d linear extensions intersect to exactly p,
    together with a witness family; None if d_max cuts the search short.

    Enumerates all linear extensions, then subsets of increasing size.  The
    guards fail loudly on posets too big for that plan; pass None to lift.
    """
    if max_elements is not None and p.n > max_elements:
        raise GuardExceeded(f"|P| = {p.n} exceeds the {max_elements}-element guard")
    extensions, truncated = linear_extensions(p, limit=max_extensions)
    if truncated:
        raise GuardExceeded(f"more than {max_extensions} linear extensions")

    n = p.n
    answers, universe = _leq_masks(p)
    ext_masks = [_before_mask(o.rank, n) for o in extensions]
    top = len(extensions) if d_max is None else min(d_max, len(extensions))
    for d in range(1, top + 1):
        for combo in combinations(range(len(extensions)), d):
            meet = universe
            for i in combo:
                meet &= ext_masks[i]
            if meet == answers:
                return d, [extensions[i] for i in combo]
    return None


def exact_bdim(
    p: Poset,
    d_max: int = MAX_BDIM_D,
    mode: str = REFLEXIVE_INCLUSIVE,
    max_elements: int | None = MAX_BDIM_ELEMENTS,
    max_d: int | None = MAX_BDIM_D,
) -> tuple[int, BooleanRealizer] | None:
    """Smallest d <= d_max admitting d linear orders and a phi that realize p,
    with a verified witness; None if not found.

    Orders range over all permutations of the ground set, not only linear
    extensions.  Since phi is free, order tuples are enumerated non-decreasing
    without loss of generality.
    """
    _check_mode(mode)
    if max_elements is not None and p.n > max_elements:
        raise GuardExceeded(f"|P| = {p.n} exceeds the {max_elements}-element guard")
    if max_d is not None and d_max > max_d:
        raise GuardExceeded(f"d_max = {d_max} exceeds the guard of {max_d}")

    n = p.n
    reflexive = mode == REFLEXIVE_INCLUSIVE
    answers, universe = _leq_masks(p)
    all_ranks = [np.array(perm, dtype=np.int64) for perm in permutations(range(n))]
    all_masks = [_before_mask(r, n) for r in all_ranks]

    for d in range(1, d_max + 1):
        for combo in combinations_with_replacement(range(len(all_ranks)), d):
            masks = tuple(all_masks[i] for i in combo)
            bits = _consistent_phi(masks, answers, universe, d, reflexive)
            if bits is None:
                continue
            witness = BooleanRealizer(
                n=n,
                orders=tuple(LinearOrder(rank=all_ranks[i]) for i in combo),
                phi=TruthTable(arity=d, bits=np.array(bits, dtype=np.uint8)),
            )
            outcome = verify(p, witness, mode)
            if not outcome.ok:
                raise AssertionError("exact_bdim witness failed verification")
            return d, witness
    return None
