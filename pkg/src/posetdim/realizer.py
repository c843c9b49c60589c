"""Boolean realizers: d linear orders plus a truth table phi that together
answer comparability queries, with an exhaustive vectorized verifier, the
canonical coordinate realizers of grids, the bundled 5-order realizer of the
order-6 Boolean lattice, product composition, and the ceil(5n/6)-order
realizer of the order-n Boolean lattice.

Tuple convention, pinned package-wide: querying (x, y) produces the bit
vector eps with ``eps[i] = [rank_i(x) <= rank_i(y)]`` (non-strict), and the
truth-table index of eps is ``sum(eps[i] << i)`` — coordinate 1 is the least
significant bit.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import b6_data
from .errors import BadArity, NotAnExtension, PreconditionFailed, SizeCap, SizeMismatch
from .poset import (
    MAX_ELEMENTS,
    Isomorphism,
    LinearOrder,
    Poset,
    _freeze,
    block_decomposition_iso,
    boolean_lattice,
    grid_coordinates,
    is_linear_extension,
    multiset_grid,
    product,
    some_linear_extension,
)

#: Verification modes.  The default additionally requires phi(1,...,1) = 1,
#: i.e. reflexive queries answer "yes"; the alternative quantifies over
#: distinct pairs only and leaves phi on the all-ones tuple unconstrained.
REFLEXIVE_INCLUSIVE = "reflexive_inclusive"
DISTINCT_ONLY = "distinct_only"
MODES = (REFLEXIVE_INCLUSIVE, DISTINCT_ONLY)

MAX_ARITY = 16

_CHUNK_CELLS = 1 << 22  # target cells per row-chunk in the pair scan


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown verification mode {mode!r}")


@dataclass(frozen=True, eq=False)
class TruthTable:
    """Boolean function on d-bit tuples, stored as 2**d explicit bits."""

    arity: int
    bits: np.ndarray  # (2**arity,) uint8 in {0, 1}

    def __post_init__(self) -> None:
        if not 0 <= self.arity <= MAX_ARITY:
            raise BadArity(f"arity must be in 0..{MAX_ARITY}, got {self.arity}")
        b = np.asarray(self.bits, dtype=np.uint8)
        if b.shape != (1 << self.arity,) or not np.isin(b, (0, 1)).all():
            raise BadArity(f"need {1 << self.arity} bits of 0/1")
        object.__setattr__(self, "bits", _freeze(b))

    def value_at(self, index: int) -> bool:
        return bool(self.bits[index])

    def __call__(self, eps: tuple[int, ...]) -> bool:
        return self.value_at(tuple_index(eps))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.arity == other.arity and np.array_equal(self.bits, other.bits)

    __hash__ = None  # type: ignore[assignment]


def tuple_index(eps: tuple[int, ...]) -> int:
    """Truth-table index of a query tuple (coordinate 1 least significant)."""
    return sum(bit << i for i, bit in enumerate(eps))


def and_function(d: int) -> TruthTable:
    """phi that is 1 exactly on the all-ones tuple."""
    if not 1 <= d <= MAX_ARITY:
        raise BadArity(f"d must be in 1..{MAX_ARITY}, got {d}")
    bits = np.zeros(1 << d, dtype=np.uint8)
    bits[-1] = 1
    return TruthTable(arity=d, bits=bits)


def threshold_at_most_one_zero(d: int) -> TruthTable:
    """phi that is 1 iff at most one input bit is 0 (popcount >= d-1)."""
    if not 1 <= d <= MAX_ARITY:
        raise BadArity(f"d must be in 1..{MAX_ARITY}, got {d}")
    bits = np.array([bin(j).count("1") >= d - 1 for j in range(1 << d)], dtype=np.uint8)
    return TruthTable(arity=d, bits=bits)


@dataclass(frozen=True, eq=False)
class BooleanRealizer:
    """d linear orders over one ground set plus a truth table of arity d."""

    n: int
    orders: tuple[LinearOrder, ...]
    phi: TruthTable

    def __post_init__(self) -> None:
        if any(o.n != self.n for o in self.orders):
            raise SizeMismatch("all orders must cover the same ground set")
        if self.phi.arity != len(self.orders):
            raise BadArity(
                f"phi arity {self.phi.arity} != order count {len(self.orders)}"
            )

    @property
    def d(self) -> int:
        return len(self.orders)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BooleanRealizer):
            return NotImplemented
        return (
            self.n == other.n
            and self.orders == other.orders
            and self.phi == other.phi
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"BooleanRealizer(n={self.n}, d={self.d})"


@dataclass(frozen=True)
class Counterexample:
    x: int
    y: int
    query: tuple[int, ...]
    expected: bool
    got: bool


@dataclass(frozen=True)
class VerifyOutcome:
    ok: bool
    pairs_checked: int
    counterexample: Counterexample | None = None


def query_tuple(r: BooleanRealizer, x: int, y: int) -> tuple[int, ...]:
    """The d comparison bits ``[rank_i(x) <= rank_i(y)]``."""
    if not (0 <= x < r.n and 0 <= y < r.n):
        raise SizeMismatch(f"indices ({x}, {y}) out of range for n={r.n}")
    return tuple(int(o.rank[x] <= o.rank[y]) for o in r.orders)


def evaluate(r: BooleanRealizer, x: int, y: int) -> bool:
    """phi applied to the query tuple of (x, y)."""
    return r.phi(query_tuple(r, x, y))


def _tuple_index_block(r: BooleanRealizer, rows: slice) -> np.ndarray:
    """(rows, n) uint16 matrix of truth-table indices for the row block."""
    n = r.n
    t = np.zeros((rows.stop - rows.start, n), dtype=np.uint16)
    for i, o in enumerate(r.orders):
        t |= (o.rank[rows, None] <= o.rank[None, :]).astype(np.uint16) << i
    return t


def verify(
    p: Poset,
    r: BooleanRealizer,
    mode: str = REFLEXIVE_INCLUSIVE,
    threads: int = 1,
) -> VerifyOutcome:
    """Exhaustively check ``phi(query(x, y)) == leq[x, y]`` over all ordered
    pairs.

    In reflexive_inclusive mode the diagonal is part of the scan, which is
    exactly the requirement phi(1,...,1) = 1; distinct_only skips it.  The
    reported counterexample is the first in ascending (x, then y) order, no
    matter how the scan is chunked or threaded.
    """
    _check_mode(mode)
    if r.n != p.n:
        raise SizeMismatch(f"realizer on {r.n} elements vs poset on {p.n}")
    n = p.n
    rows_per_chunk = max(1, _CHUNK_CELLS // n)
    chunks = [slice(s, min(s + rows_per_chunk, n)) for s in range(0, n, rows_per_chunk)]
    phi_bits = r.phi.bits

    def scan(rows: slice) -> int | None:
        got = phi_bits[_tuple_index_block(r, rows)].astype(bool)
        diff = got != p.leq[rows]
        if mode == DISTINCT_ONLY:
            d = np.arange(rows.start, rows.stop)
            diff[d - rows.start, d] = False
        hits = np.flatnonzero(diff.ravel())
        if hits.size == 0:
            return None
        return rows.start * n + int(hits[0])

    first: int | None = None
    if threads <= 1:
        for rows in chunks:
            first = scan(rows)
            if first is not None:
                break
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            candidates = [c for c in pool.map(scan, chunks) if c is not None]
        first = min(candidates) if candidates else None

    pairs = n * (n - 1)
    if first is None:
        return VerifyOutcome(ok=True, pairs_checked=pairs)
    x, y = divmod(first, n)
    q = query_tuple(r, x, y)
    return VerifyOutcome(
        ok=False,
        pairs_checked=pairs,
        counterexample=Counterexample(
            x=x, y=y, query=q, expected=bool(p.leq[x, y]), got=r.phi(q)
        ),
    )


# ---------------------------------------------------------------------------
# builders


def from_extensions(p: Poset, extensions: list[LinearOrder]) -> BooleanRealizer:
    """Realizer with phi = AND over the given linear extensions.

    Verifies against p exactly when the extensions' intersection is p.
    """
    for order in extensions:
        if not is_linear_extension(p, order):
            raise NotAnExtension("an order does not extend the poset relation")
    d = len(extensions)
    phi = and_function(d) if d else TruthTable(arity=0, bits=np.array([1], np.uint8))
    return BooleanRealizer(n=p.n, orders=tuple(extensions), phi=phi)


def canonical_grid_realizer(n: int, m: int) -> BooleanRealizer:
    """n coordinate orders on the (n, m) grid with phi = AND.

    Order i sorts by coordinate i ascending, breaking ties by the full
    coordinate vector ascending lexicographically (coordinate 1 first).
    """
    grid = multiset_grid(n, m)  # validates parameters and the size cap
    coords = grid_coordinates(n, m)
    orders = []
    for i in range(n):
        keys = tuple(coords[:, j] for j in reversed(range(n))) + (coords[:, i],)
        seq = np.lexsort(keys)
        orders.append(LinearOrder.from_sequence(seq))
    return BooleanRealizer(n=grid.n, orders=tuple(orders), phi=and_function(n))


def b6_realizer() -> BooleanRealizer:
    """The bundled 5-order realizer of the 64-element Boolean lattice,
    with phi = at-most-one-zero on 5 bits."""
    orders = tuple(
        LinearOrder.from_sequence(list(seq)) for seq in b6_data.B6_ORDER_SEQUENCES
    )
    return BooleanRealizer(n=64, orders=orders, phi=threshold_at_most_one_zero(5))


def compose_product(
    p: Poset,
    q: Poset,
    r_p: BooleanRealizer,
    r_q: BooleanRealizer,
    check_inputs: bool = False,
) -> BooleanRealizer:
    """Realizer of product(p, q) with d = r_p.d + r_q.d orders.

    The first s orders sort pairs by the corresponding p-order, breaking ties
    with the pinned linear extension of q; the remaining t orders do the
    symmetric thing.  The combined phi is the conjunction phi_p AND phi_q with
    the p bits in tuple positions 1..s.  Correctness needs both inputs to
    verify in reflexive_inclusive mode (in particular phi(all-ones) = 1);
    pass check_inputs=True to enforce that up front.
    """
    if r_p.n != p.n or r_q.n != q.n:
        raise SizeMismatch("realizer ground sets must match the factor posets")
    if p.n * q.n > MAX_ELEMENTS:
        raise SizeCap(f"{p.n}*{q.n} exceeds the cap of {MAX_ELEMENTS}")
    if check_inputs:
        for poset_, rlz, tag in ((p, r_p, "P"), (q, r_q, "Q")):
            outcome = verify(poset_, rlz, REFLEXIVE_INCLUSIVE)
            if not outcome.ok:
                raise PreconditionFailed(f"input realizer for {tag} fails verification")

    if p.n == 1:
        return BooleanRealizer(n=q.n, orders=r_q.orders, phi=r_q.phi)
    if q.n == 1:
        return BooleanRealizer(n=p.n, orders=r_p.orders, phi=r_p.phi)

    ext_p = some_linear_extension(p).rank
    ext_q = some_linear_extension(q).rank
    idx = np.arange(p.n * q.n)
    pp, qq = idx // q.n, idx % q.n

    orders = [
        LinearOrder(rank=o.rank[pp] * q.n + ext_q[qq]) for o in r_p.orders
    ] + [
        LinearOrder(rank=o.rank[qq] * p.n + ext_p[pp]) for o in r_q.orders
    ]
    phi_bits = np.kron(r_q.phi.bits, r_p.phi.bits)
    phi = TruthTable(arity=r_p.d + r_q.d, bits=phi_bits)
    return BooleanRealizer(n=p.n * q.n, orders=tuple(orders), phi=phi)


def transport(r: BooleanRealizer, iso: Isomorphism) -> BooleanRealizer:
    """Relabel a realizer through an isomorphism (source must be r's ground
    set); verification status carries over."""
    if iso.source.n != r.n:
        raise SizeMismatch(f"iso source has {iso.source.n} elements, realizer {r.n}")
    orders = []
    for o in r.orders:
        rank = np.empty_like(o.rank)
        rank[iso.forward] = o.rank
        orders.append(LinearOrder(rank=rank))
    return BooleanRealizer(n=r.n, orders=tuple(orders), phi=r.phi)


def upper_bound_realizer(n: int) -> BooleanRealizer:
    """A ceil(5n/6)-order realizer of the order-n Boolean lattice.

    For n >= 6, write n = 6k + r and compose k copies of the bundled 5-order
    realizer with the canonical r-order realizer (dropping the factor when
    r = 0), then transport the result through the block-decomposition
    isomorphism.  For n < 6 the canonical n-order realizer already meets the
    ceil(5n/6) = n budget.
    """
    if n < 0:
        raise SizeCap(f"n must be >= 0, got {n}")
    if (1 << n) > MAX_ELEMENTS:
        raise SizeCap(f"2**{n} exceeds the cap of {MAX_ELEMENTS}")
    if n == 0:
        return BooleanRealizer(
            n=1, orders=(), phi=TruthTable(arity=0, bits=np.array([1], np.uint8))
        )
    if n < 6:
        return canonical_grid_realizer(n, 2)

    k, r = divmod(n, 6)
    blocks = [6] * k + ([r] if r else [])
    factors = [(boolean_lattice(6), b6_realizer()) for _ in range(k)]
    if r:
        # The (r, 2) grid has the same relation matrix as the order-r lattice.
        factors.append((boolean_lattice(r), canonical_grid_realizer(r, 2)))

    cur_poset, cur = factors[0]
    for nxt_poset, nxt in factors[1:]:
        cur = compose_product(cur_poset, nxt_poset, cur, nxt)
        cur_poset, _ = product(cur_poset, nxt_poset)
    iso = block_decomposition_iso(n, blocks)
    return transport(cur, iso.inverse())
