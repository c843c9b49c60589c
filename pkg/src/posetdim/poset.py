"""Finite posets as dense relation matrices, plus the constructions used
throughout the toolkit: Boolean lattices, multiset grids, standard examples,
products, induced subposets, linear extensions, and block isomorphisms.

Conventions pinned here and relied on by file formats and realizer transport:

* elements are ``0..n-1``; ``leq[x, y]`` is True iff ``x <= y`` in the poset;
* Boolean lattice: subset ``S`` of ``{1..n}`` has index ``sum(2**(i-1) for i in S)``;
* multiset grid: vector ``v`` in ``{0..m-1}**n`` has index ``sum(v[i]*m**i)``
  (coordinate 1 is the least significant digit);
* product: pair ``(p, q)`` has index ``p * |Q| + q``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadParameter,
    BadPartition,
    CycleDetected,
    IndexOutOfRange,
    SizeCap,
    SizeMismatch,
)

#: Hard cap on ground-set size; keeps every leq matrix byte-addressable and
#: the exhaustive pair scans tractable.
MAX_ELEMENTS = 8192


class Relation(enum.Enum):
    """How two elements of a poset compare."""

    EQUAL = "equal"
    LESS = "less"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Poset:
    """Immutable finite poset on ``0..n-1`` with a dense relation matrix."""

    n: int
    leq: np.ndarray            # (n, n) bool, read-only
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise BadParameter(f"poset needs at least one element, got n={self.n}")
        if self.n > MAX_ELEMENTS:
            raise SizeCap(f"n={self.n} exceeds the cap of {MAX_ELEMENTS} elements")
        if self.leq.shape != (self.n, self.n) or self.leq.dtype != np.bool_:
            raise BadParameter("leq must be an (n, n) bool matrix")
        if len(self.labels) != self.n:
            raise BadParameter("labels must have one entry per element")

    def check_axioms(self) -> None:
        """Raise unless leq is reflexive, antisymmetric, and transitive.

        Constructors in this module produce valid matrices by construction;
        this is a debugging aid used by the test suite.
        """
        if not self.leq.diagonal().all():
            raise BadParameter("relation is not reflexive")
        sym = self.leq & self.leq.T
        np.fill_diagonal(sym, False)
        if sym.any():
            raise BadParameter("relation is not antisymmetric")
        reach = (self.leq.astype(np.uint8) @ self.leq.astype(np.uint8)) > 0
        if (reach & ~self.leq).any():
            raise BadParameter("relation is not transitive")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return (
            self.n == other.n
            and self.labels == other.labels
            and np.array_equal(self.leq, other.leq)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Poset(n={self.n})"

    def _check_index(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= x < self.n:
                raise IndexOutOfRange(f"element index {x} not in 0..{self.n - 1}")


def _make(leq: np.ndarray, labels: list[str] | tuple[str, ...]) -> Poset:
    return Poset(n=leq.shape[0], leq=_freeze(leq), labels=tuple(labels))


def _default_labels(n: int) -> list[str]:
    return [str(i) for i in range(n)]


# ---------------------------------------------------------------------------
# constructors


def from_relation_pairs(
    n: int,
    labels: list[str] | None,
    pairs: list[tuple[int, int]],
    mode: str = "covers",
) -> Poset:
    """Build a poset from relation pairs ``i <= j`` by reflexive-transitive
    closure.

    Both modes accept arbitrary relation pairs and closure identically; the
    ``mode`` tag only records how the input was meant.  A directed cycle
    through two or more distinct elements is rejected rather than quotiented.
    """
    if mode not in ("covers", "relation"):
        raise BadParameter(f"unknown closure mode {mode!r}")
    if n < 1:
        raise BadParameter(f"n must be positive, got {n}")
    if n > MAX_ELEMENTS:
        raise SizeCap(f"n={n} exceeds the cap of {MAX_ELEMENTS} elements")
    if labels is None:
        labels = _default_labels(n)
    if len(labels) != n:
        raise BadParameter("labels must have one entry per element")

    adj: list[set[int]] = [set() for _ in range(n)]
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"pair ({i}, {j}) out of range for n={n}")
        if i != j:
            adj[i].add(j)

    # Kahn's algorithm: a leftover node means a directed cycle.
    indeg = [0] * n
    for i in range(n):
        for j in adj[i]:
            indeg[j] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    topo: list[int] = []
    while stack:
        v = stack.pop()
        topo.append(v)
        for w in adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if len(topo) != n:
        raise CycleDetected("relation pairs contain a directed cycle")

    # Descendant bitsets, computed in reverse topological order.
    reach = [0] * n
    for v in reversed(topo):
        bits = 1 << v
        for w in adj[v]:
            bits |= reach[w]
        reach[v] = bits

    nbytes = (n + 7) // 8
    rows = np.frombuffer(
        b"".join(reach[v].to_bytes(nbytes, "little") for v in range(n)),
        dtype=np.uint8,
    ).reshape(n, nbytes)
    leq = np.unpackbits(rows, axis=1, bitorder="little")[:, :n].astype(bool)
    return _make(leq, labels)


def boolean_lattice(n: int) -> Poset:
    """All subsets of ``{1..n}`` under inclusion, subset-as-bit-vector indexed."""
    if n < 0:
        raise BadParameter(f"n must be >= 0, got {n}")
    size = 1 << n
    if size > MAX_ELEMENTS:
        raise SizeCap(f"2**{n} = {size} exceeds the cap of {MAX_ELEMENTS}")
    idx = np.arange(size, dtype=np.uint16)
    leq = (idx[:, None] & idx[None, :]) == idx[:, None]
    labels = [
        "{" + ",".join(str(i + 1) for i in range(n) if x >> i & 1) + "}"
        for x in range(size)
    ]
    return _make(leq, labels)


def grid_coordinates(n: int, m: int) -> np.ndarray:
    """(m**n, n) array of grid vectors under the mixed-radix encoding."""
    idx = np.arange(m**n)
    return np.stack([(idx // m**i) % m for i in range(n)], axis=1)


def multiset_grid(n: int, m: int) -> Poset:
    """Vectors in ``{0..m-1}**n`` under the coordinatewise order."""
    if n < 1 or m < 1:
        raise BadParameter(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    size = m**n
    if size > MAX_ELEMENTS:
        raise SizeCap(f"{m}**{n} = {size} exceeds the cap of {MAX_ELEMENTS}")
    coords = grid_coordinates(n, m)
    leq = np.ones((size, size), dtype=bool)
    for i in range(n):
        c = coords[:, i]
        leq &= c[:, None] <= c[None, :]
    labels = ["(" + ",".join(str(v) for v in row) + ")" for row in coords]
    return _make(leq, labels)


def standard_example(n: int) -> Poset:
    """Singletons below co-singletons: ``{i} < complement({j})`` iff ``i != j``.

    Elements 0..n-1 are the singletons, n..2n-1 the co-singletons.  For n=2
    the four elements stay distinct even though the underlying sets coincide.
    """
    if n < 2:
        raise BadParameter(f"standard example needs n >= 2, got {n}")
    size = 2 * n
    if size > MAX_ELEMENTS:
        raise SizeCap(f"2*{n} = {size} exceeds the cap of {MAX_ELEMENTS}")
    leq = np.eye(size, dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j:
                leq[i, n + j] = True
    labels = [f"{{{i + 1}}}" for i in range(n)] + [f"~{{{j + 1}}}" for j in range(n)]
    return _make(leq, labels)


def chain(k: int) -> Poset:
    """Total order on k elements, 0 at the bottom."""
    if k < 1:
        raise BadParameter(f"chain needs k >= 1, got {k}")
    if k > MAX_ELEMENTS:
        raise SizeCap(f"k={k} exceeds the cap of {MAX_ELEMENTS}")
    idx = np.arange(k)
    leq = idx[:, None] <= idx[None, :]
    return _make(leq, _default_labels(k))


def antichain(k: int) -> Poset:
    """k pairwise-incomparable elements."""
    if k < 1:
        raise BadParameter(f"antichain needs k >= 1, got {k}")
    if k > MAX_ELEMENTS:
        raise SizeCap(f"k={k} exceeds the cap of {MAX_ELEMENTS}")
    return _make(np.eye(k, dtype=bool), _default_labels(k))


@dataclass(frozen=True)
class ProductPairing:
    """Bijection between product indices and factor index pairs."""

    p_size: int
    q_size: int

    def index(self, p: int, q: int) -> int:
        return p * self.q_size + q

    def split(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.q_size)


def product(p: Poset, q: Poset) -> tuple[Poset, ProductPairing]:
    """Componentwise-order product; pair ``(a, b)`` gets index ``a*|Q| + b``."""
    size = p.n * q.n
    if size > MAX_ELEMENTS:
        raise SizeCap(f"{p.n}*{q.n} = {size} exceeds the cap of {MAX_ELEMENTS}")
    leq = np.kron(p.leq, q.leq).astype(bool)
    labels = [f"({pl},{ql})" for pl in p.labels for ql in q.labels]
    return _make(leq, labels), ProductPairing(p.n, q.n)


def subposet(p: Poset, keep: list[int] | set[int]) -> Poset:
    """Induced subposet on ``keep``, reindexed in ascending original order."""
    kept = sorted(set(keep))
    if not kept:
        raise BadParameter("keep set must be nonempty")
    p._check_index(*kept)
    sel = np.asarray(kept)
    leq = p.leq[np.ix_(sel, sel)].copy()
    labels = [p.labels[i] for i in kept]
    return _make(leq, labels)


def relation(p: Poset, x: int, y: int) -> Relation:
    """Classify the pair (x, y) as Equal/Less/Greater/Incomparable."""
    p._check_index(x, y)
    below, above = bool(p.leq[x, y]), bool(p.leq[y, x])
    if below and above:
        return Relation.EQUAL
    if below:
        return Relation.LESS
    if above:
        return Relation.GREATER
    return Relation.INCOMPARABLE


# ---------------------------------------------------------------------------
# linear orders and extensions


@dataclass(frozen=True, eq=False)
class LinearOrder:
    """Total order on ``0..n-1`` stored as a rank function (0 = least)."""

    rank: np.ndarray  # (n,) int64, a bijection onto 0..n-1

    def __post_init__(self) -> None:
        r = np.asarray(self.rank)
        if r.ndim != 1 or not np.array_equal(np.sort(r), np.arange(len(r))):
            raise BadParameter("rank must be a bijection onto 0..n-1")
        object.__setattr__(self, "rank", _freeze(r.astype(np.int64)))

    @property
    def n(self) -> int:
        return len(self.rank)

    @classmethod
    def from_sequence(cls, seq: list[int] | np.ndarray) -> "LinearOrder":
        """Build from the element sequence listed least to greatest."""
        seq = np.asarray(seq)
        rank = np.empty(len(seq), dtype=np.int64)
        rank[seq] = np.arange(len(seq))
        return cls(rank=rank)

    def sequence(self) -> np.ndarray:
        """Element indices listed least to greatest."""
        seq = np.empty(self.n, dtype=np.int64)
        seq[self.rank] = np.arange(self.n)
        return seq

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearOrder):
            return NotImplemented
        return np.array_equal(self.rank, other.rank)

    __hash__ = None  # type: ignore[assignment]


def some_linear_extension(p: Poset) -> LinearOrder:
    """Deterministic linear extension: repeatedly remove the smallest-index
    minimal element."""
    n = p.n
    strict = p.leq.copy()
    np.fill_diagonal(strict, False)
    indeg = strict.sum(axis=0).astype(np.int64)
    alive = np.ones(n, dtype=bool)
    rank = np.empty(n, dtype=np.int64)
    for pos in range(n):
        x = int(np.flatnonzero(alive & (indeg == 0))[0])
        rank[x] = pos
        alive[x] = False
        indeg -= strict[x]
    return LinearOrder(rank=rank)


def linear_extensions(
    p: Poset, limit: int | None = None
) -> tuple[list[LinearOrder], bool]:
    """Enumerate all linear extensions by backtracking over minimal elements.

    Candidates are taken in ascending index order at every level, so the
    output order is deterministic (and starts with some_linear_extension's
    result).  Returns (extensions, truncated); truncated is True when `limit`
    cut the enumeration short.  Intended for small posets.
    """
    n = p.n
    strict = p.leq & ~np.eye(n, dtype=bool)
    preds = [set(np.flatnonzero(strict[:, v])) for v in range(n)]
    cap = None if limit is None else limit + 1  # one extra to detect truncation
    out: list[LinearOrder] = []
    placed: list[int] = []
    done: set[int] = set()

    def walk() -> bool:
        if len(placed) == n:
            out.append(LinearOrder.from_sequence(list(placed)))
            return cap is None or len(out) < cap
        for v in range(n):
            if v in done or not preds[v] <= done:
                continue
            placed.append(v)
            done.add(v)
            keep_going = walk()
            placed.pop()
            done.remove(v)
            if not keep_going:
                return False
        return True

    walk()
    truncated = cap is not None and len(out) == cap
    if truncated:
        out.pop()
    return out, truncated


def is_linear_extension(p: Poset, order: LinearOrder) -> bool:
    """True iff ``x < y`` in the poset implies ``rank(x) < rank(y)``."""
    if order.n != p.n:
        raise SizeMismatch(f"order on {order.n} elements vs poset on {p.n}")
    strict = p.leq & ~np.eye(p.n, dtype=bool)
    violation = strict & (order.rank[:, None] > order.rank[None, :])
    return not violation.any()


# ---------------------------------------------------------------------------
# isomorphisms


@dataclass(frozen=True, eq=False)
class Isomorphism:
    """Index bijection between two posets, stored as the forward map."""

    source: Poset
    target: Poset
    forward: np.ndarray = field()  # target_index = forward[source_index]

    def __post_init__(self) -> None:
        f = np.asarray(self.forward, dtype=np.int64)
        if self.source.n != self.target.n:
            raise SizeMismatch("source and target have different sizes")
        if not np.array_equal(np.sort(f), np.arange(self.source.n)):
            raise BadParameter("forward map must be a bijection")
        object.__setattr__(self, "forward", _freeze(f))

    def apply(self, x: int) -> int:
        return int(self.forward[x])

    def inverse(self) -> "Isomorphism":
        inv = np.empty_like(self.forward)
        inv[self.forward] = np.arange(len(self.forward))
        return Isomorphism(source=self.target, target=self.source, forward=inv)

    def is_order_preserving(self) -> bool:
        """Full pair scan: leq agrees through the map in both directions."""
        f = self.forward
        return np.array_equal(self.source.leq, self.target.leq[f[:, None], f[None, :]])


def block_decomposition_iso(n: int, block_sizes: list[int]) -> Isomorphism:
    """Isomorphism from the order-n Boolean lattice onto the left-nested
    product of Boolean lattices over consecutive coordinate blocks.

    Block 1 covers coordinates 1..b1, block 2 the next b2 coordinates, and so
    on; within a block the local subset encoding applies.  The nested product
    index folds left: ``idx = (..(s1 * 2**b2 + s2) * 2**b3 + s3 ..)``.
    """
    if n < 1:
        raise BadPartition(f"n must be >= 1, got {n}")
    if any(b < 1 for b in block_sizes) or sum(block_sizes) != n:
        raise BadPartition(f"blocks {block_sizes} do not partition {n} coordinates")
    size = 1 << n
    if size > MAX_ELEMENTS:
        raise SizeCap(f"2**{n} = {size} exceeds the cap of {MAX_ELEMENTS}")

    idx = np.arange(size, dtype=np.int64)
    offsets = np.cumsum([0] + list(block_sizes[:-1]))
    forward = np.zeros(size, dtype=np.int64)
    for b, off in zip(block_sizes, offsets):
        forward = (forward << b) | ((idx >> int(off)) & ((1 << b) - 1))

    target = boolean_lattice(block_sizes[0])
    for b in block_sizes[1:]:
        target, _ = product(target, boolean_lattice(b))
    return Isomorphism(source=boolean_lattice(n), target=target, forward=forward)


def strict_cover_pairs(p: Poset) -> list[tuple[int, int]]:
    """Transitive-reduction edges (x, y) with x covered by y, ascending."""
    strict = p.leq & ~np.eye(p.n, dtype=bool)
    if p.n > 512:
        two_step = (strict.astype(np.float32) @ strict.astype(np.float32)) > 0
    else:
        two_step = (strict.astype(np.uint8) @ strict.astype(np.uint8)) > 0
    covers = strict & ~two_step
    return [(int(x), int(y)) for x, y in np.argwhere(covers)]
