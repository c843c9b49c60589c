"""Version-tagged text formats for posets and realizers, plus the small
grammar of named family specs used by the CLI.

Poset format (closure is recomputed on parse, so cover pairs suffice):

    poset v1
    n <count>
    label <i> <text>        # optional, defaults to the index
    mode covers|relation
    rel <i> <j>             # i <= j

Realizer format (order lines are 1-based, elements least to greatest; the
phi string lists the truth-table bit at every tuple index):

    realizer v1
    n <N>
    d <D>
    order <i>: <N element indices>
    phi <binary string of length 2**D>
"""

from __future__ import annotations

import re

import numpy as np

from .errors import ParseError, ToolkitError, UsageError
from .poset import (
    LinearOrder,
    Poset,
    antichain,
    boolean_lattice,
    chain,
    from_relation_pairs,
    multiset_grid,
    standard_example,
    strict_cover_pairs,
)
from .realizer import BooleanRealizer, TruthTable, b6_realizer


def serialize_poset(p: Poset) -> str:
    lines = ["poset v1", f"n {p.n}"]
    lines += [f"label {i} {p.labels[i]}" for i in range(p.n)]
    lines.append("mode covers")
    lines += [f"rel {x} {y}" for x, y in strict_cover_pairs(p)]
    return "\n".join(lines) + "\n"


def parse_poset(text: str) -> Poset:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or lines[0] != "poset v1":
        raise ParseError("expected 'poset v1' header")
    n: int | None = None
    labels: list[str] | None = None
    mode: str | None = None
    pairs: list[tuple[int, int]] = []
    try:
        for ln in lines[1:]:
            key, _, rest = ln.partition(" ")
            if key == "n":
                n = int(rest)
                labels = [str(i) for i in range(n)]
            elif key == "label":
                if labels is None:
                    raise ParseError("label line before n line")
                idx_text, _, label = rest.partition(" ")
                idx = int(idx_text)
                if not 0 <= idx < len(labels):
                    raise ParseError(f"label index {idx} out of range")
                labels[idx] = label
            elif key == "mode":
                if rest not in ("covers", "relation"):
                    raise ParseError(f"unknown mode {rest!r}")
                mode = rest
            elif key == "rel":
                i_text, j_text = rest.split()
                pairs.append((int(i_text), int(j_text)))
            else:
                raise ParseError(f"unknown line {ln!r}")
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(f"malformed poset document: {exc}") from exc
    if n is None:
        raise ParseError("missing n line")
    if mode is None:
        raise ParseError("missing mode line")
    try:
        return from_relation_pairs(n, labels, pairs, mode=mode)
    except ToolkitError as exc:
        raise ParseError(f"invalid poset data: {exc}") from exc


def serialize_realizer(r: BooleanRealizer) -> str:
    lines = ["realizer v1", f"n {r.n}", f"d {r.d}"]
    for i, order in enumerate(r.orders, start=1):
        seq = " ".join(str(int(e)) for e in order.sequence())
        lines.append(f"order {i}: {seq}")
    lines.append("phi " + "".join(str(int(b)) for b in r.phi.bits))
    return "\n".join(lines) + "\n"


def parse_realizer(text: str) -> BooleanRealizer:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or lines[0] != "realizer v1":
        raise ParseError("expected 'realizer v1' header")
    try:
        if len(lines) < 3 or not lines[1].startswith("n ") or not lines[2].startswith("d "):
            raise ParseError("expected n and d lines after the header")
        n = int(lines[1][2:])
        d = int(lines[2][2:])
        if len(lines) != 3 + d + 1:
            raise ParseError(f"expected {d} order lines plus a phi line")
        orders = []
        for i in range(d):
            ln = lines[3 + i]
            m = re.fullmatch(rf"order {i + 1}: (.*)", ln)
            if not m:
                raise ParseError(f"expected 'order {i + 1}: ...', got {ln!r}")
            seq = [int(tok) for tok in m.group(1).split()]
            if sorted(seq) != list(range(n)):
                raise ParseError(f"order {i + 1} is not a permutation of 0..{n - 1}")
            orders.append(LinearOrder.from_sequence(seq))
        phi_line = lines[3 + d]
        if not phi_line.startswith("phi "):
            raise ParseError("expected a phi line")
        phi_text = phi_line[4:].strip()
        if len(phi_text) != (1 << d) or set(phi_text) - {"0", "1"}:
            raise ParseError(f"phi must be a binary string of length {1 << d}")
        bits = np.array([int(c) for c in phi_text], dtype=np.uint8)
        return BooleanRealizer(n=n, orders=tuple(orders), phi=TruthTable(d, bits))
    except ParseError:
        raise
    except (ValueError, ToolkitError) as exc:
        raise ParseError(f"malformed realizer document: {exc}") from exc


# ---------------------------------------------------------------------------
# named specs and builtins

_FAMILY_PATTERNS = {
    "boolean": re.compile(r"boolean:(\d+)$"),
    "grid": re.compile(r"grid:(\d+)x(\d+)$"),
    "standard": re.compile(r"standard:(\d+)$"),
    "chain": re.compile(r"chain:(\d+)$"),
    "antichain": re.compile(r"antichain:(\d+)$"),
}

POSET_FAMILIES = tuple(sorted(_FAMILY_PATTERNS))
BUILTIN_REALIZERS = ("b6",)


def parse_poset_spec(spec: str) -> Poset:
    """Resolve a named family spec or a path to a poset file."""
    name, _, _ = spec.partition(":")
    if name in _FAMILY_PATTERNS:
        m = _FAMILY_PATTERNS[name].match(spec)
        if not m:
            raise UsageError(f"malformed {name!r} spec: {spec!r}")
        args = [int(g) for g in m.groups()]
        try:
            if name == "boolean":
                return boolean_lattice(args[0])
            if name == "grid":
                return multiset_grid(args[0], args[1])
            if name == "standard":
                return standard_example(args[0])
            if name == "chain":
                return chain(args[0])
            return antichain(args[0])
        except ToolkitError as exc:
            raise UsageError(f"invalid poset spec {spec!r}: {exc}") from exc
    if ":" in spec and not _looks_like_path(spec):
        raise UsageError(f"unknown poset family in {spec!r}")
    return parse_poset(_read(spec))


def family_grid_params(spec: str) -> tuple[int, int] | None:
    """(n, m) for boolean:/grid: family specs, None for anything else."""
    m = _FAMILY_PATTERNS["boolean"].match(spec)
    if m:
        return int(m.group(1)), 2
    m = _FAMILY_PATTERNS["grid"].match(spec)
    if m:
        return int(m.group(1)), int(m.group(2))
    return None


def parse_realizer_spec(spec: str) -> BooleanRealizer:
    """Resolve 'builtin:<name>' or a path to a realizer file."""
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        if name == "b6":
            return b6_realizer()
        raise UsageError(f"unknown builtin realizer {name!r}")
    return parse_realizer(_read(spec))


def _looks_like_path(spec: str) -> bool:
    return "/" in spec or spec.endswith(".poset") or spec.endswith(".txt")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc
