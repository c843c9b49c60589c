"""Realizer existence as propositional satisfiability.

One variable per order and unordered element pair ("x before y"), one
variable per truth-table bit unless phi is fixed.  Transitivity clauses force
each order to be total; linking clauses tie every ordered pair's query tuple
to the required answer.  A small complete DPLL solver handles desk-scale
instances; bigger ones go to an external solver through DIMACS files, whose
models are re-checked locally before being trusted.
"""

from __future__ import annotations

import shlex
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    DecodeInconsistent,
    FixedPhiArityMismatch,
    GuardExceeded,
    ModelCheckFailed,
    ParseError,
    SolverLaunchFailed,
    UnparseableOutput,
)
from .errors import BadParameter
from .poset import LinearOrder, Poset
from .realizer import (
    REFLEXIVE_INCLUSIVE,
    BooleanRealizer,
    TruthTable,
    _check_mode,
    verify,
)

MAX_SAT_ELEMENTS = 128
MAX_SAT_D = 8


@dataclass(frozen=True)
class OrderVar:
    """Variable meaning "x before y in order i" (x < y; the reverse is the
    negated literal)."""

    order: int  # 0-based
    x: int
    y: int


@dataclass(frozen=True)
class PhiVar:
    """Variable carrying one truth-table bit."""

    index: int


@dataclass(frozen=True)
class AuxVar:
    note: str


VarMeaning = OrderVar | PhiVar | AuxVar


@dataclass
class VarMap:
    """1-based variable numbering with both lookup directions."""

    records: dict[int, VarMeaning] = field(default_factory=dict)
    _order: dict[tuple[int, int, int], int] = field(default_factory=dict)
    _phi: dict[int, int] = field(default_factory=dict)

    def add(self, meaning: VarMeaning) -> int:
        vid = len(self.records) + 1
        self.records[vid] = meaning
        if isinstance(meaning, OrderVar):
            self._order[(meaning.order, meaning.x, meaning.y)] = vid
        elif isinstance(meaning, PhiVar):
            self._phi[meaning.index] = vid
        return vid

    def before_literal(self, order: int, x: int, y: int) -> int:
        """Signed literal asserting "x before y in the given order"."""
        if x < y:
            return self._order[(order, x, y)]
        return -self._order[(order, y, x)]

    def phi_literal(self, index: int) -> int:
        return self._phi[index]

    @property
    def num_vars(self) -> int:
        return len(self.records)


@dataclass
class CnfInstance:
    num_vars: int
    clauses: list[list[int]]
    varmap: VarMap

    def __post_init__(self) -> None:
        for c in self.clauses:
            if not c:
                raise BadParameter("empty clause at construction")


@dataclass
class SatResult:
    status: str  # "sat" | "unsat" | "unknown"
    assignment: list[bool] | None = None  # 1-based; index 0 unused
    model_verified: bool = False
    conflicts: int = 0


def encode_bdim_sat(
    p: Poset,
    d: int,
    fixed_phi: TruthTable | None = None,
    mode: str = REFLEXIVE_INCLUSIVE,
    max_elements: int | None = MAX_SAT_ELEMENTS,
    max_d: int | None = MAX_SAT_D,
) -> CnfInstance:
    """CNF that is satisfiable iff p has a d-order realizer (with the given
    phi, when fixed).

    Variable numbering is pinned: order variables first (order-major, pairs
    in ascending (x, y) with x < y), then truth-table variables in tuple-index
    order, so DIMACS exports are stable and self-describing via the sidecar.
    """
    _check_mode(mode)
    if d < 1:
        raise BadParameter(f"d must be >= 1, got {d}")
    if max_d is not None and d > max_d:
        raise GuardExceeded(f"d = {d} exceeds the guard of {max_d}")
    if max_elements is not None and p.n > max_elements:
        raise GuardExceeded(f"|P| = {p.n} exceeds the {max_elements}-element guard")
    if fixed_phi is not None and fixed_phi.arity != d:
        raise FixedPhiArityMismatch(
            f"fixed phi has arity {fixed_phi.arity}, expected {d}"
        )

    n = p.n
    varmap = VarMap()
    for i in range(d):
        for x in range(n):
            for y in range(x + 1, n):
                varmap.add(OrderVar(order=i, x=x, y=y))
    if fixed_phi is None:
        for t in range(1 << d):
            varmap.add(PhiVar(index=t))

    clauses: list[list[int]] = []

    # (a) transitivity per order, over all ordered triples of distinct elements
    for i in range(d):
        for x in range(n):
            for y in range(n):
                if y == x:
                    continue
                b_xy = varmap.before_literal(i, x, y)
                for z in range(n):
                    if z == x or z == y:
                        continue
                    clauses.append(
                        [-b_xy, -varmap.before_literal(i, y, z),
                         varmap.before_literal(i, x, z)]
                    )

    # (b) linking: pair (x, y) with query tuple t must answer leq[x, y]
    for x in range(n):
        for y in range(n):
            if y == x:
                continue
            need = bool(p.leq[x, y])
            for t in range(1 << d):
                contradict = [
                    -varmap.before_literal(i, x, y)
                    if (t >> i) & 1
                    else varmap.before_literal(i, x, y)
                    for i in range(d)
                ]
                if fixed_phi is None:
                    lit = varmap.phi_literal(t)
                    clauses.append(contradict + [lit if need else -lit])
                elif fixed_phi.value_at(t) != need:
                    clauses.append(contradict)

    # (c) reflexive queries must answer yes
    if mode == REFLEXIVE_INCLUSIVE:
        top = (1 << d) - 1
        if fixed_phi is None:
            clauses.append([varmap.phi_literal(top)])
        elif not fixed_phi.value_at(top):
            # Unsatisfiable by construction; encode that explicitly.
            aux = varmap.add(AuxVar(note="reflexive-conflict"))
            clauses.append([aux])
            clauses.append([-aux])

    return CnfInstance(num_vars=varmap.num_vars, clauses=clauses, varmap=varmap)


# ---------------------------------------------------------------------------
# internal solver


def check_model(clauses: list[list[int]], assignment: list[bool]) -> bool:
    """True iff the assignment satisfies every clause."""
    for c in clauses:
        if not any((lit > 0) == assignment[abs(lit)] for lit in c):
            return False
    return True


def _branch_order(cnf: CnfInstance) -> list[int]:
    """Deterministic branching order for the DPLL search.

    For realizer instances, order variables are taken pair-major (all orders
    for pair (0,1), then pair (0,2), ...) so that each pair's complete query
    tuple is decided early and the linking clauses propagate truth-table bits
    right away; on instances without a varmap this is plain index order.
    """
    pair_groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    rest = []
    for vid in sorted(cnf.varmap.records):
        rec = cnf.varmap.records[vid]
        if isinstance(rec, OrderVar):
            pair_groups.setdefault((rec.x, rec.y), []).append((rec.order, vid))
        else:
            rest.append(vid)
    order = [
        vid
        for pair in sorted(pair_groups)
        for _, vid in sorted(pair_groups[pair])
    ]
    order.extend(rest)
    known = set(order)
    order.extend(v for v in range(1, cnf.num_vars + 1) if v not in known)
    return order


def internal_sat_solve(
    cnf: CnfInstance, conflict_limit: int | None = None
) -> SatResult:
    """Complete DPLL with two watched literals and chronological backtracking.

    Branching is deterministic: variables in the _branch_order sequence, True
    first.  Sat assignments are post-checked against every clause before
    being returned; exceeding conflict_limit yields status "unknown".
    """
    nvars = cnf.num_vars
    clauses: list[list[int]] = []
    units: list[int] = []
    for c in cnf.clauses:
        lits = list(dict.fromkeys(c))
        if not lits:
            return SatResult(status="unsat")
        if any(-lit in lits for lit in lits):
            continue  # tautology
        if len(lits) == 1:
            units.append(lits[0])
        else:
            clauses.append(lits)

    assign = [0] * (nvars + 1)  # 0 unassigned, +1 true, -1 false
    watches: dict[int, list[int]] = {}
    watched: list[list[int]] = []
    for ci, lits in enumerate(clauses):
        watched.append([lits[0], lits[1]])
        watches.setdefault(lits[0], []).append(ci)
        watches.setdefault(lits[1], []).append(ci)

    trail: list[int] = []
    qhead = 0
    decisions: list[tuple[int, int, bool]] = []  # (trail mark, literal, flipped)
    conflicts = 0
    branch_order = _branch_order(cnf)

    def value(lit: int) -> int:
        v = assign[abs(lit)]
        return v if lit > 0 else -v

    def enqueue(lit: int) -> bool:
        v = value(lit)
        if v == 1:
            return True
        if v == -1:
            return False
        assign[abs(lit)] = 1 if lit > 0 else -1
        trail.append(lit)
        return True

    for u in units:
        if not enqueue(u):
            return SatResult(status="unsat")

    def propagate() -> bool:
        nonlocal qhead
        while qhead < len(trail):
            lit = trail[qhead]
            qhead += 1
            falsified = -lit
            pending = watches.get(falsified, [])
            keep: list[int] = []
            k = 0
            while k < len(pending):
                ci = pending[k]
                k += 1
                w = watched[ci]
                other = w[1] if w[0] == falsified else w[0]
                if value(other) == 1:
                    keep.append(ci)
                    continue
                moved = False
                for cand in clauses[ci]:
                    if cand != other and cand != falsified and value(cand) != -1:
                        w[0], w[1] = other, cand
                        watches.setdefault(cand, []).append(ci)
                        moved = True
                        break
                if moved:
                    continue
                keep.append(ci)
                if not enqueue(other):
                    keep.extend(pending[k:])
                    watches[falsified] = keep
                    return False
            watches[falsified] = keep
        return True

    pos = 0
    while True:
        if propagate():
            while pos < nvars and assign[branch_order[pos]] != 0:
                pos += 1
            if pos >= nvars:
                model = [False] + [assign[v] == 1 for v in range(1, nvars + 1)]
                if not check_model(cnf.clauses, model):
                    raise AssertionError("internal solver produced a bad model")
                return SatResult(
                    status="sat",
                    assignment=model,
                    model_verified=True,
                    conflicts=conflicts,
                )
            decisions.append((len(trail), branch_order[pos], False))
            enqueue(branch_order[pos])
        else:
            conflicts += 1
            if conflict_limit is not None and conflicts > conflict_limit:
                return SatResult(status="unknown", conflicts=conflicts)
            while decisions:
                mark, lit, flipped = decisions.pop()
                for done in trail[mark:]:
                    assign[abs(done)] = 0
                del trail[mark:]
                qhead = mark
                if not flipped:
                    decisions.append((mark, -lit, True))
                    enqueue(-lit)
                    pos = 0
                    break
            else:
                return SatResult(status="unsat", conflicts=conflicts)


# ---------------------------------------------------------------------------
# DIMACS, sidecar, external solver


def to_dimacs(cnf: CnfInstance) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    for c in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in c) + " 0")
    return "\n".join(lines) + "\n"


def varmap_sidecar(varmap: VarMap) -> str:
    """Self-describing companion to a DIMACS export (order indices 1-based)."""
    lines = []
    for vid in sorted(varmap.records):
        rec = varmap.records[vid]
        if isinstance(rec, OrderVar):
            lines.append(f"var {vid} order {rec.order + 1} before {rec.x} {rec.y}")
        elif isinstance(rec, PhiVar):
            lines.append(f"var {vid} phi {rec.index}")
        else:
            lines.append(f"var {vid} aux {rec.note}")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfInstance:
    """Parse a DIMACS CNF document (comments allowed, no varmap recovered)."""
    num_vars = None
    expected_clauses = None
    clauses: list[list[int]] = []
    pending: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"bad DIMACS header: {line!r}")
            num_vars, expected_clauses = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise ParseError("clause before DIMACS header")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(pending)
                pending = []
            else:
                pending.append(lit)
    if pending:
        raise ParseError("unterminated clause at end of DIMACS input")
    if num_vars is None:
        raise ParseError("missing DIMACS header")
    if expected_clauses != len(clauses):
        raise ParseError(
            f"header promises {expected_clauses} clauses, found {len(clauses)}"
        )
    return CnfInstance(num_vars=num_vars, clauses=clauses, varmap=VarMap())


def parse_solver_output(text: str, num_vars: int) -> SatResult:
    """Interpret SAT-competition style output ("s ..." and "v ..." lines)."""
    status = None
    values: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s "):
            tag = line[2:].strip().upper()
            if tag == "SATISFIABLE":
                status = "sat"
            elif tag == "UNSATISFIABLE":
                status = "unsat"
            elif tag.startswith("UNKNOWN"):
                status = "unknown"
        elif line.startswith("v ") or line == "v":
            values.extend(int(tok) for tok in line[1:].split())
    if status is None:
        raise UnparseableOutput("no recognizable 's' result line in solver output")
    if status != "sat":
        return SatResult(status=status)
    assignment = [False] * (num_vars + 1)
    for lit in values:
        if lit == 0:
            continue
        if abs(lit) <= num_vars:
            assignment[abs(lit)] = lit > 0
    return SatResult(status="sat", assignment=assignment)


def run_external_solver(
    cnf: CnfInstance, solver_command: str, timeout: float | None = None
) -> SatResult:
    """Run a DIMACS solver ("{cnf}" in the command is replaced by the file
    path) and re-check any claimed model locally.

    Unsat answers are necessarily taken on trust and flagged unverified.
    """
    with tempfile.TemporaryDirectory(prefix="posetdim-sat-") as tmp:
        path = Path(tmp) / "instance.cnf"
        path.write_text(to_dimacs(cnf))
        if "{cnf}" in solver_command:
            command = solver_command.replace("{cnf}", str(path))
        else:
            command = f"{solver_command} {path}"
        try:
            proc = subprocess.run(
                shlex.split(command),
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise SolverLaunchFailed(f"could not run {command!r}: {exc}") from exc
    result = parse_solver_output(proc.stdout, cnf.num_vars)
    if result.status == "sat":
        if not check_model(cnf.clauses, result.assignment):
            raise ModelCheckFailed("external solver model violates a clause")
        result.model_verified = True
    return result


# ---------------------------------------------------------------------------
# decoding and the end-to-end pipeline


def decode_model(
    varmap: VarMap,
    assignment: list[bool],
    p: Poset,
    d: int,
    fixed_phi: TruthTable | None = None,
    mode: str = REFLEXIVE_INCLUSIVE,
) -> BooleanRealizer:
    """Turn a satisfying assignment into a realizer and verify it; decoding
    fails hard on any mismatch, which would indicate an encoder bug or a
    tampered model."""
    n = p.n
    before_count = np.zeros((d, n), dtype=np.int64)
    for vid, rec in varmap.records.items():
        if isinstance(rec, OrderVar):
            if assignment[vid]:
                before_count[rec.order, rec.y] += 1
            else:
                before_count[rec.order, rec.x] += 1
    try:
        orders = tuple(LinearOrder(rank=before_count[i]) for i in range(d))
    except BadParameter as exc:
        raise DecodeInconsistent(
            f"order variables do not form total orders: {exc}"
        ) from exc
    if fixed_phi is not None:
        phi = fixed_phi
    else:
        bits = np.array(
            [int(assignment[varmap.phi_literal(t)]) for t in range(1 << d)],
            dtype=np.uint8,
        )
        phi = TruthTable(arity=d, bits=bits)
    realizer = BooleanRealizer(n=n, orders=orders, phi=phi)
    outcome = verify(p, realizer, mode)
    if not outcome.ok:
        raise DecodeInconsistent(
            f"decoded realizer fails verification at {outcome.counterexample}"
        )
    return realizer


@dataclass
class SearchReport:
    status: str  # "sat" | "unsat" | "unknown" | "emitted"
    realizer: BooleanRealizer | None
    num_vars: int
    num_clauses: int
    cnf_path: str | None = None
    varmap_path: str | None = None
    unsat_verified: bool = False  # unsat from the internal solver is complete


def search_realizer(
    p: Poset,
    d: int,
    phi: str | TruthTable = "free",
    engine: str = "internal",
    solver_command: str | None = None,
    emit_path: str | Path | None = None,
    mode: str = REFLEXIVE_INCLUSIVE,
    conflict_limit: int | None = None,
    max_elements: int | None = MAX_SAT_ELEMENTS,
    max_d: int | None = MAX_SAT_D,
) -> SearchReport:
    """encode -> solve -> decode -> verify, or emit the DIMACS instance.

    phi is "free" or a fixed TruthTable of arity d.  Engines: "internal"
    (bundled complete solver), "external" (solver_command required), "emit"
    (write instance plus varmap sidecar to emit_path and stop).
    """
    fixed_phi = None if phi == "free" else phi
    if isinstance(fixed_phi, str):
        raise BadParameter(f"phi must be 'free' or a TruthTable, got {phi!r}")
    cnf = encode_bdim_sat(
        p, d, fixed_phi=fixed_phi, mode=mode, max_elements=max_elements, max_d=max_d
    )

    if engine == "emit":
        if emit_path is None:
            raise BadParameter("emit engine needs emit_path")
        cnf_path = Path(emit_path)
        varmap_path = cnf_path.with_suffix(cnf_path.suffix + ".varmap")
        cnf_path.write_text(to_dimacs(cnf))
        varmap_path.write_text(varmap_sidecar(cnf.varmap))
        return SearchReport(
            status="emitted",
            realizer=None,
            num_vars=cnf.num_vars,
            num_clauses=len(cnf.clauses),
            cnf_path=str(cnf_path),
            varmap_path=str(varmap_path),
        )
    if engine == "internal":
        result = internal_sat_solve(cnf, conflict_limit=conflict_limit)
        unsat_verified = True
    elif engine == "external":
        if not solver_command:
            raise BadParameter("external engine needs solver_command")
        result = run_external_solver(cnf, solver_command)
        unsat_verified = False
    else:
        raise BadParameter(f"unknown engine {engine!r}")

    realizer = None
    if result.status == "sat":
        realizer = decode_model(
            cnf.varmap, result.assignment, p, d, fixed_phi=fixed_phi, mode=mode
        )
    return SearchReport(
        status=result.status,
        realizer=realizer,
        num_vars=cnf.num_vars,
        num_clauses=len(cnf.clauses),
        unsat_verified=unsat_verified and result.status == "unsat",
    )
