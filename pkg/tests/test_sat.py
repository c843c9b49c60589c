"""CNF encoding, the internal DPLL solver, external solver handling, and
model decoding."""

import stat
import sys
import textwrap

import numpy as np
import pytest

import posetdim as pd
from posetdim.errors import (
    DecodeInconsistent,
    FixedPhiArityMismatch,
    GuardExceeded,
    ModelCheckFailed,
    ParseError,
    SolverLaunchFailed,
    UnparseableOutput,
)
from posetdim.realizer import DISTINCT_ONLY, REFLEXIVE_INCLUSIVE
from posetdim.sat import (
    CnfInstance,
    OrderVar,
    PhiVar,
    VarMap,
    check_model,
    internal_sat_solve,
    parse_dimacs,
    parse_solver_output,
    to_dimacs,
    varmap_sidecar,
)


class TestEncoding:
    def test_b2_d2_counts(self):
        cnf = pd.encode_bdim_sat(pd.boolean_lattice(2), 2)
        assert cnf.num_vars == 2 * 6 + 4
        trans = 2 * 4 * 3 * 2
        linking = 12 * 4
        assert len(cnf.clauses) == trans + linking + 1

    def test_variable_numbering_pinned(self):
        cnf = pd.encode_bdim_sat(pd.chain(3), 2)
        recs = cnf.varmap.records
        assert recs[1] == OrderVar(order=0, x=0, y=1)
        assert recs[2] == OrderVar(order=0, x=0, y=2)
        assert recs[3] == OrderVar(order=0, x=1, y=2)
        assert recs[4] == OrderVar(order=1, x=0, y=1)
        assert recs[7] == PhiVar(index=0)
        assert recs[10] == PhiVar(index=3)

    def test_fixed_phi_drops_phi_vars(self):
        cnf = pd.encode_bdim_sat(pd.boolean_lattice(2), 2, fixed_phi=pd.and_function(2))
        assert cnf.num_vars == 12
        assert all(isinstance(r, OrderVar) for r in cnf.varmap.records.values())

    def test_fixed_phi_blocking_counts(self):
        # with AND: a pair needing 1 blocks the 2**d - 1 non-top tuples,
        # a pair needing 0 blocks only the all-ones tuple
        p = pd.boolean_lattice(2)
        cnf = pd.encode_bdim_sat(p, 2, fixed_phi=pd.and_function(2))
        trans = 2 * 24
        need_one = int(p.leq.sum()) - p.n
        need_zero = p.n * (p.n - 1) - need_one
        assert len(cnf.clauses) == trans + need_one * 3 + need_zero * 1

    def test_one_element_trivial(self):
        cnf = pd.encode_bdim_sat(pd.chain(1), 1)
        result = internal_sat_solve(cnf)
        assert result.status == "sat"

    def test_arity_mismatch(self):
        with pytest.raises(FixedPhiArityMismatch):
            pd.encode_bdim_sat(pd.chain(2), 2, fixed_phi=pd.and_function(3))

    def test_guards(self):
        with pytest.raises(GuardExceeded):
            pd.encode_bdim_sat(pd.chain(2), 9)
        with pytest.raises(GuardExceeded):
            pd.encode_bdim_sat(pd.boolean_lattice(8), 2)

    def test_reflexive_conflict_with_fixed_phi(self):
        phi = pd.TruthTable(arity=1, bits=np.array([1, 0], np.uint8))
        cnf = pd.encode_bdim_sat(pd.chain(2), 1, fixed_phi=phi)
        assert internal_sat_solve(cnf).status == "unsat"


class TestInternalSolver:
    def test_empty_instance(self):
        result = internal_sat_solve(CnfInstance(0, [], VarMap()))
        assert result.status == "sat" and result.assignment == [False]

    def test_contradictory_units(self):
        cnf = CnfInstance(1, [[1], [-1]], VarMap())
        assert internal_sat_solve(cnf).status == "unsat"

    def test_simple_sat(self):
        cnf = CnfInstance(2, [[1, 2], [-1, 2], [-2, 1]], VarMap())
        result = internal_sat_solve(cnf)
        assert result.status == "sat"
        assert check_model(cnf.clauses, result.assignment)

    def test_pigeonhole_unsat(self):
        # 3 pigeons, 2 holes
        var = lambda p, h: p * 2 + h + 1
        clauses = [[var(p, 0), var(p, 1)] for p in range(3)]
        for h in range(2):
            for p1 in range(3):
                for p2 in range(p1 + 1, 3):
                    clauses.append([-var(p1, h), -var(p2, h)])
        assert internal_sat_solve(CnfInstance(6, clauses, VarMap())).status == "unsat"

    def test_conflict_limit(self):
        var = lambda p, h: p * 3 + h + 1
        clauses = [[var(p, 0), var(p, 1), var(p, 2)] for p in range(4)]
        for h in range(3):
            for p1 in range(4):
                for p2 in range(p1 + 1, 4):
                    clauses.append([-var(p1, h), -var(p2, h)])
        result = internal_sat_solve(CnfInstance(12, clauses, VarMap()), conflict_limit=2)
        assert result.status == "unknown"

    def test_b3_and_roundtrip(self):
        p = pd.boolean_lattice(3)
        cnf = pd.encode_bdim_sat(p, 3, fixed_phi=pd.and_function(3))
        result = internal_sat_solve(cnf)
        assert result.status == "sat"
        realizer = pd.decode_model(
            cnf.varmap, result.assignment, p, 3, fixed_phi=pd.and_function(3)
        )
        assert pd.verify(p, realizer).ok

    def test_agrees_with_exhaustive_truth(self):
        import itertools
        import random

        rng = random.Random(123)
        for trial in range(150):
            nv = rng.randint(1, 6)
            clauses = []
            for _ in range(rng.randint(1, 12)):
                clause = [
                    v if rng.random() < 0.5 else -v
                    for v in (rng.randint(1, nv) for _ in range(rng.randint(1, 3)))
                ]
                clauses.append(clause)
            cnf = CnfInstance(nv, clauses, VarMap())
            res = internal_sat_solve(cnf)
            brute_sat = any(
                check_model(clauses, [False] + [bool(b) for b in bits])
                for bits in itertools.product((0, 1), repeat=nv)
            )
            assert (res.status == "sat") == brute_sat, (trial, clauses)
            if res.status == "sat":
                assert check_model(clauses, res.assignment)


class TestDecodeModel:
    def test_hand_built_chain_model(self):
        p = pd.chain(2)
        cnf = pd.encode_bdim_sat(p, 1)
        # var 1: "0 before 1"; phi vars 2 (index 0) and 3 (index 1)
        assignment = [False, True, False, True]
        realizer = pd.decode_model(cnf.varmap, assignment, p, 1)
        assert list(realizer.orders[0].sequence()) == [0, 1]
        assert list(realizer.phi.bits) == [0, 1]

    def test_tampered_assignment_rejected(self):
        p = pd.chain(3)
        cnf = pd.encode_bdim_sat(p, 1)
        result = internal_sat_solve(cnf)
        assert result.status == "sat"
        tampered = list(result.assignment)
        tampered[1] = not tampered[1]
        with pytest.raises(DecodeInconsistent):
            pd.decode_model(cnf.varmap, tampered, p, 1)


class TestDimacsFormats:
    def test_round_trip(self):
        cnf = pd.encode_bdim_sat(pd.boolean_lattice(2), 1)
        parsed = parse_dimacs(to_dimacs(cnf))
        assert parsed.num_vars == cnf.num_vars
        assert parsed.clauses == cnf.clauses

    def test_dimacs_shape(self):
        cnf = CnfInstance(2, [[1, -2]], VarMap())
        assert to_dimacs(cnf) == "p cnf 2 1\n1 -2 0\n"

    def test_sidecar_lines(self):
        cnf = pd.encode_bdim_sat(pd.chain(2), 1)
        lines = varmap_sidecar(cnf.varmap).splitlines()
        assert lines[0] == "var 1 order 1 before 0 1"
        assert lines[1] == "var 2 phi 0"
        assert lines[2] == "var 3 phi 1"

    def test_parse_rejects_bad_header(self):
        with pytest.raises(ParseError):
            parse_dimacs("p dnf 1 1\n1 0\n")
        with pytest.raises(ParseError):
            parse_dimacs("p cnf 1 2\n1 0\n")

    def test_solver_output_parsing(self):
        result = parse_solver_output("c hi\ns SATISFIABLE\nv 1 -2 0\n", 2)
        assert result.status == "sat"
        assert result.assignment == [False, True, False]
        assert parse_solver_output("s UNSATISFIABLE\n", 2).status == "unsat"
        with pytest.raises(UnparseableOutput):
            parse_solver_output("no result here\n", 2)


def _script(tmp_path, name, body):
    path = tmp_path / name
    path.write_text(f"#!{sys.executable}\n" + textwrap.dedent(body))
    path.chmod(path.stat().st_mode | stat.S_IEXEC)
    return str(path)


class TestExternalSolver:
    def test_launch_failure(self):
        cnf = pd.encode_bdim_sat(pd.chain(2), 1)
        with pytest.raises(SolverLaunchFailed):
            pd.run_external_solver(cnf, "/no/such/solver {cnf}")

    def test_real_model_accepted(self, tmp_path):
        script = _script(
            tmp_path,
            "goodsolver.py",
            """
            import sys
            from posetdim.sat import parse_dimacs, internal_sat_solve
            cnf = parse_dimacs(open(sys.argv[1]).read())
            res = internal_sat_solve(cnf)
            if res.status == "sat":
                lits = [v if res.assignment[v] else -v
                        for v in range(1, cnf.num_vars + 1)]
                print("s SATISFIABLE")
                print("v " + " ".join(map(str, lits)) + " 0")
            else:
                print("s UNSATISFIABLE")
            """,
        )
        p = pd.standard_example(2)
        cnf = pd.encode_bdim_sat(p, 2)
        result = pd.run_external_solver(cnf, f"{sys.executable} {script} {{cnf}}")
        assert result.status == "sat" and result.model_verified
        realizer = pd.decode_model(cnf.varmap, result.assignment, p, 2)
        assert pd.verify(p, realizer).ok

    def test_broken_model_rejected(self, tmp_path):
        script = _script(
            tmp_path,
            "liar.py",
            """
            print("s SATISFIABLE")
            print("v 1 2 0")
            """,
        )
        cnf = CnfInstance(2, [[-1, -2]], VarMap())
        with pytest.raises(ModelCheckFailed):
            pd.run_external_solver(cnf, f"{sys.executable} {script} {{cnf}}")

    def test_unsat_taken_on_trust(self, tmp_path):
        script = _script(tmp_path, "naysayer.py", 'print("s UNSATISFIABLE")\n')
        cnf = CnfInstance(1, [[1]], VarMap())
        result = pd.run_external_solver(cnf, f"{sys.executable} {script} {{cnf}}")
        assert result.status == "unsat" and not result.model_verified

    def test_garbage_output(self, tmp_path):
        script = _script(tmp_path, "mumbler.py", 'print("hello world")\n')
        cnf = CnfInstance(1, [[1]], VarMap())
        with pytest.raises(UnparseableOutput):
            pd.run_external_solver(cnf, f"{sys.executable} {script} {{cnf}}")


class TestSearchRealizer:
    def test_s4_free_phi(self):
        p = pd.standard_example(4)
        report = pd.search_realizer(p, 4)
        assert report.status == "sat"
        assert report.realizer.d == 4
        assert pd.verify(p, report.realizer).ok

    def test_b2_d1_unsat(self):
        report = pd.search_realizer(pd.boolean_lattice(2), 1)
        assert report.status == "unsat" and report.unsat_verified

    def test_chain_d1(self):
        report = pd.search_realizer(pd.chain(3), 1)
        assert report.status == "sat"

    def test_emit_only(self, tmp_path):
        out = tmp_path / "instance.cnf"
        report = pd.search_realizer(
            pd.boolean_lattice(2), 2, engine="emit", emit_path=out
        )
        assert report.status == "emitted"
        cnf = parse_dimacs(out.read_text())
        assert cnf.num_vars == report.num_vars == 16
        sidecar = (tmp_path / "instance.cnf.varmap").read_text().splitlines()
        assert sidecar[0] == "var 1 order 1 before 0 1"
        assert len(sidecar) == 16
        # the emitted instance is solvable and decodes to a verified realizer
        result = internal_sat_solve(cnf)
        assert result.status == "sat"

    def test_emitted_fixed_phi_instance_solves_and_decodes(self, tmp_path):
        p = pd.boolean_lattice(3)
        out = tmp_path / "b3.cnf"
        report = pd.search_realizer(
            p, 3, phi=pd.and_function(3), engine="emit", emit_path=out
        )
        cnf = pd.encode_bdim_sat(p, 3, fixed_phi=pd.and_function(3))
        assert parse_dimacs(out.read_text()).clauses == cnf.clauses
        result = internal_sat_solve(cnf)
        realizer = pd.decode_model(
            cnf.varmap, result.assignment, p, 3, fixed_phi=pd.and_function(3)
        )
        assert pd.verify(p, realizer).ok

    def test_modes_differ_on_antichain(self):
        p = pd.antichain(2)
        assert pd.search_realizer(p, 1, mode=REFLEXIVE_INCLUSIVE).status == "unsat"
        assert pd.search_realizer(p, 1, mode=DISTINCT_ONLY).status == "sat"
