"""Brute-force exact dimension and Boolean dimension, and the phi-consistency
reduction they rest on."""

from itertools import product as iproduct

import pytest

import posetdim as pd
from posetdim.errors import GuardExceeded
from posetdim.realizer import DISTINCT_ONLY, REFLEXIVE_INCLUSIVE
from posetdim.search import Inconsistent, phi_consistent

from corpus import dim_corpus, four_element_posets


class TestExactDim:
    @pytest.mark.parametrize("k", (1, 3, 5))
    def test_chains(self, k):
        d, witness = pd.exact_dim(pd.chain(k))
        assert d == 1 and len(witness) == 1

    def test_b3(self):
        d, witness = pd.exact_dim(pd.boolean_lattice(3))
        assert d == 3
        assert pd.verify(pd.boolean_lattice(3), pd.from_extensions(
            pd.boolean_lattice(3), witness)).ok

    def test_s3(self):
        assert pd.exact_dim(pd.standard_example(3))[0] == 3

    def test_antichain(self):
        assert pd.exact_dim(pd.antichain(3))[0] == 2

    def test_two_plus_two(self):
        p = pd.from_relation_pairs(4, None, [(0, 1), (2, 3)])
        assert pd.exact_dim(p)[0] == 2

    def test_d_max_not_found(self):
        assert pd.exact_dim(pd.boolean_lattice(3), d_max=2) is None

    def test_element_guard(self):
        with pytest.raises(GuardExceeded):
            pd.exact_dim(pd.boolean_lattice(4))

    def test_extension_guard(self):
        with pytest.raises(GuardExceeded):
            pd.exact_dim(pd.antichain(7))  # 5040 extensions

    def test_guard_override(self):
        assert pd.exact_dim(pd.antichain(6), max_extensions=None)[0] == 2

    def test_witnesses_verify(self):
        for name, p in dim_corpus():
            d, witness = pd.exact_dim(p)
            assert pd.verify(p, pd.from_extensions(p, witness)).ok, name


class TestPhiConsistent:
    def test_b2_pinned_extensions_give_and(self):
        b2 = pd.boolean_lattice(2)
        exts, _ = pd.linear_extensions(b2)
        table = phi_consistent(b2, exts)
        assert table == pd.and_function(2)

    def test_chain_single_extension(self):
        p = pd.chain(4)
        table = phi_consistent(p, [pd.some_linear_extension(p)])
        assert list(table.bits) == [0, 1]

    def test_antichain_reflexive_conflict(self):
        result = phi_consistent(
            pd.antichain(2), [pd.LinearOrder.from_sequence([0, 1])]
        )
        assert isinstance(result, Inconsistent)
        assert result.pair_a == (0, 0) and result.pair_b == (0, 1)

    def test_antichain_distinct_mode_consistent(self):
        table = phi_consistent(
            pd.antichain(2),
            [pd.LinearOrder.from_sequence([0, 1])],
            mode=DISTINCT_ONLY,
        )
        assert list(table.bits) == [0, 0]

    def test_mixed_class_conflict_pairs(self):
        # one order on a chain reversed: comparable pair needs 1, reverse...
        p = pd.from_relation_pairs(3, None, [(0, 1)])
        order = pd.LinearOrder.from_sequence([2, 0, 1])
        result = phi_consistent(p, [order], mode=DISTINCT_ONLY)
        # class "before": (0,1) needs 1 but (2,0) and (2,1) need 0
        assert isinstance(result, Inconsistent)

    def test_unconstrained_tuples_default_to_zero(self):
        p = pd.chain(2)
        table = phi_consistent(
            p,
            [pd.LinearOrder.from_sequence([0, 1]),
             pd.LinearOrder.from_sequence([0, 1])],
        )
        # tuples 01 and 10 never occur; both must default to 0
        assert list(table.bits) == [0, 0, 0, 1]


class TestExactBdim:
    def test_chain(self):
        d, witness = pd.exact_bdim(pd.chain(3))
        assert d == 1 and pd.verify(pd.chain(3), witness).ok

    def test_antichain2_mode_split(self):
        assert pd.exact_bdim(pd.antichain(2))[0] == 2
        assert pd.exact_bdim(pd.antichain(2), mode=DISTINCT_ONLY)[0] == 1

    def test_b2_both_modes(self):
        for mode in (REFLEXIVE_INCLUSIVE, DISTINCT_ONLY):
            d, witness = pd.exact_bdim(pd.boolean_lattice(2), mode=mode)
            assert d == 2
            assert pd.verify(pd.boolean_lattice(2), witness, mode).ok
        # consistent with the counting bound: 2/log2(3) > 1
        assert pd.lat_lower_bound(2).integer_bound == 2

    def test_not_found(self):
        assert pd.exact_bdim(pd.boolean_lattice(2), d_max=1) is None

    def test_guards(self):
        with pytest.raises(GuardExceeded):
            pd.exact_bdim(pd.chain(6))
        with pytest.raises(GuardExceeded):
            pd.exact_bdim(pd.chain(3), d_max=4)

    def test_symmetry_reduction_sound(self):
        """One-off validation: restricting to non-decreasing order tuples
        never changes the d <= 2 decision on 4-element posets."""
        from itertools import permutations

        for name, p in four_element_posets():
            ranks = [pd.LinearOrder.from_sequence(list(s))
                     for s in permutations(range(4))]
            for mode in (REFLEXIVE_INCLUSIVE, DISTINCT_ONLY):
                for d in (1, 2):
                    reduced = pd.exact_bdim(p, d_max=d, mode=mode)
                    reduced_found = reduced is not None and reduced[0] <= d
                    full_found = any(
                        not isinstance(
                            phi_consistent(p, list(combo), mode), Inconsistent
                        )
                        for combo in iproduct(ranks, repeat=d)
                    )
                    assert reduced_found == full_found, (name, mode, d)

    def test_monotone_lift(self):
        """A realizer at d lifts to d+1 by duplicating the first order and
        ignoring the new coordinate."""
        import numpy as np

        for name, p in four_element_posets():
            found = pd.exact_bdim(p, d_max=3, max_d=3)
            assert found is not None, name
            d, witness = found
            if d >= 3:
                continue
            lifted = pd.BooleanRealizer(
                n=p.n,
                orders=witness.orders + (witness.orders[0],),
                phi=pd.TruthTable(
                    arity=d + 1, bits=np.tile(witness.phi.bits, 2)
                ),
            )
            assert pd.verify(p, lifted).ok, name
