from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from titsmeasure.brauer import (
    CSA,
    RATIONALS,
    AbstractGroup,
    GroupMismatchError,
    RationalClass,
    coprime_indexes,
    generated_subgroup,
)

G6 = AbstractGroup((6,))
G12 = AbstractGroup((12,))
V3 = AbstractGroup((2, 2, 2))

groups = st.sampled_from([G6, G12, V3, AbstractGroup((4, 3)), AbstractGroup((30,))])


@st.composite
def group_and_element(draw):
    g = draw(groups)
    coords = [draw(st.integers(-20, 20)) for _ in g.orders]
    return g, g.element(coords)


class TestAbstractGroup:
    def test_element_reduces_coords(self):
        assert G6.element([7]).coords == (1,)
        assert V3.element([2, 3, -1]).coords == (0, 1, 1)

    def test_identity_and_order(self):
        assert G6.identity().is_identity()
        assert G6.element([2]).order() == 3
        assert G12.element([2]).order() == 6
        assert V3.element([1, 1, 0]).order() == 2

    def test_orders_must_be_positive(self):
        with pytest.raises(ValueError):
            AbstractGroup((0,))

    def test_elements_enumerates_whole_group(self):
        assert len(list(V3.elements())) == 8
        assert len(set(V3.elements())) == 8

    def test_exponent(self):
        assert AbstractGroup((4, 3)).exponent == 12
        assert V3.exponent == 2

    @given(group_and_element())
    @settings(max_examples=60, deadline=None)
    def test_order_divides_exponent(self, ge):
        g, x = ge
        assert g.exponent % x.order() == 0

    @given(group_and_element())
    @settings(max_examples=60, deadline=None)
    def test_p_parts_reassemble_element(self, ge):
        g, x = ge
        total = g.identity()
        for p in sorted(set(g.primes())):
            total = total + x.p_part(p)
        assert total == x

    @given(group_and_element())
    @settings(max_examples=60, deadline=None)
    def test_p_part_is_p_primary(self, ge):
        g, x = ge
        for p in set(g.primes()):
            o = x.p_part(p).order()
            while o % p == 0:
                o //= p
            assert o == 1

    def test_mixed_group_arithmetic_rejected(self):
        with pytest.raises(GroupMismatchError):
            G6.element([1]) + G12.element([1])


class TestRationalClasses:
    def test_invariants_must_balance(self):
        with pytest.raises(ValueError):
            RationalClass(((2, Fraction(1, 2)),))

    def test_real_invariant_restricted(self):
        with pytest.raises(ValueError):
            RationalClass((("real", Fraction(1, 3)), (3, Fraction(2, 3))))

    def test_add_cancels(self):
        c = RationalClass(((2, Fraction(1, 2)), (3, Fraction(1, 2))))
        assert (c + c).is_identity()
        assert c + RATIONALS.identity() == c

    def test_order_and_p_part(self):
        c = RationalClass(((2, Fraction(1, 6)), (3, Fraction(5, 6))))
        assert c.order() == 6
        two = c.p_part(2)
        three = c.p_part(3)
        assert two.order() == 2 and three.order() == 3
        assert two + three == c

    def test_scalar_multiple(self):
        c = RationalClass(((2, Fraction(1, 4)), (5, Fraction(3, 4))))
        assert (2 * c).order() == 2
        assert (4 * c).is_identity()


class TestSubgroupsAndAlgebras:
    def test_generated_subgroup_cyclic(self):
        sub = generated_subgroup([G12.element([4])])
        assert sorted(c.coords[0] for c in sub) == [0, 4, 8]

    def test_generated_subgroup_matches_naive_closure(self):
        gens = [V3.element([1, 1, 0]), V3.element([0, 1, 1])]
        got = generated_subgroup(gens)
        naive = {V3.identity()}
        frontier = True
        while frontier:
            frontier = False
            for x in list(naive):
                for g in gens:
                    y = x + g
                    if y not in naive:
                        naive.add(y)
                        frontier = True
        assert got == naive

    def test_generated_subgroup_empty_needs_group(self):
        assert generated_subgroup([], group=G6) == {G6.identity()}
        with pytest.raises(ValueError):
            generated_subgroup([])

    def test_csa_period_divides_degree(self):
        CSA(G6.element([2]), 3)
        with pytest.raises(ValueError):
            CSA(G6.element([1]), 3)  # period 6 does not divide 3

    def test_default_index_policy_is_order(self):
        a = CSA(G12.element([3]), 4)
        assert a.period() == 4 and a.index() == 4

    def test_index_oracle_overrides(self):
        g = AbstractGroup((2, 2), index_oracle=(((1, 1), 4),))
        assert g.index_of(g.element([1, 1])) == 4
        assert g.index_of(g.element([1, 0])) == 2

    def test_index_oracle_validated(self):
        with pytest.raises(ValueError):
            AbstractGroup((2, 2), index_oracle=(((1, 1), 3),))  # period 2, index 3
        with pytest.raises(ValueError):
            AbstractGroup((2, 2), index_oracle=(((1, 1), 6),))  # extra prime 3

    def test_coprime_indexes(self):
        a = CSA(G6.element([2]), 3)  # index 3
        b = CSA(G6.element([3]), 2)  # index 2
        assert coprime_indexes(a, b)
        assert not coprime_indexes(a, a)

    def test_index_divides_degree(self):
        g = AbstractGroup((2, 2), index_oracle=(((1, 1), 4),))
        with pytest.raises(ValueError):
            CSA(g.element([1, 1]), 2)  # index 4 cannot divide degree 2
