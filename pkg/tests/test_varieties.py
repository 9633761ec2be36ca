import pytest

from oracles import box_partition_weights
from titsmeasure.brauer import CSA, AbstractGroup, GroupMismatchError
from titsmeasure.measure_ring import mul
from titsmeasure.quadforms import FormShadow, QuadraticForm
from titsmeasure.varieties import (
    Grassmannian,
    Involution,
    Product,
    Quadric,
    SeveriBrauer,
    box_weight_counts,
    compare,
    deduce,
    rank_measure,
    tits_measure,
)

G4 = AbstractGroup((4,))
V2 = AbstractGroup((2, 2))
V2L = AbstractGroup((2, 2), index_oracle=(((1, 1), 4),))


def sb(group, coords, degree):
    return SeveriBrauer(CSA(group.element(coords), degree))


class TestBoxWeights:
    def test_matches_partition_enumeration(self):
        for d in range(0, 6):
            for e in range(0, 6):
                counts = box_weight_counts(d, e)
                expected = box_partition_weights(d, e)
                assert {w: c for w, c in enumerate(counts) if c} == dict(expected)

    def test_total_is_binomial(self):
        from math import comb

        assert sum(box_weight_counts(3, 4)) == comb(7, 3)


class TestTables:
    def test_severi_brauer_table(self):
        v = sb(G4, [1], 4)
        assert sorted(c.coords[0] for c in v.jt_classes().classes) == [0, 1, 2, 3]
        assert v.dim == 3
        assert rank_measure(v) == 4

    def test_split_severi_brauer(self):
        v = sb(G4, [0], 3)
        assert all(c.is_identity() for c in v.jt_classes().classes)
        assert rank_measure(v) == 3

    def test_grassmannian_table(self):
        v = Grassmannian(2, CSA(G4.element([1]), 4))
        weights = sorted(c.coords[0] for c in v.jt_classes().classes)
        assert weights == [0, 0, 1, 2, 2, 3]  # 0,1,2,2,3,4 reduced mod 4
        assert v.dim == 4
        assert rank_measure(v) == 6

    def test_grassmannian_parameter_range(self):
        with pytest.raises(ValueError):
            Grassmannian(4, CSA(G4.element([1]), 4))
        with pytest.raises(ValueError):
            Grassmannian(0, CSA(G4.element([1]), 4))

    def test_even_quadric_table(self):
        # <1,1,1,-1,-1,-1> is hyperbolic (trivial class); use a form
        # whose even Clifford class is (-1,-1)
        q = Quadric(QuadraticForm.of([1, 1, 1, 1, 1, -1]))
        ms = q.jt_classes()
        assert len(ms) == 6
        idents = [c for c in ms.classes if c.is_identity()]
        others = [c for c in ms.classes if not c.is_identity()]
        assert len(idents) == 4 and len(others) == 2
        assert others[0] == others[1] == q.clifford_class

    def test_odd_quadric_table(self):
        q = Quadric(QuadraticForm.of([1, 1, 1, -1, -1]))
        ms = q.jt_classes()
        assert len(ms) == 4  # rho = n - 1 for odd n
        assert q.dim == 3

    def test_quadric_shadow_table(self):
        s = FormShadow(8, V2.element([1, 0]), False)
        q = Quadric(s)
        assert rank_measure(q) == 8
        assert q.dim == 6

    def test_involution_table(self):
        v = Involution(6, G4.element([2]), G4.element([1]), G4.element([3]))
        ms = v.jt_classes()
        counts = {}
        for c in ms.classes:
            counts[c.coords[0]] = counts.get(c.coords[0], 0) + 1
        assert counts == {0: 2, 2: 2, 1: 1, 3: 1}
        assert v.dim == 6
        assert rank_measure(v) == 6

    def test_involution_relations_enforced(self):
        with pytest.raises(ValueError):
            # deg = 2 mod 4 forces 2 c+ = [A]
            Involution(6, G4.element([1]), G4.element([1]), G4.element([3]))
        with pytest.raises(ValueError):
            # deg = 0 mod 4 forces c+ + c- = [A]
            Involution(8, V2.element([1, 1]), V2.element([1, 0]), V2.element([1, 0]))

    def test_involution_mod_four_models(self):
        Involution(10, G4.element([2]), G4.element([1]), G4.element([3]))
        Involution(8, V2.element([1, 1]), V2.element([1, 0]), V2.element([0, 1]))

    def test_product_dims_and_rho_multiply(self):
        a = sb(G4, [1], 4)
        b = sb(G4, [2], 2)
        p = Product((a, b))
        assert p.dim == a.dim + b.dim
        assert rank_measure(p) == rank_measure(a) * rank_measure(b)

    def test_product_measure_is_multiplicative(self):
        a = sb(G4, [1], 4)
        b = sb(G4, [2], 2)
        lhs = tits_measure(Product((a, b))).jt
        rhs = mul(tits_measure(a).jt, tits_measure(b).jt)
        assert lhs == rhs

    def test_product_rejects_mixed_groups(self):
        with pytest.raises(GroupMismatchError):
            Product((sb(G4, [1], 4), sb(V2, [1, 0], 2)))

    def test_measure_report_consistency(self):
        v = Grassmannian(1, CSA(G4.element([1]), 4))
        rep = tits_measure(v)
        assert rep.rho == len(rep.jt_effective)


class TestCompare:
    def test_equal_pair(self):
        x = sb(V2, [1, 0], 2)
        y = sb(V2, [1, 0], 2)
        v = compare(x, y)
        assert v.measures_equal and v.rho_equal and v.dims_equal and v.subgroups_equal

    def test_distinct_classes_same_rank(self):
        v = compare(sb(V2, [1, 0], 2), sb(V2, [0, 1], 2))
        assert not v.measures_equal
        assert v.rho_equal and v.dims_equal
        assert not v.subgroups_equal

    def test_mixed_groups_rejected(self):
        with pytest.raises(GroupMismatchError):
            compare(sb(G4, [1], 4), sb(V2, [1, 0], 4))


class TestDeduce:
    def test_not_assumed_is_note_only(self):
        r = deduce(sb(V2, [1, 0], 2), sb(V2, [1, 0], 2), False)
        assert not r.refuted and not r.conclusions
        assert "not asserted" in r.notes[0]

    def test_refuted_when_measures_differ(self):
        r = deduce(sb(V2, [1, 0], 2), sb(V2, [0, 1], 2), True)
        assert r.refuted
        assert not r.conclusions

    def test_severi_brauer_two_torsion_isomorphism(self):
        r = deduce(sb(V2, [1, 1], 2), sb(V2, [1, 1], 2), True)
        assert any("isomorphic" in c.statement for c in r.conclusions)

    def test_severi_brauer_higher_period_is_cited_only(self):
        r = deduce(sb(G4, [1], 4), sb(G4, [1], 4), True)
        assert not any("isomorphic" in c.statement for c in r.conclusions)
        assert any("birational" in n for n in r.notes)

    def test_grassmannian_duality_statement(self):
        x = Grassmannian(1, CSA(V2.element([1, 0]), 4))
        y = Grassmannian(3, CSA(V2.element([1, 0]), 4))
        r = deduce(x, y, True)
        assert any("d' = d or deg - d" in c.statement for c in r.conclusions)

    def test_quadric_dim_six_isomorphism(self):
        x = Quadric(QuadraticForm.of([1, 1, 1, -1, -1, -1]))
        y = Quadric(QuadraticForm.of([2, 1, 1, -1, -1, -2]))
        r = deduce(x, y, True)
        assert any(c.statement == "quadrics are isomorphic" for c in r.conclusions)

    def test_quadric_needs_hypothesis_outside_dim_six(self):
        s = FormShadow(8, V2.element([1, 0]), False)
        r = deduce(Quadric(s), Quadric(s), True)
        assert not any("isomorphic" in c.statement for c in r.conclusions)
        assert any("I^3" in n for n in r.notes)

    def test_quadric_i3_flag_unlocks_isomorphism(self):
        s = FormShadow(8, V2.element([1, 0]), False)
        r = deduce(Quadric(s), Quadric(s), True, i3_zero=True)
        assert any(c.statement == "quadrics are isomorphic" for c in r.conclusions)

    def test_involution_degree_six(self):
        v = Involution(6, G4.element([2]), G4.element([1]), G4.element([3]))
        r = deduce(v, v, True)
        assert any("isomorphic" in c.statement for c in r.conclusions)

    def test_involution_needs_hypothesis_beyond_six(self):
        v = Involution(8, V2.element([1, 1]), V2.element([1, 0]), V2.element([0, 1]))
        assert not any(
            "isomorphic" in c.statement for c in deduce(v, v, True).conclusions
        )
        assert any(
            "isomorphic" in c.statement
            for c in deduce(v, v, True, i3_zero=True).conclusions
        )

    def test_conic_product_unlinked(self):
        x = Product((sb(V2L, [1, 0], 2), sb(V2L, [0, 1], 2)))
        r = deduce(x, x, True)
        assert any(c.statement == "products are isomorphic" for c in r.conclusions)
        assert any("common conic" in c.statement for c in r.conclusions)

    def test_conic_product_linked_gives_only_common_conic(self):
        # no index oracle: the product class has index 2, not 4
        x = Product((sb(V2, [1, 0], 2), sb(V2, [0, 1], 2)))
        r = deduce(x, x, True)
        assert any("common conic" in c.statement for c in r.conclusions)
        assert not any("products are isomorphic" in c.statement for c in r.conclusions)
        assert any("unlinked" in n for n in r.notes)

    def test_conic_product_needs_two_factors(self):
        three = Product(
            (sb(V2, [1, 0], 2), sb(V2, [0, 1], 2), sb(V2, [1, 1], 2))
        )
        with pytest.raises(ValueError):
            deduce(three, three, True)

    def test_quadric_product_dim_six(self):
        s = FormShadow(6, V2.element([1, 0]), False)
        t = FormShadow(6, V2.element([0, 1]), False)
        p = Product((Quadric(s), Quadric(t)))
        r = deduce(p, p, True)
        assert any(c.statement == "products are isomorphic" for c in r.conclusions)

    def test_quadric_product_copy_count_failure_reported(self):
        s = FormShadow(5, V2.element([1, 0]), True)
        p = Product(tuple(Quadric(s) for _ in range(8)))
        r = deduce(p, p, True, i3_zero=True)
        assert any("copy-count condition fails at l = [3, 4, 5]" in n for n in r.notes)
        assert not any("products are isomorphic" in c.statement for c in r.conclusions)

    def test_quadric_product_mixed_dims_rejected(self):
        a = Quadric(FormShadow(5, V2.element([1, 0]), False))
        b = Quadric(FormShadow(6, V2.element([1, 0]), False))
        with pytest.raises(ValueError):
            deduce(Product((a, b)), Product((a, b)), True)

    def test_cross_family_rejected(self):
        with pytest.raises(ValueError):
            deduce(sb(V2, [1, 0], 2), Quadric(FormShadow(6, V2.element([1, 0]), False)), True)
