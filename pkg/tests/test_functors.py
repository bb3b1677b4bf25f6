from math import comb

import pytest

from slarc import functors as fn
from slarc import grothendieck as gr
from slarc.modules import Cabled, Restricted, hom_dim, projective, simple, standard


class TestApproximation:
    def test_projectives(self):
        assert fn.apply_Fk(projective(1), 2).dims(6) == projective(1).dims(6)
        assert fn.apply_Fk(projective(3), 1).dim(2) == 7

    def test_refuses_non_projective(self):
        with pytest.raises(ValueError):
            fn.apply_Fk(standard(1), 1)
        with pytest.raises(TypeError):
            fn.apply_Fk(3, 1)

    @pytest.mark.parametrize("n", range(6))
    def test_derived_on_standards(self, n):
        for k in range(6):
            d = fn.derived_Fk_standard(n, k, 6)
            assert d["ok"] and d["higher_vanish"]
            assert d["h0_is"] == ("M_n" if k >= n else "0")


class TestRestriction:
    def test_simple_zero(self):
        assert Restricted(simple(0)).dims(6) == [0] * 7
        assert fn.res_simple_iso(0) is None

    def test_projective_dims(self):
        assert fn.restrict(projective(2)).dims(6) == [sum(comb(p + k, k) for k in range(3)) for p in range(7)]
        assert [comb(p + 3, 2) for p in range(7)] == fn.restrict(projective(2)).dims(6)

    def test_standard_split(self):
        mor = fn.res_standard_iso(3)
        assert mor.target.descriptor == "M_3 + M_2"
        assert mor.is_equivariant(6) and mor.is_iso(6)

    @pytest.mark.parametrize("n", range(6))
    def test_all_cases(self, n):
        assert fn.res_report(n, 6)["ok"]


class TestInduction:
    def test_projective(self):
        for n in range(5):
            assert fn.ind_projective_check(n, 6)

    def test_m1(self):
        from slarc.modules import cokernel, standard_presentation

        ind = cokernel(fn.induce(standard_presentation(1)))
        assert ind.dim(2) == comb(2, 1) + comb(2, 2)

    @pytest.mark.parametrize("n", range(5))
    def test_ses_and_acyclic(self, n):
        assert fn.ind_standard_ses(n, 6)["ok"]
        assert fn.derived_ind_standard(n, 6)["ok"]

    @pytest.mark.parametrize("n", range(4))
    def test_simple_support(self, n):
        # one dimension at every weight m >= n, including m = n itself
        assert fn.ind_simple_dims(n, 7) == [int(m >= n) for m in range(8)]


class TestCabling:
    @pytest.mark.parametrize("n", range(6))
    def test_s_counts_agree(self, n):
        for k in range(1, 6):
            for i in range(n + 1):
                assert fn.s_count_direct(n, k, i) == fn.S_count(n, k, i) == gr.s_count_partitions(n, k, i)

    @pytest.mark.parametrize("k", range(1, 5))
    def test_small_decompositions(self, k):
        assert fn.cable_standard_prediction(0, k) == {0: 1}
        assert fn.cable_standard_prediction(1, k) == {1: k}
        assert _nz(fn.cable_standard_prediction(2, k)) == _nz({2: k * k, 1: comb(k, 2)})
        assert _nz(fn.cable_standard_prediction(3, k)) == _nz({3: k ** 3, 2: 2 * k * comb(k, 2), 1: comb(k, 3)})

    def test_cabled_m2(self):
        assert fn.cable_standard_prediction(2, 2) == {1: 1, 2: 4}
        mor = fn.cable_standard_iso(2, 2)
        assert mor.is_equivariant(4) and mor.is_iso(4)

    @pytest.mark.parametrize("n", range(5))
    def test_dims(self, n):
        for k in range(1, 5):
            assert fn.cable_standard_dims_check(n, k, 4)

    def test_simples(self):
        for n in range(7):
            for k in range(1, 4):
                want = [int(n % k == 0 and p == n // k) for p in range(8)]
                assert fn.cable_simple_dims(n, k, 7) == want

    def test_functorial(self):
        for k in range(1, 4):
            for s in range(1, 4):
                assert Cabled(Cabled(standard(2), k), s).dims(3) == Cabled(standard(2), k * s).dims(3)

    def test_weak_adjointness(self):
        a = fn.weak_adjointness_check(1, standard(1), 2)
        assert a["lhs"] == a["rhs"] == 2
        for n in range(5):
            for k in range(1, 4):
                for M in (standard(1), standard(3), projective(1), simple(2)):
                    assert fn.weak_adjointness_check(n, M, k)["ok"]


class TestTensor:
    def test_projectives_and_unit(self):
        from slarc.algebra import AlgebraElement, unit_idempotent
        from slarc.diagram import enumerate_basis

        assert fn.tensor_projectives(2, 3) == 5
        for d in enumerate_basis(2, 1):
            a = AlgebraElement.basis(d)
            assert fn.tensor_morphisms(a, unit_idempotent(0)) == a

    def test_endomorphisms_of_p1(self):
        assert hom_dim(projective(1), projective(1)) == 2

    def test_interchange(self):
        assert fn.interchange_check(2)["ok"]

    def test_standard_resolutions(self):
        for n in range(1, 5):
            for m in range(1, 6 - n):
                assert fn.tensor_standard_resolutions(n, m, 5)["ok"]


@pytest.mark.parametrize("n", range(6))
def test_k0_images_match_operators(n):
    im = fn.k0_images(n)
    P, M = gr.class_of_projective(n), gr.class_of_standard(n)
    assert im["res"]["P"] == gr.op_Res(P) and im["res"]["M"] == gr.op_Res(M)
    assert im["ind"]["P"] == gr.op_Ind(P) and im["ind"]["M"] == gr.op_Ind(M)
    for k in range(n + 2):
        assert im[f"F{k}"]["P"] == gr.op_Fk(P, k) and im[f"F{k}"]["M"] == gr.op_Fk(M, k)
    for k in range(1, 4):
        assert im[f"cable{k}"]["M"] == gr.op_cable(M, k)


def _nz(d):
    return {i: c for i, c in d.items() if c}
