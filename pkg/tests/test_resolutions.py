from math import comb

import pytest

from slarc import resolutions as rs
from slarc.complexes import ComplexError, DiagramComplex, check_linearity


def _sign(e):
    return -1 if e % 2 else 1


class TestStandardResolution:
    def test_m1(self):
        C = rs.resolve_standard(1)
        assert [s.n for s in C.terms[0]] == [1] and [s.n for s in C.terms[1]] == [0]
        [(key, e)] = C.diffs[1].items()
        assert list(e.terms) == [rs.dg.right_adder(1, 1)]

    def test_adder_position_example(self):
        assert rs.adder_position(7, (1, 3, 4, 5), 1) == 1
        assert rs.remove((1, 3, 4, 5), 1) == (3, 4, 5)

    @pytest.mark.parametrize("n", range(6))
    def test_exact(self, n):
        C = rs.resolve_standard(n)
        assert [len(C.terms[m]) for m in range(n + 1)] == [comb(n, m) for m in range(n + 1)]
        assert C.verify_d2()["ok"]
        rep = rs.augmentation_report(C, rs.standard_augmentation(n), 7)
        assert rep["ok"]

    def test_weight_five_of_m3(self):
        C = rs.resolve_standard(3)
        assert C.homology_dims(5) == [10, 0, 0, 0]

    def test_sign_flip_mutation_fails(self):
        C = rs.resolve_standard(2, check=False)
        key = next(iter(C.diffs[1]))
        C.diffs[1][key] = C.diffs[1][key].scale(-1)
        rep = C.verify_d2()
        assert not rep["ok"]
        assert len(rep["failures"]) == 1

    def test_constructor_rejects_broken_signs(self, monkeypatch):
        monkeypatch.setitem(rs.SIGNS, "standard", lambda l: 1)
        with pytest.raises(ComplexError):
            rs.resolve_standard(2)

    def test_linear(self):
        for n in range(7):
            assert check_linearity(rs.resolve_standard(n))


class TestSimpleByStandards:
    def test_label_example(self):
        assert rs.remove_renumber((3, 6, 8), 3) == (5, 7)

    def test_k0_terms(self):
        C = rs.resolve_simple_by_standard(0, 5)
        for m in range(6):
            assert [s.label for s in C.terms[m]] == [tuple(range(1, m + 1))]
        for p in range(6):
            assert sum((-1) ** m * comb(p, m) for m in range(p + 1)) == int(p == 0)

    @pytest.mark.parametrize("k", range(4))
    def test_exact(self, k):
        C = rs.resolve_simple_by_standard(k, 8 - k + 1)
        assert C.verify_d2(8)["ok"]
        assert rs.augmentation_report(C, rs.simple_augmentation(k), 8, window=True)["ok"]

    def test_doubled_sign_breaks_d2(self, monkeypatch):
        monkeypatch.setitem(rs.SIGNS, "by_standard", lambda l: _sign(l) * _sign(l))
        C = rs.resolve_simple_by_standard(2, 3, check=False)
        assert not C.verify_d2(5)["ok"]


class TestBicomplex:
    def test_term_counts(self):
        assert rs.bicomplex_term_count(1, 1) == {0: 1, 2: 2}
        for n in range(4):
            assert rs.bicomplex_term_count(n, 0) == {n: 1}

    @pytest.mark.parametrize("n", range(3))
    def test_anticommutes(self, n):
        assert rs.build_bicomplex(n, 5).verify()["ok"]

    def test_untwisted_horizontal_sign_fails(self, monkeypatch):
        monkeypatch.setitem(rs.SIGNS, "horizontal", lambda i, k: _sign(i - 1))
        rep = rs.build_bicomplex(1, 3, check=False).verify()
        assert not rep["ok"]

    @pytest.mark.parametrize("n", range(3))
    def test_total_exact(self, n):
        T = rs.resolve_simple_projective(n, 4)
        assert rs.augmentation_report(T, rs.projective_simple_augmentation(n), 6, window=True)["ok"]
        assert check_linearity(T)

    def test_total_terms_match_formula(self):
        for n in range(3):
            T = rs.resolve_simple_projective(n, 4)
            for t in range(5):
                got = {}
                for s in T.terms[t]:
                    got[s.n] = got.get(s.n, 0) + 1
                assert got == rs.bicomplex_term_count(n, t)

    def test_bad_bounds(self):
        with pytest.raises(ValueError):
            rs.resolve_standard(-1)
        with pytest.raises(ValueError):
            rs.build_bicomplex(1, -1)


class TestTensorPowers:
    def test_terms_of_square(self):
        T = rs.m1_tensor_power(2)
        assert {t: sorted(s.n for s in T.terms[t]) for t in T.positions} == {0: [2], 1: [1, 1], 2: [0]}

    @pytest.mark.parametrize("n", range(1, 6))
    def test_isomorphic_to_standard_resolution(self, n):
        assert rs.tensor_power_isomorphism(n)["ok"]

    def test_label_map(self):
        assert rs.tensor_power_label(((1, ()), ()), 3) == (3,)
        assert rs.tensor_power_label(((), (1,)), 2) == (1,)

    def test_mismatch_detected(self):
        from slarc.complexes import signed_isomorphism

        S = rs.resolve_standard(2)
        D = DiagramComplex(S.terms, {t: {k: e.scale(2) for k, e in es.items()} for t, es in S.diffs.items()})
        assert not signed_isomorphism(S, D, lambda t, label: label)["ok"]


def test_truncation_detected_without_window():
    # a window of the resolution of L_1 is not exact at its last position
    C = rs.resolve_simple_by_standard(1, 2)
    assert rs.augmentation_report(C, rs.simple_augmentation(1), 4, window=True)["ok"]
    assert not rs.augmentation_report(C, rs.simple_augmentation(1), 4)["ok"]
