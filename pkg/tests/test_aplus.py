from math import comb

import pytest

from slarc import aplus
from slarc.grothendieck import class_of_standard, parse_poly


@pytest.mark.parametrize("n", range(6))
def test_idempotents(n):
    rep = aplus.idempotent_report(n)
    assert rep["ok"] and rep["count"] == 2 ** n


def test_decomposition_examples():
    assert aplus.decompose_projective_plus(2).multiplicities == {0: 1, 1: 2, 2: 1}
    assert aplus.decompose_projective_plus(0).multiplicities == {0: 1}
    d = aplus.decompose_projective_plus(4)
    assert d.multiplicities == {0: 1, 1: 4, 2: 6, 3: 4, 4: 1} and d.total == 16


@pytest.mark.parametrize("n", range(7))
def test_decomposition_binomial(n):
    assert aplus.decompose_projective_plus(n).multiplicities == {m: comb(n, m) for m in range(n + 1)}


def test_hom_examples():
    assert aplus.hom_dim_plus(2, 2) == 1
    assert aplus.hom_dim_plus(1, 2) == 0
    assert aplus.hom_dim_plus(0, 0) == 1


def test_hom_table_is_identity():
    assert aplus.hom_table(6) == [[int(m == n) for n in range(7)] for m in range(7)]


def test_k0_examples():
    assert aplus.k0_plus_class(0) == parse_poly("1")
    assert aplus.k0_plus_class(1) == parse_poly("x - 1")
    assert aplus.k0_plus_class(3) == parse_poly("x^3 - 3*x^2 + 3*x - 1")
    for n in range(7):
        assert aplus.k0_plus_class(n) == class_of_standard(n)


def test_witness_failure_is_loud(monkeypatch):
    monkeypatch.setattr(aplus, "witness_check", lambda eps: False)
    with pytest.raises(ArithmeticError):
        aplus.decompose_projective_plus(1)
