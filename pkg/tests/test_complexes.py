import pytest

from slarc import diagram as dg
from slarc.algebra import AlgebraElement, unit_idempotent
from slarc.complexes import (ComplexError, DiagramComplex, Summand, check_linearity, euler_class, hom_complex,
                             homology_dims, tensor_complexes, total_complex, unit_complex, zero_complex)
from slarc.grothendieck import PolyClass, parse_poly
from slarc.modules import projective, simple, standard
from slarc.resolutions import build_bicomplex, resolve_standard


def m1_resolution():
    b = AlgebraElement.basis(dg.right_adder(1, 1))
    return DiagramComplex({0: [Summand(projective(1), ())], 1: [Summand(projective(0), (1,))]},
                          {1: {(0, 0): b}}, name="0 -> P_0 -> P_1 -> 0")


def test_d2_symbolic_and_per_weight():
    C = resolve_standard(3)
    assert C.verify_d2()["ok"]
    assert C.verify_d2()["mode"] == "symbolic"


def test_entry_outside_block_rejected():
    with pytest.raises(ComplexError):
        DiagramComplex({0: [Summand(projective(1), ())], 1: [Summand(projective(0), ())]},
                       {1: {(0, 0): unit_idempotent(1)}})


def test_homology_examples():
    assert homology_dims(resolve_standard(2), 3) == [3, 0, 0]
    assert homology_dims(zero_complex(), 4, range(3)) == [0, 0, 0]
    assert homology_dims(m1_resolution(), 2) == [2, 0]


def test_weight_complex_matches_euler_characteristic():
    C = resolve_standard(3)
    for p in range(7):
        W = C.at_weight(p)
        chi = sum((-1) ** t * W.dim(t) for t in C.positions)
        assert chi == sum((-1) ** t * h for t, h in zip(C.positions, C.homology_dims(p)))


def test_euler_class():
    assert euler_class(resolve_standard(2)) == parse_poly("x^2 - 2*x + 1")
    assert euler_class(unit_complex()) == PolyClass.monomial(0)


def test_tensor_unit_and_terms():
    C = resolve_standard(2)
    U = tensor_complexes(C, unit_complex())
    assert [len(U.terms[t]) for t in U.positions] == [len(C.terms[t]) for t in C.positions]
    for p in range(5):
        assert U.homology_dims(p) == C.homology_dims(p)
    T = tensor_complexes(resolve_standard(1), resolve_standard(1))
    assert {t: sorted(s.n for s in T.terms[t]) for t in T.positions} == {0: [2], 1: [1, 1], 2: [0]}


def test_tensor_homology_concentrated():
    T = tensor_complexes(resolve_standard(2), resolve_standard(1))
    assert T.verify_d2()["ok"]
    for p in range(7):
        h = T.homology_dims(p, range(4))
        assert h[0] == standard(3).dim(p) and h[1:] == [0, 0, 0]


def test_linearity():
    assert check_linearity(resolve_standard(4))
    bad = DiagramComplex({0: [Summand(projective(2), ())], 1: [Summand(projective(2), ())]},
                         {1: {(0, 0): unit_idempotent(2)}})
    assert not check_linearity(bad)


def test_hom_complex_against_simple():
    H = hom_complex(resolve_standard(2), simple(0))
    assert [H.homology(t) for t in range(3)] == [0, 0, 1]
    with pytest.raises(ComplexError):
        hom_complex(DiagramComplex({0: [Summand(standard(1), ())]}, {}), simple(1))


def test_total_complex_of_bicomplex():
    T = total_complex(build_bicomplex(1, 3))
    assert sorted(s.n for s in T.terms[1]) == [0, 2, 2]
    assert T.verify_d2()["ok"]


def test_json_shape():
    js = resolve_standard(1).to_json()
    assert set(js) >= {"terms", "diffs"}
    assert js["diffs"]["1"][0][0]["terms"][0]["diagram"] == dg.right_adder(1, 1).to_json()
