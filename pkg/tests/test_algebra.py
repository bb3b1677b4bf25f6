from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from slarc import diagram as dg
from slarc.algebra import (CUP, MINUS, PLUS, AlgebraElement, FlavorError, all_sign_sequences,
                           equivalence_witness, minus_positions, mul_basis, multiply, product,
                           sign_idempotent, tensor, unit_idempotent)
from slarc.aplus import witness_check
from slarc.diagram import Diagram

from strategies import composable, diagrams, sign_sequences


def el(d, flavor=MINUS, c=1):
    return AlgebraElement({d: c}, flavor)


@st.composite
def elements(draw, left, right, flavor=MINUS):
    ds = draw(st.lists(diagrams(left, right), max_size=3))
    cs = draw(st.lists(st.integers(-3, 3), min_size=len(ds), max_size=len(ds)))
    return AlgebraElement(list(zip(ds, cs)), flavor)


class TestProduct:
    def test_unit(self):
        for d in dg.enumerate_basis(2, 3):
            assert unit_idempotent(2) * el(d) == el(d)

    def test_cup_squared(self):
        c = el(CUP)
        assert not (c * c)
        assert el(CUP, PLUS) * el(CUP, PLUS) == el(CUP, PLUS)

    def test_mismatched_sizes_give_zero(self):
        assert not (unit_idempotent(1) * unit_idempotent(2))
        for n in range(4):
            for m in range(4):
                if n != m:
                    assert not (unit_idempotent(n) * unit_idempotent(m))

    def test_flavors_do_not_mix(self):
        with pytest.raises(FlavorError):
            el(CUP, PLUS) * el(CUP, MINUS)
        with pytest.raises(FlavorError):
            AlgebraElement({}, "both")

    def test_mul_basis_matches_compose(self):
        for x in dg.enumerate_basis(2, 2):
            for y in dg.enumerate_basis(2, 1):
                r, f = dg.compose(x, y)
                assert mul_basis(x, y, PLUS) == r
                assert mul_basis(x, y, MINUS) == (r if f == 0 else None)

    @given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.data())
    def test_associative_and_bilinear(self, a, b, c, d, data):
        for flavor in (MINUS, PLUS):
            x = data.draw(elements(a, b, flavor))
            y = data.draw(elements(b, c, flavor))
            y2 = data.draw(elements(b, c, flavor))
            z = data.draw(elements(c, d, flavor))
            assert (x * y) * z == x * (y * z)
            assert x * (y + y2) == x * y + x * y2
            assert (x * y).scale(Fraction(1, 2)) == x * y.scale(Fraction(1, 2))

    @given(composable(2, max_points=5))
    def test_minus_grading(self, xy):
        x, y = xy
        r = mul_basis(x, y, MINUS)
        if r is not None:
            assert dg.sarc_degree(r) == dg.sarc_degree(x) + dg.sarc_degree(y)


class TestElement:
    def test_components(self):
        a = unit_idempotent(2) + el(CUP)
        assert a.component(1, 1) == el(CUP)
        assert a.component(2, 2) == unit_idempotent(2)
        total = AlgebraElement.zero()
        for m, n in a.blocks():
            total = total + a.component(m, n)
        assert total == a

    def test_orthogonal_units(self):
        assert unit_idempotent(3) * unit_idempotent(3) == unit_idempotent(3)
        assert not (unit_idempotent(3) * unit_idempotent(2))

    def test_json_roundtrip(self):
        a = el(CUP, c=Fraction(3, 4)) - unit_idempotent(1)
        assert AlgebraElement.from_json(a.to_json()) == a
        bare = AlgebraElement.from_json(CUP.to_json(), PLUS)
        assert bare == el(CUP, PLUS)

    def test_cancellation_drops_terms(self):
        a = el(CUP) - el(CUP)
        assert not a and a == AlgebraElement.zero()

    def test_multiply_function_and_product(self):
        x = el(dg.elementary(2, 1, "right"))
        y = el(dg.elementary(2, 1, "left"))
        assert multiply(x, y) == x * y
        assert product(x, y, x) == x * y * x

    def test_tensor(self):
        one = unit_idempotent(1)
        assert tensor(one, one) == unit_idempotent(2)
        assert tensor(el(CUP), unit_idempotent(0)) == el(CUP)


class TestSignIdempotents:
    def test_single_signs(self):
        e_plus, e_minus = sign_idempotent("+"), sign_idempotent("-")
        assert e_plus == el(CUP, PLUS)
        assert e_minus == unit_idempotent(1, PLUS) - el(CUP, PLUS)
        assert not (e_plus * e_minus) and not (e_minus * e_plus)

    def test_minus_minus(self):
        e = sign_idempotent("--")
        assert e * e == e
        assert len(e.terms) == 4
        assert {d for d in e.terms} <= set(dg.enumerate_basis(2, 2))

    def test_minus_flavor_refused(self):
        with pytest.raises(FlavorError):
            sign_idempotent("+", MINUS)
        with pytest.raises(ValueError):
            sign_idempotent("+x")

    @pytest.mark.parametrize("n", range(5))
    def test_complete_orthogonal(self, n):
        es = [sign_idempotent(eps) for eps in all_sign_sequences(n)]
        total = AlgebraElement.zero(PLUS)
        for i, e in enumerate(es):
            assert e * e == e
            for j, f in enumerate(es):
                if i != j:
                    assert not (e * f)
            total = total + e
        assert total == unit_idempotent(n, PLUS)

    def test_witnesses(self):
        there, back = equivalence_witness("-")
        assert there == back == unit_idempotent(1, PLUS)
        there, back = equivalence_witness("+")
        assert there.blocks() == [(1, 0)] and back.blocks() == [(0, 1)]
        e = sign_idempotent("+")
        assert e * there * back * e == e

    def test_five_term_pattern(self):
        assert minus_positions("-+--+") == (2, 3, 5)
        there, _ = equivalence_witness("-+--+")
        assert list(there.terms) == [Diagram(5, 3, (2, 3, 5), (1, 2, 3))]
        assert witness_check("-+--+")

    @given(sign_sequences())
    def test_witness_identities(self, eps):
        assert witness_check(eps)
