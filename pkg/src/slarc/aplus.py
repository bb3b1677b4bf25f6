"""The plus flavor: sign idempotents, their equivalences, and K_0."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb

from . import diagram as dg
from . import linalg as la
from .algebra import (PLUS, AlgebraElement, all_sign_sequences, equivalence_witness, product,
                      sign_idempotent, unit_idempotent)
from .grothendieck import PolyClass


def minus_idempotent(m: int) -> AlgebraElement:
    """``e_(-^m)``."""
    return sign_idempotent("-" * m)


def idempotent_report(n: int) -> dict:
    """Idempotence, mutual orthogonality and completeness of ``{e_eps : |eps| = n}``."""
    es = [(eps, sign_idempotent(eps)) for eps in all_sign_sequences(n)]
    idem = all(e * e == e for _, e in es)
    orth = all(not (e * f) for i, (_, e) in enumerate(es) for j, (_, f) in enumerate(es) if i != j)
    total = AlgebraElement.zero(PLUS)
    for _, e in es:
        total = total + e
    return {"n": n, "count": len(es), "idempotent": idem, "orthogonal": orth,
            "sum_is_unit": total == unit_idempotent(n, PLUS), "ok": idem and orth and total == unit_idempotent(n, PLUS)}


def witness_check(eps) -> bool:
    """Both composite identities for ``e_eps ~ e_(-^m)``."""
    e = sign_idempotent(eps)
    there, back = equivalence_witness(eps)
    m = there.blocks()[0][1]
    em = minus_idempotent(m)
    return product(em, back, e, there, em) == em and product(e, there, em, back, e) == e


@dataclass
class PlusDecomposition:
    n: int
    multiplicities: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.multiplicities.values())

    def to_json(self) -> dict:
        return {"n": self.n, "multiplicities": {str(m): str(c) for m, c in sorted(self.multiplicities.items())},
                "sequences": str(self.total)}


def decompose_projective_plus(n: int) -> PlusDecomposition:
    """``P_n = ⊕_eps P_eps``, grouped by the number of minuses.

    Each ``eps`` is placed in class m only after its equivalence with
    ``e_(-^m)`` is verified.
    """
    counts: Counter = Counter()
    for eps in all_sign_sequences(n):
        if not witness_check(eps):
            raise ArithmeticError(f"equivalence witness fails for {''.join(eps)}")
        counts[eps.count("-")] += 1
    return PlusDecomposition(n, dict(sorted(counts.items())))


def _mult_matrix(e: AlgebraElement, basis, side: str) -> la.Cols:
    index = {d: i for i, d in enumerate(basis)}
    cols = []
    for d in basis:
        b = AlgebraElement.basis(d, PLUS)
        img = e * b if side == "left" else b * e
        cols.append({index[x]: c for x, c in img.items()})
    return cols


def hom_dim_plus(m: int, n: int) -> int:
    """``dim e_(-^m) A+ e_(-^n)``: rank of ``x -> e_m x e_n`` on ``1_m A+ 1_n``."""
    basis = dg.enumerate_basis(m, n)
    left = _mult_matrix(minus_idempotent(m), basis, "left")
    right = _mult_matrix(minus_idempotent(n), basis, "right")
    return la.rank(la.compose(left, right))


def hom_table(N: int) -> list[list[int]]:
    return [[hom_dim_plus(m, n) for n in range(N + 1)] for m in range(N + 1)]


def k0_plus_class(n: int) -> PolyClass:
    """Solve ``x^k = Σ_m C(k,m) [P_(-^m)]`` for ``k <= n`` and return ``[P_(-^n)]``."""
    classes: list[PolyClass] = []
    for k in range(n + 1):
        c = PolyClass.monomial(k)
        for m in range(k):
            c = c - classes[m].scale(comb(k, m))
        classes.append(c)
    return classes[n]
