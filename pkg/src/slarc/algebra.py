"""Linear combinations of slarc diagrams and the two multiplications.

``minus`` sets a floating arc to zero, ``plus`` sets it to one.  Coefficients
are exact rationals (``int`` or ``Fraction``); they are mapped into the active
ground field only when a linear map is materialized.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Mapping

from . import diagram as dg
from .diagram import Diagram

MINUS = "minus"
PLUS = "plus"
FLAVORS = (MINUS, PLUS)


class FlavorError(ValueError):
    pass


def diagram_key(d: Diagram):
    return (d.left, d.right, d.width, d.larc_left, d.larc_right)


def mul_basis(x: Diagram, y: Diagram, flavor: str = MINUS) -> Diagram | None:
    """Product of two basis diagrams, or None when it vanishes."""
    if x.right != y.left:
        return None
    r, floating = dg.compose(x, y)
    if floating and flavor == MINUS:
        return None
    return r


def _canon(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class AlgebraElement:
    """A finite formal sum of diagrams with nonzero rational coefficients."""

    __slots__ = ("flavor", "_terms", "_hash")

    def __init__(self, terms: Mapping[Diagram, object] | Iterable = (), flavor: str = MINUS):
        if flavor not in FLAVORS:
            raise FlavorError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        acc: dict[Diagram, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for d, c in items:
            acc[d] = acc.get(d, 0) + c
        self._terms = {d: _canon(c) for d, c in sorted(acc.items(), key=lambda t: diagram_key(t[0])) if c != 0}
        self._hash = None

    @classmethod
    def basis(cls, d: Diagram, flavor: str = MINUS) -> "AlgebraElement":
        return cls({d: 1}, flavor)

    @classmethod
    def zero(cls, flavor: str = MINUS) -> "AlgebraElement":
        return cls({}, flavor)

    @property
    def terms(self) -> dict[Diagram, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.flavor == other.flavor and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.flavor, tuple(self._terms.items())))
        return self._hash

    def _same(self, other: "AlgebraElement"):
        if self.flavor != other.flavor:
            raise FlavorError("cannot combine elements of different flavors")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(list(self._terms.items()) + list(other._terms.items()), self.flavor)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({d: -c for d, c in self._terms.items()}, self.flavor)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement({d: c * v for d, v in self._terms.items()}, self.flavor)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, other)

    def component(self, m: int, n: int) -> "AlgebraElement":
        """Projection onto the block ``1_m A 1_n``."""
        return AlgebraElement({d: c for d, c in self._terms.items() if d.left == m and d.right == n}, self.flavor)

    def blocks(self) -> list[tuple[int, int]]:
        return sorted({(d.left, d.right) for d in self._terms})

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {dg.sarc_degree(d) for d in self._terms}
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def map_diagrams(self, f) -> "AlgebraElement":
        """Apply a diagram-level map linearly (reflect, iota, cable, ...)."""
        return AlgebraElement([(f(d), c) for d, c in self._terms.items()], self.flavor)

    def to_json(self) -> dict:
        terms = []
        for d, c in self._terms.items():
            c = Fraction(c)
            terms.append({"coeff": {"num": str(c.numerator), "den": str(c.denominator)}, "diagram": d.to_json()})
        return {"flavor": self.flavor, "terms": terms}

    @classmethod
    def from_json(cls, data: dict, flavor: str | None = None) -> "AlgebraElement":
        """Accept either an element or a bare diagram (coefficient 1)."""
        if "terms" not in data:
            return cls.basis(Diagram.from_json(data), flavor or MINUS)
        terms = []
        for t in data["terms"]:
            c = t["coeff"]
            if isinstance(c, dict):
                c = Fraction(int(c["num"]), int(c.get("den", "1")))
            else:
                c = Fraction(str(c))
            terms.append((Diagram.from_json(t["diagram"]), c))
        return cls(terms, data.get("flavor", flavor or MINUS))

    def __repr__(self):
        if not self._terms:
            return f"0<{self.flavor}>"
        parts = []
        for d, c in self._terms.items():
            parts.append(f"{c}*{d}" if c != 1 else str(d))
        return " + ".join(parts) + f" <{self.flavor}>"


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of the diagram product under the shared flavor."""
    a._same(b)
    flavor = a.flavor
    by_left: dict[int, list] = {}
    for y, c in b.items():
        by_left.setdefault(y.left, []).append((y, c))
    acc: dict[Diagram, object] = {}
    for x, c in a.items():
        for y, e in by_left.get(x.right, ()):
            r = mul_basis(x, y, flavor)
            if r is not None:
                acc[r] = acc.get(r, 0) + c * e
    return AlgebraElement(acc, flavor)


def product(*elements: AlgebraElement) -> AlgebraElement:
    out = elements[0]
    for e in elements[1:]:
        out = multiply(out, e)
    return out


def unit_idempotent(n: int, flavor: str = MINUS) -> AlgebraElement:
    return AlgebraElement.basis(dg.identity(n), flavor)


def reflect(a: AlgebraElement) -> AlgebraElement:
    return a.map_diagrams(dg.reflect)


def iota(a: AlgebraElement) -> AlgebraElement:
    return a.map_diagrams(dg.iota)


def cable(a: AlgebraElement, k: int) -> AlgebraElement:
    return a.map_diagrams(lambda d: dg.cable(d, k))


def tensor(alpha: AlgebraElement, beta: AlgebraElement) -> AlgebraElement:
    """``alpha ⊗ beta``: alpha stacked on top of beta, bilinearly."""
    alpha._same(beta)
    return AlgebraElement([(dg.stack(x, y), c * e) for (x, c), (y, e) in iproduct(alpha.items(), beta.items())],
                          alpha.flavor)


# -- sign sequences and idempotents of the plus flavor ----------------------

CUP = dg.Diagram(1, 1, (), ())  # one left sarc over one right sarc


def parse_signs(eps) -> tuple[str, ...]:
    """Accept ``"-+-"`` or an iterable of '+'/'-'."""
    seq = tuple(eps)
    if any(s not in "+-" or len(s) != 1 for s in seq):
        raise ValueError(f"sign sequence must use '+' and '-', got {eps!r}")
    return seq


def sign_idempotent(eps, flavor: str = PLUS) -> AlgebraElement:
    """``e_eps``: tensor product of e_+ = c and e_- = 1_1 - c, first factor on top."""
    if flavor != PLUS:
        raise FlavorError("sign idempotents exist only when the floating arc is 1")
    seq = parse_signs(eps)
    e_plus = AlgebraElement.basis(CUP, PLUS)
    e_minus = unit_idempotent(1, PLUS) - e_plus
    out = unit_idempotent(0, PLUS)
    for s in seq:
        # earlier factors sit above later ones
        out = tensor(out, e_plus if s == "+" else e_minus)
    return out


def minus_positions(eps) -> tuple[int, ...]:
    """Positions (bottom-to-top) of the '-' factors of ``eps``."""
    seq = parse_signs(eps)
    n = len(seq)
    return tuple(sorted(n - j for j, s in enumerate(seq) if s == "-"))


def equivalence_witness(eps, flavor: str = PLUS) -> tuple[AlgebraElement, AlgebraElement]:
    """The pair (d_{eps->m}, d_{m->eps}) realizing e_eps ~ e_(-^m)."""
    if flavor != PLUS:
        raise FlavorError("equivalence witnesses are defined for the plus flavor")
    seq = parse_signs(eps)
    pos = minus_positions(seq)
    m = len(pos)
    there = Diagram(len(seq), m, pos, tuple(range(1, m + 1)))
    return AlgebraElement.basis(there, PLUS), AlgebraElement.basis(dg.reflect(there), PLUS)


def all_sign_sequences(n: int) -> list[tuple[str, ...]]:
    return [tuple(s) for s in iproduct("+-", repeat=n)]
