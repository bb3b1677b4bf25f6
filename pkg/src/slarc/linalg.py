"""Exact sparse linear algebra over the rationals or a prime field.

Vectors are ``dict[int, scalar]`` with no stored zeros.  A linear map is a
list of such vectors, one per source basis element (its column).  Over the
rationals, scalars are ``int`` whenever possible and ``Fraction`` otherwise;
over GF(p) they are ints in ``range(p)``.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
from fractions import Fraction
from typing import Iterable, Iterator

Vector = dict
Cols = list  # list[Vector]

DEFAULT_PRIME = 65521


class Field:
    """The ground field: ``Field()`` is Q, ``Field(p)`` is GF(p)."""

    __slots__ = ("modulus",)

    def __init__(self, modulus: int | None = None):
        if modulus is not None and (modulus < 2 or any(modulus % d == 0 for d in range(2, int(modulus**0.5) + 1))):
            raise ValueError(f"{modulus} is not prime")
        self.modulus = modulus

    def __repr__(self):
        return "QQ" if self.modulus is None else f"GF({self.modulus})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("Field", self.modulus))

    @property
    def tag(self) -> str:
        return "q" if self.modulus is None else f"fp:{self.modulus}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``q`` or ``fp:<prime>``."""
        text = text.strip().lower()
        if text in ("q", "qq", "rational", "rationals"):
            return cls()
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        if text == "fp":
            return cls(DEFAULT_PRIME)
        raise ValueError(f"unknown field {text!r}; use 'q' or 'fp:<prime>'")

    def coerce(self, x):
        """Map an int or Fraction into this field, in canonical form."""
        p = self.modulus
        if p is None:
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, p) % p
        return x % p

    def div(self, a, b):
        p = self.modulus
        if p is not None:
            return a * pow(b, -1, p) % p
        if type(a) is int and type(b) is int:
            q, r = divmod(a, b)
            if r == 0:
                return q
        x = Fraction(a) / b
        return x.numerator if x.denominator == 1 else x


QQ = Field()

_current: contextvars.ContextVar[Field] = contextvars.ContextVar("slarc_field", default=QQ)


def get_field() -> Field:
    return _current.get()


@contextlib.contextmanager
def use_field(field: Field | str) -> Iterator[Field]:
    """Run a block with a different ground field."""
    if isinstance(field, str):
        field = Field.parse(field)
    token = _current.set(field)
    try:
        yield field
    finally:
        _current.reset(token)


def coerce_vector(vec: Vector, field: Field) -> Vector:
    out = {}
    for k, v in vec.items():
        v = field.coerce(v)
        if v:
            out[k] = v
    return out


class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    Each stored row is keyed by its leading (smallest) coordinate.  ``reduce``
    returns the canonical representative of a vector modulo the span: its
    support avoids every pivot coordinate.
    """

    def __init__(self, field: Field | None = None):
        self.field = field or get_field()
        self.pivots: dict[int, Vector] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _subtract(self, vec: Vector, c: int, new_keys: list | None) -> None:
        p = self.field.modulus
        row = self.pivots[c]
        f = self.field.div(vec[c], row[c])
        for k, v in row.items():
            w = vec.get(k)
            if w is None:
                w = -f * v
                if p is not None:
                    w %= p
                vec[k] = w
                if new_keys is not None:
                    new_keys.append(k)
            else:
                w = w - f * v
                if p is not None:
                    w %= p
                if w:
                    vec[k] = w
                else:
                    del vec[k]

    def _eliminate(self, vec: Vector, full: bool) -> Vector:
        pivots = self.pivots
        vec = dict(vec)
        if not full:
            while vec:
                c = min(vec)
                if c not in pivots:
                    break
                self._subtract(vec, c, None)
            return vec
        heap = [k for k in vec if k in pivots]
        heapq.heapify(heap)
        fresh: list = []
        while heap:
            c = heapq.heappop(heap)
            if c not in vec:
                continue
            self._subtract(vec, c, fresh)
            for k in fresh:
                if k in pivots:
                    heapq.heappush(heap, k)
            fresh.clear()
        return vec

    def add(self, vec: Vector) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        if not vec:
            return False
        v = self._eliminate(vec, full=False)
        if not v:
            return False
        self.pivots[min(v)] = v
        return True

    def reduce(self, vec: Vector) -> Vector:
        return self._eliminate(vec, full=True)

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)


def _components(cols: Cols) -> list[list[int]]:
    """Group column indices that share row coordinates (union-find)."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j, col in enumerate(cols):
        rj = find(("c", j))
        for i in col:
            ri = find(("r", i))
            if ri != rj:
                parent[ri] = rj
    groups: dict = {}
    for j in range(len(cols)):
        groups.setdefault(find(("c", j)), []).append(j)
    return list(groups.values())


def rank(cols: Cols, field: Field | None = None) -> int:
    """Rank of a sparse matrix given by its columns."""
    field = field or get_field()
    cols = [coerce_vector(c, field) for c in cols]
    total = 0
    for group in _components(cols):
        if len(group) == 1:
            total += 1 if cols[group[0]] else 0
            continue
        ech = Echelon(field)
        for j in group:
            ech.add(cols[j])
        total += ech.rank
    return total


def apply(cols: Cols, vec: Vector, field: Field | None = None) -> Vector:
    """Apply the map with columns ``cols`` to ``vec``."""
    p = (field or get_field()).modulus
    out: Vector = {}
    for j, a in vec.items():
        for i, b in cols[j].items():
            w = out.get(i, 0) + a * b
            if p is not None:
                w %= p
            if w:
                out[i] = w
            else:
                out.pop(i, None)
    return out


def compose(outer: Cols, inner: Cols, field: Field | None = None) -> Cols:
    """Columns of ``outer ∘ inner``."""
    return [apply(outer, col, field) for col in inner]


def cols_equal(a: Cols, b: Cols, field: Field | None = None) -> bool:
    field = field or get_field()
    if len(a) != len(b):
        return False
    return all(coerce_vector(x, field) == coerce_vector(y, field) for x, y in zip(a, b))


def is_zero(cols: Cols, field: Field | None = None) -> bool:
    field = field or get_field()
    return all(not coerce_vector(c, field) for c in cols)


def identity(n: int) -> Cols:
    return [{i: 1} for i in range(n)]


def kernel_dim(cols: Cols, field: Field | None = None) -> int:
    return len(cols) - rank(cols, field)


def dense(cols: Cols, nrows: int) -> list[list]:
    """Row-major dense form, mostly for display and tests."""
    out = [[0] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            out[i][j] = v
    return out


def from_dense(rows: Iterable[Iterable]) -> Cols:
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    return [{i: r[j] for i, r in enumerate(rows) if r[j]} for j in range(ncols)]
