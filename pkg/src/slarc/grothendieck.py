"""K_0 as Z[x]: classes of projectives are x^n, classes of standards (x-1)^n."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

PROJECTIVE = "projective"
STANDARD = "standard"


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class PolyClass:
    """Integer coefficients in the basis ``{x^n}`` or ``{(x-1)^n}``."""

    coeffs: tuple[int, ...]
    basis: str = PROJECTIVE

    def __post_init__(self):
        if self.basis not in (PROJECTIVE, STANDARD):
            raise ValueError(f"unknown basis {self.basis!r}")
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def monomial(cls, n: int, basis: str = PROJECTIVE) -> "PolyClass":
        return cls((0,) * n + (1,), basis)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> int:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def to(self, basis: str) -> "PolyClass":
        return convert(self, basis)

    def __add__(self, other: "PolyClass") -> "PolyClass":
        other = other.to(self.basis)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyClass(tuple(self.coeff(i) + other.coeff(i) for i in range(n)), self.basis)

    def __neg__(self):
        return PolyClass(tuple(-c for c in self.coeffs), self.basis)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "PolyClass":
        return PolyClass(tuple(k * c for c in self.coeffs), self.basis)

    def __mul__(self, other: "PolyClass") -> "PolyClass":
        """Ring product; computed in the projective basis, returned in ours."""
        a = self.to(PROJECTIVE).coeffs
        b = other.to(PROJECTIVE).coeffs
        out = [0] * (len(a) + len(b))
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return PolyClass(tuple(out), PROJECTIVE).to(self.basis)

    def __eq__(self, other):
        if not isinstance(other, PolyClass):
            return NotImplemented
        return self.to(PROJECTIVE).coeffs == other.to(PROJECTIVE).coeffs

    def __hash__(self):
        return hash(self.to(PROJECTIVE).coeffs)

    def to_json(self) -> dict:
        return {"basis": self.basis, "coeffs": [str(c) for c in self.coeffs]}

    def __str__(self) -> str:
        var = "x" if self.basis == PROJECTIVE else "(x-1)"
        if not self.coeffs:
            return "0"
        parts = []
        for n in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[n]
            if c == 0:
                continue
            mono = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
            if mono and abs(c) == 1:
                term = mono
            elif mono:
                term = f"{abs(c)}*{mono}"
            else:
                term = str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


def convert(f: PolyClass, basis: str) -> PolyClass:
    """Change basis with the binomial / signed binomial triangular matrices.

    ``x^n = sum_m C(n,m) (x-1)^m`` and ``(x-1)^n = sum_m (-1)^(n-m) C(n,m) x^m``.
    """
    if f.basis == basis:
        return f
    sign = 1 if f.basis == PROJECTIVE else -1
    out = [0] * len(f.coeffs)
    for n, c in enumerate(f.coeffs):
        if c:
            for m in range(n + 1):
                out[m] += c * comb(n, m) * (sign ** (n - m))
    return PolyClass(tuple(out), basis)


def inner_product(f: PolyClass, g: PolyClass) -> int:
    """``(x^n, x^m) = C(n+m, m)``, extended bilinearly."""
    a = f.to(PROJECTIVE).coeffs
    b = g.to(PROJECTIVE).coeffs
    return sum(x * y * comb(i + j, j) for i, x in enumerate(a) if x for j, y in enumerate(b) if y)


def class_of_projective(n: int) -> PolyClass:
    return PolyClass.monomial(n, PROJECTIVE)


def class_of_standard(n: int) -> PolyClass:
    return PolyClass.monomial(n, STANDARD)


# -- operators -----------------------------------------------------------------

def op_Ind(f: PolyClass) -> PolyClass:
    """Multiplication by x."""
    a = f.to(PROJECTIVE).coeffs
    return PolyClass((0,) + a, PROJECTIVE).to(f.basis)


def op_Res(f: PolyClass) -> PolyClass:
    """``f(x) -> (x f(x) - f(1)) / (x - 1)``, by exact synthetic division."""
    a = list(f.to(PROJECTIVE).coeffs)
    num = [0] + a
    num[0] -= sum(a)
    # divide by (x - 1) from the top coefficient down
    q = [0] * max(len(num) - 1, 0)
    carry = 0
    for i in range(len(num) - 1, 0, -1):
        carry = num[i] + carry
        q[i - 1] = carry
    remainder = num[0] + carry if num else 0
    if remainder != 0:
        raise ArithmeticError("x f(x) - f(1) is not divisible by x - 1")
    return PolyClass(tuple(q), PROJECTIVE).to(f.basis)


def op_Fk(f: PolyClass, k: int) -> PolyClass:
    """``x^n -> x^n`` if ``k >= n``, else the first ``k+1`` terms of its (x-1)-expansion."""
    out = PolyClass((), STANDARD)
    for n, c in enumerate(f.to(PROJECTIVE).coeffs):
        if not c:
            continue
        if k >= n:
            img = PolyClass.monomial(n, PROJECTIVE).to(STANDARD)
        else:
            img = PolyClass(tuple(comb(n, m) for m in range(k + 1)), STANDARD)
        out = out + img.scale(c)
    return out.to(f.basis)


def s_count_partitions(n: int, k: int, i: int) -> int:
    """``S(n,k,i)`` as a sum over compositions of n into i parts of size 1..k of prod C(k, part)."""
    if i == 0:
        return 1 if n == 0 else 0
    # dp over blocks: ways[j] = weighted count using j selected numbers so far
    ways = [1] + [0] * n
    for _ in range(i):
        nxt = [0] * (n + 1)
        for used, w in enumerate(ways):
            if w:
                for part in range(1, min(k, n - used) + 1):
                    nxt[used + part] += w * comb(k, part)
        ways = nxt
    return ways[n]


def op_cable(f: PolyClass, k: int) -> PolyClass:
    """``(x-1)^n -> sum_i S(n,k,i) (x-1)^i``."""
    out = [0] * (len(f.to(STANDARD).coeffs) or 1)
    for n, c in enumerate(f.to(STANDARD).coeffs):
        if c:
            for i in range(n + 1):
                out[i] += c * s_count_partitions(n, k, i)
    return PolyClass(tuple(out), STANDARD).to(f.basis)


def class_from_dims(dims: Sequence[int]) -> PolyClass:
    """Class of a standard-filtered module from its weight dimensions.

    If ``dim 1_p X = sum_i c_i C(p, i)`` then ``[X] = sum_i c_i (x-1)^i``;
    the ``c_i`` come out of binomial inversion.  Needs weights past the top
    filtration index to be conclusive.
    """
    c = [sum((-1) ** (i - p) * comb(i, p) * dims[p] for p in range(i + 1)) for i in range(len(dims))]
    return PolyClass(tuple(c), STANDARD)


def parse_poly(text: str) -> PolyClass:
    """Parse an integer polynomial in ``x`` such as ``"x^3 - 2*x + 1"``."""
    import sympy

    x = sympy.Symbol("x")
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={"x": x})
        poly = sympy.Poly(expr, x)
    except (sympy.SympifyError, sympy.PolynomialError, TypeError, SyntaxError) as exc:
        raise ValueError(f"cannot parse polynomial {text!r}") from exc
    coeffs = poly.all_coeffs()[::-1]
    if any(not c.is_integer for c in coeffs):
        raise ValueError(f"polynomial {text!r} must have integer coefficients")
    return PolyClass(tuple(int(c) for c in coeffs), PROJECTIVE)
