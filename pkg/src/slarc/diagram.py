"""Slarc diagrams: planar matchings of long arcs with the leftover points as short arcs.

A diagram in ``_mB_n`` has ``m`` points on the left line and ``n`` on the
right, numbered 1..m and 1..n from bottom to top.  Long arcs (larcs) join
``larc_left[i]`` to ``larc_right[i]``; planarity without critical points
forces this matching to be order preserving, so two increasing position
lists describe the diagram completely.  Every other endpoint carries a short
arc (sarc).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple


class DiagramError(ValueError):
    pass


class Diagram(NamedTuple):
    left: int
    right: int
    larc_left: tuple[int, ...]
    larc_right: tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.larc_left)

    @property
    def left_sarcs(self) -> tuple[int, ...]:
        s = set(self.larc_left)
        return tuple(i for i in range(1, self.left + 1) if i not in s)

    @property
    def right_sarcs(self) -> tuple[int, ...]:
        s = set(self.larc_right)
        return tuple(i for i in range(1, self.right + 1) if i not in s)

    def to_json(self) -> dict:
        return {
            "left": self.left,
            "right": self.right,
            "larc_left": list(self.larc_left),
            "larc_right": list(self.larc_right),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        try:
            return validate(data["left"], data["right"], data["larc_left"], data["larc_right"])
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"malformed diagram JSON: {data!r}") from exc

    def __str__(self) -> str:
        pairs = ",".join(f"{a}-{b}" for a, b in zip(self.larc_left, self.larc_right))
        return f"[{self.left}|{pairs}|{self.right}]"


def _check_positions(xs: Iterable[int], bound: int, side: str) -> tuple[int, ...]:
    xs = tuple(xs)
    if any(not isinstance(x, int) or isinstance(x, bool) for x in xs):
        raise DiagramError(f"{side} positions must be integers: {xs}")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise DiagramError(f"{side} positions not strictly increasing: {xs}")
    if xs and (xs[0] < 1 or xs[-1] > bound):
        raise DiagramError(f"{side} positions {xs} outside 1..{bound}")
    return xs


def validate(left: int, right: int, larc_left: Iterable[int], larc_right: Iterable[int]) -> Diagram:
    """Build a diagram from raw data, rejecting anything that is not canonical."""
    if not isinstance(left, int) or not isinstance(right, int) or left < 0 or right < 0:
        raise DiagramError(f"endpoint counts must be nonnegative integers, got {left!r}, {right!r}")
    a = _check_positions(larc_left, left, "left")
    b = _check_positions(larc_right, right, "right")
    if len(a) != len(b):
        raise DiagramError(f"larc lists have different lengths ({len(a)} != {len(b)})")
    return Diagram(left, right, a, b)


def identity(n: int) -> Diagram:
    """The idempotent 1_n: n larcs, no sarcs."""
    full = tuple(range(1, n + 1))
    return Diagram(n, n, full, full)


@lru_cache(maxsize=None)
def enumerate_basis(m: int, n: int, width: int | None = None, min_width: int = 0,
                    max_width: int | None = None) -> tuple[Diagram, ...]:
    """All diagrams in ``_mB_n``, ordered by width, then larc_left, then larc_right.

    ``width`` selects a single width; otherwise ``min_width``/``max_width``
    bound it.
    """
    if m < 0 or n < 0:
        raise DiagramError("endpoint counts must be nonnegative")
    top = min(m, n)
    if width is not None:
        lo = hi = width
    else:
        lo = max(min_width, 0)
        hi = top if max_width is None else min(max_width, top)
    out = []
    for k in range(lo, hi + 1):
        if k > top:
            break
        rights = list(combinations(range(1, n + 1), k))
        for a in combinations(range(1, m + 1), k):
            for b in rights:
                out.append(Diagram(m, n, a, b))
    return tuple(out)


def basis_size(m: int, n: int, width: int | None = None) -> int:
    """Closed-form count: C(m,k)C(n,k) for a fixed width, C(m+n,n) overall."""
    if width is None:
        return comb(m + n, n)
    return comb(m, width) * comb(n, width)


@lru_cache(maxsize=1 << 20)
def compose(x: Diagram, y: Diagram) -> tuple[Diagram, int]:
    """Concatenate ``x`` (on the left) with ``y``.

    Returns the resulting diagram together with the number of floating arcs
    (middle points that are a right sarc of ``x`` and a left sarc of ``y``).
    The flavor rule for floating arcs is applied by the algebra layer.
    """
    n = x.right
    if n != y.left:
        raise DiagramError(f"cannot compose: inner sizes {n} and {y.left} differ")
    where = {s: j for j, s in enumerate(y.larc_left)}
    yr = y.larc_right
    a = []
    b = []
    for s, t in zip(x.larc_left, x.larc_right):
        j = where.get(t)
        if j is not None:
            a.append(s)
            b.append(yr[j])
    floating = n - len(x.larc_right) - len(y.larc_left) + len(a)
    return Diagram(x.left, y.right, tuple(a), tuple(b)), floating


def elementary(n: int, i: int, side: str) -> Diagram:
    """The one-sarc diagrams used by every differential.

    ``side='left'`` gives ``^i b_{n-1}`` in ``_nB_{n-1}`` (left sarc at i);
    ``side='right'`` gives ``b_n^i`` in ``_{n-1}B_n`` (right sarc at i).
    """
    if not 1 <= i <= n:
        raise DiagramError(f"position {i} out of range 1..{n}")
    gap = tuple(j for j in range(1, n + 1) if j != i)
    full = tuple(range(1, n))
    if side == "left":
        return Diagram(n, n - 1, gap, full)
    if side == "right":
        return Diagram(n - 1, n, full, gap)
    raise DiagramError(f"side must be 'left' or 'right', got {side!r}")


def left_adder(n: int, i: int) -> Diagram:
    """``^i b_n``: n+1 left points, a left sarc at i, n larcs."""
    return elementary(n + 1, i, "left")


def right_adder(n: int, i: int) -> Diagram:
    """``b_n^i``: n-1 left points, a right sarc at i among n."""
    return elementary(n, i, "right")


def reflect(d: Diagram) -> Diagram:
    return Diagram(d.right, d.left, d.larc_right, d.larc_left)


def iota(d: Diagram) -> Diagram:
    """Add a straight larc above everything."""
    return Diagram(d.left + 1, d.right + 1, d.larc_left + (d.left + 1,), d.larc_right + (d.right + 1,))


def _blocks(xs: tuple[int, ...], k: int) -> tuple[int, ...]:
    return tuple(k * (s - 1) + j for s in xs for j in range(1, k + 1))


def cable(d: Diagram, k: int) -> Diagram:
    """Replace every arc by ``k`` parallel copies."""
    if k < 1:
        raise DiagramError("cabling multiplicity must be positive")
    return Diagram(k * d.left, k * d.right, _blocks(d.larc_left, k), _blocks(d.larc_right, k))


def stack(top: Diagram, bottom: Diagram) -> Diagram:
    """Place ``top`` above ``bottom``; the bottom keeps its positions."""
    a = bottom.larc_left + tuple(s + bottom.left for s in top.larc_left)
    b = bottom.larc_right + tuple(s + bottom.right for s in top.larc_right)
    return Diagram(top.left + bottom.left, top.right + bottom.right, a, b)


def sarc_degree(d: Diagram) -> int:
    return d.left + d.right - 2 * d.width


def factorize(d: Diagram) -> list[Diagram]:
    """Write ``d`` as a product of one-sarc generators.

    The product ``g_1 g_2 ... g_r`` (left to right) equals ``d``: first the
    left-sarc adders building the left sarcs, then right-sarc adders.  The
    identity diagram factors as ``[1_n]``.
    """
    k = d.width
    out: list[Diagram] = []
    # left part: _mB_k with larcs larc_left -> 1..k, built top-down so that
    # each adder inserts a sarc at its final position.
    cur = k
    present = list(d.larc_left)
    left_factors = []
    missing = sorted(set(range(1, d.left + 1)) - set(present))
    # Insert sarcs from the lowest one upwards; each insertion is ^i b_cur.
    for i in missing:
        left_factors.append(left_adder(cur, i))
        cur += 1
    out.extend(reversed(left_factors))
    cur = k
    right_factors = []
    for i in sorted(set(range(1, d.right + 1)) - set(d.larc_right)):
        right_factors.append(right_adder(cur + 1, i))
        cur += 1
    out.extend(right_factors)
    if not out:
        out.append(identity(d.left))
    return out
