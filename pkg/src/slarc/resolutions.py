"""The explicit resolutions: of ``M_n`` by projectives, of ``L_k`` by standards,
and of ``L_n`` by projectives through a bicomplex.

Summands are labeled by subsets (sorted tuples).  Every sign used below
comes from ``SIGNS``; constructors check ``d^2 = 0`` (or anticommuting
squares) before returning.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from . import diagram as dg
from . import linalg as la
from .algebra import MINUS, AlgebraElement
from .complexes import Bicomplex, ComplexError, DiagramComplex, Summand, signed_isomorphism, tensor_complexes
from .complexes import check_linearity  # noqa: F401  (re-exported)
from .modules import ModuleMorphism, projective, simple, standard


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


# One place for every sign convention.
#   standard:   component of d that removes the l-th element of I (1-based).
#   by_standard: same for the resolution of L_k by standards.  Applied once;
#               applying it again on top of the diagram would break d^2 = 0.
#   horizontal: bicomplex map removing the value i from I while sitting in
#               row k.  The (-1)^k twist turns commuting squares into
#               anticommuting ones.
SIGNS = {
    "standard": lambda l: _sign(l - 1),
    "by_standard": lambda l: _sign(l),
    "horizontal": lambda i, k: _sign(i - 1) * _sign(k),
}


def subsets(n: int, m: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, n + 1), m))


def remove(I: tuple[int, ...], i: int) -> tuple[int, ...]:
    """``I`` without ``i``; no renumbering."""
    return tuple(x for x in I if x != i)


def remove_renumber(I: tuple[int, ...], i: int) -> tuple[int, ...]:
    """``I`` without ``i``, with every larger element shifted down by one."""
    return tuple(x if x < i else x - 1 for x in I if x != i)


def adder_position(n: int, I: tuple[int, ...], i: int) -> int:
    """Position of ``i`` in ``({1..n} \\ I) ∪ {i}``."""
    rest = sorted(set(range(1, n + 1)) - set(I) | {i})
    return rest.index(i) + 1


def _el(d: dg.Diagram, c: int = 1, flavor: str = MINUS) -> AlgebraElement:
    return AlgebraElement({d: c}, flavor)


def _add(entries: dict, key, e: AlgebraElement) -> None:
    prev = entries.get(key)
    e = e if prev is None else prev + e
    if e:
        entries[key] = e
    else:
        entries.pop(key, None)


def _check(C: DiagramComplex, max_weight: int = 4) -> DiagramComplex:
    rep = C.verify_d2(max_weight)
    if not rep["ok"]:
        raise ComplexError(f"{C.name}: d^2 != 0 at {rep['failures'][:3]}")
    return C


# -- M_n by projectives -------------------------------------------------------------

def resolve_standard(n: int, flavor: str = MINUS, check: bool = True) -> DiagramComplex:
    """``0 -> P_0 -> ... -> P_{n-m}^{C(n,m)} -> ... -> P_n``, labeled by ``I ⊆ {1..n}``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    terms = {m: [Summand(projective(n - m, flavor), I) for I in subsets(n, m)] for m in range(n + 1)}
    diffs = {}
    for m in range(1, n + 1):
        where = {s.label: u for u, s in enumerate(terms[m - 1])}
        entries = {}
        for s, summand in enumerate(terms[m]):
            I = summand.label
            for l, i in enumerate(I, start=1):
                p = adder_position(n, I, i)
                entries[(s, where[remove(I, i)])] = _el(dg.right_adder(n - m + 1, p), SIGNS["standard"](l), flavor)
        diffs[m] = entries
    C = DiagramComplex(terms, diffs, flavor, f"res(M_{n})")
    return _check(C) if check else C


def standard_augmentation(n: int) -> ModuleMorphism:
    """``P_n -> M_n``: keep the width-n diagrams."""
    src, tgt = projective(n), standard(n)

    def weight_map(p):
        return [({tgt.index(p)[x]: 1} if x.width == n else {}) for x in src.basis(p)]

    return ModuleMorphism(src, tgt, weight_map)


def augmentation_report(C: DiagramComplex, aug: ModuleMorphism, max_weight: int, window: bool = False) -> dict:
    """Exactness of ``C -> target -> 0`` weight by weight.

    Checks ``aug ∘ d_1 = 0``, surjectivity, ``dim H_0 = dim target`` and
    vanishing higher homology; together with equivariance of ``aug`` this
    makes ``H_0`` isomorphic to the target.  For a truncated resolution
    (``window=True``) the last position is not checked, since the map
    into it is missing.
    """
    rows = []
    ok = aug.is_equivariant(max_weight)
    top = max(C.positions) if C.positions else 0
    for p in range(max_weight + 1):
        wc = C.at_weight(p)
        a = aug.at(p)
        d1 = wc.maps.get(1)
        kills = not d1 or la.is_zero(la.compose(a, d1))
        surj = la.rank(a) == aug.target.dim(p)
        h = [wc.homology(t) for t in range(top if window else top + 1)]
        good = kills and surj and h[:1] == [aug.target.dim(p)] and all(x == 0 for x in h[1:])
        if top == 0:
            good = kills and surj and wc.dim(0) == aug.target.dim(p)
        ok = ok and good
        rows.append({"weight": p, "homology": h, "target_dim": aug.target.dim(p), "ok": good})
    return {"ok": ok, "weights": rows}


# -- L_k by standards ------------------------------------------------------------------

def resolve_simple_by_standard(k: int, t_max: int, check: bool = True) -> DiagramComplex:
    """``... -> ⊕ M_{k+m}^{I} -> ... -> M_k``, ``I ⊆ {1..k+m}`` with ``|I| = m``, through term ``t_max``."""
    if k < 0 or t_max < 0:
        raise ValueError("k and t_max must be nonnegative")
    terms = {m: [Summand(standard(k + m), I) for I in subsets(k + m, m)] for m in range(t_max + 1)}
    diffs = {}
    for m in range(1, t_max + 1):
        where = {s.label: u for u, s in enumerate(terms[m - 1])}
        entries = {}
        for s, summand in enumerate(terms[m]):
            I = summand.label
            for l, i in enumerate(I, start=1):
                d = dg.elementary(k + m, i, "left")
                _add(entries, (s, where[remove_renumber(I, i)]), _el(d, SIGNS["by_standard"](l)))
        diffs[m] = entries
    C = DiagramComplex(terms, diffs, MINUS, f"res_std(L_{k})")
    return _check(C, max_weight=k + 3) if check else C


def simple_augmentation(k: int) -> ModuleMorphism:
    """``M_k -> L_k``, nonzero only at weight k."""
    src, tgt = standard(k), simple(k)
    return ModuleMorphism(src, tgt, lambda p: [{0: 1}] if p == k else [{} for _ in range(src.dim(p))])


def projective_simple_augmentation(n: int) -> ModuleMorphism:
    """``P_n -> L_n``, the identity diagram to the generator."""
    src, tgt = projective(n), simple(n)
    ident = dg.identity(n)
    return ModuleMorphism(src, tgt, lambda p: [({0: 1} if x == ident else {}) for x in src.basis(p)])


# -- the bicomplex for L_n --------------------------------------------------------------

def build_bicomplex(n: int, t_max: int, check: bool = True) -> Bicomplex:
    """Cells ``(m, k)`` with ``m + k <= t_max``; column m resolves the standards ``M_{n+m}^I``.

    Summand labels are ``(I, J)``: ``I ⊆ {1..n+m}`` of size m (the standard
    it resolves) and ``J ⊆ {1..n+m}`` of size k (the projective summand
    ``P_{n+m-k}`` inside that resolution).
    """
    if n < 0 or t_max < 0:
        raise ValueError("n and t_max must be nonnegative")
    terms: dict[tuple[int, int], list[Summand]] = {}
    for m in range(t_max + 1):
        N = n + m
        for k in range(min(N, t_max - m) + 1):
            terms[(m, k)] = [Summand(projective(N - k), (I, J)) for I in subsets(N, m) for J in subsets(N, k)]
    index = {cell: {s.label: u for u, s in enumerate(ss)} for cell, ss in terms.items()}
    dv: dict = {}
    dh: dict = {}
    for (m, k), summands in terms.items():
        N = n + m
        if k >= 1:
            ent = {}
            for s, summand in enumerate(summands):
                I, J = summand.label
                for l, j in enumerate(J, start=1):
                    p = adder_position(N, J, j)
                    ent[(s, index[(m, k - 1)][(I, remove(J, j))])] = _el(
                        dg.right_adder(N - k + 1, p), SIGNS["standard"](l))
            dv[(m, k)] = ent
        if m >= 1 and (m - 1, k) in terms:
            ent = {}
            for s, summand in enumerate(summands):
                I, J = summand.label
                free = [x for x in range(1, N + 1) if x not in J]
                for i in I:
                    if i in J:
                        continue
                    q = free.index(i) + 1
                    tgt = (remove_renumber(I, i), tuple(x if x < i else x - 1 for x in J))
                    _add(ent, (s, index[(m - 1, k)][tgt]),
                         _el(dg.elementary(N - k, q, "left"), SIGNS["horizontal"](i, k)))
            dh[(m, k)] = ent
    B = Bicomplex(terms, dv, dh, MINUS, f"bicomplex(L_{n})")
    if check:
        rep = B.verify()
        if not rep["ok"]:
            raise ComplexError(f"bicomplex check failed: {rep['failures'][:3]}")
    return B


def resolve_simple_projective(n: int, t_max: int) -> DiagramComplex:
    """Projective resolution of ``L_n`` through term ``t_max``."""
    C = build_bicomplex(n, t_max).total(require_verified=False)
    C.name = f"res_proj(L_{n})"
    return C


def bicomplex_term_count(n: int, t: int) -> dict[int, int]:
    """``{N: multiplicity}`` of ``P_N`` in total degree ``t`` by the closed form."""
    out: dict[int, int] = {}
    for m in range(t + 1):
        k = t - m
        if n + m >= k:
            N = n + m - k
            out[N] = out.get(N, 0) + comb(n + m, m) * comb(n + m, k)
    return out


# -- tensor powers of the resolution of M_1 ---------------------------------------------

def m1_tensor_power(n: int) -> DiagramComplex:
    if n < 1:
        raise ValueError("n must be at least 1")
    base = resolve_standard(1)
    C = base
    for _ in range(n - 1):
        C = tensor_complexes(C, base)
    C.name = f"res(M_1)^{n}"
    return C


def _flatten(label, n: int) -> tuple:
    """Tensor labels nest as ``((a, b), c)``; return the factor labels in order."""
    out = []

    def walk(x, depth):
        if depth == 1:
            out.append(x)
        else:
            walk(x[0], depth - 1)
            out.append(x[1])

    walk(label, n)
    return tuple(out)


def tensor_power_label(label, n: int) -> tuple[int, ...]:
    """Factor j (1-based, top first) in degree one fills slot ``n + 1 - j``."""
    factors = _flatten(label, n)
    return tuple(sorted(n + 1 - j for j, f in enumerate(factors, start=1) if f))


def tensor_power_isomorphism(n: int) -> dict:
    """Compare ``m1_tensor_power(n)`` with ``resolve_standard(n)`` up to summand signs."""
    T = m1_tensor_power(n)
    S = resolve_standard(n)
    return signed_isomorphism(T, S, lambda t, label: tensor_power_label(label, n))
