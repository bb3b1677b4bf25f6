"""Width truncation F_k, restriction and induction along the top-larc embedding,
cabling, and the tensor product of projectives."""

from __future__ import annotations

from itertools import combinations
from math import comb

from . import diagram as dg
from . import linalg as la
from .algebra import AlgebraElement, iota, mul_basis, tensor
from .complexes import DiagramComplex, tensor_complexes
from .diagram import Diagram
from .grothendieck import PolyClass, class_from_dims, s_count_partitions
from .modules import (Cabled, DiagramModule, DirectSum, Module, ModuleMorphism, Presentation, Restricted,
                      cokernel, hom_dim, projective, simple, simple_presentation, standard,
                      standard_presentation, width_truncation)
from .resolutions import resolve_standard


# -- F_k ----------------------------------------------------------------------------------

def apply_Fk(X, k: int):
    """``F_k`` on a projective ``P_m`` or on a complex of projectives.

    ``F_k(P_m) = P_m(<=k)``; right multiplication never raises width, so
    differentials restrict unchanged.
    """
    if isinstance(X, DiagramModule):
        if not X.is_projective:
            raise ValueError("F_k is applied to projectives only")
        return width_truncation(X.n, k)
    if isinstance(X, DiagramComplex):
        if not X.is_projective:
            raise ValueError("F_k is applied to complexes of projectives only")
        out = X.map_entries(lambda e: e, lambda m: width_truncation(m.n, k), f"F_{k}({X.name})")
        return out
    raise TypeError(f"cannot apply F_k to {type(X).__name__}")


def derived_Fk_standard(n: int, k: int, max_weight: int) -> dict:
    """``L^i F_k(M_n)`` weight by weight from ``F_k`` of the standard resolution."""
    C = apply_Fk(resolve_standard(n), k)
    table = {p: C.homology_dims(p, range(n + 1)) for p in range(max_weight + 1)}
    expect_h0 = [comb(p, n) if k >= n else 0 for p in range(max_weight + 1)]
    higher_zero = all(all(h == 0 for h in row[1:]) for row in table.values())
    h0 = [table[p][0] for p in range(max_weight + 1)]
    return {
        "n": n,
        "k": k,
        "homology": {str(p): row for p, row in table.items()},
        "h0": h0,
        "higher_vanish": higher_zero,
        "h0_is": ("M_n" if h0 == expect_h0 and k >= n else "0" if h0 == expect_h0 else "other"),
        "ok": higher_zero and h0 == expect_h0,
    }


# -- restriction ---------------------------------------------------------------------------

def restrict(M: Module) -> Restricted:
    return Restricted(M)


def _res_split(x: Diagram) -> tuple[int, Diagram]:
    """Split a basis diagram of ``Res(P_n)`` at weight p (a diagram in ``_{p+1}B_n``).

    A sarc at the top-left point is deleted (summand ``P_n``).  Otherwise the
    top larc ends at ``r``; it is dropped together with the right sarcs above
    it (summand ``P_{r-1}``).
    """
    top = x.left
    if top not in x.larc_left:
        return x.right, Diagram(top - 1, x.right, x.larc_left, x.larc_right)
    r = x.larc_right[-1]
    return r - 1, Diagram(top - 1, r - 1, x.larc_left[:-1], x.larc_right[:-1])


def _res_morphism(source: Restricted, parts: dict[int, int], target: DirectSum, split) -> ModuleMorphism:
    inner = source.inner

    def weight_map(p: int) -> la.Cols:
        off = target.offsets(p)
        cols = []
        for x in inner.basis(p + 1):
            key, y = split(x)
            k = parts[key]
            cols.append({off[k] + target.parts[k].project(y): 1})
        return cols

    return ModuleMorphism(source, target, weight_map)


def res_projective_iso(n: int) -> ModuleMorphism:
    """``Res(P_n) -> P_0 ⊕ ... ⊕ P_n``."""
    target = DirectSum([projective(k) for k in range(n + 1)], labels=list(range(n + 1)))
    return _res_morphism(Restricted(projective(n)), {k: k for k in range(n + 1)}, target, _res_split)


def res_standard_iso(n: int) -> ModuleMorphism:
    """``Res(M_n) -> M_n ⊕ M_{n-1}`` (just ``M_0`` when n = 0)."""
    keys = [n] + ([n - 1] if n >= 1 else [])
    target = DirectSum([standard(k) for k in keys], labels=keys)
    return _res_morphism(Restricted(standard(n)), {k: i for i, k in enumerate(keys)}, target, _res_split)


def res_simple_iso(n: int) -> ModuleMorphism | None:
    """``Res(L_n) -> L_{n-1}``; ``None`` stands for ``Res(L_0) = 0``."""
    src = Restricted(simple(n))
    if n == 0:
        return None
    tgt = simple(n - 1)
    return ModuleMorphism(src, tgt, lambda p: [{0: 1}] if p == n - 1 else [])


def res_report(n: int, max_weight: int) -> dict:
    out = {}
    for name, mor in (("P", res_projective_iso(n)), ("M", res_standard_iso(n)), ("L", res_simple_iso(n))):
        if mor is None:
            out[name] = all(Restricted(simple(0)).dim(p) == 0 for p in range(max_weight + 1))
            continue
        out[name] = mor.is_equivariant(max_weight) and mor.is_iso(max_weight)
    out["ok"] = all(out.values())
    return out


# -- induction -----------------------------------------------------------------------------

def induce(pres: Presentation) -> Presentation:
    """Shift every target up by one and push relations through the embedding."""
    return pres.map_entries(iota, 1)


def ind_standard_ses(n: int, max_weight: int) -> dict:
    """``0 -> M_n -> Ind(M_n) -> M_{n+1} -> 0`` with explicit maps.

    The injection is right multiplication by the diagram that adds a right
    sarc at the top; the surjection keeps width-(n+1) diagrams.
    """
    ind = cokernel(induce(standard_presentation(n)), f"Ind(M_{n})")
    sub, quo = standard(n), standard(n + 1)
    add_top = dg.right_adder(n + 1, n + 1)

    def inj(p):
        amb_index = ind._weight(p)[1]
        cols = []
        for x in sub.basis(p):
            y = mul_basis(x, add_top)
            cols.append(ind.quotient_coords(p, {amb_index[(0, y)]: 1}))
        return cols

    def surj(p):
        ambient, _, _, free, _ = ind._weight(p)
        return [({quo.index(p)[ambient[c][1]]: 1} if ambient[c][1].width == n + 1 else {}) for c in free]

    f = ModuleMorphism(sub, ind, inj)
    g = ModuleMorphism(ind, quo, surj)
    rows = []
    ok = f.is_equivariant(max_weight) and g.is_equivariant(max_weight)
    for p in range(max_weight + 1):
        exact_mid = la.is_zero(la.compose(g.at(p), f.at(p)))
        good = (exact_mid and f.rank(p) == sub.dim(p) and g.rank(p) == quo.dim(p)
                and ind.dim(p) == sub.dim(p) + quo.dim(p) == comb(p + 1, n + 1))
        rows.append({"weight": p, "dims": [sub.dim(p), ind.dim(p), quo.dim(p)], "ok": good})
        ok = ok and good
    return {"n": n, "ok": ok, "weights": rows}


def derived_ind_standard(n: int, max_weight: int) -> dict:
    """Push the resolution of ``M_n`` through the embedding and check it stays exact."""
    C = resolve_standard(n)
    D = C.map_entries(iota, lambda m: projective(m.n + 1), f"Ind({C.name})")
    ind = cokernel(induce(standard_presentation(n)))
    rows = {}
    ok = True
    for p in range(max_weight + 1):
        h = D.homology_dims(p, range(n + 1))
        rows[str(p)] = h
        ok = ok and all(x == 0 for x in h[1:]) and h[0] == ind.dim(p)
    return {"n": n, "ok": ok, "homology": rows}


def ind_projective_check(n: int, max_weight: int) -> bool:
    """``Ind(P_n) = P_{n+1}``: the induced presentation is free on ``n+1``."""
    pres = induce(Presentation.free([n]))
    return pres.targets == (n + 1,) and not pres.relations and \
        cokernel(pres).dims(max_weight) == projective(n + 1).dims(max_weight)


def ind_simple_dims(n: int, max_weight: int) -> list[int]:
    return cokernel(induce(simple_presentation(n))).dims(max_weight)


# -- cabling ------------------------------------------------------------------------------

def cable_module(M: Module, k: int) -> Cabled:
    return Cabled(M, k)


def s_count_direct(n: int, k: int, i: int) -> int:
    """Select n numbers in ``1..ki`` so that each block of k consecutive numbers is hit."""
    if i == 0:
        return 1 if n == 0 else 0
    count = 0
    for sel in combinations(range(k * i), n):
        if len({s // k for s in sel}) == i:
            count += 1
    return count


def S_count(n: int, k: int, i: int) -> int:
    return s_count_partitions(n, k, i)


def cable_standard_prediction(n: int, k: int) -> dict[int, int]:
    """``{i: S(n,k,i)}``, the standard summands of the cabled ``M_n``."""
    return {i: S_count(n, k, i) for i in range(n + 1) if S_count(n, k, i)}


def cable_standard_dims_check(n: int, k: int, max_weight: int) -> bool:
    dims = Cabled(standard(n), k).dims(max_weight)
    pred = cable_standard_prediction(n, k)
    return dims == [sum(c * comb(p, i) for i, c in pred.items()) for p in range(max_weight + 1)]


def _cable_pattern(x: Diagram, k: int) -> tuple[tuple[int, ...], Diagram]:
    """Group the larc endpoints of ``x`` by block: (offsets per hit block, block diagram)."""
    blocks: dict[int, list[int]] = {}
    for s in x.larc_left:
        blocks.setdefault((s - 1) // k + 1, []).append((s - 1) % k + 1)
    hit = tuple(sorted(blocks))
    pattern = tuple(tuple(blocks[b]) for b in hit)
    i = len(hit)
    return pattern, Diagram(x.left // k, i, hit, tuple(range(1, i + 1)))


def cable_standard_iso(n: int, k: int) -> ModuleMorphism:
    """``^[k]M_n -> ⊕ M_i`` labeled by within-block patterns."""
    patterns: list[tuple] = []
    for i in range(n + 1):
        for sel in combinations(range(k * i), n):
            if len({s // k for s in sel}) == i:
                blocks: dict[int, list[int]] = {}
                for s in sel:
                    blocks.setdefault(s // k, []).append(s % k + 1)
                patterns.append(tuple(tuple(blocks[b]) for b in sorted(blocks)))
    where = {pat: j for j, pat in enumerate(patterns)}
    target = DirectSum([standard(len(pat)) for pat in patterns], labels=patterns)
    source = Cabled(standard(n), k)
    inner = standard(n)

    def weight_map(p: int) -> la.Cols:
        off = target.offsets(p)
        cols = []
        for x in inner.basis(p * k):
            pat, y = _cable_pattern(x, k)
            j = where[pat]
            cols.append({off[j] + target.parts[j].project(y): 1})
        return cols

    return ModuleMorphism(source, target, weight_map)


def cable_simple_dims(n: int, k: int, max_weight: int) -> list[int]:
    return Cabled(simple(n), k).dims(max_weight)


def weak_adjointness_check(n: int, M: Module, k: int) -> dict:
    """``Hom(P_{nk}, M)`` against ``Hom(P_n, ^[k]M)``."""
    lhs = hom_dim(projective(n * k), M)
    rhs = hom_dim(projective(n), Cabled(M, k))
    return {"n": n, "k": k, "module": M.descriptor, "lhs": lhs, "rhs": rhs, "ok": lhs == rhs}


# -- tensor products -----------------------------------------------------------------------

def tensor_projectives(i: int, j: int) -> int:
    return i + j


def tensor_morphisms(alpha: AlgebraElement, beta: AlgebraElement) -> AlgebraElement:
    return tensor(alpha, beta)


def interchange_check(max_points: int) -> dict:
    """``(a a') ⊗ (b b') = (a ⊗ b)(a' ⊗ b')`` on all composable basis quadruples.

    Checked on diagrams with floating counts, which settles both flavors at
    once: stacking adds floating arcs, so the plus products agree exactly
    when the diagrams do and the minus products vanish together.
    """
    sizes = range(max_points + 1)
    pairs = []
    for i in sizes:
        for i2 in sizes:
            for i3 in sizes:
                for a in dg.enumerate_basis(i, i2):
                    for a2 in dg.enumerate_basis(i2, i3):
                        pairs.append((a, a2, dg.compose(a, a2)))
    raw = dg.compose.__wrapped__
    checked = 0
    bad = []
    for a, a2, (r1, f1) in pairs:
        for b, b2, (r2, f2) in pairs:
            lhs = dg.stack(r1, r2)
            rhs, f = raw(dg.stack(a, b), dg.stack(a2, b2))
            checked += 1
            if lhs != rhs or f != f1 + f2:
                bad.append((a, a2, b, b2))
    return {"checked": checked, "ok": not bad, "failures": [list(map(str, q)) for q in bad[:5]]}


def tensor_standard_resolutions(n: int, m: int, max_weight: int) -> dict:
    """Homology of ``res(M_n) ⊗ res(M_m)``: only degree 0, with the dims of ``M_{n+m}``."""
    T = tensor_complexes(resolve_standard(n), resolve_standard(m))
    rows = {}
    ok = T.verify_d2()["ok"]
    for p in range(max_weight + 1):
        h = T.homology_dims(p, range(n + m + 1))
        rows[str(p)] = h
        ok = ok and h[0] == comb(p, n + m) and all(x == 0 for x in h[1:])
    counts = {t: len(T.terms[t]) for t in T.positions}
    return {"n": n, "m": m, "ok": ok, "homology": rows, "term_counts": counts}


# -- decategorification ----------------------------------------------------------------------

def k0_class(M: Module, top: int) -> PolyClass:
    """Class of a standard-filtered module whose filtration stops at ``top``."""
    return class_from_dims(M.dims(top + 1)).to("projective")


def k0_images(n: int) -> dict[str, dict[str, PolyClass]]:
    """Module-level classes of functor images of ``P_n`` and ``M_n``.

    Each class is read off from graded dimensions of the actual output
    module (or, for F_k, of the homology of the truncated resolution).
    """
    out: dict[str, dict[str, PolyClass]] = {}
    P, M = projective(n), standard(n)
    out["res"] = {"P": k0_class(Restricted(P), n), "M": k0_class(Restricted(M), n)}
    out["ind"] = {"P": k0_class(cokernel(induce(P.presentation())), n + 1),
                  "M": k0_class(cokernel(induce(M.presentation())), n + 1)}
    for k in range(n + 2):
        C = apply_Fk(resolve_standard(n), k)
        h0 = [C.homology_dims(p, [0])[0] for p in range(n + 2)]
        out[f"F{k}"] = {"P": k0_class(width_truncation(n, k), n), "M": class_from_dims(h0).to("projective")}
    for k in range(1, 4):
        out[f"cable{k}"] = {"M": k0_class(Cabled(M, k), n)}
    return out
