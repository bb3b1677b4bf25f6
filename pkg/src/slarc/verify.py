"""Check suites behind ``slarc verify``.

Each check returns a record ``{id, parameters, status, expected, actual}``;
a report lists records sorted by id, so output does not depend on the order
in which checks ran.  Integers are rendered as strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable

from . import aplus, diagram as dg, functors as fn, grothendieck as gr, homalg, resolutions as rs
from . import linalg as la
from .algebra import MINUS, PLUS, mul_basis
from .complexes import check_linearity
from .modules import bimodule_layer_check, filtration_quotient_iso, projective, standard


def stringify(x):
    """Integers become strings, recursively; booleans and strings pass through."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, dict):
        return {str(k): stringify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [stringify(v) for v in x]
    return str(x)


@dataclass
class Report:
    suite: str
    checks: list[dict] = field(default_factory=list)

    def add(self, cid: str, params: dict, expected, actual, ok: bool | None = None) -> None:
        if ok is None:
            ok = expected == actual
        self.checks.append({
            "id": cid,
            "parameters": stringify(params),
            "status": "pass" if ok else "fail",
            "expected": stringify(expected),
            "actual": stringify(actual),
        })

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def to_json(self) -> dict:
        checks = sorted(self.checks, key=lambda c: c["id"])
        passed = sum(c["status"] == "pass" for c in checks)
        return {
            "suite": self.suite,
            "field": la.get_field().tag,
            "summary": {"total": str(len(checks)), "passed": str(passed), "failed": str(len(checks) - passed)},
            "checks": checks,
        }


# -- property helpers shared with the tests ---------------------------------------------

def associativity_check(max_points: int) -> dict:
    """``(xy)z = x(yz)`` on every composable triple, both flavors.

    Equal diagrams with equal total floating counts give equal products in
    both flavors, so the check compares exactly those two things and also
    records the flavor-level verdicts.
    """
    sizes = range(max_points + 1)
    checked = 0
    bad = []
    for i in sizes:
        for j in sizes:
            for k in sizes:
                xs, ys = dg.enumerate_basis(i, j), dg.enumerate_basis(j, k)
                for l in sizes:
                    zs = dg.enumerate_basis(k, l)
                    for x in xs:
                        for y in ys:
                            xy, f1 = dg.compose(x, y)
                            for z in zs:
                                a, f2 = dg.compose(xy, z)
                                yz, f3 = dg.compose(y, z)
                                b, f4 = dg.compose(x, yz)
                                checked += 1
                                if a != b or f1 + f2 != f3 + f4:
                                    bad.append((x, y, z))
    # the cup cubed is the one triple where the two flavors disagree
    c = dg.Diagram(1, 1, (), ())
    spot = mul_basis(mul_basis(c, c, PLUS), c, PLUS) == mul_basis(c, mul_basis(c, c, PLUS), PLUS) == c
    spot = spot and mul_basis(c, c, MINUS) is None
    return {"checked": checked, "ok": not bad and spot, "failures": [list(map(str, t)) for t in bad[:5]]}


def grading_check(max_points: int) -> dict:
    """Nonzero minus-flavor products of diagrams add sarc degrees."""
    sizes = range(max_points + 1)
    checked = 0
    bad = []
    for i in sizes:
        for j in sizes:
            for k in sizes:
                for x in dg.enumerate_basis(i, j):
                    for y in dg.enumerate_basis(j, k):
                        r = mul_basis(x, y, MINUS)
                        if r is None:
                            continue
                        checked += 1
                        if dg.sarc_degree(r) != dg.sarc_degree(x) + dg.sarc_degree(y):
                            bad.append((x, y))
    return {"checked": checked, "ok": not bad}


# -- suites ---------------------------------------------------------------------------

def suite_basis(max_n: int, max_weight: int) -> Report:
    r = Report("basis")
    top = max(max_n, max_weight)
    for m in range(top + 1):
        for n in range(top + 1):
            r.add(f"basis.count.{m:02d}.{n:02d}", {"m": m, "n": n}, comb(m + n, n), len(dg.enumerate_basis(m, n)))
            widths = [len(dg.enumerate_basis(m, n, width=k)) for k in range(min(m, n) + 1)]
            r.add(f"basis.width.{m:02d}.{n:02d}", {"m": m, "n": n},
                  [comb(m, k) * comb(n, k) for k in range(min(m, n) + 1)], widths)
    return r


def suite_algebra(max_n: int, max_weight: int) -> Report:
    r = Report("algebra")
    pts = min(max_n, 3)
    a = associativity_check(pts)
    r.add("algebra.associativity", {"max_points": pts}, True, a["ok"])
    g = grading_check(min(max_n + 1, 5))
    r.add("algebra.grading", {"max_points": min(max_n + 1, 5)}, True, g["ok"])
    c = dg.Diagram(1, 1, (), ())
    r.add("algebra.cup.minus", {}, None, mul_basis(c, c, MINUS))
    r.add("algebra.cup.plus", {}, str(c), str(mul_basis(c, c, PLUS)))
    return r


def suite_modules(max_n: int, max_weight: int) -> Report:
    r = Report("modules")
    for n in range(max_n + 1):
        r.add(f"modules.P.{n:02d}", {"n": n}, [comb(p + n, n) for p in range(max_weight + 1)],
              projective(n).dims(max_weight))
        r.add(f"modules.M.{n:02d}", {"n": n}, [comb(p, n) for p in range(max_weight + 1)],
              standard(n).dims(max_weight))
        for m in range(n + 1):
            fq = filtration_quotient_iso(n, m)
            w = min(max_weight, 5)
            ok = fq.morphism.is_equivariant(w) and fq.morphism.is_iso(w)
            r.add(f"modules.filtration.{n:02d}.{m:02d}", {"n": n, "m": m, "max_weight": w},
                  {"copies": comb(n, m), "iso": True}, {"copies": fq.copies, "iso": ok})
            b = bimodule_layer_check(n, n + 1, m)
            r.add(f"modules.bimodule.{n:02d}.{m:02d}", {"m": n, "n": n + 1, "k": m},
                  True, b["bijective"] and b["equivariant"] and b["pairs"] == b["formula"])
    return r


def suite_resolutions(max_n: int, max_weight: int) -> Report:
    r = Report("resolutions")
    for n in range(max_n + 1):
        C = rs.resolve_standard(n)
        r.add(f"resolutions.standard.{n:02d}.d2", {"n": n}, True, C.verify_d2()["ok"])
        aug = rs.augmentation_report(C, rs.standard_augmentation(n), max_weight)
        r.add(f"resolutions.standard.{n:02d}.exact", {"n": n, "max_weight": max_weight}, True, aug["ok"])
        r.add(f"resolutions.standard.{n:02d}.euler", {"n": n},
              str(gr.class_of_standard(n).to("projective")), str(C.euler_class()))
        r.add(f"resolutions.standard.{n:02d}.linear", {"n": n}, True, check_linearity(C))
    for k in range(min(max_n, 3) + 1):
        t = max(max_weight - k + 1, 1)
        C = rs.resolve_simple_by_standard(k, t)
        r.add(f"resolutions.by_standard.{k:02d}.d2", {"k": k, "t_max": t}, True, C.verify_d2(max_weight)["ok"])
        aug = rs.augmentation_report(C, rs.simple_augmentation(k), max_weight, window=True)
        r.add(f"resolutions.by_standard.{k:02d}.exact", {"k": k, "max_weight": max_weight}, True, aug["ok"])
    w = min(max_weight, 6)
    for n in range(min(max_n, 2) + 1):
        B = rs.build_bicomplex(n, 5, check=False)
        r.add(f"resolutions.bicomplex.{n:02d}.anticommute", {"n": n, "t_max": 5}, True, B.verify()["ok"])
        T = rs.resolve_simple_projective(n, 4)
        aug = rs.augmentation_report(T, rs.projective_simple_augmentation(n), w, window=True)
        r.add(f"resolutions.bicomplex.{n:02d}.exact", {"n": n, "positions": 3, "max_weight": w}, True, aug["ok"])
        r.add(f"resolutions.bicomplex.{n:02d}.linear", {"n": n}, True, check_linearity(T))
        counts = {N: c for N, c in sorted(rs.bicomplex_term_count(n, 1).items())}
        got: dict[int, int] = {}
        for s in T.terms[1]:
            got[s.n] = got.get(s.n, 0) + 1
        r.add(f"resolutions.bicomplex.{n:02d}.C1", {"n": n}, counts, dict(sorted(got.items())))
    for n in range(1, max_n + 1):
        r.add(f"resolutions.tensor_power.{n:02d}", {"n": n}, True, rs.tensor_power_isomorphism(n)["ok"])
    return r


def suite_ext(max_n: int, max_weight: int) -> Report:
    r = Report("ext")
    for n in range(max_n + 1):
        for m in range(max_n + 1):
            e = homalg.ext_standard_standard(n, m)
            r.add(f"ext.MM.{n:02d}.{m:02d}", {"n": n, "m": m}, e.predicted, e.computed,
                  e.match and e.notes["induced_maps_zero"])
            e = homalg.ext_standard_simple(n, m)
            r.add(f"ext.ML.{n:02d}.{m:02d}", {"n": n, "m": m}, e.predicted, e.computed, e.match)
        h = homalg.homological_dimension_standard(n)
        r.add(f"ext.pd.{n:02d}", {"n": n}, n, h["dimension"])
    for n in range(min(max_n, 2) + 1):
        e = homalg.ext_simple_simple_L0(n, max_weight)
        r.add(f"ext.LL0.{n:02d}", {"n": n, "t_max": max_weight}, e.predicted, e.computed, e.match)
    return r


def suite_cartan(max_n: int, max_weight: int) -> Report:
    r = Report("cartan")
    N = max_weight + 1
    b = homalg.bgg_check(N)
    r.add("cartan.factorization", {"size": N}, True, b["factorization_ok"])
    r.add("cartan.symmetric", {"size": N}, True, b["symmetric"])
    r.add("cartan.bgg", {"size": N}, True, b["bgg_ok"])
    return r


def suite_functors(max_n: int, max_weight: int) -> Report:
    r = Report("functors")
    w = min(max_weight, 7)
    for n in range(max_n + 1):
        for k in range(max_n + 1):
            d = fn.derived_Fk_standard(n, k, w)
            r.add(f"functors.Fk.{n:02d}.{k:02d}", {"n": n, "k": k, "max_weight": w},
                  "M_n" if k >= n else "0", d["h0_is"], d["ok"])
        rep = fn.res_report(n, w)
        r.add(f"functors.res.{n:02d}", {"n": n, "max_weight": w}, True, rep["ok"])
        r.add(f"functors.ind.P.{n:02d}", {"n": n}, True, fn.ind_projective_check(n, w))
        r.add(f"functors.ind.ses.{n:02d}", {"n": n, "max_weight": w}, True, fn.ind_standard_ses(n, w)["ok"])
        r.add(f"functors.ind.derived.{n:02d}", {"n": n, "max_weight": w}, True, fn.derived_ind_standard(n, w)["ok"])
    pts = min(max_n, 2)
    r.add("functors.interchange", {"max_points": pts}, True, fn.interchange_check(pts)["ok"])
    for n in range(1, max_n - 1 + 1):
        for m in range(1, max_n - n + 1):
            t = fn.tensor_standard_resolutions(n, m, min(max_weight, 6))
            r.add(f"functors.tensor_std.{n:02d}.{m:02d}", {"n": n, "m": m}, True, t["ok"])
    return r


def suite_cabling(max_n: int, max_weight: int) -> Report:
    r = Report("cabling")
    for n in range(max_n + 1):
        for k in range(1, max_n + 1):
            direct = [fn.s_count_direct(n, k, i) for i in range(n + 1)]
            parts = [fn.S_count(n, k, i) for i in range(n + 1)]
            r.add(f"cabling.S.{n:02d}.{k:02d}", {"n": n, "k": k}, direct, parts)
            r.add(f"cabling.dims.{n:02d}.{k:02d}", {"n": n, "k": k}, True, fn.cable_standard_dims_check(n, k, 4))
    for n, k in [(1, 2), (2, 2), (2, 1)]:
        mor = fn.cable_standard_iso(n, k)
        r.add(f"cabling.iso.{n:02d}.{k:02d}", {"n": n, "k": k}, True, mor.is_equivariant(4) and mor.is_iso(4))
    for n in range(min(max_n, 4) + 1):
        for k in range(1, 4):
            for M in (standard(1), standard(2), projective(1)):
                a = fn.weak_adjointness_check(n, M, k)
                r.add(f"cabling.adjoint.{n:02d}.{k:02d}.{M.descriptor}", {"n": n, "k": k}, a["lhs"], a["rhs"])
    return r


def _p(f: gr.PolyClass) -> str:
    return str(f.to("projective"))


def suite_k0(max_n: int, max_weight: int) -> Report:
    r = Report("k0")
    for d in range(11):
        f = gr.PolyClass(tuple(range(1, d + 2)))
        r.add(f"k0.roundtrip.{d:02d}", {"degree": d}, f.coeffs, f.to("standard").to("projective").coeffs)
    for n in range(max_n + 1):
        im = fn.k0_images(n)
        P, M = gr.class_of_projective(n), gr.class_of_standard(n)
        r.add(f"k0.res.{n:02d}", {"n": n}, [_p(gr.op_Res(P)), _p(gr.op_Res(M))],
              [_p(im["res"]["P"]), _p(im["res"]["M"])])
        r.add(f"k0.ind.{n:02d}", {"n": n}, [_p(gr.op_Ind(P)), _p(gr.op_Ind(M))],
              [_p(im["ind"]["P"]), _p(im["ind"]["M"])])
        for k in range(n + 2):
            r.add(f"k0.F{k}.{n:02d}", {"n": n, "k": k}, [_p(gr.op_Fk(P, k)), _p(gr.op_Fk(M, k))],
                  [_p(im[f"F{k}"]["P"]), _p(im[f"F{k}"]["M"])])
        for k in range(1, 4):
            r.add(f"k0.cable{k}.{n:02d}", {"n": n, "k": k}, _p(gr.op_cable(M, k)), _p(im[f"cable{k}"]["M"]))
        for m in range(max_n + 1):
            r.add(f"k0.tensor.{n:02d}.{m:02d}", {"n": n, "m": m},
                  _p(gr.class_of_standard(n + m)), _p(M * gr.class_of_standard(m)))
    return r


def suite_aplus(max_n: int, max_weight: int) -> Report:
    r = Report("aplus")
    for n in range(max_n + 1):
        r.add(f"aplus.idempotents.{n:02d}", {"n": n}, True, aplus.idempotent_report(n)["ok"])
        r.add(f"aplus.decompose.{n:02d}", {"n": n}, {m: comb(n, m) for m in range(n + 1)},
              aplus.decompose_projective_plus(n).multiplicities)
        r.add(f"aplus.k0.{n:02d}", {"n": n}, str(gr.class_of_standard(n).to("projective")), str(aplus.k0_plus_class(n)))
    N = max_n
    r.add("aplus.homtable", {"max": N}, [[int(m == n) for n in range(N + 1)] for m in range(N + 1)],
          aplus.hom_table(N))
    return r


SUITES: dict[str, Callable[[int, int], Report]] = {
    "basis": suite_basis,
    "algebra": suite_algebra,
    "modules": suite_modules,
    "resolutions": suite_resolutions,
    "ext": suite_ext,
    "cartan": suite_cartan,
    "functors": suite_functors,
    "cabling": suite_cabling,
    "k0": suite_k0,
    "aplus": suite_aplus,
}


def run_suite(name: str, max_n: int, max_weight: int) -> Report:
    if name == "all":
        return verify_all(max_n, max_weight)
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return SUITES[name](max_n, max_weight)


def verify_all(max_n: int = 4, max_weight: int = 8) -> Report:
    out = Report("all")
    for name in sorted(SUITES):
        out.extend(SUITES[name](max_n, max_weight))
    return out
