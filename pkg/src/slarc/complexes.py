"""Chain complexes of diagram modules, their weight components, and bicomplexes.

Terms are lists of ``Summand``s, each a ``DiagramModule`` (a projective
``P_n``, a standard ``M_n`` or a width truncation) with a label.  The
differential ``d_t`` goes from term ``t`` to term ``t-1``; its entry at
``(s, u)`` is an element of ``1_{n_s} A 1_{n_u}`` acting by right
multiplication, ``x -> x * e``.  Left actions are never touched, so every
weight ``p`` gives an ordinary complex of finite-dimensional spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Hashable, Iterable

from . import linalg as la
from .algebra import MINUS, AlgebraElement, mul_basis, tensor, unit_idempotent
from .grothendieck import PolyClass, STANDARD
from .modules import DiagramModule, Module, projective

Entries = dict  # (src index, tgt index) -> AlgebraElement


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Summand:
    module: DiagramModule
    label: Hashable = None

    @property
    def n(self) -> int:
        return self.module.n

    def to_json(self) -> dict:
        out = {"module": self.module.descriptor, "index": self.n, "label": _label_json(self.label)}
        if self.module.is_projective:
            out["proj"] = self.n
        return out


def _label_json(label):
    if isinstance(label, tuple):
        return [_label_json(x) for x in label]
    return label


def module_class(m: DiagramModule) -> PolyClass:
    """``P_n[lo..hi]`` has a standard filtration with C(n, j) copies of ``M_j``."""
    coeffs = [0] * (m.n + 1)
    for j in range(m.lo, m.hi + 1):
        coeffs[j] = comb(m.n, j)
    return PolyClass(tuple(coeffs), STANDARD)


# -- weight components ----------------------------------------------------------

class WeightComplex:
    """A bounded complex of finite-dimensional spaces; ``maps[t]`` goes t -> t-1."""

    def __init__(self, dims: dict[int, int], maps: dict[int, la.Cols], field: la.Field | None = None):
        self.dims = dict(dims)
        self.maps = dict(maps)
        self.field = field or la.get_field()
        self._ranks: dict[int, int] = {}

    def dim(self, t: int) -> int:
        return self.dims.get(t, 0)

    def rank(self, t: int) -> int:
        r = self._ranks.get(t)
        if r is None:
            m = self.maps.get(t)
            r = la.rank(m, self.field) if m else 0
            self._ranks[t] = r
        return r

    def homology(self, t: int) -> int:
        return self.dim(t) - self.rank(t) - self.rank(t + 1)

    def d2_failures(self) -> list[int]:
        bad = []
        for t in sorted(self.maps):
            lower = self.maps.get(t - 1)
            if lower and self.maps[t] and not la.is_zero(la.compose(lower, self.maps[t], self.field), self.field):
                bad.append(t)
        return bad


class CochainComplex(WeightComplex):
    """Same storage, but ``maps[t]`` goes t-1 -> t (cohomological indexing)."""

    def homology(self, t: int) -> int:
        return self.dim(t) - self.rank(t + 1) - self.rank(t)

    def d2_failures(self) -> list[int]:
        bad = []
        for t in sorted(self.maps):
            upper = self.maps.get(t + 1)
            if upper and self.maps[t] and not la.is_zero(la.compose(upper, self.maps[t], self.field), self.field):
                bad.append(t)
        return bad


# -- complexes of diagram modules ----------------------------------------------

@dataclass
class DiagramComplex:
    terms: dict[int, list[Summand]]
    diffs: dict[int, Entries]
    flavor: str = MINUS
    name: str = "complex"
    _weights: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for t, entries in self.diffs.items():
            src, tgt = self.terms.get(t, []), self.terms.get(t - 1, [])
            for (s, u), e in entries.items():
                if not (0 <= s < len(src) and 0 <= u < len(tgt)):
                    raise ComplexError(f"entry ({s},{u}) of d_{t} is out of range")
                for d in e:
                    if d.left != src[s].n or d.right != tgt[u].n:
                        raise ComplexError(f"entry ({s},{u}) of d_{t} has diagram {d} outside 1_{src[s].n} A 1_{tgt[u].n}")

    @property
    def positions(self) -> list[int]:
        return sorted(t for t, s in self.terms.items() if s)

    @property
    def is_projective(self) -> bool:
        return all(s.module.is_projective for ts in self.terms.values() for s in ts)

    def entry(self, t: int, s: int, u: int) -> AlgebraElement:
        return self.diffs.get(t, {}).get((s, u), AlgebraElement.zero(self.flavor))

    def _offsets(self, t: int, p: int) -> list[int]:
        off, acc = [], 0
        for s in self.terms.get(t, []):
            off.append(acc)
            acc += s.module.dim(p)
        off.append(acc)
        return off

    def weight_map(self, t: int, p: int) -> la.Cols:
        """Matrix of ``d_t`` on the weight-``p`` component."""
        src, tgt = self.terms.get(t, []), self.terms.get(t - 1, [])
        so, to = self._offsets(t, p), self._offsets(t - 1, p)
        cols: la.Cols = [dict() for _ in range(so[-1])]
        for (s, u), e in self.diffs.get(t, {}).items():
            target = tgt[u].module
            for j, x in enumerate(src[s].module.basis(p)):
                col = cols[so[s] + j]
                for d, c in e.items():
                    i = target.project(mul_basis(x, d, self.flavor))
                    if i is None:
                        continue
                    k = to[u] + i
                    w = col.get(k, 0) + c
                    if w:
                        col[k] = w
                    else:
                        col.pop(k, None)
        return cols

    def at_weight(self, p: int) -> WeightComplex:
        wc = self._weights.get((p, la.get_field()))
        if wc is None:
            dims = {t: self._offsets(t, p)[-1] for t in self.terms}
            maps = {t: self.weight_map(t, p) for t in self.diffs if t - 1 in self.terms}
            wc = WeightComplex(dims, maps)
            self._weights[(p, la.get_field())] = wc
        return wc

    def homology_dims(self, p: int, positions: Iterable[int] | None = None) -> list[int]:
        wc = self.at_weight(p)
        return [wc.homology(t) for t in (self.positions if positions is None else positions)]

    def composite(self, t: int) -> Entries:
        """Entries of ``d_{t-1} ∘ d_t`` (which, under right action, multiply as e_t * e_{t-1})."""
        upper, lower = self.diffs.get(t, {}), self.diffs.get(t - 1, {})
        by_src: dict[int, list] = {}
        for (j, u), e in lower.items():
            by_src.setdefault(j, []).append((u, e))
        out: Entries = {}
        for (s, j), e1 in upper.items():
            for u, e2 in by_src.get(j, ()):
                prod = e1 * e2
                out[(s, u)] = out.get((s, u), AlgebraElement.zero(self.flavor)) + prod
        return {k: v for k, v in out.items() if v}

    def verify_d2(self, max_weight: int = 6) -> dict:
        """Symbolically for projective complexes, weight by weight otherwise."""
        failures = []
        if self.is_projective:
            for t in sorted(self.diffs):
                for key, val in self.composite(t).items():
                    failures.append({"position": t, "entry": list(key), "value": repr(val)})
            mode = "symbolic"
        else:
            for p in range(max_weight + 1):
                for t in self.at_weight(p).d2_failures():
                    failures.append({"position": t, "weight": p})
            mode = f"per-weight<={max_weight}"
        return {"ok": not failures, "mode": mode, "failures": failures}

    def euler_class(self) -> PolyClass:
        total = PolyClass((), STANDARD)
        for t, summands in self.terms.items():
            for s in summands:
                c = module_class(s.module)
                total = total + (c if t % 2 == 0 else -c)
        return total.to("projective")

    def map_entries(self, f: Callable[[AlgebraElement], AlgebraElement],
                    g: Callable[[DiagramModule], DiagramModule], name: str | None = None) -> "DiagramComplex":
        """Apply ``f`` to every entry and ``g`` to every term module."""
        terms = {t: [Summand(g(s.module), s.label) for s in ss] for t, ss in self.terms.items()}
        diffs = {t: {k: f(e) for k, e in es.items() if f(e)} for t, es in self.diffs.items()}
        return DiagramComplex(terms, diffs, self.flavor, name or self.name)

    def to_json(self) -> dict:
        terms = {str(t): [s.to_json() for s in self.terms[t]] for t in sorted(self.terms)}
        diffs = {}
        zero = AlgebraElement.zero(self.flavor).to_json()
        for t in sorted(self.diffs):
            rows = len(self.terms.get(t, []))
            cols = len(self.terms.get(t - 1, []))
            mat = [[zero] * cols for _ in range(rows)]
            for (s, u), e in sorted(self.diffs[t].items()):
                mat[s][u] = e.to_json()
            diffs[str(t)] = mat
        return {"name": self.name, "flavor": self.flavor, "terms": terms, "diffs": diffs}


def homology_dims(C: DiagramComplex, p: int, positions: Iterable[int] | None = None) -> list[int]:
    return C.homology_dims(p, positions)


def zero_complex() -> DiagramComplex:
    return DiagramComplex({}, {}, name="0")


def unit_complex(flavor: str = MINUS) -> DiagramComplex:
    """``0 -> P_0 -> 0``, the unit for the tensor product."""
    return DiagramComplex({0: [Summand(projective(0, flavor), ())]}, {}, flavor, "P_0")


def check_linearity(C: DiagramComplex) -> bool:
    """Every differential entry is homogeneous of sarc degree exactly one."""
    return all(e.is_homogeneous(1) for es in C.diffs.values() for e in es.values())


# -- Hom into a module ------------------------------------------------------------

def hom_complex(C: DiagramComplex, N: Module) -> CochainComplex:
    """``Hom(C, N)`` for a projective complex ``C``.

    ``Hom(P_n, N) = 1_n N``; a component ``x -> x e`` of ``d`` induces
    ``v -> e v`` on the Hom side.  ``maps[t]`` goes from degree t-1 to t.
    """
    if not C.is_projective:
        raise ComplexError("Hom complexes are formed from projective complexes only")
    dims, offs = {}, {}
    for t, summands in C.terms.items():
        o, acc = [], 0
        for s in summands:
            o.append(acc)
            acc += N.dim(s.n)
        offs[t] = o
        dims[t] = acc
    maps = {}
    for t, entries in C.diffs.items():
        if t - 1 not in C.terms:
            continue
        cols: la.Cols = [dict() for _ in range(dims[t - 1])]
        for (s, u), e in entries.items():
            block = N.act_element(e)
            for c, col in enumerate(block):
                dst = cols[offs[t - 1][u] + c]
                for k, v in col.items():
                    key = offs[t][s] + k
                    w = dst.get(key, 0) + v
                    if w:
                        dst[key] = w
                    else:
                        dst.pop(key, None)
        maps[t] = cols
    return CochainComplex(dims, maps)


# -- tensor products ---------------------------------------------------------------

def tensor_complexes(C1: DiagramComplex, C2: DiagramComplex) -> DiagramComplex:
    """Totalized tensor product; the first factor is stacked on top.

    ``d(x ⊗ y) = d x ⊗ y + (-1)^{deg x} x ⊗ d y``.
    """
    if C1.flavor != C2.flavor:
        raise ComplexError("cannot tensor complexes of different flavors")
    if not (C1.is_projective and C2.is_projective):
        raise ComplexError("tensor products are formed from projective complexes only")
    flavor = C1.flavor
    index: dict[tuple, tuple[int, int]] = {}
    terms: dict[int, list[Summand]] = {}
    for a in sorted(C1.terms):
        for b in sorted(C2.terms):
            for i, s1 in enumerate(C1.terms[a]):
                for j, s2 in enumerate(C2.terms[b]):
                    lst = terms.setdefault(a + b, [])
                    index[(a, i, b, j)] = (a + b, len(lst))
                    lst.append(Summand(projective(s1.n + s2.n, flavor), (s1.label, s2.label)))
    diffs: dict[int, Entries] = {}

    def put(src, tgt, e):
        (t, s), (_, u) = index[src], index[tgt]
        ent = diffs.setdefault(t, {})
        ent[(s, u)] = ent.get((s, u), AlgebraElement.zero(flavor)) + e

    for (a, i, b, j) in list(index):
        n1, n2 = C1.terms[a][i].n, C2.terms[b][j].n
        for (s, u), e in C1.diffs.get(a, {}).items():
            if s == i:
                put((a, i, b, j), (a - 1, u, b, j), tensor(e, unit_idempotent(n2, flavor)))
        sign = -1 if a % 2 else 1
        for (s, u), e in C2.diffs.get(b, {}).items():
            if s == j:
                put((a, i, b, j), (a, i, b - 1, u), tensor(unit_idempotent(n1, flavor), e).scale(sign))
    diffs = {t: {k: v for k, v in es.items() if v} for t, es in diffs.items()}
    return DiagramComplex(terms, diffs, flavor, f"({C1.name})⊗({C2.name})")


def signed_isomorphism(C: DiagramComplex, D: DiagramComplex,
                       match: Callable[[int, Hashable], Hashable]) -> dict:
    """Look for an isomorphism ``C -> D`` that is ``±1`` on each summand.

    ``match(t, label_in_C)`` names the summand of ``D`` that should receive
    it.  Signs are propagated along nonzero entries; a consistent choice
    exists exactly when every entry of ``C`` is ``±`` the matching entry of
    ``D`` with the sign forced by the endpoints.
    """
    if sorted(C.terms) != sorted(D.terms):
        return {"ok": False, "reason": "different positions"}
    perm: dict[int, list[int]] = {}
    for t in C.terms:
        where = {s.label: k for k, s in enumerate(D.terms[t])}
        if len(where) != len(D.terms[t]) or len(C.terms[t]) != len(D.terms[t]):
            return {"ok": False, "reason": f"term {t} sizes differ"}
        row = []
        for s in C.terms[t]:
            k = where.get(match(t, s.label))
            if k is None or D.terms[t][k].n != s.n:
                return {"ok": False, "reason": f"no partner for {s.label} in term {t}"}
            row.append(k)
        if len(set(row)) != len(row):
            return {"ok": False, "reason": f"matching is not bijective in term {t}"}
        perm[t] = row
    # edges: (t, s) -- (t-1, u) with relative sign
    adj: dict[tuple, list] = {}
    for t in C.terms:
        for (s, u), e in C.diffs.get(t, {}).items():
            f = D.entry(t, perm[t][s], perm[t - 1][u])
            if e == f:
                rel = 1
            elif e == -f:
                rel = -1
            else:
                return {"ok": False, "reason": f"entry ({s},{u}) of d_{t} differs beyond sign"}
            adj.setdefault((t, s), []).append(((t - 1, u), rel))
            adj.setdefault((t - 1, u), []).append(((t, s), rel))
        # entries of D without a counterpart in C
        for (s2, u2), f in D.diffs.get(t, {}).items():
            s = perm[t].index(s2)
            u = perm[t - 1].index(u2)
            if not C.entry(t, s, u) and f:
                return {"ok": False, "reason": f"D has an extra entry at ({s2},{u2}) of d_{t}"}
    signs: dict[tuple, int] = {}
    for start in [(t, s) for t in sorted(C.terms) for s in range(len(C.terms[t]))]:
        if start in signs:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            v = stack.pop()
            for w, rel in adj.get(v, ()):
                want = signs[v] * rel
                if w not in signs:
                    signs[w] = want
                    stack.append(w)
                elif signs[w] != want:
                    return {"ok": False, "reason": "sign constraints are inconsistent"}
    return {"ok": True, "signs": {f"{t}:{s}": v for (t, s), v in sorted(signs.items())}}


# -- bicomplexes --------------------------------------------------------------------

@dataclass
class Bicomplex:
    """Terms at ``(m, k)``; ``dv`` lowers k, ``dh`` lowers m; total degree m + k."""

    terms: dict[tuple[int, int], list[Summand]]
    dv: dict[tuple[int, int], Entries]
    dh: dict[tuple[int, int], Entries]
    flavor: str = MINUS
    name: str = "bicomplex"

    def _compose(self, first: Entries, second: Entries) -> Entries:
        by_src: dict[int, list] = {}
        for (j, u), e in second.items():
            by_src.setdefault(j, []).append((u, e))
        out: Entries = {}
        for (s, j), e1 in first.items():
            for u, e2 in by_src.get(j, ()):
                out[(s, u)] = out.get((s, u), AlgebraElement.zero(self.flavor)) + e1 * e2
        return out

    def verify(self) -> dict:
        """``dv^2 = 0``, ``dh^2 = 0`` and ``dh dv + dv dh = 0`` entrywise."""
        failures = []
        empty: Entries = {}
        for (m, k) in sorted(self.terms):
            checks = [
                ("dv2", self._compose(self.dv.get((m, k), empty), self.dv.get((m, k - 1), empty)), None),
                ("dh2", self._compose(self.dh.get((m, k), empty), self.dh.get((m - 1, k), empty)), None),
                ("square", self._compose(self.dv.get((m, k), empty), self.dh.get((m, k - 1), empty)),
                 self._compose(self.dh.get((m, k), empty), self.dv.get((m - 1, k), empty))),
            ]
            for kind, a, b in checks:
                if b is not None:
                    for key, e in b.items():
                        a[key] = a.get(key, AlgebraElement.zero(self.flavor)) + e
                for key, e in a.items():
                    if e:
                        failures.append({"kind": kind, "at": [m, k], "entry": list(key)})
        return {"ok": not failures, "failures": failures}

    def total(self, require_verified: bool = True) -> DiagramComplex:
        if require_verified and not self.verify()["ok"]:
            raise ComplexError("bicomplex squares do not anticommute")
        cells = sorted(self.terms)
        where: dict[tuple, tuple[int, int]] = {}
        terms: dict[int, list[Summand]] = {}
        for (m, k) in cells:
            for i, s in enumerate(self.terms[(m, k)]):
                lst = terms.setdefault(m + k, [])
                where[(m, k, i)] = (m + k, len(lst))
                lst.append(Summand(s.module, ((m, k), s.label)))
        diffs: dict[int, Entries] = {}
        for (m, k) in cells:
            for tgt, entries in (((m, k - 1), self.dv.get((m, k), {})), ((m - 1, k), self.dh.get((m, k), {}))):
                for (s, u), e in entries.items():
                    t, a = where[(m, k, s)]
                    key = (tgt[0], tgt[1], u)
                    if key not in where:
                        continue
                    _, b = where[key]
                    diffs.setdefault(t, {})[(a, b)] = e
        return DiagramComplex(terms, diffs, self.flavor, f"Tot({self.name})")

    def to_json(self) -> dict:
        def enc(entries):
            return [{"src": s, "tgt": u, "entry": e.to_json()} for (s, u), e in sorted(entries.items())]

        return {
            "name": self.name,
            "flavor": self.flavor,
            "terms": {f"{m},{k}": [s.to_json() for s in ss] for (m, k), ss in sorted(self.terms.items())},
            "dv": {f"{m},{k}": enc(es) for (m, k), es in sorted(self.dv.items())},
            "dh": {f"{m},{k}": enc(es) for (m, k), es in sorted(self.dh.items())},
        }


def total_complex(B: Bicomplex) -> DiagramComplex:
    return B.total()


def euler_class(C: DiagramComplex) -> PolyClass:
    return C.euler_class()
