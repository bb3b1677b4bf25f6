"""Locally finite-dimensional left modules, materialized weight by weight.

A module exposes ``dim(p)`` (the dimension of ``1_p M``) and ``act(g)``, the
matrix of a diagram ``g`` in ``_qB_p`` as a map ``1_p M -> 1_q M`` (columns
indexed by the weight-``p`` basis).  Weight spaces are built lazily and
cached, so any cutoff is the caller's choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

from . import diagram as dg
from . import linalg as la
from .algebra import MINUS, AlgebraElement, mul_basis
from .diagram import Diagram


class ModuleError(ValueError):
    pass


class Module:
    flavor: str = MINUS
    descriptor: str = "module"

    def dim(self, p: int) -> int:
        raise NotImplementedError

    def act(self, g: Diagram) -> la.Cols:
        raise NotImplementedError

    def act_element(self, a: AlgebraElement) -> la.Cols:
        """Matrix of a homogeneous element of ``1_q A 1_p``."""
        blocks = a.blocks()
        if len(blocks) != 1:
            raise ModuleError(f"element must lie in a single weight block, got {blocks}")
        q, p = blocks[0]
        out: la.Cols = [dict() for _ in range(self.dim(p))]
        for d, c in a.items():
            for j, col in enumerate(self.act(d)):
                tgt = out[j]
                for i, v in col.items():
                    w = tgt.get(i, 0) + c * v
                    if w:
                        tgt[i] = w
                    else:
                        tgt.pop(i, None)
        return out

    def dims(self, max_weight: int) -> list[int]:
        return [self.dim(p) for p in range(max_weight + 1)]

    def __repr__(self):
        return self.descriptor


@dataclass(frozen=True)
class DiagramModule(Module):
    """Span of the diagrams in ``B_n`` with width in ``[lo, hi]``.

    This is the subquotient ``P_n(<=hi) / P_n(<=lo-1)``: products that raise
    nothing (width never grows) and products that drop below ``lo`` vanish.
    ``lo=0, hi=n`` is ``P_n``; ``lo=hi=n`` is the standard module ``M_n``.
    """

    n: int
    lo: int = 0
    hi: int | None = None
    flavor: str = MINUS
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise ModuleError("module index must be nonnegative")
        if self.hi is None or self.hi > self.n:
            object.__setattr__(self, "hi", self.n)

    @property
    def descriptor(self) -> str:
        if self.lo == 0 and self.hi == self.n:
            return f"P_{self.n}"
        if self.lo == self.hi == self.n:
            return f"M_{self.n}"
        if self.lo == 0:
            return f"P_{self.n}(<={self.hi})"
        return f"P_{self.n}[{self.lo}..{self.hi}]"

    @property
    def is_projective(self) -> bool:
        return self.lo == 0 and self.hi == self.n

    def basis(self, p: int) -> tuple[Diagram, ...]:
        return dg.enumerate_basis(p, self.n, min_width=self.lo, max_width=self.hi)

    def index(self, p: int) -> dict[Diagram, int]:
        key = ("index", p)
        idx = self._cache.get(key)
        if idx is None:
            idx = {d: i for i, d in enumerate(self.basis(p))}
            self._cache[key] = idx
        return idx

    def dim(self, p: int) -> int:
        return len(self.basis(p)) if p >= 0 else 0

    def project(self, r: Diagram | None) -> int | None:
        """Index of ``r`` in this module's basis, or None when it is zero here."""
        if r is None or r.width < self.lo:
            return None
        if r.width > self.hi or r.right != self.n:
            raise ModuleError(f"{r} does not lie in {self.descriptor}")
        return self.index(r.left)[r]

    def act(self, g: Diagram) -> la.Cols:
        key = ("act", g)
        out = self._cache.get(key)
        if out is None:
            out = []
            for x in self.basis(g.right):
                i = self.project(mul_basis(g, x, self.flavor))
                out.append({} if i is None else {i: 1})
            self._cache[key] = out
        return out

    def presentation(self) -> "Presentation":
        if self.is_projective:
            return Presentation.free([self.n], self.flavor)
        if self.lo == self.hi == self.n:
            return standard_presentation(self.n, self.flavor)
        raise ModuleError(f"no stored presentation for {self.descriptor}")


def projective(n: int, flavor: str = MINUS) -> DiagramModule:
    return DiagramModule(n, 0, n, flavor)


def standard(n: int) -> DiagramModule:
    return DiagramModule(n, n, n, MINUS)


def width_truncation(n: int, k: int) -> DiagramModule:
    """``P_n(<=k)``, the span of diagrams of width at most ``k``."""
    if k < 0:
        raise ModuleError("truncation width must be nonnegative")
    return DiagramModule(n, 0, min(k, n), MINUS)


def filtration_layer(n: int, m: int) -> DiagramModule:
    """``P_n(<=m) / P_n(<=m-1)``."""
    if not 0 <= m <= n:
        raise ModuleError("layer index must satisfy 0 <= m <= n")
    return DiagramModule(n, m, m, MINUS)


@dataclass(frozen=True)
class SimpleModule(Module):
    n: int
    flavor: str = MINUS

    @property
    def descriptor(self) -> str:
        return f"L_{self.n}"

    def dim(self, p: int) -> int:
        return 1 if p == self.n else 0

    def act(self, g: Diagram) -> la.Cols:
        if g.right != self.n:
            return []
        if g == dg.identity(self.n):
            return [{0: 1}]
        return [{}]

    def presentation(self) -> "Presentation":
        return simple_presentation(self.n)


def simple(n: int) -> SimpleModule:
    return SimpleModule(n)


class DirectSum(Module):
    def __init__(self, parts: Sequence[Module], labels: Sequence | None = None):
        self.parts = list(parts)
        self.labels = list(labels) if labels is not None else list(range(len(self.parts)))
        self.flavor = self.parts[0].flavor if self.parts else MINUS
        self.descriptor = " + ".join(m.descriptor for m in self.parts) or "0"
        self._offsets: dict[int, list[int]] = {}

    def offsets(self, p: int) -> list[int]:
        off = self._offsets.get(p)
        if off is None:
            off, t = [], 0
            for m in self.parts:
                off.append(t)
                t += m.dim(p)
            off.append(t)
            self._offsets[p] = off
        return off

    def dim(self, p: int) -> int:
        return self.offsets(p)[-1]

    def act(self, g: Diagram) -> la.Cols:
        out: la.Cols = []
        oq = self.offsets(g.left)
        for k, m in enumerate(self.parts):
            for col in m.act(g):
                out.append({i + oq[k]: v for i, v in col.items()})
        return out


class Restricted(Module):
    """Restriction along the embedding that adds a larc on top: ``1_p Res M = 1_{p+1} M``."""

    def __init__(self, inner: Module):
        self.inner = inner
        self.flavor = inner.flavor
        self.descriptor = f"Res({inner.descriptor})"

    def dim(self, p: int) -> int:
        return self.inner.dim(p + 1) if p >= 0 else 0

    def act(self, g: Diagram) -> la.Cols:
        return self.inner.act(dg.iota(g))


class Cabled(Module):
    """The cabled module: ``1_p M' = 1_{kp} M`` with diagrams acting through their k-cables."""

    def __init__(self, inner: Module, k: int):
        if k < 1:
            raise ModuleError("cabling multiplicity must be positive")
        self.inner = inner
        self.k = k
        self.flavor = inner.flavor
        self.descriptor = f"^[{k}]({inner.descriptor})"

    def dim(self, p: int) -> int:
        return self.inner.dim(self.k * p) if p >= 0 else 0

    def act(self, g: Diagram) -> la.Cols:
        return self.inner.act(dg.cable(g, self.k))


# -- presentations ----------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    """``coker(⊕_j P_{m_j} -> ⊕_i P_{n_i})``.

    ``relations[j] = (m_j, row)`` where ``row[i]`` lies in ``1_{m_j} A 1_{n_i}``
    and sends ``x`` in ``P_{m_j}`` to ``x * row[i]`` in ``P_{n_i}``.
    """

    targets: tuple[int, ...]
    relations: tuple[tuple[int, tuple[AlgebraElement, ...]], ...] = ()
    flavor: str = MINUS

    def __post_init__(self):
        for m, row in self.relations:
            if len(row) != len(self.targets):
                raise ModuleError("relation row length does not match the number of targets")
            for n, e in zip(self.targets, row):
                if e.flavor != self.flavor:
                    raise ModuleError("relation entry has the wrong flavor")
                for d in e:
                    if d.left != m or d.right != n:
                        raise ModuleError(f"relation entry {d} is not in 1_{m} A 1_{n}")

    @classmethod
    def free(cls, targets: Sequence[int], flavor: str = MINUS) -> "Presentation":
        return cls(tuple(targets), (), flavor)

    def map_entries(self, f: Callable[[AlgebraElement], AlgebraElement], shift: int) -> "Presentation":
        return Presentation(tuple(n + shift for n in self.targets),
                            tuple((m + shift, tuple(f(e) for e in row)) for m, row in self.relations),
                            self.flavor)


def standard_presentation(n: int, flavor: str = MINUS) -> Presentation:
    """``M_n = coker(P_{n-1}^n -> P_n)`` with the relation ``b_n^i`` on the i-th copy."""
    rels = tuple((n - 1, (AlgebraElement.basis(dg.right_adder(n, i), flavor),)) for i in range(1, n + 1))
    return Presentation((n,), rels, flavor)


def simple_presentation(n: int) -> Presentation:
    """``L_n = P_n`` modulo every right-sarc adder and every left-sarc adder."""
    rels = [(n - 1, (AlgebraElement.basis(dg.right_adder(n, i)),)) for i in range(1, n + 1)]
    rels += [(n + 1, (AlgebraElement.basis(dg.left_adder(n, i)),)) for i in range(1, n + 2)]
    return Presentation((n,), tuple(rels))


class Cokernel(Module):
    def __init__(self, pres: Presentation, descriptor: str | None = None):
        self.pres = pres
        self.flavor = pres.flavor
        self.field = la.get_field()
        self.descriptor = descriptor or f"coker{pres.targets}"
        self._weights: dict[int, tuple] = {}
        self._act: dict[Diagram, la.Cols] = {}

    def presentation(self) -> Presentation:
        return self.pres

    def ambient(self, p: int):
        return self._weight(p)[0]

    def _weight(self, p: int):
        w = self._weights.get(p)
        if w is not None:
            return w
        ambient = [(i, d) for i, n in enumerate(self.pres.targets) for d in dg.enumerate_basis(p, n)]
        amb_index = {key: c for c, key in enumerate(ambient)}
        ech = la.Echelon(self.field)
        for m, row in self.pres.relations:
            for x in dg.enumerate_basis(p, m):
                vec: la.Vector = {}
                for i, e in enumerate(row):
                    for y, c in e.items():
                        r = mul_basis(x, y, self.flavor)
                        if r is not None:
                            k = amb_index[(i, r)]
                            vec[k] = vec.get(k, 0) + c
                ech.add(la.coerce_vector(vec, self.field))
        free = [c for c in range(len(ambient)) if c not in ech.pivots]
        qindex = {c: j for j, c in enumerate(free)}
        w = (ambient, amb_index, ech, free, qindex)
        self._weights[p] = w
        return w

    def dim(self, p: int) -> int:
        return len(self._weight(p)[3]) if p >= 0 else 0

    def relation_rank(self, p: int) -> int:
        return self._weight(p)[2].rank

    def quotient_coords(self, p: int, vec: la.Vector) -> la.Vector:
        """Coordinates in the quotient basis of an ambient vector at weight ``p``."""
        _, _, ech, _, qindex = self._weight(p)
        red = ech.reduce(la.coerce_vector(vec, self.field))
        return {qindex[c]: v for c, v in red.items()}

    def act(self, g: Diagram) -> la.Cols:
        out = self._act.get(g)
        if out is not None:
            return out
        ambient_p, _, _, free_p, _ = self._weight(g.right)
        _, amb_q, _, _, _ = self._weight(g.left)
        out = []
        for c in free_p:
            i, x = ambient_p[c]
            r = mul_basis(g, x, self.flavor)
            out.append({} if r is None else self.quotient_coords(g.left, {amb_q[(i, r)]: 1}))
        self._act[g] = out
        return out


def cokernel(pres: Presentation, descriptor: str | None = None) -> Cokernel:
    return Cokernel(pres, descriptor)


# -- morphisms ---------------------------------------------------------------

def generators(max_weight: int) -> list[Diagram]:
    """One-sarc generators whose two weights are at most ``max_weight``.

    Every diagram is a product of these (see ``diagram.factorize``), so
    equivariance against them is equivariance against the whole algebra.
    """
    out = []
    for p in range(max_weight + 1):
        if p + 1 <= max_weight:
            out.extend(dg.left_adder(p, i) for i in range(1, p + 2))
        if p >= 1:
            out.extend(dg.right_adder(p, i) for i in range(1, p + 1))
    return out


@dataclass
class ModuleMorphism:
    """Per-weight matrices ``f_p: 1_p M -> 1_p N``."""

    source: Module
    target: Module
    weight_map: Callable[[int], la.Cols]
    _cache: dict = field(default_factory=dict, repr=False)

    def at(self, p: int) -> la.Cols:
        m = self._cache.get(p)
        if m is None:
            m = self.weight_map(p)
            if len(m) != self.source.dim(p):
                raise ModuleError(f"weight {p}: map has {len(m)} columns, source has dim {self.source.dim(p)}")
            self._cache[p] = m
        return m

    def equivariance_failures(self, max_weight: int, gens: Sequence[Diagram] | None = None) -> list[Diagram]:
        bad = []
        for g in gens if gens is not None else generators(max_weight):
            lhs = la.compose(self.at(g.left), self.source.act(g))
            rhs = la.compose(self.target.act(g), self.at(g.right))
            if not la.cols_equal(lhs, rhs):
                bad.append(g)
        return bad

    def is_equivariant(self, max_weight: int) -> bool:
        return not self.equivariance_failures(max_weight)

    def rank(self, p: int) -> int:
        return la.rank(self.at(p))

    def is_iso(self, max_weight: int) -> bool:
        return all(
            self.source.dim(p) == self.target.dim(p) == self.rank(p) for p in range(max_weight + 1)
        )

    def is_surjective(self, max_weight: int) -> bool:
        return all(self.rank(p) == self.target.dim(p) for p in range(max_weight + 1))

    def is_injective(self, max_weight: int) -> bool:
        return all(self.rank(p) == self.source.dim(p) for p in range(max_weight + 1))


def basis_map(source: DiagramModule, target: DirectSum, rule: Callable[[Diagram], tuple[int, Diagram] | None]) -> ModuleMorphism:
    """Morphism sending each basis diagram to one basis diagram of a summand (or to 0)."""

    def weight_map(p: int) -> la.Cols:
        off = target.offsets(p)
        cols = []
        for x in source.basis(p):
            img = rule(x)
            if img is None:
                cols.append({})
                continue
            k, y = img
            part = target.parts[k]
            i = part.project(y) if isinstance(part, DiagramModule) else None
            if i is None:
                raise ModuleError(f"{y} is not a basis vector of summand {k}")
            cols.append({off[k] + i: 1})
        return cols

    return ModuleMorphism(source, target, weight_map)


# -- dimensions and Hom ------------------------------------------------------

def projective_dim_formula(p: int, n: int) -> int:
    return comb(p + n, n)


def standard_dim_formula(p: int, n: int) -> int:
    return comb(p, n)


def multiplicity_simple(module: Module, n: int) -> int:
    """Generalized multiplicity ``[M : L_n] = dim 1_n M``."""
    return module.dim(n)


def hom_dim(source, target: Module) -> int:
    """``dim Hom(source, target)`` for a finitely presented source.

    ``Hom(coker(F1 -> F0), N)`` is the kernel of the map ``Hom(F0, N) ->
    Hom(F1, N)``; each ``Hom(P_n, N) = 1_n N`` and a relation entry ``e``
    acts on it by the left action of ``e``.
    """
    pres = source if isinstance(source, Presentation) else source.presentation()
    offs, t = [], 0
    for n in pres.targets:
        offs.append(t)
        t += target.dim(n)
    rows_off, r = [], 0
    for m, _ in pres.relations:
        rows_off.append(r)
        r += target.dim(m)
    cols: la.Cols = [dict() for _ in range(t)]
    for j, (m, row) in enumerate(pres.relations):
        for i, e in enumerate(row):
            if not e:
                continue
            block = target.act_element(e)
            for c, col in enumerate(block):
                dst = cols[offs[i] + c]
                for k, v in col.items():
                    key = rows_off[j] + k
                    w = dst.get(key, 0) + v
                    if w:
                        dst[key] = w
                    else:
                        dst.pop(key, None)
    return t - la.rank(cols)


def factorization_consistent(module: Module, d: Diagram) -> bool:
    """Does the action of ``d`` agree with the product of its generator actions?"""
    gens = dg.factorize(d)
    mat = module.act(gens[-1])
    for g in reversed(gens[:-1]):
        mat = la.compose(module.act(g), mat)
    return la.cols_equal(mat, module.act(d))


# -- filtration of P_n by standards ------------------------------------------

@dataclass
class FiltrationQuotient:
    n: int
    m: int
    layer: DiagramModule
    target: DirectSum
    morphism: ModuleMorphism

    @property
    def copies(self) -> int:
        return len(self.target.parts)


def filtration_quotient_iso(n: int, m: int) -> FiltrationQuotient:
    """``P_n(<=m)/P_n(<=m-1)`` against ``M_m`` summed over right-sarc position sets.

    The candidate isomorphism deletes the right sarcs of a width-``m``
    diagram; the summand is labeled by their positions.
    """
    layer = filtration_layer(n, m)
    classes = sorted({d.right_sarcs for d in dg.enumerate_basis(m, n, width=m)})
    target = DirectSum([standard(m) for _ in classes], labels=classes)
    where = {s: k for k, s in enumerate(classes)}
    full = tuple(range(1, m + 1))

    def rule(x: Diagram):
        return where[x.right_sarcs], Diagram(x.left, m, x.larc_left, full)

    return FiltrationQuotient(n, m, layer, target, basis_map(layer, target, rule))


# -- right modules through reflection -----------------------------------------

def right_standard_basis(k: int, n: int) -> tuple[Diagram, ...]:
    """Basis of ``_kM 1_n``: reflections of the basis of ``1_n M_k``."""
    return tuple(dg.reflect(d) for d in standard(k).basis(n))


def bimodule_layer_check(m: int, n: int, k: int) -> dict:
    """``A(<=k)/A(<=k-1)`` against ``M_k ⊗ _kM`` on the block ``1_m - 1_n``.

    Builds the bijection ``(alpha, beta) -> alpha * beta``, checks it hits
    every width-``k`` diagram once, and checks it intertwines the left action
    on ``M_k`` and the right action on ``_kM`` with the layer's actions.
    """
    left = standard(k).basis(m)
    right = right_standard_basis(k, n)
    products = {}
    ok = True
    for a in left:
        for b in right:
            r, f = dg.compose(a, b)
            ok = ok and f == 0
            products[(a, b)] = r
    images = list(products.values())
    layer = set(dg.enumerate_basis(m, n, width=k))
    bijective = ok and len(set(images)) == len(images) and set(images) == layer

    def in_layer(r):
        return r if r is not None and r.width == k else None

    equivariant = True
    for g in [dg.left_adder(m, i) for i in range(1, m + 2)] + [dg.right_adder(m, i) for i in range(1, m + 1)]:
        for (a, b), r in products.items():
            ga = in_layer(mul_basis(g, a))
            expect = None if ga is None else dg.compose(ga, b)[0]
            equivariant &= in_layer(mul_basis(g, r)) == expect
    for g in [dg.right_adder(n + 1, i) for i in range(1, n + 2)] + [dg.left_adder(n - 1, i) for i in range(1, n + 1)]:
        for (a, b), r in products.items():
            bg = in_layer(mul_basis(b, g))
            expect = None if bg is None else dg.compose(a, bg)[0]
            equivariant &= in_layer(mul_basis(r, g)) == expect
    return {
        "pairs": len(images),
        "layer_dim": len(layer),
        "bijective": bijective,
        "equivariant": equivariant,
        "formula": comb(m, k) * comb(n, k),
    }
