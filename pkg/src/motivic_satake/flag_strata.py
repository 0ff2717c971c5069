"""Combinatorial shadow of the stratified partial affine flag variety.

A ``FlagVariety`` is given by a datum, the facet J of the parahoric we
quotient by and the facet J' of the parahoric whose orbits stratify.  Strata
are double cosets W_J' \\ W / W_J; the dimension of a stratum is the largest
length of a minimal representative in W / W_J among the Iwahori cells it
contains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .affine_weyl import AffineWeylError, DoubleCoset, IWElement, IwahoriWeyl, iwahori_weyl
from .root_datum import BasedRootDatum, Vec


@dataclass(frozen=True)
class FlagVariety:
    datum: BasedRootDatum
    facet: frozenset = frozenset()
    stratifying_facet: frozenset = frozenset()

    @property
    def group(self) -> IwahoriWeyl:
        return iwahori_weyl(self.datum)

    @classmethod
    def grassmannian(cls, d: BasedRootDatum) -> "FlagVariety":
        hs = iwahori_weyl(d).hyperspecial
        return cls(d, hs, hs)

    @property
    def is_grassmannian(self) -> bool:
        hs = self.group.hyperspecial
        return self.facet == hs and self.stratifying_facet == hs

    def __post_init__(self):
        object.__setattr__(self, "facet", frozenset(self.facet))
        object.__setattr__(self, "stratifying_facet", frozenset(self.stratifying_facet))
        g = self.group
        for J in (self.facet, self.stratifying_facet):
            if not g.is_finite_facet(J):
                raise AffineWeylError(f"facet {sorted(J)} is not in the closure of the base alcove")


@dataclass(frozen=True)
class Stratum:
    coset: DoubleCoset
    dimension: int
    label: str = field(compare=False, default="")


@dataclass
class StrataPoset:
    strata: list[Stratum]
    covers: dict[Stratum, list[Stratum]]

    def down_set(self, s: Stratum) -> set[Stratum]:
        seen, todo = {s}, [s]
        while todo:
            for t in self.covers[todo.pop()]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return seen

    def to_json(self) -> list[dict]:
        return [
            {"label": s.label, "dim": s.dimension, "covers": [t.label for t in self.covers[s]]}
            for s in self.strata
        ]

    def to_dot(self, name: str = "strata") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for s in self.strata:
            lines.append(f'  "{s.label}" [label="{s.label}\\ndim {s.dimension}"];')
        for s in self.strata:
            for t in self.covers[s]:
                lines.append(f'  "{t.label}" -> "{s.label}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def grassmannian_label(fl: FlagVariety, x: IWElement) -> Vec:
    """Dominant coweight mu with x in W0 t_mu W0."""
    return fl.datum.dominant_representative(x.translation)


def _label(fl: FlagVariety, coset: DoubleCoset) -> str:
    if fl.is_grassmannian:
        return "(" + ",".join(map(str, grassmannian_label(fl, coset.rep))) + ")"
    word, omega = fl.group.reduced_word(coset.rep)
    head = "".join(f"s{s}" for s in word) or "e"
    if omega == fl.group.identity:
        return head
    return f"{head}.{omega!r}"


def stratum_dimension(fl: FlagVariety, coset: DoubleCoset) -> int:
    """max over v in W_J' w W_J / W_J of the length of the minimal representative."""
    g = fl.group
    best = 0
    for u in g.parabolic(fl.stratifying_facet):
        v = g.min_double_coset_rep(g.multiply(u, coset.rep), (), fl.facet)
        best = max(best, g.length(v))
    return best


def make_stratum(fl: FlagVariety, x: IWElement) -> Stratum:
    coset = fl.group.double_coset(x, fl.stratifying_facet, fl.facet)
    return Stratum(coset, stratum_dimension(fl, coset), _label(fl, coset))


def enumerate_strata(fl: FlagVariety, bound: int, omegas: Iterable[IWElement] | None = None) -> StrataPoset:
    """Strata of dimension <= bound in the given Omega-classes, with cover relations.

    Closure order is the Bruhat order on minimal double coset representatives.
    """
    g = fl.group
    cosets = g.double_coset_reps(fl.stratifying_facet, fl.facet, bound, omegas)
    strata = []
    for c in cosets:
        dim = stratum_dimension(fl, c)
        if dim <= bound:
            strata.append(Stratum(c, dim, _label(fl, c)))
    strata.sort(key=lambda s: (s.dimension, s.label))
    below = {s: [t for t in strata if t != s and g.bruhat_leq(t.coset.rep, s.coset.rep)] for s in strata}
    covers = {}
    for s in strata:
        lower = below[s]
        covers[s] = [t for t in lower if not any(t in below[u] for u in lower)]
    return StrataPoset(strata, covers)


def closure_contains(fl: FlagVariety, big: Stratum, small: Stratum) -> bool:
    return fl.group.bruhat_leq(small.coset.rep, big.coset.rep)


@dataclass(frozen=True)
class FiberDecomposition:
    base: IWElement
    reflection: int
    pieces: tuple[tuple[IWElement, str, int], ...]


def projection_fibers(d: BasedRootDatum, v: IWElement, s: int) -> FiberDecomposition:
    """Preimage of the stratum of v under Fl -> Fl_{f_s} when w = v s is reduced.

    Returns the Iwahori strata {v, vs}, the first mapping isomorphically and
    the second a perfect line bundle over it.
    """
    g = iwahori_weyl(d)
    sr = g.simple_reflections[s]
    vs = g.multiply(v, sr)
    if g.length(vs) != g.length(v) + 1:
        raise AffineWeylError(f"{vs!r} = {v!r} * s{s} is not a reduced decomposition")
    coset = {g.multiply(v, u) for u in g.parabolic({s})}
    assert coset == {v, vs}
    pieces = ((v, "isomorphism", g.length(v)), (vs, "line-bundle", g.length(vs)))
    return FiberDecomposition(v, s, pieces)


def convolution_support(fl: FlagVariety, a: DoubleCoset, b: DoubleCoset) -> Stratum:
    """Stratum whose closure is the image of the convolution of two closures.

    Requires the stratifying and quotient facets to agree (Iwahori or Gr case).
    """
    if fl.facet != fl.stratifying_facet:
        raise AffineWeylError("convolution needs equal facets")
    g = fl.group
    J = fl.facet
    xa = g.max_double_coset_rep(a.rep, J, J)
    xb = g.max_double_coset_rep(b.rep, J, J)
    return make_stratum(fl, g.demazure_product(xa, xb))


def gr_stratum(fl: FlagVariety, mu) -> Stratum:
    if not fl.is_grassmannian:
        raise AffineWeylError("coweight labels only make sense on the affine Grassmannian")
    return make_stratum(fl, fl.group.translation(mu))


@dataclass(frozen=True)
class ParityRow:
    mu: Vec
    lam: Vec
    dim_mu: int
    dim_lam: int
    same_parity: bool


def parity_table(fl: FlagVariety, coweights: Iterable[Vec]) -> list[ParityRow]:
    """Parity of dimensions for all comparable pairs lam <= mu among the coweights."""
    if not fl.is_grassmannian:
        raise AffineWeylError("parity table is defined on the affine Grassmannian")
    d = fl.datum
    cw = sorted(set(map(tuple, coweights)))
    dims = {mu: gr_stratum(fl, mu).dimension for mu in cw}
    rows = []
    for mu in cw:
        for lam in cw:
            if d.in_coroot_cone(tuple(m - l for m, l in zip(mu, lam))):
                rows.append(ParityRow(mu, lam, dims[mu], dims[lam], (dims[mu] - dims[lam]) % 2 == 0))
    return rows
