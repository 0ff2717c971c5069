"""Iwahori-Weyl group W = Y x| W0 of a split group.

Elements t_lam * w act on the apartment Y (x) R by p -> lam + w(p).  The
affine simple reflections are labelled 1..n for the finite simple
reflections (in ``datum.simple`` order) and 0, -1, -2, ... for the affine
node of each irreducible component.  Length and Bruhat order live on the
Coxeter part W_aff; elements with different length-zero (Omega) parts are
incomparable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from ._linalg import dot, solve_in_span
from .root_datum import BasedRootDatum, Vec, WeylElement, weyl_group


class AffineWeylError(ValueError):
    pass


@dataclass(frozen=True)
class IWElement:
    translation: Vec
    finite: WeylElement
    group: "IwahoriWeyl" = field(compare=False, repr=False)

    def __mul__(self, other: "IWElement") -> "IWElement":
        return self.group.multiply(self, other)

    def inverse(self) -> "IWElement":
        return self.group.inverse(self)

    def length(self) -> int:
        return self.group.length(self)

    def sort_key(self):
        return (self.length(), self.translation, self.finite.word)

    def __repr__(self):
        t = "t(" + ",".join(map(str, self.translation)) + ")"
        return t if not self.finite.word else f"{t}*{self.finite!r}"


@dataclass(frozen=True)
class AffineRoot:
    """The affine function p -> <gradient, p> + level on the apartment."""

    gradient: Vec
    level: int

    def value(self, point: Sequence) -> Fraction:
        return Fraction(dot(self.gradient, point)) + self.level


@dataclass(frozen=True)
class DoubleCoset:
    rep: IWElement
    left: frozenset
    right: frozenset

    def __repr__(self):
        return f"DoubleCoset({self.rep!r}, left={sorted(self.left)}, right={sorted(self.right)})"


class IwahoriWeyl:
    def __init__(self, d: BasedRootDatum):
        self.datum = d
        self.W0 = weyl_group(d)
        self._pos = d.positive_roots
        self._inv_cache: dict[WeylElement, tuple[bool, ...]] = {}
        self._bruhat_cache: dict = {}
        self.simple_reflections: dict[int, IWElement] = {}
        zero = d.zero()
        for k in range(d.semisimple_rank):
            self.simple_reflections[k + 1] = self.element(zero, self.W0.simple_reflection(k))
        for c, h in enumerate(d.highest_roots):
            self.simple_reflections[-c] = self.element(d.coroots[h], self.W0.reflection(h))
        self.labels = tuple(sorted(self.simple_reflections))

    # --- construction ---------------------------------------------------

    def element(self, translation: Sequence[int], finite: WeylElement | None = None) -> IWElement:
        if len(translation) != self.datum.rank:
            raise AffineWeylError(f"translation {tuple(translation)} has wrong rank")
        return IWElement(tuple(int(x) for x in translation), finite or self.W0.identity, self)

    def translation(self, lam: Sequence[int]) -> IWElement:
        return self.element(lam)

    @property
    def identity(self) -> IWElement:
        return self.element(self.datum.zero())

    def from_word(self, labels: Iterable[int], omega: IWElement | None = None) -> IWElement:
        x = self.identity
        for s in labels:
            x = self.multiply(x, self.simple_reflections[s])
        return self.multiply(x, omega) if omega is not None else x

    # --- group law --------------------------------------------------------

    def _check(self, *xs: IWElement):
        for x in xs:
            if x.group is not self and x.group.datum != self.datum:
                raise AffineWeylError("elements belong to different root data")

    def multiply(self, x: IWElement, y: IWElement) -> IWElement:
        self._check(x, y)
        wm = x.finite.act_y(y.translation)
        lam = tuple(a + b for a, b in zip(x.translation, wm))
        return IWElement(lam, self.W0.multiply(x.finite, y.finite), self)

    def inverse(self, x: IWElement) -> IWElement:
        self._check(x)
        winv = self.W0.inverse(x.finite)
        lam = tuple(-c for c in winv.act_y(x.translation))
        return IWElement(lam, winv, self)

    def act_point(self, x: IWElement, p: Sequence) -> tuple:
        wp = x.finite.act_y(p) if all(isinstance(c, int) for c in p) else _act_frac(x.finite.y_matrix, p)
        return tuple(a + b for a, b in zip(x.translation, wp))

    def act_affine_root(self, x: IWElement, a: AffineRoot) -> AffineRoot:
        g = x.finite.act_x(a.gradient)
        return AffineRoot(g, a.level - dot(g, x.translation))

    # --- length -------------------------------------------------------------

    def _inverted(self, w: WeylElement) -> tuple[bool, ...]:
        """For each positive root alpha: whether w^-1(alpha) is negative."""
        got = self._inv_cache.get(w)
        if got is None:
            winv = self.W0.inverse(w)
            d = self.datum
            got = tuple(not d.is_positive_root(winv.act_x(a)) for a in self._pos)
            self._inv_cache[w] = got
        return got

    def length(self, x: IWElement) -> int:
        """Iwahori-Matsumoto length of t_lam * w."""
        total = 0
        for a, neg in zip(self._pos, self._inverted(x.finite)):
            p = dot(a, x.translation)
            total += abs(p - 1) if neg else abs(p)
        return total

    def left_descents(self, x: IWElement) -> list[int]:
        lx = self.length(x)
        return [s for s in self.labels if self.length(self.multiply(self.simple_reflections[s], x)) < lx]

    def right_descents(self, x: IWElement) -> list[int]:
        lx = self.length(x)
        return [s for s in self.labels if self.length(self.multiply(x, self.simple_reflections[s])) < lx]

    def reduced_word(self, x: IWElement) -> tuple[tuple[int, ...], IWElement]:
        """(labels, omega) with x = s_labels[0] ... s_labels[-1] * omega and l(omega) = 0."""
        word = []
        while True:
            desc = self.left_descents(x)
            if not desc:
                return tuple(word), x
            s = desc[0]
            word.append(s)
            x = self.multiply(self.simple_reflections[s], x)

    def omega_part(self, x: IWElement) -> IWElement:
        return self.reduced_word(x)[1]

    def same_omega(self, x: IWElement, y: IWElement) -> bool:
        z = self.multiply(x, self.inverse(y))
        return self.datum.in_coroot_lattice(z.translation)

    @cached_property
    def omega_identity_class(self) -> IWElement:
        return self.identity

    # --- Bruhat order and Demazure product -------------------------------

    def bruhat_leq(self, x: IWElement, y: IWElement) -> bool:
        self._check(x, y)
        key = (x, y)
        got = self._bruhat_cache.get(key)
        if got is not None:
            return got
        ly = self.length(y)
        if ly == 0:
            result = x == y
        elif self.length(x) > ly:
            result = False
        else:
            s = self.left_descents(y)[0]
            sr = self.simple_reflections[s]
            sx = self.multiply(sr, x)
            lower = sx if self.length(sx) < self.length(x) else x
            result = self.bruhat_leq(lower, self.multiply(sr, y))
        self._bruhat_cache[key] = result
        return result

    def demazure_product(self, x: IWElement, y: IWElement) -> IWElement:
        self._check(x, y)
        word, omega = self.reduced_word(x)
        z = self.multiply(omega, y)
        for s in reversed(word):
            sz = self.multiply(self.simple_reflections[s], z)
            if self.length(sz) > self.length(z):
                z = sz
        return z

    # --- facets, parabolic subgroups, cosets -----------------------------

    @cached_property
    def component_nodes(self) -> tuple[frozenset, ...]:
        out = []
        for c, comp in enumerate(self.datum.components):
            out.append(frozenset([-c] + [k + 1 for k in comp]))
        return tuple(out)

    @property
    def hyperspecial(self) -> frozenset:
        return frozenset(range(1, self.datum.semisimple_rank + 1))

    def is_finite_facet(self, J: Iterable[int]) -> bool:
        J = frozenset(J)
        if not J <= set(self.labels):
            raise AffineWeylError(f"unknown simple reflections {sorted(J - set(self.labels))}")
        return not any(nodes <= J for nodes in self.component_nodes)

    def _require_finite(self, J):
        if not self.is_finite_facet(J):
            raise AffineWeylError(f"reflections {sorted(J)} generate an infinite group")

    def parabolic(self, J: Iterable[int]) -> list[IWElement]:
        J = frozenset(J)
        self._require_finite(J)
        return _parabolic_cached(self, J)

    def longest(self, J: Iterable[int]) -> IWElement:
        return max(self.parabolic(J), key=IWElement.sort_key)

    def min_double_coset_rep(self, x: IWElement, left: Iterable[int], right: Iterable[int]) -> IWElement:
        left, right = frozenset(left), frozenset(right)
        changed = True
        while changed:
            changed = False
            lx = self.length(x)
            for s in sorted(left):
                y = self.multiply(self.simple_reflections[s], x)
                if self.length(y) < lx:
                    x, changed = y, True
                    break
            else:
                for s in sorted(right):
                    y = self.multiply(x, self.simple_reflections[s])
                    if self.length(y) < lx:
                        x, changed = y, True
                        break
        return x

    def max_double_coset_rep(self, x: IWElement, left: Iterable[int], right: Iterable[int]) -> IWElement:
        return self.demazure_product(self.demazure_product(self.longest(left), x), self.longest(right))

    def double_coset(self, x: IWElement, left: Iterable[int], right: Iterable[int]) -> DoubleCoset:
        left, right = frozenset(left), frozenset(right)
        self._require_finite(left)
        self._require_finite(right)
        return DoubleCoset(self.min_double_coset_rep(x, left, right), left, right)

    def coset_elements(self, c: DoubleCoset) -> set[IWElement]:
        return {self.multiply(self.multiply(u, c.rep), v) for u in self.parabolic(c.left) for v in self.parabolic(c.right)}

    def omega_elements(self, translations: Iterable[Sequence[int]]) -> list[IWElement]:
        """Length-zero elements of the Omega-classes of the given translations."""
        out = {self.omega_part(self.translation(t)) for t in translations}
        return sorted(out, key=IWElement.sort_key)

    def elements(self, bound: int, omegas: Iterable[IWElement] | None = None) -> list[IWElement]:
        """All elements of length <= bound in the given Omega-classes (default: W_aff)."""
        omegas = [self.identity] if omegas is None else list(omegas)
        found = set()
        for om in omegas:
            if self.length(om) != 0:
                raise AffineWeylError(f"{om!r} is not of length zero")
            layer = [om]
            found.add(om)
            for ell in range(bound):
                nxt = []
                for x in layer:
                    for s in self.labels:
                        y = self.multiply(self.simple_reflections[s], x)
                        if y not in found and self.length(y) == ell + 1:
                            found.add(y)
                            nxt.append(y)
                layer = nxt
        return sorted(found, key=IWElement.sort_key)

    def double_coset_reps(self, left: Iterable[int], right: Iterable[int], bound: int,
                          omegas: Iterable[IWElement] | None = None) -> list[DoubleCoset]:
        left, right = frozenset(left), frozenset(right)
        self._require_finite(left)
        self._require_finite(right)
        out = []
        for x in self.elements(bound, omegas):
            lx = self.length(x)
            if any(self.length(self.multiply(self.simple_reflections[s], x)) < lx for s in left):
                continue
            if any(self.length(self.multiply(x, self.simple_reflections[s])) < lx for s in right):
                continue
            out.append(DoubleCoset(x, left, right))
        return out

    # --- affine roots and cells --------------------------------------------

    @cached_property
    def _fundamental_coweights(self) -> tuple[tuple[Fraction, ...], ...]:
        d = self.datum
        a = d.cartan_matrix
        n = d.semisimple_rank
        out = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            c = solve_in_span(a, e)
            out.append(tuple(sum((c[k] * d.simple_coroots[k][j] for k in range(n)), Fraction(0))
                             for j in range(d.rank)))
        return tuple(out)

    def facet_barycenter(self, J: Iterable[int]) -> tuple[Fraction, ...]:
        """Barycenter of the facet of the base alcove closure fixed by W_J."""
        J = frozenset(J)
        self._require_finite(J)
        d = self.datum
        total = [Fraction(0)] * d.rank
        for c, comp in enumerate(d.components):
            theta = d.roots[d.highest_roots[c]]
            coeffs = d.simple_coefficients(theta)
            verts = []
            if -c not in J:
                verts.append((Fraction(0),) * d.rank)
            for k in comp:
                if k + 1 not in J:
                    verts.append(tuple(x / coeffs[k] for x in self._fundamental_coweights[k]))
            for j in range(d.rank):
                total[j] += sum(v[j] for v in verts) / len(verts)
        return tuple(total)

    def affine_root_count_for_cell(self, v: IWElement, J: Iterable[int]) -> int:
        """#{affine roots a : v.a > 0 on the base alcove, a < 0 on the facet of J}."""
        J = frozenset(J)
        base = self.facet_barycenter(frozenset())
        facet = self.facet_barycenter(J)
        bound = 1 + max((abs(dot(a, v.translation)) for a in self.datum.roots), default=0)
        count = 0
        for alpha in self.datum.roots:
            for k in range(-bound, bound + 1):
                a = AffineRoot(alpha, k)
                if a.value(facet) < 0 and self.act_affine_root(v, a).value(base) > 0:
                    count += 1
        return count


def _act_frac(m, p):
    return tuple(sum((r[j] * p[j] for j in range(len(p))), Fraction(0)) for r in m)


def _parabolic_cached(group: IwahoriWeyl, J: frozenset) -> list[IWElement]:
    cache = group.__dict__.setdefault("_parabolic_cache", {})
    if J not in cache:
        found = {group.identity}
        todo = deque([group.identity])
        while todo:
            x = todo.popleft()
            for s in sorted(J):
                y = group.multiply(x, group.simple_reflections[s])
                if y not in found:
                    found.add(y)
                    todo.append(y)
        cache[J] = sorted(found, key=IWElement.sort_key)
    return cache[J]


@lru_cache(maxsize=None)
def iwahori_weyl(d: BasedRootDatum) -> IwahoriWeyl:
    return IwahoriWeyl(d)


def parse_facet(group: IwahoriWeyl, text: str) -> frozenset:
    """``iwahori``, ``hyperspecial`` or a comma-separated list of labels."""
    text = text.strip().lower()
    if text in ("iwahori", "", "none"):
        return frozenset()
    if text == "hyperspecial":
        return group.hyperspecial
    J = frozenset(int(t) for t in text.split(","))
    group.is_finite_facet(J)
    return J


# public aliases

def iw_multiply(x: IWElement, y: IWElement) -> IWElement:
    return x.group.multiply(x, y)


def iw_inverse(x: IWElement) -> IWElement:
    return x.group.inverse(x)


def iw_length(x: IWElement) -> int:
    return x.group.length(x)


def bruhat_leq(x: IWElement, y: IWElement) -> bool:
    return x.group.bruhat_leq(x, y)


def demazure_product(x: IWElement, y: IWElement) -> IWElement:
    return x.group.demazure_product(x, y)


def double_coset_reps(d: BasedRootDatum, left, right, bound: int, omegas=None) -> list[DoubleCoset]:
    return iwahori_weyl(d).double_coset_reps(left, right, bound, omegas)


def affine_root_count_for_cell(v: IWElement, J) -> int:
    return v.group.affine_root_count_for_cell(v, J)
