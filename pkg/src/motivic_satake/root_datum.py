"""Based root data of split reductive groups, Weyl groups and dominance.

Both lattices are realized as Z^rank with the dot-product pairing.  A
``BasedRootDatum`` stores roots in X (characters), coroots in Y
(cocharacters) and the indices of the simple roots.

Preset coordinates:

* ``GLn``: X = Y = Z^n, roots e_i - e_j.
* ``SLn``: Y has the simple coroots as basis, X the fundamental weights.
* ``PGLn``: X has the simple roots as basis, Y the fundamental coweights.
* ``Sp2g``: X = Y = Z^g, roots +-e_i +- e_j and +-2e_i (coroot e_i).
* ``SO2g+1``: X = Y = Z^g, roots +-e_i +- e_j and +-e_i (coroot 2e_i).
* ``Gm`` / ``Tr``: tori of rank 1 / r, no roots.
"""

from __future__ import annotations

import itertools
import json
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from ._linalg import dot, det, identity, integer_coefficients, integer_solutions, mat_mul, mat_vec, solve_in_span

Vec = tuple[int, ...]


class RootDatumError(ValueError):
    pass


def _vec(v: Iterable[int]) -> Vec:
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class BasedRootDatum:
    rank: int
    roots: tuple[Vec, ...]
    coroots: tuple[Vec, ...]
    simple: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(_vec(r) for r in self.roots))
        object.__setattr__(self, "coroots", tuple(_vec(r) for r in self.coroots))
        object.__setattr__(self, "simple", tuple(int(i) for i in self.simple))

    # --- basic data ---------------------------------------------------

    @property
    def simple_roots(self) -> tuple[Vec, ...]:
        return tuple(self.roots[i] for i in self.simple)

    @property
    def simple_coroots(self) -> tuple[Vec, ...]:
        return tuple(self.coroots[i] for i in self.simple)

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple)

    def zero(self) -> Vec:
        return (0,) * self.rank

    def coroot_of(self, root: Vec) -> Vec:
        return self.coroots[self._root_index[tuple(root)]]

    @cached_property
    def _root_index(self) -> dict[Vec, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def _coroot_index(self) -> dict[Vec, int]:
        return {r: i for i, r in enumerate(self.coroots)}

    def simple_coefficients(self, root: Sequence[int]) -> tuple[int, ...] | None:
        """Coordinates of ``root`` in the simple roots (None if not integral)."""
        return integer_coefficients(self.simple_roots, root)

    @cached_property
    def positive_indices(self) -> tuple[int, ...]:
        out = []
        for i, r in enumerate(self.roots):
            c = self.simple_coefficients(r)
            if c is not None and all(x >= 0 for x in c):
                out.append(i)
        return tuple(out)

    @property
    def positive_roots(self) -> tuple[Vec, ...]:
        return tuple(self.roots[i] for i in self.positive_indices)

    @property
    def positive_coroots(self) -> tuple[Vec, ...]:
        return tuple(self.coroots[i] for i in self.positive_indices)

    def is_positive_root(self, root: Vec) -> bool:
        return self._root_index[tuple(root)] in set(self.positive_indices)

    @cached_property
    def two_rho(self) -> Vec:
        """Sum of the positive roots (an element of X)."""
        return _vec(map(sum, zip(self.zero(), *self.positive_roots)))

    @cached_property
    def two_rho_check(self) -> Vec:
        """Sum of the positive coroots (an element of Y)."""
        return _vec(map(sum, zip(self.zero(), *self.positive_coroots)))

    def rho_pairing(self, coweight: Sequence[int]) -> Fraction:
        """<rho, coweight> as an exact half-integer."""
        return Fraction(dot(self.two_rho, coweight), 2)

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        """a_ij = <alpha_j, alpha_i^vee>."""
        return tuple(
            tuple(dot(aj, ci) for aj in self.simple_roots) for ci in self.simple_coroots
        )

    # --- reflections and dominance ---------------------------------------

    def reflect_x(self, x: Sequence[int], i: int) -> Vec:
        """Reflection in root number i acting on X."""
        a, c = self.roots[i], self.coroots[i]
        k = dot(x, c)
        return _vec(xi - k * ai for xi, ai in zip(x, a))

    def reflect_y(self, y: Sequence[int], i: int) -> Vec:
        a, c = self.roots[i], self.coroots[i]
        k = dot(a, y)
        return _vec(yi - k * ci for yi, ci in zip(y, c))

    def is_dominant(self, coweight: Sequence[int]) -> bool:
        return all(dot(a, coweight) >= 0 for a in self.simple_roots)

    def dominant_representative(self, coweight: Sequence[int]) -> Vec:
        y = _vec(coweight)
        while True:
            for i in self.simple:
                if dot(self.roots[i], y) < 0:
                    y = self.reflect_y(y, i)
                    break
            else:
                return y

    def coroot_cone_coefficients(self, beta: Sequence[int]) -> tuple[int, ...] | None:
        """Coefficients of beta in the simple coroots if integral, else None."""
        return integer_coefficients(self.simple_coroots, beta)

    def in_coroot_cone(self, beta: Sequence[int]) -> bool:
        """beta is a nonnegative integral combination of positive coroots."""
        c = self.coroot_cone_coefficients(beta)
        return c is not None and all(x >= 0 for x in c)

    def in_coroot_lattice(self, beta: Sequence[int]) -> bool:
        return self.coroot_cone_coefficients(beta) is not None

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components of the Dynkin diagram, as positions in ``simple``."""
        n = self.semisimple_rank
        a = self.cartan_matrix
        seen, comps = set(), []
        for start in range(n):
            if start in seen:
                continue
            comp, todo = [], [start]
            seen.add(start)
            while todo:
                i = todo.pop()
                comp.append(i)
                for j in range(n):
                    if j not in seen and (a[i][j] or a[j][i]):
                        seen.add(j)
                        todo.append(j)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @cached_property
    def highest_roots(self) -> tuple[int, ...]:
        """Index (into ``roots``) of the highest root of each component."""
        out = []
        for comp in self.components:
            best, best_ht = None, -1
            for i in self.positive_indices:
                c = self.simple_coefficients(self.roots[i])
                if any(c[j] for j in range(len(c)) if j not in comp):
                    continue
                if sum(c) > best_ht:
                    best, best_ht = i, sum(c)
            out.append(best)
        return tuple(out)

    def __str__(self):
        return self.name or f"RootDatum(rank={self.rank}, roots={len(self.roots)})"


# --- operations --------------------------------------------------------


def validate_root_datum(d: BasedRootDatum) -> list[str]:
    """List of violated axioms; empty when the datum is valid."""
    report = []
    if d.rank < 0:
        report.append("rank must be nonnegative")
    if len(d.roots) != len(d.coroots):
        report.append("roots and coroots are not in bijection")
        return report
    for v in d.roots + d.coroots:
        if len(v) != d.rank:
            report.append(f"vector {v} has wrong length (rank {d.rank})")
            return report
    if len(set(d.roots)) != len(d.roots) or len(set(d.coroots)) != len(d.coroots):
        report.append("duplicate roots or coroots")
    for a, c in zip(d.roots, d.coroots):
        if dot(a, c) != 2:
            report.append(f"pairing axiom violated: <{a},{c}> = {dot(a, c)}")
    if any(r == d.zero() for r in d.roots):
        report.append("zero is not a root")
    roots, coroots = set(d.roots), set(d.coroots)
    for a, c in zip(d.roots, d.coroots):
        neg_a = tuple(-x for x in a)
        if neg_a not in roots or d.coroots[d.roots.index(neg_a)] != tuple(-x for x in c):
            report.append(f"root {a} not closed under negation with coroot {c}")
    if report:
        return report
    for i in range(len(d.roots)):
        for j, (b, bc) in enumerate(zip(d.roots, d.coroots)):
            rb = d.reflect_x(b, i)
            rbc = d.reflect_y(bc, i)
            if rb not in roots or d.coroots[d.roots.index(rb)] != rbc:
                report.append(f"reflection {i} does not permute roots/coroots compatibly at {b}")
    if len(set(d.simple)) != len(d.simple) or any(not 0 <= i < len(d.roots) for i in d.simple):
        report.append("bad simple indices")
        return report
    try:
        for r in d.roots:
            c = d.simple_coefficients(r)
            if c is None or not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
                report.append(f"root {r} is not a same-sign integral combination of simple roots")
        integer_coefficients(d.simple_coroots, d.zero())
    except ValueError:
        report.append("simple roots or simple coroots are linearly dependent")
    return report


def dual_root_datum(d: BasedRootDatum) -> BasedRootDatum:
    """Swap characters with cocharacters and roots with coroots."""
    problems = validate_root_datum(d)
    if problems:
        raise RootDatumError("; ".join(problems))
    return BasedRootDatum(d.rank, d.coroots, d.roots, d.simple, name=_dual_name(d.name))


def _dual_name(name: str) -> str:
    m = re.fullmatch(r"(GL|SL|PGL|Sp|SO)(\d+)", name or "")
    if not m:
        return f"dual({name})" if name else ""
    kind, n = m.group(1), int(m.group(2))
    return {
        "GL": f"GL{n}",
        "SL": f"PGL{n}",
        "PGL": f"SL{n}",
        "Sp": f"SO{n + 1}",
        "SO": f"Sp{n - 1}",
    }[kind]


def two_rho(d: BasedRootDatum) -> Vec:
    return d.two_rho


def dominance_leq(d: BasedRootDatum, lam: Sequence[int], mu: Sequence[int]) -> bool:
    """lam <= mu for dominant coweights: mu - lam is in the positive coroot cone."""
    for v in (lam, mu):
        if len(v) != d.rank:
            raise RootDatumError(f"coweight {tuple(v)} has wrong length for rank {d.rank}")
        if not d.is_dominant(v):
            raise RootDatumError(f"coweight {tuple(v)} is not dominant")
    return d.in_coroot_cone(tuple(m - l for m, l in zip(mu, lam)))


# --- finite Weyl group ------------------------------------------------------


@dataclass(frozen=True)
class WeylElement:
    """Element of W0: lexicographically least reduced word plus its matrices."""

    word: tuple[int, ...]
    x_matrix: tuple[tuple[int, ...], ...] = field(compare=False)
    y_matrix: tuple[tuple[int, ...], ...] = field(compare=False)

    def length(self) -> int:
        return len(self.word)

    def act_x(self, x: Sequence[int]) -> Vec:
        return mat_vec(self.x_matrix, x)

    def act_y(self, y: Sequence[int]) -> Vec:
        return mat_vec(self.y_matrix, y)

    def __repr__(self):
        return "e" if not self.word else "s" + "s".join(str(i + 1) for i in self.word)


def _reflection_matrices(d: BasedRootDatum, i: int):
    n = d.rank
    a, c = d.roots[i], d.coroots[i]
    mx = tuple(tuple(int(r == s) - a[r] * c[s] for s in range(n)) for r in range(n))
    my = tuple(tuple(int(r == s) - c[r] * a[s] for s in range(n)) for r in range(n))
    return mx, my


class WeylGroup:
    """The finite Weyl group of a datum, enumerated with canonical words.

    Word letters are positions 0..(semisimple rank - 1) in ``d.simple``.
    """

    def __init__(self, d: BasedRootDatum):
        self.datum = d
        gens = [_reflection_matrices(d, i) for i in d.simple]
        self.generators_x = [g[0] for g in gens]
        self.generators_y = [g[1] for g in gens]
        ident = identity(d.rank)
        e = WeylElement((), ident, ident)
        self.elements: list[WeylElement] = [e]
        self._by_x: dict = {ident: e}
        layer = [e]
        while layer:
            nxt = []
            for w in layer:
                for s, (gx, gy) in enumerate(gens):
                    mx = mat_mul(w.x_matrix, gx)
                    if mx in self._by_x:
                        continue
                    u = WeylElement(w.word + (s,), mx, mat_mul(w.y_matrix, gy))
                    self._by_x[mx] = u
                    nxt.append(u)
            nxt.sort(key=lambda u: u.word)
            self.elements.extend(nxt)
            layer = nxt

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def from_x_matrix(self, mx) -> WeylElement:
        return self._by_x[tuple(tuple(r) for r in mx)]

    def multiply(self, u: WeylElement, w: WeylElement) -> WeylElement:
        return self._by_x[mat_mul(u.x_matrix, w.x_matrix)]

    def inverse(self, w: WeylElement) -> WeylElement:
        u = self.identity
        for s in reversed(w.word):
            u = self.multiply(u, self.simple_reflection(s))
        return u

    def simple_reflection(self, s: int) -> WeylElement:
        return self._by_x[self.generators_x[s]]

    def reflection(self, root_index: int) -> WeylElement:
        return self._by_x[_reflection_matrices(self.datum, root_index)[0]]

    @cached_property
    def longest(self) -> WeylElement:
        return max(self.elements, key=lambda w: (w.length(), w.word))

    def parabolic(self, letters: Iterable[int]) -> list[WeylElement]:
        letters = set(letters)
        return [w for w in self.elements if set(w.word) <= letters]


@lru_cache(maxsize=None)
def weyl_group(d: BasedRootDatum) -> WeylGroup:
    return WeylGroup(d)


def weyl_orbit_dominant(d: BasedRootDatum, nu: Sequence[int]) -> tuple[list[Vec], Vec]:
    """W0-orbit of a coweight (sorted) and its unique dominant member."""
    orbit = sorted({w.act_y(nu) for w in weyl_group(d)})
    dominant = [y for y in orbit if d.is_dominant(y)]
    assert len(dominant) == 1, dominant
    return orbit, dominant[0]


# --- presets -------------------------------------------------------------


def gl(n: int) -> BasedRootDatum:
    roots = []
    pairs = [(i, j) for i in range(n) for j in range(n) if i < j]
    for sign in (1, -1):
        for i, j in pairs:
            v = [0] * n
            v[i], v[j] = sign, -sign
            roots.append(tuple(v))
    simple = [pairs.index((i, i + 1)) for i in range(n - 1)]
    return BasedRootDatum(n, roots, roots, simple, name=f"GL{n}")


def _type_a_pairs(n):
    return [(a, b) for a in range(n) for b in range(n) if a != b]


def sl(n: int) -> BasedRootDatum:
    """SL_n: Y basis = simple coroots, X basis = fundamental weights."""
    g = gl(n)
    simple_std = [g.roots[i] for i in g.simple]
    roots, coroots = [], []
    for r in g.roots:
        roots.append(tuple(dot(r, c) for c in simple_std))
        coroots.append(integer_coefficients(simple_std, r))
    return BasedRootDatum(n - 1, roots, coroots, g.simple, name=f"SL{n}")


def pgl(n: int) -> BasedRootDatum:
    """PGL_n: X basis = simple roots, Y basis = fundamental coweights."""
    s = sl(n)
    return BasedRootDatum(n - 1, s.coroots, s.roots, s.simple, name=f"PGL{n}")


def sp(two_g: int) -> BasedRootDatum:
    if two_g % 2:
        raise RootDatumError("Sp needs an even size")
    g = two_g // 2
    pos_r, pos_c = [], []
    for i in range(g):
        for j in range(i + 1, g):
            for s in (-1, 1):
                v = [0] * g
                v[i], v[j] = 1, s
                pos_r.append(tuple(v))
                pos_c.append(tuple(v))
    for i in range(g):
        v = [0] * g
        v[i] = 2
        w = [0] * g
        w[i] = 1
        pos_r.append(tuple(v))
        pos_c.append(tuple(w))
    roots = pos_r + [tuple(-x for x in r) for r in pos_r]
    coroots = pos_c + [tuple(-x for x in r) for r in pos_c]
    simple = []
    for i in range(g - 1):
        v = [0] * g
        v[i], v[i + 1] = 1, -1
        simple.append(roots.index(tuple(v)))
    last = [0] * g
    last[g - 1] = 2
    simple.append(roots.index(tuple(last)))
    return BasedRootDatum(g, roots, coroots, simple, name=f"Sp{two_g}")


def so_odd(n: int) -> BasedRootDatum:
    if n % 2 == 0:
        raise RootDatumError("only odd orthogonal groups are shipped")
    d = sp(n - 1)
    return BasedRootDatum(d.rank, d.coroots, d.roots, d.simple, name=f"SO{n}")


def torus(r: int) -> BasedRootDatum:
    return BasedRootDatum(r, (), (), (), name="Gm" if r == 1 else f"T{r}")


def product(a: BasedRootDatum, b: BasedRootDatum) -> BasedRootDatum:
    za, zb = a.zero(), b.zero()
    roots = [r + zb for r in a.roots] + [za + r for r in b.roots]
    coroots = [r + zb for r in a.coroots] + [za + r for r in b.coroots]
    simple = list(a.simple) + [len(a.roots) + i for i in b.simple]
    return BasedRootDatum(a.rank + b.rank, roots, coroots, simple, name=f"{a.name}x{b.name}")


_PRESET_RE = re.compile(r"(GL|SL|PGL|Sp|SO|T)(\d+)|Gm")


def preset(name: str) -> BasedRootDatum:
    """Build a datum from a preset name such as ``GL3``, ``Sp4`` or ``PGL2xGm``."""
    parts = name.split("x") if "x" in name else [name]
    data = [_single_preset(p) for p in parts]
    out = data[0]
    for d in data[1:]:
        out = product(out, d)
    return out


def _single_preset(name: str) -> BasedRootDatum:
    m = _PRESET_RE.fullmatch(name)
    if not m:
        raise RootDatumError(f"unknown group {name!r}")
    if name == "Gm":
        return torus(1)
    kind, n = m.group(1), int(m.group(2))
    builders = {"GL": gl, "SL": sl, "PGL": pgl, "Sp": sp, "SO": so_odd, "T": torus}
    if kind in ("SL", "PGL") and n < 2:
        raise RootDatumError(f"{name} needs n >= 2")
    return builders[kind](n)


def load_root_datum(spec: str | Path) -> BasedRootDatum:
    """Preset name or path to a JSON file with rank/roots/coroots/simple."""
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        data = json.loads(path.read_text())
        d = BasedRootDatum(
            int(data["rank"]),
            data.get("roots", []),
            data.get("coroots", []),
            data.get("simple", []),
            name=data.get("name", path.stem),
        )
        problems = validate_root_datum(d)
        if problems:
            raise RootDatumError("; ".join(problems))
        return d
    return preset(str(spec))


def root_datum_to_json(d: BasedRootDatum) -> dict:
    return {
        "name": d.name,
        "rank": d.rank,
        "roots": [list(r) for r in d.roots],
        "coroots": [list(r) for r in d.coroots],
        "simple": list(d.simple),
    }


# --- isomorphisms ------------------------------------------------------------


def find_isomorphism(a: BasedRootDatum, b: BasedRootDatum, extra: Sequence[tuple[Vec, Vec]] = (),
                     box: int = 2):
    """Unimodular phi: X_a -> X_b matching roots, coroots (via phi^-T) and bases.

    ``extra`` lists pairs (x, x') that phi must send x -> x'.  Returns phi as a
    matrix (rows) or None.
    """
    if a.rank != b.rank or len(a.roots) != len(b.roots) or a.semisimple_rank != b.semisimple_rank:
        return None
    r, n = a.rank, a.semisimple_rank
    ca, cb = a.cartan_matrix, b.cartan_matrix
    for sigma in itertools.permutations(range(n)):
        if any(ca[i][j] != cb[sigma[i]][sigma[j]] for i in range(n) for j in range(n)):
            continue
        rows, rhs = [], []
        # phi @ alpha_k = beta_sigma(k); unknown phi[i][j] at index i*r + j
        for k in range(n):
            x, y = a.simple_roots[k], b.simple_roots[sigma[k]]
            for i in range(r):
                row = [0] * (r * r)
                for j in range(r):
                    row[i * r + j] = x[j]
                rows.append(row)
                rhs.append(y[i])
        # phi^T @ beta_check_sigma(k) = alpha_check_k
        for k in range(n):
            x, y = b.simple_coroots[sigma[k]], a.simple_coroots[k]
            for j in range(r):
                row = [0] * (r * r)
                for i in range(r):
                    row[i * r + j] = x[i]
                rows.append(row)
                rhs.append(y[j])
        for x, y in extra:
            for i in range(r):
                row = [0] * (r * r)
                for j in range(r):
                    row[i * r + j] = x[j]
                rows.append(row)
                rhs.append(y[i])
        if not rows:
            rows, rhs = [[0] * (r * r)], [0]
        sol = integer_solutions(rows, rhs)
        if sol is None:
            continue
        x0, kernel = sol
        rng = range(-box, box + 1)
        for coeffs in itertools.product(rng, repeat=len(kernel)):
            flat = list(x0)
            for c, kv in zip(coeffs, kernel):
                if c:
                    flat = [f + c * k for f, k in zip(flat, kv)]
            phi = tuple(tuple(flat[i * r:(i + 1) * r]) for i in range(r))
            if abs(det(phi)) != 1:
                continue
            if _is_root_datum_map(a, b, phi):
                return phi
    return None


def _is_root_datum_map(a, b, phi) -> bool:
    phi_t = tuple(zip(*phi))
    for root, coroot in zip(a.roots, a.coroots):
        image = mat_vec(phi, root)
        if image not in b._root_index:
            return False
        if mat_vec(phi_t, b.coroot_of(image)) != coroot:
            return False
    return True


def is_isomorphic(a: BasedRootDatum, b: BasedRootDatum) -> bool:
    return find_isomorphism(a, b) is not None
