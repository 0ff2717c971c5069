"""Characters and the representation rings R(G^) and R(G1^).

Weights of the dual torus are coweights of G (elements of Y).  A graded
weight is a pair (nu, m) in Y + Z, stored as one tuple of length rank + 1.
V_mu(n) has highest weight (mu, n); its weight nu sits in Z-degree
n - <rho, mu - nu>, which is forced by the Gm-components of the extended
roots (see dual_group).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ._free import FreeModuleElement, fmt_vec
from ._linalg import dot
from .dual_group import EXT_ROOT_SIGN, build_extended_dual
from .root_datum import BasedRootDatum, RootDatumError, Vec, weyl_group

__all__ = [
    "CharacterElement",
    "RepElement",
    "RepError",
    "weight_multiplicities",
    "weyl_character",
    "weyl_dimension",
    "character",
    "decompose_character",
    "tensor_decompose",
    "tensor_multiplicities",
    "tensor_grade",
    "restriction_check",
    "rep_multiply",
]


class RepError(ValueError):
    pass


class CharacterElement(FreeModuleElement):
    """Sum of e^(nu, m), keys in Y + Z."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(k):
        return tuple(int(x) for x in k)

    def __mul__(self, other):
        if not isinstance(other, CharacterElement):
            return NotImplemented
        acc: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                acc[k] = acc.get(k, 0) + c1 * c2
        return CharacterElement(acc)

    @staticmethod
    def _key_str(k):
        return "e" + fmt_vec(k)

    def forget_grading(self) -> "CharacterElement":
        return self.map_keys(lambda k: k[:-1] + (0,))


class RepElement(FreeModuleElement):
    """Sum of m_(mu, n) [V_mu(n)]; coefficients are ints or Laurent polynomials."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(k):
        mu, n = k
        return (tuple(int(x) for x in mu), int(n))

    @staticmethod
    def _key_str(k):
        return f"V{fmt_vec(k[0])}({k[1]})"

    def to_json(self):
        out = []
        for (mu, n), c in self.items():
            coeff = c.to_json() if hasattr(c, "to_json") else c
            out.append({"mu": list(mu), "n": n, "coeff": coeff})
        return out


def _check_dominant(d: BasedRootDatum, mu: Sequence[int]) -> Vec:
    mu = tuple(int(x) for x in mu)
    if len(mu) != d.rank:
        raise RepError(f"coweight {mu} has wrong length for rank {d.rank}")
    if not d.is_dominant(mu):
        raise RepError(f"coweight {mu} is not dominant")
    return mu


def _form(d: BasedRootDatum, y: Sequence[int], z: Sequence[int]) -> int:
    # W0-invariant form on Y, nondegenerate on the coroot span
    return sum(dot(a, y) * dot(a, z) for a in d.roots)


@lru_cache(maxsize=None)
def _dominant_multiplicities(d: BasedRootDatum, mu: Vec) -> dict[Vec, int]:
    """Freudenthal recursion over the dominant weights of V_mu."""
    two_rho_check = d.two_rho_check
    # dominant weights lambda <= mu, by BFS subtracting simple coroots
    seen = {mu}
    frontier = [mu]
    dominant = []
    while frontier:
        nxt = []
        for nu in frontier:
            if d.is_dominant(nu):
                dominant.append(nu)
            for c in d.simple_coroots:
                lam = tuple(a - b for a, b in zip(nu, c))
                if lam in seen:
                    continue
                if d.in_coroot_cone(tuple(a - b for a, b in zip(mu, d.dominant_representative(lam)))):
                    seen.add(lam)
                    nxt.append(lam)
        frontier = nxt
    dominant.sort(key=lambda lam: (dot(d.two_rho, tuple(a - b for a, b in zip(mu, lam))), lam))
    weights = seen
    mult: dict[Vec, int] = {}
    top = tuple(2 * m + r for m, r in zip(mu, two_rho_check))
    for lam in dominant:
        if lam == mu:
            mult[lam] = 1
            continue
        num = 0
        for c in d.positive_coroots:
            k = 1
            while True:
                shifted = tuple(a + k * b for a, b in zip(lam, c))
                if shifted not in weights:
                    break
                num += mult[d.dominant_representative(shifted)] * _form(d, shifted, c)
                k += 1
        # (mu+rho, mu+rho) - (lam+rho, lam+rho) = B(mu - lam, mu + lam + 2rho)
        diff = tuple(a - b for a, b in zip(mu, lam))
        tot = tuple(a + b - m for a, b, m in zip(top, lam, mu))
        den = _form(d, diff, tot)
        m_lam, rem = divmod(2 * num, den)
        if rem:
            raise RepError(f"non-integral Freudenthal multiplicity at {lam}")
        mult[lam] = m_lam
    return {lam: m for lam, m in mult.items() if m}


def weight_multiplicities(d: BasedRootDatum, mu: Sequence[int]) -> dict[Vec, int]:
    """All weights of V_mu with multiplicity."""
    mu = _check_dominant(d, mu)
    out = {}
    for lam, m in _dominant_multiplicities(d, mu).items():
        for nu in {w.act_y(lam) for w in weyl_group(d)}:
            out[nu] = m
    return out


def dominant_multiplicities(d: BasedRootDatum, mu: Sequence[int]) -> dict[Vec, int]:
    return dict(_dominant_multiplicities(d, _check_dominant(d, mu)))


def grade_of_weight(d: BasedRootDatum, mu: Sequence[int], n: int, nu: Sequence[int]) -> int:
    """Z-degree of the weight nu inside V_mu(n)."""
    diff = dot(d.two_rho, tuple(a - b for a, b in zip(mu, nu)))
    return n - EXT_ROOT_SIGN * diff // 2


def weyl_character(d: BasedRootDatum, mu: Sequence[int], n: int | None = None) -> CharacterElement:
    """Character of V_mu (n=None: Z-coordinate 0) or of V_mu(n) on T1^."""
    mu = _check_dominant(d, mu)
    mults = weight_multiplicities(d, mu)
    if n is None:
        return CharacterElement({nu + (0,): m for nu, m in mults.items()})
    return CharacterElement({nu + (grade_of_weight(d, mu, n, nu),): m for nu, m in mults.items()})


def weyl_dimension(d: BasedRootDatum, mu: Sequence[int]) -> int:
    mu = _check_dominant(d, mu)
    num = den = 1
    shifted = tuple(2 * m + r for m, r in zip(mu, d.two_rho_check))
    for a in d.positive_roots:
        num *= dot(a, shifted)
        den *= dot(a, d.two_rho_check)
    q, r = divmod(num, den)
    assert r == 0
    return q


def character(d: BasedRootDatum, a: RepElement, graded: bool = True) -> CharacterElement:
    out = CharacterElement()
    for (mu, n), c in a.items():
        out = out + weyl_character(d, mu, n if graded else None).scale(c)
    return out


def _act_graded(d: BasedRootDatum, w, key: Vec, graded: bool) -> Vec:
    nu, m = key[:-1], key[-1]
    wnu = w.act_y(nu)
    if graded:
        m = m + EXT_ROOT_SIGN * dot(d.two_rho, tuple(a - b for a, b in zip(wnu, nu))) // 2
    return wnu + (m,)


def is_w_invariant(d: BasedRootDatum, c: CharacterElement, graded: bool = True) -> bool:
    for key, coeff in c.items():
        for w in weyl_group(d):
            if c[_act_graded(d, w, key, graded)] != coeff:
                return False
    return True


def decompose_character(d: BasedRootDatum, c: CharacterElement, graded: bool = True) -> RepElement:
    """Expand a W0-invariant character in the basis of irreducible characters.

    With graded=False the Z-coordinate must vanish and the result has n = 0.
    """
    if not graded and any(k[-1] for k in c.keys()):
        raise RepError("ungraded decomposition needs Z-coordinate 0")
    if not is_w_invariant(d, c, graded):
        raise RepError("character is not W0-invariant")
    result = {}
    rest = c
    while rest:
        # a maximal dominant weight for the height <2rho, .>
        key = max((k for k in rest.keys() if d.is_dominant(k[:-1])),
                  key=lambda k: (dot(d.two_rho, k[:-1]), k), default=None)
        if key is None:
            raise RepError("no dominant weight left; input is not a character")
        mu, n = key[:-1], key[-1]
        coeff = rest[key]
        result[(mu, n)] = coeff
        rest = rest - weyl_character(d, mu, n if graded else None).scale(coeff)
    return RepElement(result)


# --- tensor products ---------------------------------------------------------


def tensor_grade(d: BasedRootDatum, mu, lam, nu, m: int, n: int) -> int:
    """Z-degree of V_nu inside V_mu(m) (x) V_lam(n): m + n - <rho, mu + lam - nu>."""
    s = tuple(a + b - c for a, b, c in zip(mu, lam, nu))
    return m + n - EXT_ROOT_SIGN * dot(d.two_rho, s) // 2


def _dominant_with_sign(d: BasedRootDatum, x: Vec) -> tuple[Vec, int] | None:
    """Move x into the dominant chamber; None if x lies on a wall."""
    sign = 1
    while True:
        for i in d.simple:
            p = dot(d.roots[i], x)
            if p < 0:
                x = d.reflect_y(x, i)
                sign = -sign
                break
            if p == 0:
                return None
        else:
            return x, sign


@lru_cache(maxsize=None)
def _tensor_multiplicities(d: BasedRootDatum, mu: Vec, lam: Vec) -> tuple[tuple[Vec, int], ...]:
    # Brauer-Klimyk in the doubled lattice
    acc: dict[Vec, int] = {}
    two_rho_check = d.two_rho_check
    for nu, m in weight_multiplicities(d, mu).items():
        x = tuple(2 * (a + b) + r for a, b, r in zip(lam, nu, two_rho_check))
        res = _dominant_with_sign(d, x)
        if res is None:
            continue
        y, sign = res
        top = tuple((a - r) // 2 for a, r in zip(y, two_rho_check))
        acc[top] = acc.get(top, 0) + sign * m
    return tuple(sorted((k, v) for k, v in acc.items() if v))


def tensor_multiplicities(d: BasedRootDatum, mu: Sequence[int], lam: Sequence[int]) -> dict[Vec, int]:
    """N^nu_{mu lam} for V_mu (x) V_lam."""
    return dict(_tensor_multiplicities(d, _check_dominant(d, mu), _check_dominant(d, lam)))


def tensor_decompose(d: BasedRootDatum, a: RepElement, b: RepElement) -> RepElement:
    acc: dict = {}
    for (mu, m), c1 in a.items():
        for (lam, n), c2 in b.items():
            for nu, k in tensor_multiplicities(d, mu, lam).items():
                key = (nu, tensor_grade(d, mu, lam, nu, m, n))
                acc[key] = acc.get(key, 0) + c1 * c2 * k
    return RepElement(acc)


rep_multiply = tensor_decompose


# --- restriction along G^ x Gm -> G1^ -----------------------------------------


@dataclass
class RestrictionReport:
    mu: Vec
    n: int
    ok: bool
    gm_weight: int | None
    d_power: Fraction | None
    pulled_back: dict = field(default_factory=dict)
    problems: list = field(default_factory=list)

    def to_json(self):
        return {
            "mu": list(self.mu),
            "n": self.n,
            "ok": self.ok,
            "gm_weight": self.gm_weight,
            "d_power": None if self.d_power is None else str(self.d_power),
            "problems": list(self.problems),
        }


def restriction_check(d: BasedRootDatum, mu: Sequence[int], n: int) -> RestrictionReport:
    """Pull V_mu(n) back to G^ x Gm and test that Gm acts by one scalar."""
    mu = _check_dominant(d, mu)
    ext = build_extended_dual(d)
    chi = weyl_character(d, mu, n)
    pulled: dict[Vec, int] = {}
    for key, c in chi.items():
        k = ext.pullback_character(key)
        pulled[k] = pulled.get(k, 0) + c
    problems = []
    weights = sorted({k[-1] for k in pulled})
    if len(weights) != 1:
        problems.append(f"Gm acts with several weights {weights}")
    base = CharacterElement({k[:-1] + (0,): c for k, c in pulled.items()})
    if base != weyl_character(d, mu):
        problems.append("restriction to G^ is not the character of V_mu")
    expected = 2 * n - EXT_ROOT_SIGN * dot(d.two_rho, mu)
    if weights and weights[0] != expected:
        problems.append(f"Gm weight {weights[0]} differs from 2n - <2rho, mu> = {expected}")
    gm = weights[0] if len(weights) == 1 else None
    d_weight = ext.pullback_character(ext.d_character)[-1]
    return RestrictionReport(mu, n, not problems, gm,
                             None if gm is None else Fraction(gm, d_weight),
                             pulled, problems)
