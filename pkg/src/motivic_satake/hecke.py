"""The spherical Hecke ring, intersection-cohomology functions and Satake.

Coefficients are Laurent polynomials in v with q = v^2.  The c-basis is
indexed by dominant coweights.  The product is transported through the
Satake transform; lattice_oracle gives an independent check for GL_n.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ._free import FreeModuleElement, fmt_vec
from ._linalg import dot
from .laurent import ONE, ZERO, LaurentPoly, interpolate
from .lattice_oracle import LatticeChainProblem, oracle_convolve, oracle_structure_constants
from .q_analog import lusztig_q_analog
from .rep_ring import RepElement, RepError, dominant_multiplicities, tensor_multiplicities
from .root_datum import BasedRootDatum, Vec

__all__ = [
    "HeckeElement",
    "LatticeChainProblem",
    "ic_function",
    "satake_transform",
    "satake_inverse",
    "hecke_multiply",
    "structure_constants",
    "oracle_convolve",
    "oracle_structure_constants",
    "q_to_v",
    "v_to_q",
    "interpolate_structure_constant",
]


class HeckeElement(FreeModuleElement):
    """Sum of f_mu * c_mu with f_mu in Z[v, v^-1]."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(k):
        return tuple(int(x) for x in k)

    @staticmethod
    def _key_str(k):
        return "c" + fmt_vec(k)

    @classmethod
    def c(cls, mu, coeff=None):
        return cls({tuple(mu): ONE if coeff is None else _as_poly(coeff)})

    def evaluate_q(self, q) -> dict[Vec, Fraction]:
        """Numerical value of each coefficient at v^2 = q (needs even exponents)."""
        out = {}
        for mu, f in self.items():
            out[mu] = v_to_q(f).evaluate(q)
        return out

    def to_json(self):
        return {fmt_vec(mu): f.to_json() for mu, f in self.items()}


def _as_poly(c) -> LaurentPoly:
    return c if isinstance(c, LaurentPoly) else LaurentPoly.constant(int(c))


def q_to_v(f: LaurentPoly) -> LaurentPoly:
    """Rewrite a polynomial in q as a polynomial in v."""
    return f.scale_exponents(2)


def v_to_q(f: LaurentPoly) -> LaurentPoly:
    return f.halve_exponents()


def _check(d: BasedRootDatum, mu) -> Vec:
    mu = tuple(int(x) for x in mu)
    if len(mu) != d.rank or not d.is_dominant(mu):
        raise RepError(f"coweight {mu} is not dominant for {d.name}")
    return mu


def _lower_dominant(d: BasedRootDatum, mu: Vec) -> list[Vec]:
    """Dominant lam <= mu, ordered by increasing distance from mu."""
    lams = list(dominant_multiplicities(d, mu))
    return sorted(lams, key=lambda lam: (dot(d.two_rho, tuple(a - b for a, b in zip(mu, lam))), lam))


@lru_cache(maxsize=None)
def _ic_coefficients(d: BasedRootDatum, mu: Vec) -> tuple[tuple[Vec, LaurentPoly], ...]:
    out = []
    for lam in _lower_dominant(d, mu):
        m = lusztig_q_analog(d, mu, lam)
        height = dot(d.two_rho, tuple(a - b for a, b in zip(mu, lam)))
        coeff = m.scale_exponents(-2).shift(height)
        if coeff.low_degree() < 0 or any(e % 2 for e, _ in coeff.items()):
            raise RepError(f"ic coefficient at {lam} is not a polynomial in q: {coeff}")
        out.append((lam, coeff))
    return tuple(out)


def ic_function(d: BasedRootDatum, mu: Sequence[int]) -> HeckeElement:
    """Trace of Frobenius on IC_mu: sum over lam <= mu of q^<rho,mu-lam> m^mu_lam(q^-1) c_lam."""
    return HeckeElement(dict(_ic_coefficients(d, _check(d, mu))))


@lru_cache(maxsize=None)
def _c_in_ic(d: BasedRootDatum, mu: Vec) -> tuple[tuple[Vec, LaurentPoly], ...]:
    """c_mu as a combination of the functions f_IC_lam (unitriangular inversion)."""
    acc: dict[Vec, LaurentPoly] = {mu: ONE}
    for lam, coeff in _ic_coefficients(d, mu):
        if lam == mu:
            continue
        for nu, a in _c_in_ic(d, lam):
            acc[nu] = acc.get(nu, ZERO) - coeff * a
    return tuple(sorted((k, v) for k, v in acc.items() if v))


def satake_transform(d: BasedRootDatum, h: HeckeElement) -> RepElement:
    """Sat(f_IC_mu) = v^<2rho,mu> [V_mu], extended linearly."""
    acc: dict = {}
    for mu, f in h.items():
        mu = _check(d, mu)
        for lam, a in _c_in_ic(d, mu):
            key = (lam, 0)
            acc[key] = acc.get(key, ZERO) + f * a.shift(dot(d.two_rho, lam))
    return RepElement(acc)


def satake_inverse(d: BasedRootDatum, r: RepElement) -> HeckeElement:
    """Inverse of satake_transform on R(G^) (x) Z[v, v^-1]; twists n must be 0."""
    acc: dict = {}
    for (mu, n), f in r.items():
        if n:
            raise RepError("satake_inverse expects untwisted classes [V_mu]")
        f = _as_poly(f)
        shift = -dot(d.two_rho, mu)
        for lam, coeff in _ic_coefficients(d, mu):
            acc[lam] = acc.get(lam, ZERO) + f * coeff.shift(shift)
    return HeckeElement(acc)


def _rep_product(d: BasedRootDatum, a: RepElement, b: RepElement) -> RepElement:
    acc: dict = {}
    for (mu, _), f in a.items():
        for (lam, _), g in b.items():
            fg = _as_poly(f) * _as_poly(g)
            for nu, k in tensor_multiplicities(d, mu, lam).items():
                acc[(nu, 0)] = acc.get((nu, 0), ZERO) + fg * k
    return RepElement(acc)


def hecke_multiply(d: BasedRootDatum, h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
    return satake_inverse(d, _rep_product(d, satake_transform(d, h1), satake_transform(d, h2)))


@lru_cache(maxsize=None)
def _structure_constants(d: BasedRootDatum, mu: Vec, lam: Vec) -> HeckeElement:
    return hecke_multiply(d, HeckeElement.c(mu), HeckeElement.c(lam))


def structure_constants(d: BasedRootDatum, mu: Sequence[int], lam: Sequence[int]) -> HeckeElement:
    """c_mu * c_lam in the c-basis."""
    return _structure_constants(d, _check(d, mu), _check(d, lam))


def interpolate_structure_constant(n: int, mu, lam, nu, qs: Sequence[int],
                                   model: str = "auto") -> LaurentPoly:
    """Polynomial in q through the oracle counts at the given prime powers."""
    pts = [(q, oracle_convolve(LatticeChainProblem(n, mu, lam, nu, q), model)) for q in qs]
    coeffs = interpolate(pts)
    if any(c.denominator != 1 for c in coeffs.values()):
        raise ValueError(f"non-integral interpolation through {pts}")
    return LaurentPoly({k: int(c) for k, c in coeffs.items()})
