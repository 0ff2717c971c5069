"""K_0 of mixed Tate motives on the affine Grassmannian, decategorified.

The ring is free on the symbols [IC_mu(n)].  Convolution is transported
from R(G1^) along [IC_mu(n)] <-> [V_mu(n)].  The trace of Frobenius sends
[IC_mu(n)] to q^-n times the IC function of mu, so a Tate twist (-1)
becomes multiplication by q.
"""

from __future__ import annotations

from typing import Sequence

from ._free import FreeModuleElement, fmt_vec
from ._linalg import dot
from .hecke import HeckeElement, ic_function, satake_inverse
from .laurent import ONE, ZERO, LaurentPoly
from .q_analog import lusztig_q_analog
from .rep_ring import RepElement, RepError, dominant_multiplicities, tensor_decompose, weyl_dimension
from .root_datum import BasedRootDatum, weyl_group

__all__ = [
    "K0Element",
    "ic",
    "unit",
    "k0_convolve",
    "tate_twist",
    "trace_frobenius",
    "satake_bridge",
    "bridge_inverse",
    "quotient_specialize",
    "kernel_residual",
    "fiber_dimension",
]


class K0Element(FreeModuleElement):
    """Integer combination of [IC_mu(n)]."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(k):
        mu, n = k
        return (tuple(int(x) for x in mu), int(n))

    @staticmethod
    def _key_str(k):
        return f"IC{fmt_vec(k[0])}({k[1]})"

    def to_json(self):
        return [{"mu": list(mu), "n": n, "coeff": c} for (mu, n), c in self.items()]


def ic(mu: Sequence[int], n: int = 0, coeff: int = 1) -> K0Element:
    return K0Element({(tuple(mu), n): coeff})


def unit(d: BasedRootDatum) -> K0Element:
    return ic(d.zero(), 0)


def satake_bridge(a: K0Element) -> RepElement:
    return RepElement(a.terms)


def bridge_inverse(r: RepElement) -> K0Element:
    return K0Element(r.terms)


def k0_convolve(d: BasedRootDatum, a: K0Element, b: K0Element) -> K0Element:
    return bridge_inverse(tensor_decompose(d, satake_bridge(a), satake_bridge(b)))


def tate_twist(a: K0Element, k: int) -> K0Element:
    return a.map_keys(lambda key: (key[0], key[1] + k))


def trace_frobenius(d: BasedRootDatum, a: K0Element) -> HeckeElement:
    out = HeckeElement()
    for (mu, n), c in a.items():
        out = out + ic_function(d, mu).scale(LaurentPoly.monomial(-2 * n, c))
    return out


def quotient_specialize(d: BasedRootDatum, r: RepElement) -> HeckeElement:
    """R(G1^) -> R(G1^)/([d^-1] - q) = H (x) Z[q^-1].

    [V_mu(n)] = [V_mu(0)] [d^-1]^(-n) goes to q^-n Sat^-1(q^<rho,mu> [V_mu]).
    """
    acc: dict = {}
    for (mu, n), c in r.items():
        key = (mu, 0)
        acc[key] = acc.get(key, ZERO) + LaurentPoly.monomial(dot(d.two_rho, mu) - 2 * n, c)
    return satake_inverse(d, RepElement(acc))


def kernel_residual(d: BasedRootDatum, x: K0Element) -> HeckeElement:
    """trace(x * ([IC_0(-1)] - q [IC_0])); zero when the kernel relation holds."""
    twisted = k0_convolve(d, x, ic(d.zero(), -1))
    q = LaurentPoly.monomial(2)
    return trace_frobenius(d, twisted) - trace_frobenius(d, x).scale(q)


def fiber_dimension(d: BasedRootDatum, mu: Sequence[int], graded: bool = False):
    """Total dimension of the fiber functor on IC_mu, or its q-refinement."""
    mu = tuple(mu)
    if not graded:
        return weyl_dimension(d, mu)
    total = ZERO
    for lam in dominant_multiplicities(d, mu):
        orbit = {w.act_y(lam) for w in weyl_group(d)}
        total = total + lusztig_q_analog(d, mu, lam) * len(orbit)
    return total
