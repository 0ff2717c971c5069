"""q-Kostant partitions and Lusztig's q-analogs of weight multiplicity.

Polynomials here are in the variable q (LaurentPoly with q-exponents).
Everything runs in the doubled lattice so that rho^vee never appears as a
half-integral vector.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .laurent import ONE, ZERO, LaurentPoly
from .root_datum import BasedRootDatum, RootDatumError, Vec, weyl_group

GradedPolynomial = LaurentPoly


@lru_cache(maxsize=None)
def _positive_coroot_coords(d: BasedRootDatum) -> tuple[tuple[int, ...], ...]:
    return tuple(d.coroot_cone_coefficients(c) for c in d.positive_coroots)


@lru_cache(maxsize=None)
def _partition_from(d: BasedRootDatum, i: int, b: tuple[int, ...]) -> LaurentPoly:
    # expressions of b using positive coroots number i, i+1, ...
    pos = _positive_coroot_coords(d)
    if i == len(pos):
        return ONE if not any(b) else ZERO
    out = ZERO
    k = 0
    while all(x >= 0 for x in b):
        out = out + _partition_from(d, i + 1, b).shift(k)
        k += 1
        b = tuple(x - y for x, y in zip(b, pos[i]))
    return out


def q_kostant_partition(d: BasedRootDatum, beta: Sequence[int]) -> GradedPolynomial:
    """Sum over ways of writing beta as a sum of k positive coroots, of q^k."""
    if len(beta) != d.rank:
        raise RootDatumError(f"coweight {tuple(beta)} has wrong length for rank {d.rank}")
    coords = d.coroot_cone_coefficients(tuple(beta))
    if coords is None or any(c < 0 for c in coords):
        return ZERO
    return _partition_from(d, 0, tuple(coords))


@lru_cache(maxsize=None)
def _q_analog(d: BasedRootDatum, mu: Vec, lam: Vec) -> LaurentPoly:
    r2 = d.two_rho_check
    top = tuple(2 * m + r for m, r in zip(mu, r2))
    out = ZERO
    for w in weyl_group(d):
        x = w.act_y(top)
        beta2 = tuple(a - r - 2 * l for a, r, l in zip(x, r2, lam))
        if any(b % 2 for b in beta2):
            continue
        p = q_kostant_partition(d, tuple(b // 2 for b in beta2))
        if p:
            out = out + (p if w.length() % 2 == 0 else -p)
    return out


def lusztig_q_analog(d: BasedRootDatum, mu: Sequence[int], lam: Sequence[int]) -> GradedPolynomial:
    """m^mu_lam(q) = sum_w (-1)^l(w) P_q(w(mu + rho^vee) - (lam + rho^vee))."""
    mu, lam = tuple(mu), tuple(lam)
    for v in (mu, lam):
        if len(v) != d.rank or not d.is_dominant(v):
            raise RootDatumError(f"coweight {v} is not dominant for {d.name}")
    return _q_analog(d, mu, lam)
