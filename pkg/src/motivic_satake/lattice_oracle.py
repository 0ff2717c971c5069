"""Brute-force structure constants of the spherical Hecke ring of GL_n.

The constant <c_mu * c_lam, c_nu> counts lattices L' with
L0 / L' of type mu and L' / L_nu of type lam, where L_nu = diag(pi^nu) L0.
Lattices between pi^k L0 and L0 are enumerated as lower-triangular Hermite
forms over a finite chain ring, so nothing here touches the Satake code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .chain_ring import ChainRing, OracleError, make_chain_ring, prime_power

MAX_HERMITE_FORMS = 2_000_000


@dataclass(frozen=True)
class LatticeChainProblem:
    n: int
    mu: tuple[int, ...]
    lam: tuple[int, ...]
    nu: tuple[int, ...]
    q: int

    def __post_init__(self):
        for name in ("mu", "lam", "nu"):
            v = tuple(int(x) for x in getattr(self, name))
            object.__setattr__(self, name, v)
            if len(v) != self.n:
                raise OracleError(f"{name}={v} has length != {self.n}")
            if any(a < b for a, b in zip(v, v[1:])):
                raise OracleError(f"{name}={v} is not weakly decreasing")
        prime_power(self.q)


def _det(ring: ChainRing, m):
    n = len(m)
    if n == 1:
        return m[0][0]
    out = ring.zero
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = ring.mul(m[0][j], _det(ring, minor))
        out = ring.add(out, term) if j % 2 == 0 else ring.sub(out, term)
    return out


def elementary_type(ring: ChainRing, m) -> tuple[int, ...]:
    """Elementary divisor exponents (decreasing) from valuations of minors."""
    n = len(m)
    prev = 0
    exps = []
    for k in range(1, n + 1):
        best = ring.N
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                v = ring.valuation(_det(ring, [[m[i][j] for j in cols] for i in rows]))
                best = min(best, v)
                if best == prev:
                    break
            if best == prev:
                break
        exps.append(best - prev)
        prev = best
    return tuple(sorted(exps, reverse=True))


def _hermite_forms(ring: ChainRing, n: int, mu: tuple[int, ...]):
    """Lower-triangular Hermite forms H whose column span has L0/L' of type mu."""
    total, top = sum(mu), max(mu)
    for diag in itertools.product(range(top + 1), repeat=n):
        if sum(diag) != total:
            continue
        slots = [(i, j) for i in range(n) for j in range(i)]
        choices = [list(ring.representatives(diag[i])) for i, _ in slots]
        for entries in itertools.product(*choices):
            h = [[ring.zero] * n for _ in range(n)]
            for i in range(n):
                h[i][i] = ring.pi_power(diag[i])
            for (i, j), e in zip(slots, entries):
                h[i][j] = e
            if elementary_type(ring, h) == mu:
                yield diag, h


def _solve_lower(ring: ChainRing, diag, h, nu):
    """X with H X = diag(pi^nu), or None if L_nu is not inside L'."""
    n = len(h)
    x = [[ring.zero] * n for _ in range(n)]
    for col in range(n):
        for i in range(n):
            num = ring.pi_power(nu[i]) if i == col else ring.zero
            for k in range(i):
                num = ring.sub(num, ring.mul(h[i][k], x[k][col]))
            if ring.valuation(num) < diag[i]:
                return None
            x[i][col] = ring.div_pi(num, diag[i])
    return x


def _candidate_targets(n, mu, lam):
    total = sum(mu) + sum(lam)
    lo, hi = mu[-1] + lam[-1], mu[0] + lam[0]
    for nu in itertools.combinations_with_replacement(range(hi, lo - 1, -1), n):
        if sum(nu) == total:
            yield tuple(nu)


@lru_cache(maxsize=None)
def _forms_cached(n: int, mu: tuple[int, ...], q: int, N: int, model: str):
    ring = make_chain_ring(q, N, model)
    count = 1
    for i in range(n):
        count *= q ** (max(mu) * i) * (max(mu) + 1)
    if count > MAX_HERMITE_FORMS:
        raise OracleError(f"enumeration bound exceeded for mu={mu}, q={q}")
    return ring, tuple(_hermite_forms(ring, n, mu))


def oracle_structure_constants(n: int, mu: Sequence[int], lam: Sequence[int], q: int,
                               model: str = "auto") -> dict[tuple[int, ...], int]:
    """All nonzero counts <c_mu c_lam, c_nu> for GL_n at residue field size q."""
    mu, lam = tuple(mu), tuple(lam)
    LatticeChainProblem(n, mu, lam, mu, q)  # validation
    # central shifts: c_(k,..,k) is invertible and only translates supports
    a, b = mu[-1], lam[-1]
    mu0 = tuple(x - a for x in mu)
    lam0 = tuple(x - b for x in lam)
    N = sum(mu0) + sum(lam0) + 2
    ring, forms = _forms_cached(n, mu0, q, N, model)
    out: dict[tuple[int, ...], int] = {}
    targets = list(_candidate_targets(n, mu0, lam0))
    for diag, h in forms:
        for nu in targets:
            x = _solve_lower(ring, diag, h, nu)
            if x is not None and elementary_type(ring, x) == lam0:
                out[nu] = out.get(nu, 0) + 1
    return {tuple(v + a + b for v in nu): c for nu, c in sorted(out.items())}


def oracle_convolve(p: LatticeChainProblem, model: str = "auto") -> int:
    if sum(p.nu) != sum(p.mu) + sum(p.lam):
        return 0
    return oracle_structure_constants(p.n, p.mu, p.lam, p.q, model).get(p.nu, 0)
