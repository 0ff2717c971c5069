"""Finite chain rings O / pi^N used by the lattice-counting oracle.

Two models of a complete discrete valuation ring with residue field F_q:
Z_p (when q = p is prime) and F_q[[t]] (any prime power).  Only the
operations the oracle needs are provided: ring arithmetic, valuation,
exact division by a power of pi, and representatives of O / pi^a.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class OracleError(ValueError):
    pass


def prime_power(q: int) -> tuple[int, int]:
    """(p, k) with q = p^k, or OracleError."""
    if not isinstance(q, int) or q < 2:
        raise OracleError(f"q={q!r} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise OracleError(f"q={q} is not a prime power")
    return p, k


class ChainRing:
    q: int
    N: int

    def valuation(self, x) -> int:
        raise NotImplementedError

    def pi_power(self, a: int):
        raise NotImplementedError

    def div_pi(self, x, a: int):
        raise NotImplementedError

    def representatives(self, a: int):
        raise NotImplementedError


class PadicIntegers(ChainRing):
    """Z / p^N."""

    def __init__(self, p: int, N: int):
        if prime_power(p)[1] != 1:
            raise OracleError(f"{p} is not prime")
        self.q = self.p = p
        self.N = N
        self.mod = p**N
        self.zero, self.one = 0, 1

    def add(self, x, y):
        return (x + y) % self.mod

    def sub(self, x, y):
        return (x - y) % self.mod

    def mul(self, x, y):
        return (x * y) % self.mod

    def valuation(self, x) -> int:
        x %= self.mod
        if x == 0:
            return self.N
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def pi_power(self, a: int):
        return pow(self.p, a, self.mod)

    def div_pi(self, x, a: int):
        # result is only meaningful modulo p^(N - a)
        assert x % self.p**a == 0
        return x // self.p**a

    def representatives(self, a: int):
        return range(self.p**a)


@lru_cache(maxsize=None)
def _gf_tables(p: int, k: int):
    """Addition and multiplication tables of GF(p^k); elements are base-p digit ints."""
    q = p**k

    def digits(x):
        return [(x // p**i) % p for i in range(k)]

    def from_digits(ds):
        return sum(c * p**i for i, c in enumerate(ds))

    def polymul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    def polymod(a, m):
        a = list(a)
        for i in range(len(a) - 1, len(m) - 2, -1):
            c = a[i]
            if c:
                for j, y in enumerate(m):
                    a[i - len(m) + 1 + j] = (a[i - len(m) + 1 + j] - c * y) % p
        return a[: len(m) - 1]

    def irreducible(m):
        # no monic factor of degree 1..k//2
        for deg in range(1, k // 2 + 1):
            for tail in itertools.product(range(p), repeat=deg):
                f = list(tail) + [1]
                if not any(polymod(m, f)):
                    return False
        return True

    modulus = None
    for tail in itertools.product(range(p), repeat=k):
        m = list(tail) + [1]
        if k == 1 or irreducible(m):
            modulus = m
            break
    add = [[from_digits([(a + b) % p for a, b in zip(digits(x), digits(y))]) for y in range(q)] for x in range(q)]
    mul = [[from_digits(polymod(polymul(digits(x), digits(y)), modulus) + [0] * k)
            if k > 1 else (x * y) % p for y in range(q)] for x in range(q)]
    neg = [next(y for y in range(q) if add[x][y] == 0) for x in range(q)]
    return add, mul, neg


class PowerSeries(ChainRing):
    """F_q[t] / t^N; elements are N-tuples of field elements."""

    def __init__(self, q: int, N: int):
        p, k = prime_power(q)
        self.q, self.N = q, N
        self._add, self._mul, self._neg = _gf_tables(p, k)
        self.zero = (0,) * N
        self.one = (1,) + (0,) * (N - 1)

    def add(self, x, y):
        a = self._add
        return tuple(a[s][t] for s, t in zip(x, y))

    def sub(self, x, y):
        a, n = self._add, self._neg
        return tuple(a[s][n[t]] for s, t in zip(x, y))

    def mul(self, x, y):
        a, m = self._add, self._mul
        out = [0] * self.N
        for i, s in enumerate(x):
            if s:
                for j in range(self.N - i):
                    t = y[j]
                    if t:
                        out[i + j] = a[out[i + j]][m[s][t]]
        return tuple(out)

    def valuation(self, x) -> int:
        for i, c in enumerate(x):
            if c:
                return i
        return self.N

    def pi_power(self, a: int):
        return tuple(int(i == a) for i in range(self.N))

    def div_pi(self, x, a: int):
        assert not any(x[:a])
        return tuple(x[a:]) + (0,) * a

    def representatives(self, a: int):
        for head in itertools.product(range(self.q), repeat=a):
            yield tuple(head) + (0,) * (self.N - a)


def make_chain_ring(q: int, N: int, model: str = "auto") -> ChainRing:
    p, k = prime_power(q)
    if model == "padic" or (model == "auto" and k == 1):
        if k != 1:
            raise OracleError("p-adic model needs prime q")
        return PadicIntegers(p, N)
    return PowerSeries(q, N)
