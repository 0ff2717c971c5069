"""Finitely supported maps key -> coefficient with canonical support."""

from __future__ import annotations

from typing import Any, Iterable, Mapping


class FreeModuleElement:
    """Immutable formal sum.  Coefficients are ints or LaurentPoly."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable[tuple[Any, Any]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for k, c in items:
            k = self._normalize_key(k)
            acc[k] = acc[k] + c if k in acc else c
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @staticmethod
    def _normalize_key(k):
        return k

    @classmethod
    def basis(cls, key, coeff=1):
        return cls({key: coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def keys(self):
        return sorted(self._terms)

    def __getitem__(self, key):
        return self._terms.get(self._normalize_key(key), 0)

    def __contains__(self, key):
        return self._normalize_key(key) in self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.keys())

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return type(self)(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return type(self)({k: c * v for k, v in self._terms.items()})

    def map_coefficients(self, f):
        return type(self)({k: f(v) for k, v in self._terms.items()})

    def map_keys(self, f):
        return type(self)([(f(k), v) for k, v in self._terms.items()])

    def __eq__(self, other):
        if isinstance(other, FreeModuleElement):
            return type(self) is type(other) and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return f"{type(self).__name__}(0)"
        body = " + ".join(f"{c}*{self._key_str(k)}" for k, c in self.items())
        return f"{type(self).__name__}({body})"

    @staticmethod
    def _key_str(k) -> str:
        return str(k)


def fmt_vec(v) -> str:
    return "(" + ",".join(str(int(x)) for x in v) + ")"
