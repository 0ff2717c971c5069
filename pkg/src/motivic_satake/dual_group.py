"""The dual group and the extended dual group G1^ = G^ x|^{Ad rho} Gm.

Characters of the maximal torus T1^ = T^ x Gm are written (nu, m) with
nu in Y = X_*(T) and m in Z, so that V_mu(n) has highest weight (mu, n) and
the character d is (0, 1).  The torus of G^ x Gm maps to T1^ by
(t, lam) -> (t * 2rho(lam)^(-1), lam^2); on characters this pulls (nu, m)
back to (nu, 2m - <2rho, nu>), the "naive" Gm-weight.

The Gm-component of the extended root over a coroot a^vee is
EXT_ROOT_SIGN * <rho, a^vee>.  With EXT_ROOT_SIGN = +1 the Tate twist (-1)
matches multiplication by q under the trace of Frobenius; this is the single
place where that sign is fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._linalg import dot
from .root_datum import (
    BasedRootDatum,
    Vec,
    dual_root_datum,
    find_isomorphism,
    gl,
    product,
    torus,
    validate_root_datum,
)

EXT_ROOT_SIGN = 1


@dataclass(frozen=True)
class ExtendedDualDatum:
    group: BasedRootDatum          # G
    base: BasedRootDatum           # G^ = dual of G
    ext: BasedRootDatum            # G1^, characters Y + Z, cocharacters X + Z
    d_character: Vec
    kernel_cocharacter: Vec        # 2rho in X; the kernel is generated by (2rho(-1), -1)

    @property
    def ext_roots(self) -> tuple[tuple[Vec, int], ...]:
        return tuple((r[:-1], r[-1]) for r in self.ext.roots)

    def grading(self, coroot: Vec) -> int:
        """Gm-component attached to a coroot of G (a root of G^)."""
        return EXT_ROOT_SIGN * dot(self.group.two_rho, coroot) // 2

    def pullback_character(self, chi: Vec) -> Vec:
        """Character (nu, m) of T1^ pulled back to T^ x Gm."""
        nu, m = chi[:-1], chi[-1]
        return nu + (2 * m - EXT_ROOT_SIGN * dot(self.group.two_rho, nu),)

    def isogeny_cocharacter(self, y: Vec) -> Vec:
        """(x, k) in X_*(T^ x Gm) = X + Z to X_*(T1^)."""
        x, k = y[:-1], y[-1]
        return tuple(a - EXT_ROOT_SIGN * k * b for a, b in zip(x, self.group.two_rho)) + (2 * k,)

    @property
    def splits(self) -> bool:
        """rho is a character of T^ (the extension is a direct product)."""
        return all(c % 2 == 0 for c in self.group.two_rho)

    def splitting(self):
        """Unimodular change of characters (nu, m) -> (nu, m - <rho, nu>) when split."""
        if not self.splits:
            return None
        r = self.group.rank
        half = tuple(c // 2 for c in self.group.two_rho)
        rows = [tuple(int(i == j) for j in range(r + 1)) for i in range(r)]
        rows.append(tuple(-EXT_ROOT_SIGN * h for h in half) + (1,))
        return tuple(rows)


def build_extended_dual(d: BasedRootDatum) -> ExtendedDualDatum:
    base = dual_root_datum(d)
    roots, coroots = [], []
    for a, c in zip(d.roots, d.coroots):
        roots.append(c + (EXT_ROOT_SIGN * dot(d.two_rho, c) // 2,))
        coroots.append(a + (0,))
    ext = BasedRootDatum(d.rank + 1, roots, coroots, d.simple, name=f"{base.name or 'G^'}_1")
    d_char = (0,) * d.rank + (1,)
    return ExtendedDualDatum(d, base, ext, d_char, d.two_rho)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _basis(n):
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def check_isogeny_and_d(e: ExtendedDualDatum) -> list[Check]:
    d = e.group
    r = d.rank
    out = []
    problems = validate_root_datum(e.ext)
    out.append(Check("extended datum satisfies root datum axioms", not problems, "; ".join(problems)))
    out.append(Check("rank is rank(G) + 1", e.ext.rank == r + 1, str(e.ext.rank)))
    out.append(Check("root count unchanged", len(e.ext.roots) == len(d.roots), str(len(e.ext.roots))))
    proj = sorted(root for root, _ in e.ext_roots)
    out.append(Check("extended roots project onto the roots of G^", proj == sorted(e.base.roots)))
    simple_c = [e.ext.roots[i][-1] for i in e.ext.simple]
    out.append(Check("simple extended roots have |c| = <rho, a^vee> = 1",
                     all(abs(c) == 1 for c in simple_c), str(simple_c)))
    zsum = e.d_character
    fixed = all(e.ext.reflect_x(zsum, i) == zsum for i in range(len(e.ext.roots)))
    out.append(Check("W0 fixes the Z-summand", fixed))
    naive_ok = True
    for chi in _basis(r + 1):
        k = e.pullback_character(chi)[-1]
        for i in range(len(e.ext.roots)):
            if e.pullback_character(e.ext.reflect_x(chi, i))[-1] != k:
                naive_ok = False
    out.append(Check("naive Gm-weight is W0-invariant", naive_ok))
    pulled_roots = [e.pullback_character(root) for root in e.ext.roots]
    out.append(Check("extended roots pull back to roots of G^ x Gm (Gm central)",
                     sorted(pulled_roots) == sorted(c + (0,) for c in d.coroots)))
    # value of a pulled-back character (nu, k) on (2rho(-1), -1) is (-1)^(<nu, 2rho> + k)
    killed = all((dot(p[:-1], d.two_rho) + p[-1]) % 2 == 0
                 for p in (e.pullback_character(chi) for chi in _basis(r + 1)))
    out.append(Check("kernel generator (2rho(-1), -1) is killed", killed))
    gen = (0,) * r + (1,)
    image = e.isogeny_cocharacter(gen)
    out.append(Check("isogeny squares the Gm-factor", image[-1] == 2, str(image)))
    pd = e.pullback_character(e.d_character)
    out.append(Check("d pulls back to the square of the Gm generator", pd == (0,) * r + (2,), str(pd)))
    eps_trivial = all(c % 2 == 0 for c in d.two_rho)
    out.append(Check("epsilon = 2rho(-1) is trivial" if eps_trivial else "epsilon = 2rho(-1) is nontrivial",
                     True, f"<2rho, Y> {'even' if eps_trivial else 'has odd values'}"))
    if e.splits:
        target = product(e.base, torus(1))
        phi = find_isomorphism(e.ext, target)
        out.append(Check("simply connected case: G1^ = G^ x Gm", phi is not None, str(phi)))
    return out


def determinant_isomorphism(e: ExtendedDualDatum, n: int):
    """An isomorphism G1^ -> GL_n sending d to det, or None."""
    target = gl(n)
    return find_isomorphism(e.ext, target, extra=[(e.d_character, (1,) * n)])


def extended_dual_to_json(e: ExtendedDualDatum) -> dict:
    return {
        "group": e.group.name,
        "dual": e.base.name,
        "rank": e.ext.rank,
        "ext_roots": [{"root": list(root), "gm": c} for root, c in e.ext_roots],
        "ext_coroots": [list(c) for c in e.ext.coroots],
        "simple": list(e.ext.simple),
        "d_character": list(e.d_character),
        "kernel_generator": {"cocharacter_2rho": list(e.kernel_cocharacter), "gm": -1},
        "splits": e.splits,
        "ext_root_sign": EXT_ROOT_SIGN,
    }
