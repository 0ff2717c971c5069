"""Verification checks shared by the ``verify`` command and the test-suite.

Each check returns a CheckResult carrying every compared value and, on
failure, the first counterexample in the deterministic iteration order.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ._free import FreeModuleElement, fmt_vec
from ._linalg import dot
from .affine_weyl import iwahori_weyl
from .dual_group import build_extended_dual, check_isogeny_and_d, determinant_isomorphism
from .flag_strata import FlagVariety, gr_stratum, parity_table, projection_fibers
from .hecke import (
    HeckeElement,
    hecke_multiply,
    ic_function,
    satake_inverse,
    satake_transform,
    structure_constants,
    v_to_q,
)
from .k0_motives import (
    K0Element,
    ic,
    k0_convolve,
    kernel_residual,
    quotient_specialize,
    satake_bridge,
    trace_frobenius,
)
from .laurent import LaurentPoly, interpolate
from .lattice_oracle import oracle_structure_constants
from .q_analog import lusztig_q_analog
from .rep_ring import (
    RepElement,
    character,
    dominant_multiplicities,
    restriction_check,
    tensor_decompose,
    weight_multiplicities,
    weyl_dimension,
)
from .root_datum import (
    BasedRootDatum,
    dominance_leq,
    dual_root_datum,
    find_isomorphism,
    gl,
    pgl,
    preset,
    product,
    so_odd,
    sp,
    sl,
    torus,
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    compared: list = field(default_factory=list)
    counterexample: dict | None = None
    skipped: bool = False

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "skipped": self.skipped,
            "n_compared": len(self.compared),
            "compared": self.compared,
            "counterexample": self.counterexample,
        }


class _Recorder:
    def __init__(self, name: str):
        self.result = CheckResult(name, True)

    def compare(self, what: str, expected, actual, witness: dict | None = None) -> bool:
        ok = expected == actual
        self.result.compared.append([what, _show(expected), _show(actual), ok])
        if not ok:
            self.fail(witness or {"what": what}, expected, actual)
        return ok

    def fail(self, witness: dict, expected=None, actual=None):
        if self.result.ok:
            self.result.counterexample = dict(witness, expected=_show(expected), actual=_show(actual))
        self.result.ok = False


def _show(x):
    if isinstance(x, LaurentPoly):
        return x.format("v")
    if isinstance(x, FreeModuleElement):
        return repr(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple) and x and all(isinstance(c, int) for c in x):
        return fmt_vec(x)
    if isinstance(x, (list, tuple)):
        return [_show(c) for c in x]
    if isinstance(x, dict):
        return {str(_show(k)): _show(c) for k, c in x.items()}
    return x


# --- coweight boxes ----------------------------------------------------------


def dominant_box(d: BasedRootDatum, max_height: int, radius: int | None = None) -> list[tuple]:
    """Dominant coweights with <2rho, mu> <= max_height, one per central translate.

    The representative of a class is the member of smallest l1-norm, ties
    broken towards lexicographically larger vectors.
    """
    radius = max_height if radius is None else radius
    best: dict = {}
    for mu in itertools.product(range(-radius, radius + 1), repeat=d.rank):
        if not d.is_dominant(mu) or dot(d.two_rho, mu) > max_height:
            continue
        cls = tuple(dot(a, mu) for a in d.simple_roots)
        key = (sum(map(abs, mu)), tuple(-c for c in mu))
        if cls not in best or key < best[cls][0]:
            best[cls] = (key, mu)
    return sorted(v[1] for v in best.values())


def entry_box(n: int, lo: int, hi: int) -> list[tuple]:
    """Weakly decreasing integer vectors with entries in [lo, hi]."""
    return sorted(tuple(v) for v in itertools.combinations_with_replacement(range(hi, lo - 1, -1), n))


GL3_FUNDAMENTAL = [(1, 0, 0), (1, 1, 0)]


def oracle_boxes() -> list[tuple[BasedRootDatum, list[tuple]]]:
    """GL2 with entries in [0, 3] and GL3 at its fundamental coweights."""
    return [(gl(2), entry_box(2, 0, 3)), (gl(3), GL3_FUNDAMENTAL)]


# --- 1, 2: duality --------------------------------------------------------------


def check_duality() -> CheckResult:
    rec = _Recorder("duality")
    cases = [(gl(n), gl(n)) for n in range(1, 5)]
    cases += [(sl(n), pgl(n)) for n in range(2, 5)]
    cases += [(sp(4), so_odd(5)), (so_odd(5), sp(4))]
    for g, expect in cases:
        phi = find_isomorphism(dual_root_datum(g), expect)
        rec.compare(f"dual({g.name}) ~ {expect.name}", True, phi is not None, {"group": g.name})
    return rec.result


def check_extended_dual() -> CheckResult:
    rec = _Recorder("extended dual group")
    e = build_extended_dual(pgl(2))
    phi = determinant_isomorphism(e, 2)
    rec.compare("G1^(PGL2) ~ GL2 with d -> det", True, phi is not None, {"group": "PGL2"})
    e2 = build_extended_dual(sl(2))
    psi = find_isomorphism(e2.ext, product(pgl(2), torus(1)))
    rec.compare("G1^(SL2) ~ PGL2 x Gm", True, psi is not None, {"group": "SL2"})
    for g in (pgl(2), sl(2), gl(2), gl(3), sp(4)):
        for c in check_isogeny_and_d(build_extended_dual(g)):
            rec.compare(f"{g.name}: {c.name}", True, c.ok, {"group": g.name, "check": c.name})
    return rec.result


# --- 3, 4, 5: strata ----------------------------------------------------------------


def check_gr_dimension(groups: Sequence[BasedRootDatum] | None = None, max_height: int = 10) -> CheckResult:
    rec = _Recorder("Gr dimension and parity")
    groups = groups or [sl(2), gl(2), gl(3), sp(4)]
    for d in groups:
        fl = FlagVariety.grassmannian(d)
        box = dominant_box(d, max_height)
        for mu in box:
            dim = gr_stratum(fl, mu).dimension
            rec.compare(f"{d.name} dim Gr_{fmt_vec(mu)}", dot(d.two_rho, mu), dim,
                        {"group": d.name, "mu": fmt_vec(mu)})
        for row in parity_table(fl, box):
            rec.compare(f"{d.name} parity {fmt_vec(row.mu)} >= {fmt_vec(row.lam)}", True, row.same_parity,
                        {"group": d.name, "mu": fmt_vec(row.mu), "lam": fmt_vec(row.lam)})
    return rec.result


def check_cell_dimension(groups: Sequence[BasedRootDatum] | None = None, bound: int = 8) -> CheckResult:
    rec = _Recorder("cell dimension")
    groups = groups or [sl(2), sl(3), sp(4)]
    for d in groups:
        g = iwahori_weyl(d)
        for J in (frozenset(), g.hyperspecial):
            for dc in g.double_coset_reps((), J, bound):
                v = dc.rep
                rec.compare(f"{d.name} J={sorted(J)} {v!r}", g.length(v),
                            g.affine_root_count_for_cell(v, J),
                            {"group": d.name, "facet": sorted(J), "v": repr(v)})
    return rec.result


def check_projection_fibers(groups: Sequence[BasedRootDatum] | None = None, bound: int = 8) -> CheckResult:
    rec = _Recorder("projection fibers")
    groups = groups or [sl(2), sl(3)]
    for d in groups:
        g = iwahori_weyl(d)
        for w in g.elements(bound):
            for s in g.right_descents(w):
                v = g.multiply(w, g.simple_reflections[s])
                fib = projection_fibers(d, v, s)
                got = sorted((repr(x), kind, dim - g.length(v)) for x, kind, dim in fib.pieces)
                want = sorted([(repr(v), "isomorphism", 0), (repr(w), "line-bundle", 1)])
                rec.compare(f"{d.name} {w!r} = {v!r} s{s}", want, got,
                            {"group": d.name, "w": repr(w), "s": s})
                cells = g.affine_root_count_for_cell(w, ()) - g.affine_root_count_for_cell(v, ())
                rec.compare(f"{d.name} cell offset {w!r}/{v!r}", 1, cells, {"group": d.name, "w": repr(w), "s": s})
    return rec.result


# --- 6-9: Satake, Hecke, K0 ---------------------------------------------------


def _c_constant(sc: HeckeElement, nu, q) -> Fraction:
    f = sc[nu]
    return v_to_q(f).evaluate(q) if f else Fraction(0)


def check_hecke_oracle(boxes=None, qs: Sequence[int] = (2, 3, 5), perturb: Callable | None = None) -> CheckResult:
    """Oracle counts against transported structure constants.

    ``perturb(d, mu, lam, nu, q, value)`` may alter the transported value
    (used for fault injection).
    """
    rec = _Recorder("Hecke oracle equivalence")
    boxes = oracle_boxes() if boxes is None else boxes
    for d, box in boxes:
        n = d.rank
        for mu, lam in itertools.combinations_with_replacement(box, 2):
            sc = structure_constants(d, mu, lam)
            for q in qs:
                counts = oracle_structure_constants(n, mu, lam, q)
                support = sorted(set(counts) | set(sc.keys()))
                for nu in support:
                    got = _c_constant(sc, nu, q)
                    if perturb is not None:
                        got = perturb(d, mu, lam, nu, q, got)
                    rec.compare(f"{d.name} <c{fmt_vec(mu)} c{fmt_vec(lam)}, c{fmt_vec(nu)}> q={q}",
                                Fraction(counts.get(nu, 0)), got,
                                {"group": d.name, "mu": fmt_vec(mu), "lam": fmt_vec(lam),
                                 "nu": fmt_vec(nu), "q": q})
    return rec.result


def check_polynomiality(boxes=None, qs: Sequence[int] = (2, 3, 4, 5, 7)) -> CheckResult:
    """Interpolate oracle counts in q and match the symbolic constants."""
    rec = _Recorder("Hecke polynomial identities")
    boxes = oracle_boxes() if boxes is None else boxes
    for d, box in boxes:
        n = d.rank
        for mu, lam in itertools.combinations_with_replacement(box, 2):
            sc = structure_constants(d, mu, lam)
            tables = {q: oracle_structure_constants(n, mu, lam, q) for q in qs}
            support = sorted(set(sc.keys()).union(*tables.values()))
            for nu in support:
                bound = dot(d.two_rho, tuple(a + b - c for a, b, c in zip(mu, lam, nu))) // 2
                pts = [(q, tables[q].get(nu, 0)) for q in qs]
                if len(pts) < bound + 2:
                    rec.fail({"group": d.name, "mu": fmt_vec(mu), "lam": fmt_vec(lam), "nu": fmt_vec(nu),
                              "reason": f"{len(pts)} points for degree bound {bound}"})
                    continue
                coeffs = interpolate(pts)
                poly = LaurentPoly({2 * k: int(c) for k, c in coeffs.items() if c.denominator == 1})
                integral = all(c.denominator == 1 for c in coeffs.values())
                rec.compare(f"{d.name} c{fmt_vec(mu)} c{fmt_vec(lam)} at c{fmt_vec(nu)}",
                            sc[nu] if sc[nu] else LaurentPoly(), poly if integral else None,
                            {"group": d.name, "mu": fmt_vec(mu), "lam": fmt_vec(lam), "nu": fmt_vec(nu)})
    return rec.result


def check_gl2_square_identity(qs: Sequence[int] = (2, 3, 4, 5)) -> CheckResult:
    """c_(1,0)^2 = c_(2,0) + (q+1) c_(1,1), symbolically and through the oracle."""
    rec = _Recorder("GL2 square identity")
    d = gl(2)
    q = LaurentPoly.monomial(2)
    expected = HeckeElement({(2, 0): 1, (1, 1): q + 1})
    rec.compare("transported c10^2", expected, structure_constants(d, (1, 0), (1, 0)))
    for nu, want in [((1, 1), LaurentPoly({1: 1, 0: 1})), ((2, 0), LaurentPoly({0: 1}))]:
        pts = [(x, oracle_structure_constants(2, (1, 0), (1, 0), x).get(nu, 0)) for x in qs]
        got = LaurentPoly({k: int(c) for k, c in interpolate(pts).items()})
        rec.compare(f"interpolated coefficient of c{fmt_vec(nu)} (in q)", want, got, {"nu": fmt_vec(nu)})
    return rec.result


def satake_boxes() -> list[tuple[BasedRootDatum, list[tuple]]]:
    return [
        (gl(2), entry_box(2, -1, 3)),
        (gl(3), entry_box(3, 0, 2)),
        (sl(2), dominant_box(sl(2), 8)),
        (pgl(2), dominant_box(pgl(2), 8)),
        (sp(4), dominant_box(sp(4), 10)),
        (so_odd(5), dominant_box(so_odd(5), 8)),
    ]


def check_satake_normalization(boxes=None) -> CheckResult:
    rec = _Recorder("Satake normalization")
    boxes = satake_boxes() if boxes is None else boxes
    for d, box in boxes:
        for mu in box:
            c = HeckeElement.c(mu)
            sat = satake_transform(d, c)
            w = {"group": d.name, "mu": fmt_vec(mu)}
            rec.compare(f"{d.name} leading term of Sat(c{fmt_vec(mu)})",
                        LaurentPoly.monomial(dot(d.two_rho, mu)), sat[(mu, 0)], w)
            for (lam, _), _f in sat.items():
                if lam != mu:
                    lower = dominance_leq(d, lam, mu)
                    rec.compare(f"{d.name} Sat(c{fmt_vec(mu)}) term {fmt_vec(lam)} below", True, lower,
                                dict(w, lam=fmt_vec(lam)))
            rec.compare(f"{d.name} round trip c{fmt_vec(mu)}", c, satake_inverse(d, sat), w)
    return rec.result


def _k0_basis(box, twists):
    return [ic(mu, n) for mu in box for n in twists]


def check_trace_homomorphism(boxes=None, qs: Sequence[int] = (2, 3, 5), twists=(-1, 0, 1)) -> CheckResult:
    rec = _Recorder("trace homomorphism")
    boxes = oracle_boxes() if boxes is None else boxes
    for d, box in boxes:
        zero = d.zero()
        k = trace_frobenius(d, ic(zero, -1)) - trace_frobenius(d, ic(zero, 0)).scale(LaurentPoly.monomial(2))
        rec.compare(f"{d.name} trace([IC0(-1)] - q[IC0])", HeckeElement(), k, {"group": d.name})
        basis = _k0_basis(box, twists)
        for a, b in itertools.combinations_with_replacement(basis, 2):
            (mu, m), = a.keys()
            (lam, n), = b.keys()
            w = {"group": d.name, "a": f"IC{fmt_vec(mu)}({m})", "b": f"IC{fmt_vec(lam)}({n})"}
            lhs = trace_frobenius(d, k0_convolve(d, a, b))
            ta, tb = trace_frobenius(d, a), trace_frobenius(d, b)
            rec.compare(f"{d.name} trace({w['a']} * {w['b']})", hecke_multiply(d, ta, tb), lhs, w)
            if m != 0 or n != 0:
                continue  # twists only rescale; the oracle pass below is at n = 0
            for q in qs:
                want: dict = {}
                for l1, f1 in ta.items():
                    for l2, f2 in tb.items():
                        s = v_to_q(f1).evaluate(q) * v_to_q(f2).evaluate(q)
                        for nu, cnt in oracle_structure_constants(d.rank, l1, l2, q).items():
                            want[nu] = want.get(nu, 0) + s * cnt
                got = {nu: v for nu, v in lhs.evaluate_q(q).items() if v}
                want = {nu: v for nu, v in want.items() if v}
                rec.compare(f"{d.name} trace({w['a']} * {w['b']}) at q={q} vs oracle",
                            sorted(want.items()), sorted(got.items()), dict(w, q=q))
        x = ic(box[-1], 1) + ic(box[0], -2).scale(3)
        rec.compare(f"{d.name} kernel ideal", HeckeElement(), kernel_residual(d, x), {"group": d.name})
    return rec.result


def check_commuting_square(d: BasedRootDatum | None = None, box=None, twists=range(-2, 3)) -> CheckResult:
    rec = _Recorder("commuting square")
    d = d or gl(2)
    box = entry_box(2, -2, 2) if box is None else box
    for mu in box:
        for n in twists:
            a = ic(mu, n)
            rec.compare(f"{d.name} IC{fmt_vec(mu)}({n})", trace_frobenius(d, a),
                        quotient_specialize(d, satake_bridge(a)),
                        {"group": d.name, "mu": fmt_vec(mu), "n": n})
    rec.compare("[V0(-1)] -> q", HeckeElement.c(d.zero(), LaurentPoly.monomial(2)),
                quotient_specialize(d, RepElement({(d.zero(), -1): 1})))
    return rec.result


# --- 10-12: characters --------------------------------------------------------


def rep_boxes(max_height: int = 10):
    return [(d, dominant_box(d, max_height)) for d in (gl(2), gl(3), sp(4), so_odd(5))]


def check_character_ring(boxes=None, pair_height: int = 10) -> CheckResult:
    rec = _Recorder("character ring")
    boxes = rep_boxes() if boxes is None else boxes
    for d, box in boxes:
        for mu in box:
            total = sum(weight_multiplicities(d, mu).values())
            rec.compare(f"{d.name} dim V{fmt_vec(mu)}", weyl_dimension(d, mu), total,
                        {"group": d.name, "mu": fmt_vec(mu)})
        for mu, lam in itertools.combinations_with_replacement(box, 2):
            if dot(d.two_rho, mu) + dot(d.two_rho, lam) > pair_height:
                continue
            for m, n in [(0, 0), (1, -2)]:
                a, b = RepElement({(mu, m): 1}), RepElement({(lam, n): 1})
                prod = character(d, tensor_decompose(d, a, b))
                rec.compare(f"{d.name} ch(V{fmt_vec(mu)}({m}) x V{fmt_vec(lam)}({n}))",
                            character(d, a) * character(d, b), prod,
                            {"group": d.name, "mu": fmt_vec(mu), "lam": fmt_vec(lam), "m": m, "n": n})
    return rec.result


def check_q_analogs(boxes=None) -> CheckResult:
    rec = _Recorder("q-analogs")
    boxes = rep_boxes() if boxes is None else boxes
    for d, box in boxes:
        for mu in box:
            mults = dominant_multiplicities(d, mu)
            for lam in box:
                m = lusztig_q_analog(d, mu, lam)
                w = {"group": d.name, "mu": fmt_vec(mu), "lam": fmt_vec(lam)}
                tag = f"{d.name} m^{fmt_vec(mu)}_{fmt_vec(lam)}"
                rec.compare(f"{tag}(1)", mults.get(lam, 0), int(m.evaluate(1)), w)
                below = dominance_leq(d, lam, mu)
                if not below:
                    rec.compare(f"{tag} vanishes", True, m.is_zero(), w)
                    continue
                rec.compare(f"{tag} nonnegative", True, m.all_nonnegative(), w)
                top = dot(d.two_rho, tuple(a - b for a, b in zip(mu, lam))) // 2
                rec.compare(f"{tag} monic of degree <rho, mu-lam>", (top, 1), (m.degree(), m.coeff(m.degree())), w)
    return rec.result


def check_restriction(groups=None, max_height: int = 6, twists=range(-2, 3)) -> CheckResult:
    rec = _Recorder("restriction identity")
    groups = groups or [pgl(2), sl(2)]
    for d in groups:
        for mu in dominant_box(d, max_height):
            for n in twists:
                rep = restriction_check(d, mu, n)
                rec.compare(f"{d.name} V{fmt_vec(mu)}({n}) uniform Gm weight", True, rep.ok,
                            {"group": d.name, "mu": fmt_vec(mu), "n": n, "problems": rep.problems})
    return rec.result


# --- suites ----------------------------------------------------------------------


def _gl_rank(d: BasedRootDatum) -> int | None:
    return d.rank if d.name == f"GL{d.rank}" else None


def suite_checks(suite: str, d: BasedRootDatum | None = None, qs: Sequence[int] = (2, 3, 5)) -> list[Callable[[], CheckResult]]:
    """Zero-argument callables for a named suite."""
    if suite == "empty":
        return []
    satake: list[Callable[[], CheckResult]] = []
    if d is None:
        satake = [
            lambda: check_hecke_oracle(qs=qs),
            lambda: check_polynomiality(),
            check_gl2_square_identity,
            check_satake_normalization,
            lambda: check_trace_homomorphism(qs=qs),
            check_commuting_square,
        ]
    else:
        n = _gl_rank(d)
        box = entry_box(n, 0, 3) if n == 2 else (GL3_FUNDAMENTAL if n == 3 else None)
        if n and box is None:
            box = [tuple(int(i < k) for i in range(n)) for k in range(1, n)]
        satake = [lambda: check_satake_normalization([(d, dominant_box(d, 8))])]
        if n:
            boxes = [(d, box)]
            satake = [
                lambda: check_hecke_oracle(boxes, qs=qs),
                lambda: check_satake_normalization([(d, sorted(set(box) | set(dominant_box(d, 8))))]),
                lambda: check_trace_homomorphism(boxes, qs=qs),
            ]
            if n == 2:
                satake += [check_gl2_square_identity, lambda: check_commuting_square(d)]
    structure = [check_duality, check_extended_dual]
    strata = [check_gr_dimension, check_cell_dimension, check_projection_fibers]
    reps = [check_character_ring, check_q_analogs, check_restriction]
    table = {
        "satake": satake,
        "duality": structure,
        "strata": strata,
        "rep": reps,
        "all": structure + strata + satake + reps,
    }
    if suite not in table:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(table) + ['empty']}")
    return table[suite]


def run_suite(checks: Iterable[Callable[[], CheckResult]], threads: int = 1) -> list[CheckResult]:
    checks = list(checks)
    if threads <= 1:
        return [c() for c in checks]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(lambda c: c(), checks))


def emit_verification_report(results: Sequence[CheckResult]) -> dict:
    return {
        "ok": all(r.ok for r in results),
        "n_checks": len(results),
        "n_failed": sum(not r.ok for r in results),
        "checks": [r.to_json() for r in results],
    }
