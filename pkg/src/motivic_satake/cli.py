"""Command-line front end.

    motivic-satake dual-group --group SL2 --extended
    motivic-satake strata --group GL2 --bound 2 --omega "(1,0);(1,1)" --dot
    motivic-satake hecke mult --group GL2 --mu "(1,0)" --lambda "(1,0)" --oracle --q 3
    motivic-satake verify --suite satake --group GL2 --q 2,3,5

Polynomials in JSON output are maps exponent-of-v -> coefficient, q = v^2.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from ._free import fmt_vec
from .affine_weyl import AffineWeylError, iwahori_weyl, parse_facet
from .chain_ring import OracleError, prime_power
from .dual_group import build_extended_dual, check_isogeny_and_d, determinant_isomorphism, extended_dual_to_json
from .flag_strata import FlagVariety, enumerate_strata
from .hecke import HeckeElement, ic_function, q_to_v, satake_transform, structure_constants
from .k0_motives import K0Element, k0_convolve, trace_frobenius
from .lattice_oracle import oracle_structure_constants
from .q_analog import lusztig_q_analog
from .rep_ring import RepElement, RepError, tensor_decompose
from .root_datum import RootDatumError, dual_root_datum, is_isomorphic, load_root_datum, root_datum_to_json
from .verification import emit_verification_report, run_suite, suite_checks

COMMANDS = ("dual-group", "strata", "qanalog", "tensor", "hecke", "convolve-ic", "satake", "verify")


class CliError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    params: dict = field(default_factory=dict)
    output: str = "table"
    qs: tuple[int, ...] = ()
    bound: int | None = None
    threads: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise CliError("unknown-command", f"unknown command {self.command!r}")
        if self.output not in ("table", "json", "dot"):
            raise CliError("bad-config", f"unknown output mode {self.output!r}")
        if self.bound is not None and self.bound < 0:
            raise CliError("bad-config", "bound must be nonnegative")
        if self.threads < 1:
            raise CliError("bad-config", "threads must be positive")


# --- parsing helpers -------------------------------------------------------------

_VEC_RE = re.compile(r"^\(?\s*(-?\d+(\s*,\s*-?\d+)*)?\s*,?\s*\)?$")


def parse_coweight(text: str) -> tuple[int, ...]:
    t = text.strip()
    if not _VEC_RE.match(t):
        raise CliError("bad-coweight", f"cannot parse coweight {text!r}; expected e.g. (1,0)")
    body = t.strip("()").strip()
    return tuple(int(x) for x in body.split(",") if x.strip()) if body else ()


def parse_hw(text: str) -> tuple[tuple[int, ...], int]:
    """'mu=(2,0);n=1' -> ((2,0), 1)."""
    fields = dict(part.split("=", 1) for part in text.replace(" ", "").split(";") if "=" in part)
    if "mu" not in fields:
        raise CliError("bad-coweight", f"cannot parse highest weight {text!r}; expected mu=(..);n=..")
    try:
        n = int(fields.get("n", "0"))
    except ValueError:
        raise CliError("bad-coweight", f"bad twist in {text!r}") from None
    return parse_coweight(fields["mu"]), n


def parse_ic(text: str) -> tuple[tuple[int, ...], int]:
    """'(1,0);0' -> ((1,0), 0)."""
    head, _, tail = text.partition(";")
    try:
        n = int(tail) if tail.strip() else 0
    except ValueError:
        raise CliError("bad-coweight", f"bad twist in {text!r}") from None
    return parse_coweight(head), n


def parse_qs(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise CliError("bad-config", f"cannot parse q values {text!r}") from None


def _poly(f) -> dict:
    return {str(e): c for e, c in sorted(f.items())}


def _hecke_json(h: HeckeElement) -> dict:
    return {fmt_vec(mu): _poly(f) for mu, f in h.items()}


def _rep_json(r: RepElement) -> list:
    out = []
    for (mu, n), c in r.items():
        out.append({"mu": list(mu), "n": n, "coeff": _poly(c) if hasattr(c, "items") else c})
    return out


# --- commands -----------------------------------------------------------------------


def _datum(cfg: RunConfig):
    if not cfg.group:
        raise CliError("bad-config", "--group is required")
    try:
        return load_root_datum(cfg.group)
    except (RootDatumError, KeyError, ValueError, OSError) as e:
        raise CliError("unknown-group", str(e)) from None


def _dominant(d, mu, what="mu"):
    if len(mu) != d.rank:
        raise CliError("bad-coweight", f"{what}={fmt_vec(mu)} has length {len(mu)}, rank is {d.rank}")
    if not d.is_dominant(mu):
        raise CliError("bad-coweight", f"{what}={fmt_vec(mu)} is not dominant")
    return mu


def _cmd_dual_group(cfg, d):
    out: dict[str, Any] = {"group": root_datum_to_json(d), "dual": root_datum_to_json(dual_root_datum(d))}
    if cfg.params.get("extended"):
        e = build_extended_dual(d)
        checks = check_isogeny_and_d(e)
        out["extended"] = extended_dual_to_json(e)
        out["checks"] = [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]
        out["product_datum"] = e.splits
        if d.name and d.name.startswith("PGL"):
            out["gl_with_det"] = determinant_isomorphism(e, d.rank + 1) is not None
        out["ok"] = all(c.ok for c in checks)
    return out


def _cmd_strata(cfg, d):
    g = iwahori_weyl(d)
    try:
        facet = parse_facet(g, cfg.params.get("facet") or "hyperspecial")
        strat = parse_facet(g, cfg.params.get("stratify") or cfg.params.get("facet") or "hyperspecial")
        fl = FlagVariety(d, facet, strat)
    except (AffineWeylError, ValueError) as e:
        raise CliError("bad-config", str(e)) from None
    omegas = None
    if cfg.params.get("omega"):
        trans = [parse_coweight(t) for t in cfg.params["omega"].split(";") if t.strip()]
        omegas = g.omega_elements(trans)
    bound = 4 if cfg.bound is None else cfg.bound
    poset = enumerate_strata(fl, bound, omegas)
    return {"bound": bound, "strata": poset.to_json(), "_dot": poset.to_dot()}


def _cmd_qanalog(cfg, d):
    mu = _dominant(d, parse_coweight(cfg.params["mu"]))
    lam = _dominant(d, parse_coweight(cfg.params["lambda"]), "lambda")
    m = lusztig_q_analog(d, mu, lam)
    return {"mu": list(mu), "lambda": list(lam), "poly": _poly(q_to_v(m)), "q_form": m.format("q")}


def _cmd_tensor(cfg, d):
    hws = [parse_hw(t) for t in cfg.params.get("hw") or []]
    if not hws:
        raise CliError("bad-config", "give at least one --hw")
    acc = None
    for mu, n in hws:
        r = RepElement({(_dominant(d, mu), n): 1})
        acc = r if acc is None else tensor_decompose(d, acc, r)
    return {"factors": [{"mu": list(mu), "n": n} for mu, n in hws], "product": _rep_json(acc)}


def _cmd_hecke(cfg, d):
    if cfg.params.get("action", "mult") != "mult":
        raise CliError("unknown-command", f"unknown hecke action {cfg.params.get('action')!r}")
    mu = _dominant(d, parse_coweight(cfg.params["mu"]))
    lam = _dominant(d, parse_coweight(cfg.params["lambda"]), "lambda")
    sc = structure_constants(d, mu, lam)
    out: dict[str, Any] = {"basis": "c", "constants": _hecke_json(sc)}
    if cfg.params.get("oracle"):
        if not (d.name or "").startswith("GL") or d.name != f"GL{d.rank}":
            raise CliError("bad-config", "the lattice oracle is available for GL_n only")
        if not cfg.qs:
            raise CliError("bad-config", "--oracle needs --q")
        oracle = {}
        agree = True
        for q in cfg.qs:
            try:
                counts = oracle_structure_constants(d.rank, mu, lam, q)
            except OracleError as e:
                raise CliError("oracle", str(e)) from None
            oracle[str(q)] = {fmt_vec(nu): c for nu, c in counts.items()}
            ev = {nu: v for nu, v in sc.evaluate_q(q).items() if v}
            agree &= ev == {nu: c for nu, c in counts.items()}
        out["oracle"] = oracle
        out["agree"] = agree
    return out


def _cmd_convolve_ic(cfg, d):
    ics = [parse_ic(t) for t in cfg.params.get("ic") or []]
    if not ics:
        raise CliError("bad-config", "give at least one --ic")
    acc = None
    for mu, n in ics:
        a = K0Element({(_dominant(d, mu), n): 1})
        acc = a if acc is None else k0_convolve(d, acc, a)
    out: dict[str, Any] = {"product": acc.to_json()}
    if cfg.params.get("trace"):
        out["trace"] = {"basis": "c", "constants": _hecke_json(trace_frobenius(d, acc))}
    return out


def _cmd_satake(cfg, d):
    mu = _dominant(d, parse_coweight(cfg.params["mu"]))
    return {
        "mu": list(mu),
        "satake_c": _rep_json(satake_transform(d, HeckeElement.c(mu))),
        "ic_function": _hecke_json(ic_function(d, mu)),
    }


def _cmd_verify(cfg, d):
    qs = cfg.qs or (2, 3, 5)
    for q in qs:
        try:
            prime_power(q)
        except OracleError as e:
            raise CliError("oracle", str(e)) from None
    try:
        checks = suite_checks(cfg.params.get("suite", "satake"), d, qs)
    except KeyError as e:
        raise CliError("bad-config", str(e.args[0])) from None
    return emit_verification_report(run_suite(checks, cfg.threads))


_DISPATCH = {
    "dual-group": _cmd_dual_group,
    "strata": _cmd_strata,
    "qanalog": _cmd_qanalog,
    "tensor": _cmd_tensor,
    "hecke": _cmd_hecke,
    "convolve-ic": _cmd_convolve_ic,
    "satake": _cmd_satake,
    "verify": _cmd_verify,
}


def run_command(cfg: RunConfig) -> dict:
    """Run one command and return its report document."""
    if cfg.command == "verify" and not cfg.group:
        d = None
    else:
        d = _datum(cfg)
    try:
        result = _DISPATCH[cfg.command](cfg, d)
    except (RootDatumError, RepError, AffineWeylError) as e:
        raise CliError("invalid-input", str(e)) from None
    except OracleError as e:
        raise CliError("oracle", str(e)) from None
    ok = result.get("ok", True) if isinstance(result, dict) else True
    return {"command": cfg.command, "group": d.name if d else None, "ok": ok, "result": result}


# --- rendering ------------------------------------------------------------------------


def render(doc: dict, mode: str) -> str:
    result = doc["result"]
    if mode == "dot":
        if "_dot" not in result:
            raise CliError("bad-config", f"--dot is not available for {doc['command']}")
        return result["_dot"]
    clean = {k: v for k, v in result.items() if not k.startswith("_")}
    if mode == "json":
        return json.dumps(dict(doc, result=clean), sort_keys=True, indent=2) + "\n"
    return _render_table(doc["command"], doc["group"], clean)


def _render_table(command: str, group, result: dict) -> str:
    lines = [f"{command} [{group}]" if group else command]
    if command == "verify":
        for c in result["checks"]:
            mark = "PASS" if c["ok"] else "FAIL"
            lines.append(f"  {mark}  {c['name']}  ({c['n_compared']} comparisons)")
            if c["counterexample"]:
                lines.append(f"        counterexample: {json.dumps(c['counterexample'], sort_keys=True)}")
        lines.append(f"{result['n_checks'] - result['n_failed']}/{result['n_checks']} checks passed")
    elif command == "strata":
        for s in result["strata"]:
            covers = ", ".join(s["covers"]) or "-"
            lines.append(f"  {s['label']:>16}  dim {s['dim']}  covers {covers}")
    else:
        for k in sorted(result):
            lines.append(f"  {k}: {json.dumps(result[k], sort_keys=True)}")
    return "\n".join(lines) + "\n"


# --- argparse ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="preset name (GL2, SL3, PGL2xGm, Sp4, SO5, ...) or root datum JSON file")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--json", action="store_true", help="JSON output")
    mode.add_argument("--dot", action="store_true", help="Graphviz output (strata)")
    common.add_argument("--bound", type=int, help="length/dimension bound")
    common.add_argument("--q", help="comma-separated prime powers")
    common.add_argument("--threads", type=int, default=1)

    p = argparse.ArgumentParser(prog="motivic-satake", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dual-group", parents=[common])
    s.add_argument("--extended", action="store_true")

    s = sub.add_parser("strata", parents=[common])
    s.add_argument("--facet", help="iwahori, hyperspecial or labels like 0,1")
    s.add_argument("--stratify", help="facet of the stratifying parahoric (default: --facet)")
    s.add_argument("--omega", help='translations picking Omega-classes, e.g. "(1,0);(1,1)"')

    s = sub.add_parser("qanalog", parents=[common])
    s.add_argument("--mu", required=True)
    s.add_argument("--lambda", dest="lam", required=True)

    s = sub.add_parser("tensor", parents=[common])
    s.add_argument("--hw", action="append", help='"mu=(2);n=0", repeatable')

    s = sub.add_parser("hecke", parents=[common])
    s.add_argument("action", choices=["mult"])
    s.add_argument("--mu", required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--oracle", action="store_true")

    s = sub.add_parser("convolve-ic", parents=[common])
    s.add_argument("--ic", action="append", help='"(1,0);0", repeatable')
    s.add_argument("--trace", action="store_true")

    s = sub.add_parser("satake", parents=[common])
    s.add_argument("--mu", required=True)

    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--suite", default="satake", help="satake, duality, strata, rep, all, empty")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = {}
    for key in ("extended", "facet", "stratify", "omega", "mu", "hw", "action", "oracle", "ic", "trace", "suite"):
        if hasattr(ns, key):
            params[key] = getattr(ns, key)
    if hasattr(ns, "lam"):
        params["lambda"] = ns.lam
    output = "json" if ns.json else "dot" if ns.dot else "table"
    return RunConfig(ns.command, ns.group, params, output, parse_qs(ns.q), ns.bound, ns.threads)


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        doc = run_command(cfg)
        sys.stdout.write(render(doc, cfg.output))
    except CliError as e:
        err = {"error": {"kind": e.kind, "message": str(e)}}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return 2
    return 0 if doc["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
