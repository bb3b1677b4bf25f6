"""``slarc`` command-line interface."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from math import comb
from pathlib import Path

from . import __version__
from . import aplus, functors as fn, grothendieck as gr, homalg, linalg as la, render, resolutions as rs, verify
from .algebra import FLAVORS, AlgebraElement, FlavorError, multiply
from .cache import Cache, cache_key
from .diagram import Diagram, DiagramError, enumerate_basis
from .modules import Cabled, ModuleError, cokernel, projective, simple, standard, width_truncation

log = logging.getLogger("slarc")


class UsageError(ValueError):
    """Malformed input: reported with exit status 2."""


class Failed(Exception):
    """A verification came out false: exit status 1 after printing the payload."""

    def __init__(self, payload):
        self.payload = payload


# -- argument parsing ---------------------------------------------------------------------------

def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--field", default=d("q"), help="ground field: q or fp:<prime> (default q)")
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable JSON output")
    p.add_argument("--max-weight", type=int, default=d(None), help="largest weight materialized")
    p.add_argument("--cache-dir", default=d(None), help="cache directory (or set SLARC_CACHE)")
    p.add_argument("--no-cache", action="store_true", default=d(False), help="bypass the cache")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slarc", description="Slarc diagram algebras: compute and verify.")
    parser.add_argument("--version", action="version", version=f"slarc {__version__}")
    _globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def cmd(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = cmd("basis", "list the diagrams of _mB_n")
    p.add_argument("--left", type=int, required=True)
    p.add_argument("--right", type=int, required=True)
    p.add_argument("--width", type=int)

    p = cmd("mul", "multiply two elements given as JSON files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--flavor", choices=FLAVORS, default=None)

    p = cmd("module", "module data")
    p.add_argument("action", choices=["dims"])
    p.add_argument("--kind", required=True, choices=["projective", "standard", "simple", "truncation"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="truncation width")

    p = cmd("resolve", "build a resolution")
    p.add_argument("kind", choices=["standard", "simple"])
    p.add_argument("n", type=int)
    p.add_argument("--by", choices=["standard", "projective"], default="projective")
    p.add_argument("--t-max", type=int, default=4)
    p.add_argument("--verify", action="store_true")

    p = cmd("ext", "Ext dimensions: ext standard 3 standard 1")
    p.add_argument("source_kind", choices=["standard", "simple"])
    p.add_argument("source", type=int)
    p.add_argument("target_kind", choices=["standard", "simple"])
    p.add_argument("target", type=int)
    p.add_argument("--t-max", type=int, default=8)

    p = cmd("cartan", "Cartan matrix from basis counts")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--check-factorization", action="store_true")

    p = cmd("bgg", "BGG reciprocity table")
    p.add_argument("--max", type=int, required=True)

    p = cmd("functor", "apply F_k, Res or Ind")
    p.add_argument("name", choices=["fk", "res", "ind"])
    p.add_argument("--apply", required=True, help="kind:n, e.g. standard:3")
    p.add_argument("--k", type=int, default=1)

    p = cmd("cable", "cabled standard or simple module")
    p.add_argument("kind", choices=["standard", "simple", "projective"])
    p.add_argument("n", type=int)
    p.add_argument("--k", type=int, required=True)

    p = cmd("k0", "Grothendieck group arithmetic")
    p.add_argument("action", choices=["convert", "op", "inner"])
    p.add_argument("polys", nargs="+")
    p.add_argument("--to", choices=["standard", "projective"], default="standard")
    p.add_argument("--name", choices=["res", "ind", "fk", "cable"])
    p.add_argument("--k", type=int, default=1)

    p = cmd("aplus", "plus-flavor structure")
    p.add_argument("action", choices=["decompose", "homtable", "k0"])
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--max", type=int, default=4)

    p = cmd("render", "draw a diagram given as JSON (file path or '-')")
    p.add_argument("diagram")
    p.add_argument("--svg", action="store_true")

    p = cmd("verify", "run check suites")
    p.add_argument("suite", nargs="?", default="all", choices=["all", *sorted(verify.SUITES)])
    p.add_argument("--max-n", type=int, default=4)
    return parser


# -- helpers ----------------------------------------------------------------------------------

def _read_json(text: str):
    try:
        text = sys.stdin.read() if text == "-" else Path(text).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {text}: {exc}") from exc
    try:
        return json.loads(text)
    except ValueError as exc:
        raise UsageError(f"{text} is not valid JSON: {exc}") from exc


def _module_arg(text: str):
    try:
        kind, n = text.split(":")
        n = int(n)
    except ValueError as exc:
        raise UsageError(f"module must look like standard:3, got {text!r}") from exc
    if n < 0 or kind not in ("projective", "standard", "simple"):
        raise UsageError(f"unknown module {text!r}")
    return kind, n


def _dims_payload(dims: list[int]) -> dict:
    return {"weights": [str(p) for p in range(len(dims))], "dims": [str(d) for d in dims]}


def _poly(text: str) -> gr.PolyClass:
    try:
        return gr.parse_poly(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _need(value, name):
    if value is None:
        raise UsageError(f"{name} is required here")
    if value < 0:
        raise UsageError(f"{name} must be nonnegative")
    return value


# -- commands -----------------------------------------------------------------------------------

def cmd_basis(a):
    if a.left < 0 or a.right < 0:
        raise UsageError("endpoint counts must be nonnegative")
    ds = enumerate_basis(a.left, a.right, width=a.width) if a.width is not None else enumerate_basis(a.left, a.right)
    return {"left": str(a.left), "right": str(a.right), "count": str(len(ds)), "diagrams": [d.to_json() for d in ds]}


def cmd_mul(a):
    try:
        x = AlgebraElement.from_json(_read_json(a.a), a.flavor)
        y = AlgebraElement.from_json(_read_json(a.b), a.flavor)
        return multiply(x, y).to_json()
    except (DiagramError, FlavorError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_module(a):
    W = a.max_weight if a.max_weight is not None else 8
    n = _need(a.n, "--n")
    if a.kind == "projective":
        M = projective(n)
    elif a.kind == "standard":
        M = standard(n)
    elif a.kind == "simple":
        M = simple(n)
    else:
        M = width_truncation(n, _need(a.k, "--k"))
    return {"module": M.descriptor, **_dims_payload(M.dims(W))}


def cmd_resolve(a):
    W = a.max_weight if a.max_weight is not None else 6
    n = _need(a.n, "n")
    if a.kind == "standard":
        C = rs.resolve_standard(n)
        aug = rs.standard_augmentation(n)
    elif a.by == "standard":
        C = rs.resolve_simple_by_standard(n, _need(a.t_max, "--t-max"))
        aug = rs.simple_augmentation(n)
    else:
        C = rs.resolve_simple_projective(n, _need(a.t_max, "--t-max"))
        aug = rs.projective_simple_augmentation(n)
    out = {"complex": C.to_json()}
    if a.verify:
        d2 = C.verify_d2(W)
        ex = rs.augmentation_report(C, aug, W, window=a.kind == "simple")
        out["verification"] = verify.stringify({
            "d2": d2["ok"], "d2_mode": d2["mode"], "exact": ex["ok"],
            "homology": {str(w["weight"]): w["homology"] for w in ex["weights"]},
            "linear": rs.check_linearity(C) if C.is_projective else None,
        })
        if not (d2["ok"] and ex["ok"]):
            raise Failed(out)
    return out


def cmd_ext(a):
    s, t = _need(a.source, "source"), _need(a.target, "target")
    if a.source_kind == "standard" and a.target_kind == "standard":
        table = homalg.ext_standard_standard(s, t)
    elif a.source_kind == "standard":
        table = homalg.ext_standard_simple(s, t)
    elif a.target_kind == "simple" and t == 0:
        table = homalg.ext_simple_simple_L0(s, _need(a.t_max, "--t-max"))
    else:
        raise UsageError("supported: standard/standard, standard/simple, simple n simple 0")
    out = table.to_json()
    if not table.match or out.get("induced_maps_zero") is False:
        raise Failed(out)
    return out


def cmd_cartan(a):
    N = _need(a.size, "--size")
    C = homalg.cartan_matrix(N)
    out = {"size": str(N), "cartan": verify.stringify(C)}
    if a.check_factorization:
        m = homalg.multiplicity_matrix(N)
        ok = C == homalg.mat_mul(m, homalg.transpose(m))
        out["multiplicity"] = verify.stringify(m)
        out["factorization"] = ok
        if not ok:
            raise Failed(out)
    return out


def cmd_bgg(a):
    N = _need(a.max, "--max") + 1
    rep = homalg.bgg_check(N)
    out = verify.stringify({k: rep[k] for k in ("size", "bgg_ok", "factorization_ok", "multiplicity", "cartan")})
    if not rep["ok"]:
        raise Failed(out)
    return out


def cmd_functor(a):
    W = a.max_weight if a.max_weight is not None else 6
    kind, n = _module_arg(a.apply)
    if a.name == "fk":
        k = _need(a.k, "--k")
        if kind == "projective":
            M = fn.apply_Fk(projective(n), k)
            return {"input": f"P_{n}", "output": M.descriptor, **_dims_payload(M.dims(W))}
        if kind != "standard":
            raise UsageError("F_k is applied to projective or standard inputs")
        rep = fn.derived_Fk_standard(n, k, W)
        out = verify.stringify({"input": f"M_{n}", "k": k, "output": f"M_{n}" if rep["h0_is"] == "M_n" else rep["h0_is"], "homology": rep["homology"],
                                "ok": rep["ok"]})
        if not rep["ok"]:
            raise Failed(out)
        return out
    if a.name == "res":
        M = {"projective": projective, "standard": standard, "simple": simple}[kind](n)
        R = fn.restrict(M)
        iso = {"projective": fn.res_projective_iso, "standard": fn.res_standard_iso, "simple": fn.res_simple_iso}[kind](n)
        ok = True if iso is None else iso.is_equivariant(W) and iso.is_iso(W)
        target = "0" if iso is None else iso.target.descriptor
        out = {"input": M.descriptor, "output": R.descriptor, "isomorphic_to": target, "iso_verified": ok,
               **_dims_payload(R.dims(W))}
        if not ok:
            raise Failed(out)
        return out
    M = {"projective": projective, "standard": standard, "simple": simple}[kind](n)
    pres = fn.induce(M.presentation())
    ind = cokernel(pres, f"Ind({M.descriptor})")
    out = {
        "input": M.descriptor,
        "presentation": {"targets": [str(t) for t in pres.targets],
                         "relations": [{"source": str(m), "row": [e.to_json() for e in row]}
                                       for m, row in pres.relations]},
        **_dims_payload(ind.dims(W)),
    }
    if kind == "standard":
        ses = fn.ind_standard_ses(n, W)
        out["ses_verified"] = ses["ok"]
        if not ses["ok"]:
            raise Failed(out)
    return out


def cmd_cable(a):
    W = a.max_weight if a.max_weight is not None else 5
    n, k = _need(a.n, "n"), a.k
    if k is None or k < 1:
        raise UsageError("--k must be a positive integer")
    M = {"projective": projective, "standard": standard, "simple": simple}[a.kind](n)
    C = Cabled(M, k)
    out = {"input": M.descriptor, "k": str(k), **_dims_payload(C.dims(W))}
    if a.kind == "standard":
        pred = fn.cable_standard_prediction(n, k)
        out["decomposition"] = {f"M_{i}": str(c) for i, c in sorted(pred.items())}
        ok = C.dims(W) == [sum(c * comb(p, i) for i, c in pred.items()) for p in range(W + 1)]
        out["dims_match"] = ok
        if not ok:
            raise Failed(out)
    return out


def cmd_k0(a):
    fs = [_poly(t) for t in a.polys]
    if a.action == "convert":
        if len(fs) != 1:
            raise UsageError("convert takes one polynomial")
        g = fs[0].to(a.to)
        return {"input": str(fs[0]), "basis": a.to, "class": str(g), **g.to_json()}
    if a.action == "inner":
        if len(fs) != 2:
            raise UsageError("inner takes two polynomials")
        return {"f": str(fs[0]), "g": str(fs[1]), "inner": str(gr.inner_product(fs[0], fs[1]))}
    if len(fs) != 1 or a.name is None:
        raise UsageError("op takes --name and one polynomial")
    f = fs[0]
    if a.name in ("fk", "cable") and (a.k is None or a.k < (1 if a.name == "cable" else 0)):
        raise UsageError("--k is out of range")
    g = {"res": lambda: gr.op_Res(f), "ind": lambda: gr.op_Ind(f),
         "fk": lambda: gr.op_Fk(f, a.k), "cable": lambda: gr.op_cable(f, a.k)}[a.name]()
    return {"input": str(f), "op": a.name, "result": str(g), "result_standard": str(g.to("standard"))}


def cmd_aplus(a):
    if a.action == "homtable":
        N = _need(a.max, "--max")
        T = aplus.hom_table(N)
        ok = T == [[int(i == j) for j in range(N + 1)] for i in range(N + 1)]
        out = {"max": str(N), "table": verify.stringify(T), "delta": ok}
        if not ok:
            raise Failed(out)
        return out
    n = _need(a.n, "n")
    if a.action == "decompose":
        d = aplus.decompose_projective_plus(n)
        return d.to_json()
    c = aplus.k0_plus_class(n)
    return {"n": str(n), "class": str(c), "standard_basis": str(c.to("standard"))}


def cmd_render(a):
    try:
        d = Diagram.from_json(_read_json(a.diagram))
    except DiagramError as exc:
        raise UsageError(str(exc)) from exc
    if a.svg:
        return {"svg": render.render_svg(d)}
    return {"text": render.render_text(d)}


def cmd_verify(a):
    W = a.max_weight if a.max_weight is not None else 8
    if a.max_n < 0 or W < 0:
        raise UsageError("bounds must be nonnegative")
    rep = verify.run_suite(a.suite, a.max_n, W)
    out = rep.to_json()
    if not rep.ok:
        raise Failed(out)
    return out


COMMANDS = {
    "basis": cmd_basis, "mul": cmd_mul, "module": cmd_module, "resolve": cmd_resolve, "ext": cmd_ext,
    "cartan": cmd_cartan, "bgg": cmd_bgg, "functor": cmd_functor, "cable": cmd_cable, "k0": cmd_k0,
    "aplus": cmd_aplus, "render": cmd_render, "verify": cmd_verify,
}

# commands whose results are worth caching
CACHED = {"resolve", "ext", "cartan", "bgg", "functor", "cable", "aplus", "verify"}


# -- output ---------------------------------------------------------------------------------------

def dump_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def human(command: str, payload) -> str:
    if command == "render":
        return (payload.get("svg") or payload.get("text")) + "\n"
    if command == "basis":
        lines = [f"{payload['count']} diagrams in _{payload['left']}B_{payload['right']}"]
        lines += [str(Diagram.from_json(d)) for d in payload["diagrams"]]
        return "\n".join(lines) + "\n"
    if command == "verify":
        lines = [f"{c['status'].upper():4}  {c['id']}" for c in payload["checks"]]
        s = payload["summary"]
        lines.append(f"{s['passed']}/{s['total']} passed ({payload['field']})")
        return "\n".join(lines) + "\n"
    if command == "resolve":
        C = payload["complex"]
        lines = [C["name"]]
        for t, summands in C["terms"].items():
            mods = ", ".join(s["module"] for s in summands)
            lines.append(f"  {t}: {mods}")
        if "verification" in payload:
            v = payload["verification"]
            lines.append(f"d^2 = 0: {v['d2']}   exact: {v['exact']}")
            for w, h in v["homology"].items():
                lines.append(f"  weight {w}: homology {' '.join(h)}")
        return "\n".join(lines) + "\n"
    return _flat(payload)


def _flat(x, indent: str = "") -> str:
    if isinstance(x, dict):
        out = []
        for k, v in x.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(e, str) for e in (v if isinstance(v, list) else [])):
                out.append(f"{indent}{k}:")
                out.append(_flat(v, indent + "  ").rstrip("\n"))
            else:
                out.append(f"{indent}{k}: {' '.join(v) if isinstance(v, list) else v}")
        return "\n".join(out) + "\n"
    if isinstance(x, list):
        return "\n".join(indent + (" ".join(map(str, e)) if isinstance(e, list) else str(e)) for e in x) + "\n"
    return f"{indent}{x}\n"


# -- entry point -----------------------------------------------------------------------------------

def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        field = la.Field.parse(args.field)
    except ValueError as exc:
        print(f"slarc: error: {exc}", file=stderr)
        return 2
    cache = Cache.from_settings(args.cache_dir, args.no_cache)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "cache_dir", "no_cache", "field")}
    start = time.perf_counter()
    status, hit = 0, False
    key = cache_key(args.command, params, field.tag, __version__)
    with la.use_field(field):
        cached = cache.get(key) if args.command in CACHED else None
        if cached is not None:
            payload, status, hit = cached["payload"], cached["status"], True
        else:
            try:
                payload = COMMANDS[args.command](args)
            except Failed as exc:
                payload, status = exc.payload, 1
            except (UsageError, DiagramError, ModuleError, FlavorError) as exc:
                print(f"slarc: error: {exc}", file=stderr)
                return 2
            if args.command in CACHED:
                cache.put(key, {"payload": payload, "status": status})
    stdout.write(dump_json(payload) if args.json else human(args.command, payload))
    elapsed = time.perf_counter() - start
    print(f"slarc: {args.command} finished in {elapsed:.2f}s{' (cache hit)' if hit else ''}", file=stderr)
    return status


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="slarc: %(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
