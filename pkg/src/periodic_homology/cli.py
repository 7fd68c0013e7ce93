"""Command-line front end.

Exit status: 0 on success (including verdicts such as "obstructed"),
1 on invalid input, 2 when a resource budget is exhausted.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from . import corpus
from .cube import action_data, standard_sign
from .diagram import Diagram, DiagramError, PeriodicDiagram, build_periodic, parse_pd, parse_tangle
from .khcomplex import (FrobeniusSpec, build_complex, eigenspace_homology,
                        homology_bigraded, lee_gornik, periodic_complexes, s_invariant)
from .periodic import (SkeinBicomplex, check_obstruction, check_verification, difference_polys,
                       e1_page, equivariant_lee, lee_generators)
from .skeinpoly import BudgetExceeded, homfly, rt

CACHE_ENV = "PERIODIC_HOMOLOGY_CACHE"
MAX_HOMOLOGY_CROSSINGS = 14
SCHEMA_VERSION = 1


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- inputs

def _text_or_file(value):
    p = Path(value)
    if p.is_file():
        return p.read_text()
    return value


def _canonical_tangle(text):
    t = parse_tangle(text)
    toks = sorted("X[%d,%d,%d,%d]" % q for q in t.quads)
    return " ".join(toks + [f"L[{e}]" for e in t.left] + [f"R[{e}]" for e in t.right])


def load_input(args):
    """(diagram or periodic diagram, canonical description for the cache)."""
    if args.tangle:
        if not args.period:
            raise InputError("--tangle needs --period")
        text = _text_or_file(args.tangle)
        return build_periodic(text, args.period), {"tangle": _canonical_tangle(text), "period": args.period}
    if args.pd:
        d = parse_pd(_text_or_file(args.pd))
        return d, {"pd": d.canonical_pd()}
    if args.knot:
        if args.knot in corpus.PERIODIC or args.knot.startswith("mirror:"):
            return corpus.periodic(args.knot), {"knot": args.knot}
        return corpus.diagram(args.knot), {"knot": args.knot}
    raise InputError("give a diagram with --pd, --tangle/--period or --knot")


def _plain(x):
    return x.base if isinstance(x, PeriodicDiagram) else x


def _periodic(x):
    if not isinstance(x, PeriodicDiagram):
        raise InputError("this command needs a periodic diagram (--tangle with --period, or a periodic --knot)")
    return x


def _guard(d: Diagram):
    if d.n_crossings > MAX_HOMOLOGY_CROSSINGS:
        raise BudgetExceeded(f"{d.n_crossings} crossings exceed the homology budget {MAX_HOMOLOGY_CROSSINGS}")


# ---------------------------------------------------------------- cache

def cache_key(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_dir(args):
    if args.cache_dir:
        return Path(args.cache_dir)
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def cache_load(directory, key):
    if directory is None:
        return None
    p = Path(directory) / f"{key}.json"
    if not p.is_file():
        return None
    return json.loads(p.read_text())


def cache_store(directory, key, obj):
    if directory is None:
        return
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(obj, fh, sort_keys=True)
    os.replace(tmp, directory / f"{key}.json")


# ---------------------------------------------------------------- commands

def cmd_compute_homology(x, args):
    d = _plain(x)
    _guard(d)
    if args.spec == "generic":
        ss = lee_gornik(build_complex(d, FrobeniusSpec.generic()))
        return {"spec": "generic", "e1": ss.page(1).to_json(), "e_infinity": ss.e_infinity().to_json(),
                "r_polys": {str(k): r.to_json() for k, r in ss.r_polys().items()}}
    hom = homology_bigraded(build_complex(d))
    return {"spec": "singular", "homology": hom.to_json(), "poincare": hom.poincare().to_text()}


def cmd_compute_equivariant(x, args):
    pd = _periodic(x)
    _guard(pd.base)
    pc = periodic_complexes(pd, generic=False)
    eq = eigenspace_homology(pc.singular, pc.G, pd.m)
    parts = {str(d): eq.krp(d).to_text() for d in sorted({eq.order_of(j) for j in range(pd.m)})}
    return {"m": pd.m, "eigenspaces": eq.to_json(), "krp_parts": parts,
            "krp": eq.total.poincare().to_text(),
            "decomposition_holds": eq.decomposition_sum() == eq.total.poincare()}


def cmd_compute_rt(x, args):
    d = _plain(x)
    poly = rt(homfly(d, rng=args.seed), args.N, reduced=not args.unreduced)
    return {"N": args.N, "normalization": "unreduced" if args.unreduced else "reduced",
            "rt": poly.to_text(), "pretty": poly.pretty()}


def cmd_compute_lee(x, args):
    d = _plain(x)
    _guard(d)
    out = {"N": args.N, "generators": [{"coloring": list(c), "degree": g} for c, g in lee_generators(d, args.N)]}
    if args.N == 2:
        ss = lee_gornik(build_complex(d, FrobeniusSpec.generic()))
        out["e_infinity"] = ss.e_infinity().to_json()
        out["s"] = s_invariant(build_complex(d, FrobeniusSpec.generic())) if d.n_components() == 1 else None
    if isinstance(x, PeriodicDiagram):
        out["equivariant"] = equivariant_lee(x, args.N).to_json()
    return out


def cmd_diff_polynomials(x, args):
    pd = _periodic(x)
    _guard(pd.base)
    return difference_polys(pd, args.p, args.ell).to_json()


def cmd_skein_ss(x, args):
    pd = _periodic(x)
    _guard(pd.base)
    bc = SkeinBicomplex(pd, args.orbit)
    hom = bc.verify_totalization()
    bc.verify_equivariant()
    u = args.u if args.u is not None else 0
    rep = e1_page(pd, args.orbit, u, bc)
    return {"orbit": list(bc.X), "classes": [c.to_json() for c in bc.classes],
            "totalization_homology": hom.to_json(), "e1": rep.to_json()}


def cmd_check_periodicity(x, args):
    if isinstance(x, PeriodicDiagram) and args.p is None:
        if args.N != 2:
            raise InputError("verification mode supports --N 2 only")
        _guard(x.base)
        return check_verification(x).to_json()
    if args.p is None or args.ell is None:
        raise InputError("obstruction mode needs --p and --ell")
    return check_obstruction(_plain(x), args.N, args.p, args.ell).to_json()


def cmd_dump_signs(x, args):
    d = _plain(x)
    _guard(d)
    s = standard_sign(d)
    out = {"sign": s.to_json()}
    if isinstance(x, PeriodicDiagram):
        ad = action_data(x, s, flip_t0=args.flip_t0)
        out["t"] = ad.t.to_json()
        out["flip_t0"] = args.flip_t0
    return out


COMMANDS = {
    "compute-homology": cmd_compute_homology,
    "compute-equivariant": cmd_compute_equivariant,
    "compute-rt": cmd_compute_rt,
    "compute-lee": cmd_compute_lee,
    "diff-polynomials": cmd_diff_polynomials,
    "skein-ss": cmd_skein_ss,
    "check-periodicity": cmd_check_periodicity,
    "dump-signs": cmd_dump_signs,
}

# parameters that enter each command's result (and so its cache key)
_PARAMS = {
    "compute-homology": ("N", "spec"),
    "compute-equivariant": ("N",),
    "compute-rt": ("N", "unreduced"),
    "compute-lee": ("N",),
    "diff-polynomials": ("N", "p", "ell"),
    "skein-ss": ("N", "orbit", "u"),
    "check-periodicity": ("N", "p", "ell"),
    "dump-signs": ("flip_t0",),
}

# homology is implemented for N = 2 only
_N2_ONLY = {"compute-homology", "compute-equivariant", "diff-polynomials", "skein-ss"}


# ---------------------------------------------------------------- rendering

def _table_dims(obj):
    lines = ["   h    q  dim"]
    for e in obj["entries"]:
        extra = f"  j={e['j']}" if "j" in e else ""
        lines.append(f"{e['h']:4d} {e['q']:4d} {e['dim']:4d}{extra}")
    return lines


def render_table(command, result):
    if command == "compute-homology" and "homology" in result:
        return "\n".join(_table_dims(result["homology"]) + [f"KRP = {result['poincare']}"])
    if command == "compute-rt":
        return result["pretty"]
    if command == "check-periodicity":
        lines = [result["verdict"]]
        for k, v in sorted(result["verdicts"].items()):
            lines.append(f"  {k}: {'ok' if v else 'failed'}")
        lines += [f"  warning: {w}" for w in result["warnings"]]
        return "\n".join(lines)
    if command == "compute-equivariant":
        lines = [f"m = {result['m']}"] + [f"  KRP_{d} = {p}" for d, p in result["krp_parts"].items()]
        return "\n".join(lines)
    if command == "diff-polynomials":
        return "\n".join([f"RT_{j} = {p}" for j, p in result["rt"].items()]
                         + [f"DP_{j} = {p}" for j, p in result["dp"].items()])
    return json.dumps(result, indent=2, sort_keys=True)


# ---------------------------------------------------------------- entry point

def build_parser():
    ap = argparse.ArgumentParser(prog="periodic-homology",
                                 description="Equivariant N=2 link homology and RT polynomials of periodic links.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--pd", help="PD code, inline or a file")
    ap.add_argument("--tangle", help="quotient tangle, inline or a file")
    ap.add_argument("--period", type=int, help="period m of the tangle")
    ap.add_argument("--knot", help="built-in diagram name")
    ap.add_argument("--N", type=int, default=2)
    ap.add_argument("--p", type=int)
    ap.add_argument("--ell", type=int)
    ap.add_argument("--orbit", type=int, default=0)
    ap.add_argument("--u", type=int)
    ap.add_argument("--spec", choices=("singular", "generic"), default="singular")
    ap.add_argument("--unreduced", action="store_true")
    ap.add_argument("--flip-t0", action="store_true", help="flip the normalization of t (debug)")
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--cache-dir")
    ap.add_argument("--seed", type=int)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.N < 2:
            raise InputError("--N must be at least 2")
        if args.command in _N2_ONLY and args.N != 2:
            raise InputError(f"{args.command} supports --N 2 only")
        x, desc = load_input(args)
        payload = {"command": args.command, "input": desc,
                   "params": {k: getattr(args, k) for k in _PARAMS[args.command]}}
        key = cache_key(payload)
        directory = cache_dir(args)
        report = cache_load(directory, key)
        if report is None:
            result = COMMANDS[args.command](x, args)
            report = {"command": args.command, "schema_version": SCHEMA_VERSION,
                      "input": desc, "params": payload["params"], "result": result}
            cache_store(directory, key, report)
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (InputError, DiagramError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        out.write(render_table(args.command, report["result"]) + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
