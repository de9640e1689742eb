"""Batch front-end: parse space/polytope files, dispatch, emit reports.

Exit codes: 0 success, 1 verification failure, 2 input error.  Reports are
deterministic for identical inputs and seed; rationals are serialized as
"p/q" strings so no floating point appears anywhere.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys

from . import __version__
from .algebra import Polynomial, parse_rational
from .diffops import evaluation_image, preserving_weight_space, weight_window
from .jets import (
    GENERIC,
    RANDOM_TRIALS,
    SYMBOLIC_THRESHOLD,
    DependentBasisError,
    SubspaceV,
    n_inj_at,
    weierstrass_minors,
    weierstrass_scan,
)
from .toric import (
    BasisConditionError,
    DegeneratePolytopeError,
    NonSaturatedInputError,
    UnsupportedPolytopeError,
    polytope_build,
    toric_report,
)
from .verify import verify_hirzebruch, verify_veronese

SEED_ENV_VAR = "JETORDERS_SEED"


class SpaceFileError(ValueError):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _fail(code, message):
    raise SpaceFileError(code, message)


def parse_space(text):
    """Parse a space document into a validated SubspaceV.

    Document: {"nvars": n, "monomials": [[e..], ...]} or
    {"nvars": n, "polynomials": [{"[e..]": "p/q", ...}, ...]}, plus the
    optional keys "seed", "symbolic_threshold", "random_trials",
    "very_ample_bound".
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail("E_SCHEMA", f"not valid JSON: {exc}")
    if not isinstance(doc, dict) or "nvars" not in doc:
        _fail("E_SCHEMA", "document must be an object with an 'nvars' key")
    nvars = doc["nvars"]
    if not isinstance(nvars, int) or nvars < 1:
        _fail("E_SCHEMA", "'nvars' must be a positive integer")

    if ("monomials" in doc) == ("polynomials" in doc):
        _fail("E_SCHEMA", "give exactly one of 'monomials' or 'polynomials'")

    if "monomials" in doc:
        seen = set()
        points = []
        for m in doc["monomials"]:
            m = _parse_exponent(m, nvars)
            if m in seen:
                _fail("E_DUP_MONOMIAL", f"duplicate monomial {list(m)}")
            seen.add(m)
            points.append(m)
        if not points:
            _fail("E_SCHEMA", "'monomials' must be non-empty")
        try:
            return SubspaceV.from_monomials(nvars, points), doc
        except DependentBasisError as exc:
            _fail("E_DEPENDENT", str(exc))

    basis = []
    for entry in doc["polynomials"]:
        if not isinstance(entry, dict) or not entry:
            _fail("E_SCHEMA", "each polynomial must be a non-empty coefficient map")
        terms = {}
        for key, value in entry.items():
            try:
                exp = json.loads(key)
            except json.JSONDecodeError:
                _fail("E_SCHEMA", f"bad exponent key {key!r}")
            exp = _parse_exponent(exp, nvars)
            try:
                coeff = parse_rational(value)
            except ValueError:
                _fail("E_RATIONAL", f"bad rational {value!r}")
            terms[exp] = coeff
        basis.append(Polynomial(nvars, terms))
    try:
        return SubspaceV(nvars, basis), doc
    except DependentBasisError as exc:
        _fail("E_DEPENDENT", str(exc))


def _parse_exponent(value, nvars):
    if not isinstance(value, list) or len(value) != nvars:
        _fail("E_DIM", f"exponent {value!r} does not have {nvars} entries")
    out = []
    for e in value:
        if not isinstance(e, int):
            _fail("E_SCHEMA", f"exponent entry {e!r} is not an integer")
        if e < 0:
            _fail("E_NEG_EXPONENT", f"negative exponent in {value!r}")
        out.append(e)
    return tuple(out)


def serialize_space(V):
    """Inverse of parse_space: parse_space(serialize_space(V)) == V."""
    if V.is_monomial:
        doc = {"nvars": V.nvars, "monomials": [list(m) for m in V.monomial_points]}
    else:
        doc = {
            "nvars": V.nvars,
            "polynomials": [
                {json.dumps(list(e)): str(c) for e, c in p.items()} for p in V.basis
            ],
        }
    return json.dumps(doc, sort_keys=True)


def parse_polytope(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail("E_SCHEMA", f"not valid JSON: {exc}")
    if not isinstance(doc, dict) or not ({"points", "vertices"} & set(doc)):
        _fail("E_SCHEMA", "polytope document needs 'vertices' and/or 'points'")
    try:
        return polytope_build(points=doc.get("points"), vertices=doc.get("vertices"),
                              edges=doc.get("edges")), doc
    except (NonSaturatedInputError, UnsupportedPolytopeError, ValueError) as exc:
        _fail("E_POLYTOPE", str(exc))


def _parse_point(text, nvars):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != nvars:
        _fail("E_DIM", f"point {text!r} does not have {nvars} coordinates")
    try:
        return tuple(parse_rational(p) for p in parts)
    except ValueError as exc:
        _fail("E_RATIONAL", str(exc))


def _resolve_seed(args, doc):
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            _fail("E_SCHEMA", f"{SEED_ENV_VAR} must be an integer, got {env!r}")
    if doc and isinstance(doc.get("seed"), int):
        return doc["seed"]
    return 0


def _thresholds(doc):
    doc = doc or {}
    return {
        "symbolic_threshold": doc.get("symbolic_threshold", SYMBOLIC_THRESHOLD),
        "trials": doc.get("random_trials", RANDOM_TRIALS),
    }


def _emit(args, report):
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _print_text(report, indent=0)


def _print_text(value, indent, key=None):
    pad = "  " * indent
    label = f"{key}: " if key else ""
    if isinstance(value, dict):
        if key:
            print(f"{pad}{key}:")
        for k in value:
            _print_text(value[k], indent + (1 if key else 0), k)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        print(f"{pad}{label}")
        for item in value:
            _print_text(item, indent + 1)
    else:
        print(f"{pad}{label}{value}")


def _report_envelope(command, seed, inputs, result, methods=None):
    return {
        "command": command,
        "version": __version__,
        "seed": seed,
        "inputs": inputs,
        "methods": methods or [],
        "result": result,
    }


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_orders(args):
    V, doc = parse_space(_read(args.space))
    seed = _resolve_seed(args, doc)
    opts = _thresholds(doc)
    if args.generic == (args.at is not None):
        _fail("E_SCHEMA", "give exactly one of --at or --generic")
    if args.generic:
        rep = n_inj_at(V, GENERIC, seed=seed, **opts)
    else:
        point = _parse_point(args.at, V.nvars)
        rep = n_inj_at(V, point, seed=seed, **opts)
    out = _report_envelope("orders", seed, json.loads(serialize_space(V)),
                           rep.to_dict(), [rep.method])
    _emit(args, out)
    return 0


def _cmd_scan(args):
    V, doc = parse_space(_read(args.space))
    seed = _resolve_seed(args, doc)
    opts = _thresholds(doc)
    pts_doc = json.loads(_read(args.points))
    if not isinstance(pts_doc, dict) or "points" not in pts_doc:
        _fail("E_SCHEMA", "points document must be {\"points\": [[..], ..]}")
    points = []
    for p in pts_doc["points"]:
        if len(p) != V.nvars:
            _fail("E_DIM", f"point {p!r} does not have {V.nvars} coordinates")
        points.append(tuple(parse_rational(str(c)) for c in p))
    reports = weierstrass_scan(V, points, seed=seed, **opts)
    out = _report_envelope("scan", seed, json.loads(serialize_space(V)),
                           [r.to_dict() for r in reports],
                           sorted({r.method for r in reports}))
    _emit(args, out)
    return 0


def _cmd_minors(args):
    V, doc = parse_space(_read(args.space))
    seed = _resolve_seed(args, doc)
    opts = _thresholds(doc)
    rep = weierstrass_minors(V, seed=seed, cap=args.cap, **opts)
    result = {
        "order": rep.order,
        "total": rep.total,
        "truncated": rep.truncated,
        "minors": [str(m) for m in rep.minors],
    }
    out = _report_envelope("minors", seed, json.loads(serialize_space(V)), result)
    _emit(args, out)
    return 0


def _cmd_dv(args):
    V, doc = parse_space(_read(args.space))
    seed = _resolve_seed(args, doc)
    if not V.is_monomial:
        _fail("E_SCHEMA", "dv requires a monomial space (weight grading)")
    if args.weights is not None:
        w_bound = args.weights
        weights = sorted(
            w for w in _box_weights(V.nvars, w_bound)
        )
    else:
        weights = weight_window(V)
    table = []
    for w in weights:
        space = preserving_weight_space(V, w, args.order)
        table.append({
            "weight": list(w),
            "dim": space.dimension,
            "annihilator_dim": space.annihilator_dim,
            "basis": [str(op) for op in space.basis],
        })
    image = evaluation_image(V, args.order)
    result = {
        "order": args.order,
        "end_image_rank": image.rank,
        "end_dim": image.dim * image.dim,
        "irreducible": image.rank == image.dim * image.dim,
        "weights": table,
    }
    out = _report_envelope("dv", seed, json.loads(serialize_space(V)), result)
    _emit(args, out)
    return 0


def _box_weights(nvars, bound):
    return list(itertools.product(range(-bound, bound + 1), repeat=nvars))


def _cmd_toric(args):
    P, doc = parse_polytope(_read(args.polytope))
    seed = _resolve_seed(args, doc)
    rep = toric_report(P, seed=seed, with_orders=not args.no_orders,
                       very_ample_bound=(doc or {}).get("very_ample_bound", 10))
    inputs = {"points": [list(p) for p in P.points],
              "vertices": [list(v) for v in P.vertices]}
    out = _report_envelope("toric", seed, inputs, rep.to_dict())
    _emit(args, out)
    return 0


def _cmd_verify(args):
    seed = _resolve_seed(args, None)
    if args.family == "veronese":
        rep = verify_veronese(args.n, args.m, seed=seed)
    else:
        rep = verify_hirzebruch(args.r, args.k, args.l, seed=seed)
    if args.json:
        out = _report_envelope("verify", seed, rep.params, rep.to_dict())
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(rep.format_text())
    return 0 if rep.passed else 1


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        _fail("E_IO", f"cannot read {path}: {exc}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jetorders",
        description="Exact jet, Weierstrass and preserving-operator computations "
                    "for polynomial subspaces.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, space=True):
        if space:
            p.add_argument("--space", required=True, help="space document (JSON)")
        p.add_argument("--seed", type=int, default=None,
                       help=f"PRNG seed (default: ${SEED_ENV_VAR} or 0)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("orders", help="injectivity/jet orders at a point or generically")
    common(p)
    p.add_argument("--at", help="rational point, e.g. '1,2/3'")
    p.add_argument("--generic", action="store_true", help="orders at the generic point")
    p.set_defaults(func=_cmd_orders)

    p = sub.add_parser("scan", help="Weierstrass scan over a list of points")
    common(p)
    p.add_argument("--points", required=True, help="points document (JSON)")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("minors", help="maximal minors cutting out the Weierstrass locus")
    common(p)
    p.add_argument("--cap", type=int, default=200, help="truncation cap on the minor count")
    p.set_defaults(func=_cmd_minors)

    p = sub.add_parser("dv", help="weight spaces of preserving operators and the End(V) image")
    common(p)
    p.add_argument("--order", type=int, required=True, help="operator order bound")
    p.add_argument("--weights", type=int, default=None,
                   help="scan the weight box [-W, W]^n instead of P - P")
    p.set_defaults(func=_cmd_dv)

    p = sub.add_parser("toric", help="lattice-polytope invariant report")
    p.add_argument("--polytope", required=True, help="polytope document (JSON)")
    p.add_argument("--report", action="store_true", required=True)
    p.add_argument("--no-orders", action="store_true",
                   help="skip orbit orders (valid for non-smooth polytopes)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_toric)

    p = sub.add_parser("verify", help="known-answer family suites")
    fam = p.add_subparsers(dest="family", required=True)
    pv = fam.add_parser("veronese")
    pv.add_argument("--n", type=int, required=True)
    pv.add_argument("--m", type=int, required=True)
    ph = fam.add_parser("hirzebruch")
    ph.add_argument("--r", type=int, required=True)
    ph.add_argument("--k", type=int, required=True)
    ph.add_argument("--l", type=int, required=True)
    for px in (pv, ph):
        px.add_argument("--seed", type=int, default=None)
        px.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)
    pv.set_defaults(func=_cmd_verify)
    ph.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpaceFileError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except (DegeneratePolytopeError, BasisConditionError, NonSaturatedInputError,
            UnsupportedPolytopeError, DependentBasisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
