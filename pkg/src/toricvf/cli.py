"""Command-line front end: ``toricvf <group> <verb> [options]``.

Every verb prints a JSON report ``{status, payload, diagnostics, version}``
except ``surface sweep --format csv``, which prints bare CSV. Exit codes: 0
ok, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .adp import (
    AdpCertificate,
    build_certificate,
    decide_adp,
    invariant_subvariety,
    verify_certificate,
)
from .config import Config
from .errors import ToricError
from .fields import HomogeneousField, bracket, classify, vanishes_on_orbit_closure
from .lattice import cone, dual_cone
from .laurent import LaurentPolynomial, LaurentVectorField
from .surfaces import (
    CSV_HEADER,
    decide_lie_membership,
    empirical_ell,
    lie_closure,
    predicted_structure,
    surface_profile,
)
from .templates import CASES, poly_to_json, univariate, validate_complete_template

VERSION_ENV = "TORICVF_REPORT_VERSION"
SAFE_INT = 2**53 - 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(obj):
    """Integers beyond the double-precision safe range become decimal strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > SAFE_INT else obj
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def report_json(status, payload=None, diagnostics=(), code=None) -> str:
    doc = {"status": status}
    if code is not None:
        doc["error_code"] = code
    doc["payload"] = payload
    doc["diagnostics"] = list(diagnostics)
    doc["version"] = os.environ.get(VERSION_ENV, __version__)
    return json.dumps(_jsonable(doc), indent=2) + "\n"


# --- argument plumbing ------------------------------------------------------------------


def _json_arg(text):
    if isinstance(text, (dict, list, int)):
        return text
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON argument: {exc}") from None


def _need(args, name):
    val = getattr(args, name, None)
    if val is None:
        raise UsageError(f"missing required option --{name.replace('_', '-')}")
    return val


def _config(args) -> Config:
    return Config(
        max_rank=args.max_rank,
        degree_bound=args.degree_bound,
        root_box=args.root_box,
        scan_cap=args.scan_cap,
    )


def _cone(args):
    doc = _json_arg(_need(args, "cone"))
    rays = doc["rays"] if isinstance(doc, dict) else doc
    return cone(rays, max_rank=args.max_rank)


def _field(value) -> HomogeneousField:
    doc = _json_arg(value)
    try:
        return HomogeneousField.from_json(doc)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"field JSON needs keys e and p: {exc}") from None


def _y(sigma, args):
    doc = _json_arg(_need(args, "y"))
    faces = doc["faces"] if isinstance(doc, dict) else doc
    return invariant_subvariety(sigma, faces)


def _de(args):
    d, e = getattr(args, "d", None), getattr(args, "e", None)
    if d is None or e is None:
        raise UsageError("surface verbs need the integers d and e")
    return int(d), int(e)


def _vector_field(value) -> LaurentVectorField:
    """Term-list JSON, or ``{"du": [[coeff, [i, j]], ...], "dv": [...]}`` for coefficient polynomials."""
    doc = _json_arg(value)
    if "terms" in doc:
        return LaurentVectorField.from_json(doc, rank=2)
    parts = []
    for key in ("du", "dv"):
        parts.append(LaurentPolynomial({tuple(exp): c for c, exp in doc.get(key, [])}, 2))
    return LaurentVectorField.from_partials(parts)


# --- verbs ------------------------------------------------------------------------------


def cmd_cone_dual(args):
    sigma = _cone(args)
    return {"cone": sigma.to_json(), "dual": dual_cone(sigma).to_json()}


def cmd_cone_faces(args):
    sigma = _cone(args)
    return {
        "cone": sigma.to_json(),
        "faces": [
            {"indices": list(f.indices), "rays": [list(r) for r in f.rays], "dim": f.dim, "smooth": f.smooth}
            for f in sigma.faces()
        ],
    }


def cmd_field_classify(args):
    sigma = _cone(args)
    f = _field(_need(args, "field"))
    return {"field": f.to_json(), "classification": classify(sigma, f).to_json()}


def cmd_field_bracket(args):
    f1, f2 = _field(_need(args, "field")), _field(_need(args, "field2"))
    br = bracket(f1, f2)
    return {"bracket": br.to_json() if br else None, "zero": br is None}


def cmd_field_vanishes(args):
    sigma = _cone(args)
    f = _field(_need(args, "field"))
    face = _json_arg(_need(args, "face"))
    tau = sigma.face(face["indices"] if isinstance(face, dict) else face)
    return {"face": list(tau.indices), "vanishes": vanishes_on_orbit_closure(sigma, f, tau)}


def cmd_adp_decide(args):
    sigma = _cone(args)
    y = _y(sigma, args)
    return {"cone": sigma.to_json(), "y": y.to_json(), "adp": decide_adp(sigma, y),
            "inserted_singular": y.inserted_singular}


def cmd_adp_certify(args):
    sigma = _cone(args)
    y = _y(sigma, args)
    cert = build_certificate(sigma, y, config=_config(args))
    return {"cone": {"rays": [list(r) for r in sigma.rays]}, "y": y.to_json(), "certificate": cert.to_json()}


def cmd_adp_verify(args):
    sigma = _cone(args)
    y = _y(sigma, args)
    doc = _json_arg(_need(args, "certificate"))
    try:
        cert = AdpCertificate.from_json(doc)
    except (KeyError, TypeError) as exc:
        return {"valid": False, "reasons": ["malformed certificate"], "detail": str(exc)}
    ok, reasons = verify_certificate(sigma, y, cert)
    return {"valid": ok, "reasons": reasons}


def cmd_surface_profile(args):
    d, e = _de(args)
    return surface_profile(d, e).to_json()


def cmd_surface_closure(args):
    d, e = _de(args)
    bound = args.bound
    table = lie_closure(d, e, bound)
    pred = predicted_structure(d, e, bound)
    out = table.to_json()
    out["matches_prediction"] = table == pred
    out["mismatches"] = table.differences(pred)
    out["ell_bound"] = surface_profile(d, e).ell_bound
    out["ell_empirical"] = empirical_ell(d, e, bound, table)
    out["ell_empirical_note"] = f"smallest ell that works for every piece of total degree <= {bound}"
    return out


def cmd_surface_template(args):
    d, e = _de(args)
    params = dict(_json_arg(args.params)) if args.params else {}
    case = args.case or params.pop("case", None)
    params.pop("case", None)
    if case is None:
        raise UsageError("missing required option --case")
    if case not in CASES:
        raise UsageError(f"--case must be one of {', '.join(CASES)}")
    allowed = {"a", "A", "B", "p", "m", "n", "l"}
    extra = set(params) - allowed
    if extra:
        raise UsageError(f"unknown template parameters: {', '.join(sorted(extra))}")
    res = validate_complete_template(d, e, case, **params)
    out = res.to_json()
    out["params"] = {k: poly_to_json(univariate(v)) if k in "ABp" else v for k, v in params.items()}
    return out


def cmd_surface_member(args):
    d, e = _de(args)
    v = _vector_field(_need(args, "field"))
    return decide_lie_membership(d, e, v).to_json()


def _sweep_row(pair):
    return surface_profile(*pair)


def sweep_rows(dmax: int, jobs: int = 1):
    pairs = [(d, e) for d in range(2, dmax + 1) for e in range(1, d) if math.gcd(d, e) == 1]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            profiles = list(pool.map(_sweep_row, pairs, chunksize=64))
    else:
        profiles = [_sweep_row(p) for p in pairs]
    return profiles


def cmd_surface_sweep(args):
    dmax = args.dmax
    if dmax is None:
        raise UsageError("surface sweep needs DMAX")
    if dmax < 2:
        raise UsageError("DMAX must be at least 2")
    profiles = sweep_rows(dmax, args.jobs)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for p in profiles:
            w.writerow(p.csv_row())
        return _Raw(buf.getvalue())
    return {"dmax": dmax, "rows": [p.to_json() for p in profiles]}


class _Raw(str):
    """Payload emitted verbatim instead of wrapped in a report."""


# --- parser -----------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--input", help="JSON object (path, or - for stdin) supplying any options")
    g.add_argument("--output", help="write the report here instead of stdout")
    g.add_argument("--max-rank", type=int, default=Config.max_rank, help="largest lattice rank accepted (default 8)")
    g.add_argument("--degree-bound", type=int, default=Config.degree_bound,
                   help="pairing-sum bound for sampled semigroup points (default 12)")
    g.add_argument("--root-box", type=int, default=None, help="root search box radius (default 10 * rank)")
    g.add_argument("--scan-cap", type=int, default=Config.scan_cap,
                   help="most candidates a box scan may visit (default 250000)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="toricvf", description="Vector fields on affine toric varieties.")
    parser.add_argument("--version", action="version", version=__version__)
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def verb(sub, name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("cone", help="cone combinatorics")
    sub = g.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for name, func, help_ in (("dual", cmd_cone_dual, "dual cone"), ("faces", cmd_cone_faces, "face lattice")):
        verb(sub, name, func, help_).add_argument("--cone", help='cone JSON, e.g. {"rays": [[1,0],[1,2]]}')

    g = groups.add_parser("field", help="homogeneous vector fields")
    sub = g.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    p = verb(sub, "classify", cmd_field_classify, "Type I / Type II / not extendable")
    p.add_argument("--cone")
    p.add_argument("--field", help='field JSON, e.g. {"e": [-1,1], "p": [1,0]}')
    p = verb(sub, "bracket", cmd_field_bracket, "commutator of two fields")
    p.add_argument("--field")
    p.add_argument("--field2")
    p = verb(sub, "vanishes", cmd_field_vanishes, "does the field vanish on an orbit closure")
    p.add_argument("--cone")
    p.add_argument("--field")
    p.add_argument("--face", help="ray-index list naming the face, e.g. [0]")

    g = groups.add_parser("adp", help="algebraic density property relative to Y")
    sub = g.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for name, func, help_ in (
        ("decide", cmd_adp_decide, "decide the ADP relative to Y"),
        ("certify", cmd_adp_certify, "emit a verifiable certificate"),
        ("verify", cmd_adp_verify, "recheck a certificate document"),
    ):
        p = verb(sub, name, func, help_)
        p.add_argument("--cone")
        p.add_argument("--y", help='Y JSON, e.g. {"faces": [[0],[0,1]]}')
        if name == "verify":
            p.add_argument("--certificate")

    g = groups.add_parser("surface", help="cyclic quotient surfaces V_{d,e}")
    sub = g.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for name, func, help_ in (
        ("profile", cmd_surface_profile, "J, strong ADP verdict, codimension"),
        ("closure", cmd_surface_closure, "Lie closure table against the predicted structure"),
        ("template", cmd_surface_template, "build and check a complete-field normal form"),
        ("member", cmd_surface_member, "membership in the generated Lie algebra"),
    ):
        p = verb(sub, name, func, help_)
        p.add_argument("d", type=int, nargs="?")
        p.add_argument("e", type=int, nargs="?")
        if name == "closure":
            p.add_argument("--bound", type=int, default=12, help="total-degree bound D (default 12)")
        if name == "template":
            p.add_argument("--case", help="one of " + ", ".join(CASES))
            p.add_argument("--params", help='JSON with a, A, B, p, m, n, l; polynomials as [[k, c], ...]')
        if name == "member":
            p.add_argument("--field", help='term-list JSON or {"du": [[c, [i, j]], ...], "dv": [...]}')
    p = verb(sub, "sweep", cmd_surface_sweep, "profile every coprime pair up to DMAX")
    p.add_argument("dmax", type=int, nargs="?")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    return parser


def _apply_input(args, stdin):
    """Fill options left unset on the command line from the --input JSON object."""
    if not args.input:
        return
    try:
        text = stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read --input: {exc}") from None
    doc = _json_arg(text)
    if not isinstance(doc, dict):
        raise UsageError("--input must hold a JSON object")
    for key, val in doc.items():
        name = key.replace("-", "_")
        if not hasattr(args, name) or name in ("func", "group", "verb", "input", "output"):
            raise UsageError(f"unknown key in --input: {key}")
        if getattr(args, name) is None:
            setattr(args, name, json.dumps(val) if isinstance(val, (dict, list)) else val)


def main(argv=None, stdin=None, stdout=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    output = None
    try:
        args = parser.parse_args(argv)
        output = args.output
        _apply_input(args, stdin)
        payload = args.func(args)
        text = payload if isinstance(payload, _Raw) else report_json("ok", payload)
        code = 0
    except UsageError as exc:
        text = report_json("error", None, [str(exc)], code="USAGE")
        code = 2
    except ToricError as exc:
        text = report_json("error", None, [str(exc)], code=exc.code)
        code = 1
    except (KeyError, TypeError, ValueError) as exc:
        text = report_json("error", None, [f"bad input: {exc}"], code="BAD_INPUT")
        code = 1
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
