"""Command-line front end: one subcommand per operation, JSON in and out."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import coordring, monoid, weights
from .exact import Field, FieldMismatch, DimensionMismatch
from .jsonio import matrix_from_json, matrix_to_json, weight_from_json
from .monoid import Kind, MonoidSpec
from .repdim import DimTable, dim_nabla, graded_square_sum
from .weights import RootDatum


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, *, kind=True, n=True, degree=False, seed=False, inp=False):
    if kind:
        p.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    if n:
        p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="q", help="q or fp:<p>")
    if degree:
        p.add_argument("--degree", type=int, required=True)
    if seed:
        p.add_argument("--seed", type=int, default=0)
    if inp:
        p.add_argument("--in", dest="inp", required=True,
                       help="path to a JSON file, '-' for stdin, or inline JSON")


def _load(arg: str):
    text = arg
    if arg == "-":
        text = sys.stdin.read()
    elif not arg.lstrip().startswith(("{", "[")):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON input: {exc}") from None


def _spec(args) -> MonoidSpec:
    return MonoidSpec(Kind(args.kind), args.n, Field.parse(args.field))


def _matrix(args, spec: MonoidSpec):
    return matrix_from_json(_load(args.inp))


def _weight(args):
    w = weight_from_json(_load(args.inp))
    return w, RootDatum.for_weight(w)


def cmd_member(args):
    spec = _spec(args)
    A = _matrix(args, spec)
    if spec.kind is Kind.FULL:
        return {"member": monoid.is_member(spec, A), "c": None}
    c = monoid.similitude_factor(spec, A)
    return {"member": c is not None, "c": None if c is None else str(c)}


def cmd_factor(args):
    spec = _spec(args)
    c = monoid.similitude_factor(spec, _matrix(args, spec))
    return {"c": None if c is None else str(c)}


def cmd_unit(args):
    spec = _spec(args)
    return {"unit": monoid.is_unit(spec, _matrix(args, spec))}


def cmd_idempotents(args):
    return [matrix_to_json(e) for e in monoid.idempotents_in_torus_closure(_spec(args))]


def cmd_torus_contains(args):
    spec = _spec(args)
    return {"contains": monoid.torus_closure_contains(spec, _matrix(args, spec))}


def cmd_classify(args):
    spec = _spec(args)
    return monoid.classify_orbit(spec, _matrix(args, spec)).to_json()


def cmd_witness(args):
    spec = _spec(args)
    g, h, e = monoid.orbit_witness(spec, _matrix(args, spec))
    return {"g": matrix_to_json(g), "h": matrix_to_json(h), "e": matrix_to_json(e)}


def cmd_sample_unit(args):
    comp = {"plus": 1, "minus": -1, "random": None}[args.component]
    A = monoid.sample_unit(_spec(args), args.seed, args.entry_bound, component=comp)
    return matrix_to_json(A)


def cmd_sample_member(args):
    A = monoid.sample_member(_spec(args), args.seed, args.rank, args.entry_bound)
    return matrix_to_json(A)


def cmd_weights_enum(args):
    return [w.to_json() for w in weights.xd_dominant_enumerate(_spec(args), args.degree)]


def cmd_dominant(args):
    w, rd = _weight(args)
    return {"dominant": weights.is_dominant(rd, w)}


def cmd_dominance(args):
    obj = _load(args.inp)
    try:
        lam, mu = weight_from_json(obj["lambda"]), weight_from_json(obj["mu"])
    except (KeyError, TypeError):
        raise UsageError('dominance expects {"lambda": <weight>, "mu": <weight>}') from None
    return {"leq": weights.dominance_leq(RootDatum.for_weight(lam), lam, mu)}


def cmd_predecessors(args):
    w, rd = _weight(args)
    return [x.to_json() for x in weights.dominant_predecessors(rd, None, w)]


def cmd_saturated(args):
    items = _load(args.inp)
    if not isinstance(items, list) or not items:
        raise UsageError("saturated expects a nonempty JSON array of weights")
    pi = [weight_from_json(x) for x in items]
    return {"saturated": weights.is_saturated(RootDatum.for_weight(pi[0]), None, pi)}


def cmd_check_saturation(args):
    spec = _spec(args)
    return {"saturated": all(weights.check_xd_plus_saturated(spec, d)
                             for d in range(args.degree + 1)),
            "max_degree": args.degree}


def cmd_dim_nabla(args):
    w, rd = _weight(args)
    return {"weight": w.to_json(), "dim": dim_nabla(rd, w)}


def cmd_square_sum(args):
    spec = _spec(args)
    table = DimTable.build(spec, args.degree, jobs=args.jobs).to_json()
    table["square_sum"] = graded_square_sum(spec, args.degree)
    return table


def _oracle_kw(args):
    return dict(point_budget=args.point_budget, entry_bound=args.entry_bound,
                jobs=args.jobs, plus_only=args.plus_only)


def cmd_graded_dim(args):
    spec = _spec(args)
    res = coordring.graded_dim(spec, args.degree, args.seed, **_oracle_kw(args))
    return {"spec": {"kind": spec.kind.value, "n": spec.n, "field": str(spec.field)},
            "degree": args.degree, "graded_dim": res.rank, "columns": res.columns,
            "points_used": res.points_used, "seed": args.seed}


def cmd_verify_hwc(args):
    spec = _spec(args)
    return coordring.verify_hwc_identity(spec, args.degree, args.seed, **_oracle_kw(args))


def cmd_bialgebra_check(args):
    if not 1 <= args.n <= 4 or not 0 <= args.degree <= 3:
        raise ValueError("bialgebra-check supports n <= 4 and degree <= 3")
    return {"n": args.n, "degree": args.degree,
            "ok": coordring.check_bialgebra_axioms(args.n, args.degree)}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monoidrep", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, **kw):
        p = sub.add_parser(name)
        _common(p, **kw)
        p.set_defaults(func=fn)
        return p

    for name, fn in [("member", cmd_member), ("factor", cmd_factor), ("unit", cmd_unit),
                     ("torus-contains", cmd_torus_contains), ("classify", cmd_classify),
                     ("witness", cmd_witness)]:
        add(name, fn, inp=True)
    add("idempotents", cmd_idempotents)
    for name, fn in [("sample-unit", cmd_sample_unit), ("sample-member", cmd_sample_member)]:
        p = add(name, fn, seed=True)
        p.add_argument("--entry-bound", type=int, default=3)
        if name == "sample-unit":
            p.add_argument("--component", choices=["plus", "minus", "random"], default="plus")
        else:
            p.add_argument("--rank", type=int, default=None)
    add("weights-enum", cmd_weights_enum, degree=True)
    for name, fn in [("dominant", cmd_dominant), ("dominance", cmd_dominance),
                     ("predecessors", cmd_predecessors), ("saturated", cmd_saturated),
                     ("dim-nabla", cmd_dim_nabla)]:
        add(name, fn, kind=False, n=False, inp=True)
    add("check-saturation", cmd_check_saturation, degree=True)
    add("square-sum", cmd_square_sum, degree=True).add_argument("--jobs", type=int, default=1)
    for name, fn in [("graded-dim", cmd_graded_dim), ("verify-hwc", cmd_verify_hwc)]:
        p = add(name, fn, degree=True, seed=True)
        p.add_argument("--point-budget", type=int, default=None)
        p.add_argument("--entry-bound", type=int, default=3)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--plus-only", action="store_true",
                       help="orthogonal kind: sample only the identity component")
    add("bialgebra-check", cmd_bialgebra_check, kind=False, degree=True)
    return parser


def _emit_error(kind: str, message: str, **extra) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message, **extra}, sort_keys=True) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except UsageError as exc:
        _emit_error("usage", str(exc))
        return 2
    except coordring.OracleNotStable as exc:
        _emit_error("oracle_not_stable", str(exc), rank=exc.rank, points_used=exc.points_used)
        return 1
    except (ValueError, FieldMismatch, DimensionMismatch, ZeroDivisionError,
            monoid.WitnessError, monoid.SamplingError) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 1
    sys.stdout.write(json.dumps(result, sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
