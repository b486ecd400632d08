"""Command-line entry point ``octo``.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import algebra as alg
from . import derivations as der
from . import g2, group, jordan, lorentz, verify


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    return _encode(_plain(obj))


def _plain(obj):
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _encode(obj) -> str:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return json.dumps(str(obj))
        return format(obj, ".17g") if obj != int(obj) or abs(obj) >= 1e17 else format(obj, ".1f")
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_encode(v)}" for k, v in obj.items()) + "}"
    return "[" + ", ".join(_encode(v) for v in obj) + "]"


def _load_json(text: str):
    """Inline JSON, or a path to a JSON file (optionally prefixed with '@')."""
    if text.startswith("@"):
        return json.loads(Path(text[1:]).read_text())
    stripped = text.lstrip()
    if stripped[:1] in "[{" or stripped[:1].isdigit() or stripped[:1] == "-":
        return json.loads(text)
    return json.loads(Path(text).read_text())


def _emit(obj, out: str | None) -> None:
    text = dumps(obj) + "\n"
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _default_seed() -> int:
    return int(os.environ.get("OCTO_SEED", "0"))


# -- commands --------------------------------------------------------------------

def cmd_table(args) -> int:
    _emit(alg.table_json(), args.out)
    return 0


def cmd_verify(args) -> int:
    report = verify.run_suite(args.suite, args.seed, args.samples, args.tolerances)
    _emit(report, args.out)
    return 0 if report["passed"] else 1


def cmd_g2_tangent(args) -> int:
    a, b = alg.parse(args.a), alg.parse(args.b)
    _emit(g2.tangent_report(a, b, args.h), args.out)
    return 0


def cmd_g2_dump(args) -> int:
    if args.ab:
        m = der.d_ab(alg.parse(args.ab[0]), alg.parse(args.ab[1]))
    elif args.f:
        m = der.f_kij(*args.f)
    else:
        m = der.r_ij(*args.r)
    if args.t is not None:
        m = der.exp_f(args.t, m)
    _emit({"matrix": m, "is_derivation": der.is_derivation(m)}, args.out)
    return 0


def cmd_iso_dump(args) -> int:
    obj = _load_json(args.element)
    obj.setdefault("level", args.level)
    n = lorentz.Sl2Element.from_json(obj)
    if n.level != args.level:
        raise ValueError(f"element has level {n.level}, expected {args.level}")
    _emit({"level": n.level, "matrix": lorentz.phi(n)}, args.out)
    return 0


def cmd_iso_check(args) -> int:
    rng = verify.make_rng(args.seed)
    report = lorentz.check_homomorphism(args.level, args.samples, rng)
    report["passed"] = report["max_residual"] < args.tolerances.get("homomorphism", 1e-9)
    _emit(report, args.out)
    return 0 if report["passed"] else 1


def cmd_apply(args) -> int:
    w = group.GroupWord.from_json(_load_json(args.word))
    v = jordan.vec_from_json(_load_json(args.vec))
    out = jordan.herm_to_vec(group.word_apply(w, jordan.vec_to_herm(v)))
    _emit(jordan.vec_to_json(out), args.out)
    return 0


def cmd_matrix(args) -> int:
    w = group.GroupWord.from_json(_load_json(args.word))
    lam = group.word_to_so91(w)
    _emit({"matrix": lam, "lorentz_residual": group.lorentz_residual(lam)}, args.out)
    return 0


def cmd_check_det(args) -> int:
    m = jordan.Matrix2K.from_json(_load_json(args.matrix))
    c = group.is_det_preserving(m, args.trials, verify.make_rng(args.seed))
    _emit(c.__dict__, args.out)
    return 0


def cmd_tangent(args) -> int:
    p = args.params
    if args.family == "diag":
        kind, k = (p[0], int(p[1])) if len(p) == 2 else ("diag", int(p[0]) if p else 0)
        makers = {"diag": group.diagonal_curve, "upper": group.upper_curve, "lower": group.lower_curve}
        if kind not in makers:
            raise ValueError(f"diag family kind must be one of {sorted(makers)}")
        curve = makers[kind](k)
    elif args.family == "comm":
        curve = group.commutator_curve(int(p[0]) if p else 1)
    else:
        a, b = (p + ["e1", "e2"][len(p):])[:2]
        curve = group.g2_curve(alg.parse(a), alg.parse(b))
    t = group.tangent_of_curve(curve, args.h)
    _emit({"element": t.to_json(), "matrix": lorentz.phi(t)}, args.out)
    return 0


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=_default_seed(), help="RNG seed (default $OCTO_SEED or 0)")
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")

    p = argparse.ArgumentParser(prog="octo", description="Octonions, G2, sl(2,K) = so(n+1,1) and SL(2,O).")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("table", parents=[common], help="print the octonion multiplication table")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("verify", parents=[common], help="run a seeded property suite")
    s.add_argument("suite", choices=verify.SUITES)
    s.set_defaults(func=cmd_verify)

    g = sub.add_parser("g2", help="G2 curves and derivations").add_subparsers(dest="g2_command", required=True)
    s = g.add_parser("tangent", parents=[common], help="finite-difference tangent of G^t_{a,b} vs D_{a,b}")
    s.add_argument("--a", default="e1")
    s.add_argument("--b", default="e2")
    s.add_argument("--h", type=float, default=1e-4)
    s.set_defaults(func=cmd_g2_tangent)
    s = g.add_parser("dump", parents=[common], help="dump a derivation (or rotation) as an 8x8 matrix")
    which = s.add_mutually_exclusive_group(required=True)
    which.add_argument("--ab", nargs=2, metavar=("A", "B"), help="D_{a,b}")
    which.add_argument("--f", nargs=3, type=int, metavar=("K", "I", "J"), help="F^k_{ij}")
    which.add_argument("--r", nargs=2, type=int, metavar=("I", "J"), help="R_{ij}")
    s.add_argument("--t", type=float, default=None, help="dump exp(t F) instead")
    s.set_defaults(func=cmd_g2_dump)

    i = sub.add_parser("iso", help="sl(2,K) -> so(n+1,1)").add_subparsers(dest="iso_command", required=True)
    s = i.add_parser("dump", parents=[common], help="phi of an element given as JSON")
    s.add_argument("--level", type=int, choices=range(4), default=3)
    s.add_argument("--element", required=True, help="inline JSON or path")
    s.set_defaults(func=cmd_iso_dump)
    s = i.add_parser("check", parents=[common], help="homomorphism residual over random pairs")
    s.add_argument("--level", type=int, choices=range(4), default=3)
    s.set_defaults(func=cmd_iso_check)

    o = sub.add_parser("sl2o", help="the group SL(2,O)").add_subparsers(dest="sl2o_command", required=True)
    s = o.add_parser("apply", parents=[common], help="apply a word to a light-cone vector")
    s.add_argument("--word", required=True)
    s.add_argument("--vec", required=True)
    s.set_defaults(func=cmd_apply)
    s = o.add_parser("matrix", parents=[common], help="10x10 Lorentz matrix of a word")
    s.add_argument("--word", required=True)
    s.set_defaults(func=cmd_matrix)
    s = o.add_parser("check-det", parents=[common], help="classify a matrix for determinant preservation")
    s.add_argument("--matrix", required=True)
    s.add_argument("--trials", type=int, default=20)
    s.set_defaults(func=cmd_check_det)
    s = o.add_parser("tangent", parents=[common], help="tangent vector of a curve family at the identity")
    s.add_argument("--family", choices=("diag", "comm", "g2"), required=True)
    s.add_argument("--params", nargs="*", default=[], help="diag: [diag|upper|lower] K; comm: K; g2: A B")
    s.add_argument("--h", type=float, default=1e-4)
    s.set_defaults(func=cmd_tangent)
    return p


def _split_tolerances(argv: list[str]) -> tuple[list[str], dict[str, float]]:
    """Pull ``--tol.<name> v`` / ``--tol.<name>=v`` out of argv."""
    rest, tols = [], {}
    i = 0
    while i < len(argv):
        arg = argv[i]
        i += 1
        if not arg.startswith("--tol."):
            rest.append(arg)
            continue
        key, _, value = arg[len("--tol."):].partition("=")
        if not value:
            if i >= len(argv):
                raise ValueError(f"{arg} needs a value")
            value = argv[i]
            i += 1
        tols[key] = float(value)
    return rest, tols


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv, tols = _split_tolerances(argv)
    except ValueError as exc:
        parser.error(str(exc))
    if any(v <= 0 for v in tols.values()):
        parser.error("tolerances must be positive")
    args = parser.parse_args(argv)
    args.tolerances = tols
    if getattr(args, "samples", 1) < 1:
        parser.error("--samples must be at least 1")
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"octo: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
