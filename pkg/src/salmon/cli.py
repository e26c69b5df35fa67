"""Command line front end: ``salmon gen|test|sample|scan|dims``.

Exit codes: 0 success, 2 usage error, 3 input error, 4 internal contract violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib.metadata import PackageNotFoundError, version

from . import geometry, membership, reptheory, schur
from .schur import ContractViolation, format_basis
from .tensor import Tensor3

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CONTRACT = 0, 2, 3, 4


class InputError(Exception):
    pass


def _version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def _dims(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError(f"negative entry in {text!r}")
    return vals


def _triple(text: str) -> tuple[int, int, int]:
    vals = _dims(text)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated integers, got {text!r}")
    return vals


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- subcommands -------------------------------------------------------------

def cmd_gen(args) -> int:
    dims = args.dims
    try:
        basis = schur.named_module(args.module, dims)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(format_basis(basis), args.out)
    counts = dict(sorted(basis.monomial_counts().items()))
    msg = f"{args.module} at dims {','.join(map(str, dims))}: {len(basis)} polynomials, monomial counts {counts}"
    if basis.note:
        msg += f" ({basis.note})"
    print(msg, file=sys.stderr)
    return EXIT_OK


def _load_tensor(path: str, mode: str) -> Tensor3:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
        return Tensor3.from_json_obj(obj, exact=(mode == "exact"))
    except (OSError, json.JSONDecodeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot read tensor from {path}: {exc}") from None


def cmd_test(args) -> int:
    if args.friedland:
        T = membership.friedland_point()
    elif args.input:
        T = _load_tensor(args.input, args.mode)
    else:
        raise InputError("give a tensor JSON file or --friedland")
    if min(T.dims) < 3:
        raise InputError(f"the border rank 4 test needs a,b,c >= 3, got dims {T.dims}")
    report = membership.border_rank_le4_test(T, trials=args.trials, seed=args.seed, threads=args.threads,
                                             mode=args.mode)
    obj = report.to_json_obj()
    obj["version"] = _version()
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    dims = args.dims
    if args.secant is not None:
        s = geometry.sample_secant(args.secant, dims, seed=args.seed)
        kind = {"kind": "secant", "r": args.secant}
    elif args.subspace is not None:
        try:
            s = geometry.sample_subspace(args.subspace, dims, seed=args.seed)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        kind = {"kind": "subspace", "target": list(args.subspace)}
    else:
        raise InputError("choose --secant R or --subspace A,B,C")
    T = s.tensor if args.mode == "exact" else s.tensor.to_numeric()
    obj = T.to_json_obj()
    obj["sample"] = dict(kind, seed=args.seed, version=_version())
    _emit(json.dumps(obj) + "\n", args.out)
    return EXIT_OK


def cmd_scan(args) -> int:
    try:
        res = geometry.ideal_scan(args.degree, args.dims, samples=args.samples, seed=args.seed,
                                  allow_large=args.allow_large)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    obj = res.to_json_obj()
    obj["version"] = _version()
    _emit(_json(obj), args.out)
    return EXIT_OK


def cmd_dims(args) -> int:
    out: dict = {}
    if args.schur is not None:
        if args.n is None:
            raise InputError("--schur needs --n")
        out["weyl_dimension"] = reptheory.weyl_dimension(reptheory.as_partition(args.schur), args.n)
    if args.terracini is not None:
        out["terracini_dim"] = geometry.terracini_dim(args.terracini, args.dims, seed=args.seed)
        print(f"terracini point drawn with seed {args.seed}", file=sys.stderr)
    if args.subspace is not None:
        try:
            out["subspace_dim"] = geometry.subspace_dim(args.subspace, args.dims)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if args.module is not None:
        triple = {"M5": schur.M5_TRIPLE, "M6": schur.M6_TRIPLE, "M9": schur.M9_TRIPLE}[args.module]
        dim = 1
        for p, n in zip(triple, args.dims):
            dim *= reptheory.weyl_dimension(p, n)
        if args.module == "M5":
            # three summands related by cyclically permuting the factors
            dim = sum(
                reptheory.weyl_dimension(triple[o[0]], args.dims[0])
                * reptheory.weyl_dimension(triple[o[1]], args.dims[1])
                * reptheory.weyl_dimension(triple[o[2]], args.dims[2])
                for o in schur.M5_SUMMAND_ORDERS)
        out["module_dim"] = dim
    if args.isotypic is not None:
        comps = reptheory.isotypic_decomposition(args.isotypic, args.dims)
        out["isotypic"] = [c.to_json_obj() for c in comps]
    if not out:
        raise InputError("nothing to compute: use --schur, --terracini, --subspace, --module or --isotypic")
    if len(out) == 1 and not isinstance(next(iter(out.values())), list):
        _emit(f"{next(iter(out.values()))}\n", args.out)
    else:
        _emit(_json(out), args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (default 0)")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads (default: available CPUs); output does not depend on it")
    common.add_argument("--mode", choices=("exact", "numeric"), default=argparse.SUPPRESS,
                        help="exact rationals (default) or double precision")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output path (default stdout)")

    parser = argparse.ArgumentParser(prog="salmon", parents=[common],
                                     description="Equations for tensors of border rank at most 4.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="write a module basis in the polynomial text format")
    g.add_argument("--module", required=True, choices=("M5", "M6", "M9", "strassen"))
    g.add_argument("--dims", type=_triple, default=(3, 3, 4))
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("test", parents=[common], help="border rank <= 4 zero-set test of a tensor")
    t.add_argument("input", nargs="?", help="tensor JSON file")
    t.add_argument("--friedland", action="store_true", help="use the built-in 3x3x4 example point")
    t.add_argument("--trials", type=int, default=membership.DEFAULT_TRIALS)
    t.set_defaults(func=cmd_test)

    s = sub.add_parser("sample", parents=[common], help="random point of a secant or subspace variety")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--secant", type=int, metavar="R")
    grp.add_argument("--subspace", type=_triple, metavar="A,B,C")
    s.add_argument("--dims", type=_triple, default=(3, 3, 4))
    s.set_defaults(func=cmd_sample)

    sc = sub.add_parser("scan", parents=[common], help="isotypic components vanishing on rank-4 samples")
    sc.add_argument("--degree", type=int, required=True)
    sc.add_argument("--dims", type=_triple, default=(3, 3, 4))
    sc.add_argument("--samples", type=int, default=geometry.DEFAULT_SCAN_SAMPLES)
    sc.add_argument("--allow-large", action="store_true", help="lift the degree cap")
    sc.set_defaults(func=cmd_scan)

    dm = sub.add_parser("dims", parents=[common], help="Weyl, Terracini and subspace dimensions")
    dm.add_argument("--schur", type=_dims, metavar="PARTITION")
    dm.add_argument("--n", type=int)
    dm.add_argument("--terracini", type=int, metavar="R")
    dm.add_argument("--subspace", type=_triple, metavar="A,B,C")
    dm.add_argument("--module", choices=("M5", "M6", "M9"))
    dm.add_argument("--isotypic", type=int, metavar="D")
    dm.add_argument("--dims", type=_triple, default=(3, 3, 4))
    dm.set_defaults(func=cmd_dims)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("seed", 0), ("threads", os.cpu_count() or 1), ("mode", "exact"), ("out", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"salmon: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ContractViolation as exc:
        print(f"salmon: contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (AssertionError, RuntimeError) as exc:
        print(f"salmon: internal error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
