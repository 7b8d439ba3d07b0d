"""Command-line front end.

Exit codes: 0 success, 1 invariant failure or search abort, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .basis import eigenvalue, orthonormal_basis
from .combinatorics import DomainTooLarge, SliceDomain, set_label, top_set_key
from .files import FileFormatError, FunctionFile, read, write, write_text_atomic
from .fourier import transform
from .heavy import ListCapExceeded, QueryFunction, SearchConfig, find_heavy_sets
from .synth import RECIPES, constant, planted_spectrum, random_pm1
from .verify import run_checks


class UsageError(Exception):
    pass


def _domain(args) -> SliceDomain:
    if args.n is None or args.k is None:
        raise UsageError("--n and --k are required")
    try:
        domain = SliceDomain(args.n, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    domain.check_size()
    return domain


def _synth_rng(seed: int) -> np.random.Generator:
    # separate stream from the per-estimate search streams
    return np.random.default_rng(np.random.SeedSequence(seed % 2**64, spawn_key=(2**32,)))


def synthesize(recipe: str, domain: SliceDomain, seed: int) -> FunctionFile:
    """``constant[:c]``, ``random-pm1`` or ``sign-of-spectrum[:s1,s2,...]``."""
    name, _, arg = recipe.partition(":")
    n, k = domain.n, domain.k
    if name == "constant":
        try:
            c = float(arg) if arg else 1.0
        except ValueError:
            raise UsageError(f"--synth constant: bad value {arg!r}") from None
        return FunctionFile.from_dense(constant(n, k, c))
    if name == "random-pm1":
        return FunctionFile.from_dense(random_pm1(n, k, _synth_rng(seed)))
    if name == "sign-of-spectrum":
        planted = None
        if arg:
            try:
                planted = tuple(sorted(int(s) for s in arg.split(",")))
            except ValueError:
                raise UsageError(f"--synth sign-of-spectrum: bad set {arg!r}") from None
        try:
            spec, _ = planted_spectrum(n, k, _synth_rng(seed), planted=planted)
        except (ValueError, RuntimeError) as exc:
            raise UsageError(f"--synth sign-of-spectrum: {exc}") from None
        return FunctionFile.from_spectrum(spec, "sign-of-spectrum")
    raise UsageError(f"--synth: unknown recipe {name!r}; choose from {', '.join(RECIPES)}")


def cmd_verify(args, out) -> int:
    domain = _domain(args)
    results = run_checks(domain.n, domain.k, deep=args.deep, seed=args.seed)
    for r in results:
        print(r.line(), file=out)
    failed = [r.name for r in results if not r.passed]
    print(f"# slice {domain}: {len(results) - len(failed)}/{len(results)} checks passed", file=out)
    return 1 if failed else 0


def cmd_transform(args, out) -> int:
    if args.input is None or args.output is None:
        raise UsageError("--input and --output are required")
    ff = read(args.input)
    if args.inverse:
        if ff.encoding == "dense":
            raise UsageError("--inverse expects a spectrum file, got a dense one")
        result = FunctionFile.from_dense(ff.function())
    else:
        if ff.encoding == "sparse-spectrum":
            raise UsageError("forward transform expects a dense or sign-of-spectrum file; use --inverse")
        result = FunctionFile.from_spectrum(transform(ff.function()))
    write(args.output, result)
    return 0


def cmd_basis(args, out) -> int:
    domain = _domain(args)
    vectors = []
    for bv in orthonormal_basis(domain):
        vectors.append({
            "set": list(bv.index),
            "eigenvalue": eigenvalue(domain.n, domain.k, len(bv.index)),
            "norm_sq": bv.norm_sq_closed,
            "values": [float(v) for v in bv.normalized()],
        })
    text = json.dumps({"n": domain.n, "k": domain.k, "vectors": vectors}, indent=1) + "\n"
    if args.output:
        write_text_atomic(args.output, text)
    else:
        out.write(text)
    return 0


def cmd_synth(args, out) -> int:
    if args.synth is None or args.output is None:
        raise UsageError("--synth and --output are required")
    write(args.output, synthesize(args.synth, _domain(args), args.seed))
    return 0


def cmd_gl(args, out) -> int:
    if (args.input is None) == (args.synth is None):
        raise UsageError("give exactly one of --input and --synth")
    if args.tau is None:
        raise UsageError("--tau is required")
    ff = read(args.input) if args.input else synthesize(args.synth, _domain(args), args.seed)
    f = ff.function()
    if not np.all(np.abs(f.values) == 1):
        raise UsageError("gl needs a +-1 valued function")
    try:
        cfg = SearchConfig(
            tau=args.tau, mode=args.mode, samples_per_estimate=args.samples,
            seed=args.seed, list_cap=args.list_cap,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    query = QueryFunction.from_vector(f)
    n, k = f.n, f.k
    samples = cfg.samples(n) if cfg.mode == "sampled" else 0
    print(f"# slice ({n},{k}) tau={cfg.tau!r} mode={cfg.mode} samples={samples} seed={cfg.seed}", file=out)
    try:
        found = find_heavy_sets(query, cfg)
    except ListCapExceeded as exc:
        print(f"# aborted: {exc}", file=out)
        print(f"# queries={query.query_count}", file=out)
        return 1
    scale = math.sqrt(f.domain.cardinality())
    spec = transform(f) if args.audit else None
    for U in found:
        if spec is None:
            print(set_label(U), file=out)
        else:
            print(f"{set_label(U)}\t{spec[U] / scale!r}", file=out)
    if spec is not None:
        heavy = [S for S, c in spec.items() if abs(c) >= cfg.tau * scale]
        missing = sorted(set(heavy) - set(found), key=top_set_key)
        light = [U for U in found if abs(spec[U]) < cfg.tau / 2 * scale]
        print(f"# audit missing={len(missing)} light={len(light)}", file=out)
        for S in missing:
            print(f"# missing {set_label(S)}\t{spec[S] / scale!r}", file=out)
    print(f"# queries={query.query_count}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slicefourier", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def domain_flags(p):
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)

    p = sub.add_parser("verify", help="run the invariant suite on one slice")
    domain_flags(p)
    p.add_argument("--deep", action="store_true", help="100 random vectors per check instead of 10")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="dense function to spectrum, or back with --inverse")
    p.add_argument("--input")
    p.add_argument("--output")
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("basis", help="print the orthonormal basis of a slice")
    domain_flags(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("synth", help="write a synthesised function file")
    domain_flags(p)
    p.add_argument("--synth", help="constant[:c] | random-pm1 | sign-of-spectrum[:s1,s2,...]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("gl", help="find heavy Fourier coefficients from point queries")
    domain_flags(p)
    p.add_argument("--input")
    p.add_argument("--synth")
    p.add_argument("--tau", type=float)
    p.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    p.add_argument("--samples", type=int, help="samples per estimate (sampled mode)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--list-cap", type=int, help="abort when more buckets survive (default ceil(8/tau^2))")
    p.add_argument("--audit", action="store_true", help="print exact normalised coefficients")
    p.set_defaults(func=cmd_gl)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, FileFormatError, DomainTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
