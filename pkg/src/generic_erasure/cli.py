"""Command-line front end.

Machine-readable JSON goes to stdout, a one-line human summary to stderr.
Exit codes: 0 success / positive verdict, 1 negative verdict, 2 usage or I/O error.

    generic-erasure construct --kind A --r 4 --m 3 --out a43.txt
    generic-erasure verify --set a43.txt --m 3
    generic-erasure code --family repetition --n 5 --out rep5.txt
    generic-erasure decode --code rep5.txt --collection ex1.txt --erasures 1,2,3,4
    generic-erasure search --r 4 --m 4 --enumerate-optima
    generic-erasure simulate --code rep5.txt --collection ex1.txt --p 0.5 --trials 100000 --seed 1
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import codes, decoder, gensets, search, verifier
from .gf2 import BitVec, str_to_bits

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def load_collection(text: str) -> tuple[int, list[BitVec]]:
    """Collection file: first line n, then one length-n check per line, in decoding order."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty collection file")
    n = int(lines[0])
    checks = []
    for ln in lines[1:]:
        if len(ln) != n:
            raise ValueError(f"check {ln!r} does not have length {n}")
        checks.append(BitVec(n, str_to_bits(ln)))
    return n, checks


def _collection_for(args, C: codes.Code) -> tuple[list[BitVec], str]:
    if bool(args.set) == bool(args.collection):
        raise UsageError("give exactly one of --set or --collection")
    if args.set:
        A = gensets.parse_set(_read(args.set))
        if A.r != C.r:
            raise UsageError(f"set dimension {A.r} does not match code codimension {C.r}")
        return gensets.induced_collection(A, C), f"set:{Path(args.set).name}"
    n, checks = load_collection(_read(args.collection))
    if n != C.n:
        raise UsageError(f"collection length {n} does not match code length {C.n}")
    return checks, f"collection:{Path(args.collection).name}"


def _formula_size(kind: str, r: int, m: int | None) -> int:
    if kind == "A":
        return gensets.size_A(r, m)
    if kind == "A_star":
        return gensets.size_A(r, m) - gensets.size_B(r, m)
    if kind == "W":
        return gensets.size_W(r)
    return 2 * (r - 1)


def cmd_construct(args) -> int:
    kind, r, m = args.kind, args.r, args.m
    if kind in ("A", "A_star") and m is None:
        raise UsageError(f"--m is required for kind {kind}")
    builders = {
        "A": lambda: gensets.construct_A(r, m),
        "A_star": lambda: gensets.construct_A_star(r, m),
        "W": lambda: gensets.construct_W(r),
        "even_weight": lambda: gensets.construct_even_weight_set(r),
    }
    try:
        A = builders[kind]()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    expected = _formula_size(kind, r, m)
    if args.out:
        gensets.save_set(A, args.out)
        _emit({"kind": kind, "r": r, "m": m, "size": len(A), "formula_size": expected, "path": args.out})
    else:
        sys.stdout.write(A.to_text())
    _say(f"{kind} r={r} m={m}: {len(A)} vectors (formula {expected})")
    return EXIT_OK


def cmd_code(args) -> int:
    try:
        if args.family == "hamming":
            C = codes.hamming_code(args.r)
        elif args.family == "repetition":
            C = codes.repetition_code(args.n)
        else:
            C = codes.even_weight_code(args.r, args.n)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad parameters for {args.family}: {exc}") from exc
    if args.out:
        codes.save_code(C, args.out)
    else:
        sys.stdout.write(C.to_text())
    _say(f"{C.name}: n={C.n} r={C.r}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        A = gensets.parse_set(_read(args.set))
    except ValueError as exc:
        raise UsageError(f"malformed set file: {exc}") from exc
    if not 1 <= args.m <= A.r:
        raise UsageError(f"need 1 <= m <= r={A.r}, got m={args.m}")
    check = verifier.is_generic_for_even_weight if args.cls == "even_weight" else verifier.is_generic
    res = check(A, args.m, budget=args.budget, workers=args.workers)
    _emit(res.to_json())
    _say(f"generic({A.r},{args.m}) [{args.cls}]: {res.verdict} after {res.subsets_checked} subsets")
    return EXIT_OK if res.verdict else EXIT_NEGATIVE


def _positions(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise UsageError(f"bad erasure list {text!r}") from exc


def cmd_decode(args) -> int:
    try:
        C = codes.parse_code(_read(args.code))
    except ValueError as exc:
        raise UsageError(f"malformed code file: {exc}") from exc
    try:
        checks, _ = _collection_for(args, C)
        trace = decoder.peel(checks, _positions(args.erasures), n=C.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(trace.to_json())
    _say(f"peeled {len(trace.steps)} of {len(trace.initial)} erasures; residual {list(trace.residual)}")
    return EXIT_OK if trace.success else EXIT_NEGATIVE


def cmd_search(args) -> int:
    if not 1 <= args.m <= args.r:
        raise UsageError(f"need 1 <= m <= r, got r={args.r}, m={args.m}")
    report = search.min_size(args.r, args.m, enumerate_optima=args.enumerate_optima, budget=args.budget)
    _emit(report.to_json())
    _say(f"F({args.r},{args.m}) = {report.f_value} (certified: {report.certified})")
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        C = codes.parse_code(_read(args.code))
    except ValueError as exc:
        raise UsageError(f"malformed code file: {exc}") from exc
    checks, ident = _collection_for(args, C)
    try:
        stats = decoder.simulate(C, checks, args.p, args.trials, args.seed, workers=args.workers,
                                 collection_id=ident)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(stats.to_json())
    _say(f"{stats.corrected}/{stats.trials} corrected, {stats.stuck_correctable} stuck, "
         f"{stats.uncorrectable_seen} uncorrectable")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=verifier.DEFAULT_BUDGET,
                        help="maximum number of subsets/sets a job may test")
    common.add_argument("--workers", type=int, default=verifier.default_workers())
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="generic-erasure", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="write a coefficient set to a file")
    p.add_argument("--kind", choices=["A", "A_star", "W", "even_weight"], required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("code", parents=[common], help="write a parity-check matrix to a file")
    p.add_argument("--family", choices=["hamming", "repetition", "even_weight"], required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("verify", parents=[common], help="decide genericity of a set file")
    p.add_argument("--set", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=["all", "even_weight"], default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decode", parents=[common], help="peel an erasure pattern")
    p.add_argument("--code", required=True)
    p.add_argument("--set")
    p.add_argument("--collection")
    p.add_argument("--erasures", default="", help="comma-separated 1-based positions")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("search", parents=[common], help="exact minimum generic set size")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--enumerate-optima", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo erasure channel")
    p.add_argument("--code", required=True)
    p.add_argument("--set")
    p.add_argument("--collection")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    try:
        return args.func(args)
    except verifier.BudgetExceeded as exc:
        payload = {"error": str(exc)}
        if exc.lower is not None:
            payload["lower_bound"] = exc.lower
        if exc.upper is not None:
            payload["upper_bound"] = exc.upper
        _emit(payload)
        _say(f"error: {exc}")
        return EXIT_ERROR
    except UsageError as exc:
        _emit({"error": str(exc)})
        _say(f"error: {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
