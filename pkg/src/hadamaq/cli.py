"""Command line interface: ``hadamaq <command> ...``.

Exit status is 0 on success, 1 when the input fails validation or the
requested structure does not exist, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import io
from .decomposition import decompose, verify_decomposition
from .exceptions import HadamaqError, NotHadamard
from .groups import fingerprint, generate
from .hadamard import CATALOGUE, DEFAULT_MAX_ORDER, DEFAULT_TOL, from_spec, scramble, tensor
from .mq import check_all, classify, predicted_group, realized_group, relations
from .phase import parse_phase
from .report import analyze, witness_json
from .squares import normalize, rows_as_permutations


def load_matrix(arg: str, check: bool = True):
    """A ``.chm`` path if one exists, otherwise a catalogue spec such as ``fourier:6``."""
    p = Path(arg)
    if p.exists():
        return io.read_chm(p, check=check)
    return from_spec(arg)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_catalogue(args) -> int:
    if args.action == "list":
        for name in sorted(CATALOGUE):
            print(CATALOGUE[name][2])
        print("<spec>,<spec>,...   (tensor product)")
        return 0
    if not args.name:
        raise UsageError("catalogue emit needs a name")
    _emit(io.dumps_chm(from_spec(args.name)), args.output)
    return 0


def cmd_analyze(args) -> int:
    try:
        h = load_matrix(args.input, check=False)
    except NotHadamard as exc:
        print(f"not a Hadamard matrix: {exc}", file=sys.stderr)
        return 1
    report = analyze(h, tol=args.tol, max_order=args.max_order, name=args.input, timings=args.timings)
    text = report.to_json()
    if args.json:
        Path(args.json).write_text(text)
    status = report.commutation["status"] if report.commutation else "n/a"
    print(f"n={report.n} mode={report.mode} hadamard={report.hadamard['valid']} level={report.butson_level}")
    print(f"commutation: {status}" + (f" (max norm {report.commutation['max_norm']:.3g})" if report.commutation else ""))
    if report.group:
        print(f"group: order {report.group['order']}, {report.group['label'] or 'unrecognized'}")
    if report.factor_sizes is not None:
        print(f"fourier factors: {report.factor_sizes}")
    if not args.json:
        sys.stdout.write(text)
    return 0 if report.hadamard["valid"] else 1


def cmd_tensor(args) -> int:
    h = tensor(load_matrix(args.a), load_matrix(args.b))
    _emit(io.dumps_chm(h), args.output)
    return 0


def cmd_decompose(args) -> int:
    h = load_matrix(args.input)
    try:
        d = decompose(h, args.max_order)
    except HadamaqError as exc:
        print(f"{type(exc).__name__}: {exc}")
        return 1
    ok, residual = verify_decomposition(h, d)
    out = {"factor_sizes": list(d.factor_sizes), "witness": witness_json(d.witness), "verified": ok, "residual": residual}
    print(json.dumps(out, sort_keys=True))
    return 0 if ok else 1


def cmd_scramble(args) -> int:
    h = load_matrix(args.input)
    _emit(io.dumps_chm(scramble(h, args.seed, exact=not args.approx)), args.output)
    return 0


def cmd_mq(args) -> int:
    c = classify(parse_phase(args.q))
    pred = predicted_group(c)
    print(f"q={c.q} case={c.case_id} n={c.n} s={c.s} m={c.m}")
    print(f"predicted: {pred} (order {pred.order})")
    if not c.finite:
        return 0
    status = 0
    r = realized_group(c)
    fp = r.fingerprint
    print(f"realized: order {fp.order}, label {fp.label or 'unrecognized'}, "
          f"matches prediction: {r.matches_prediction}")
    print(f"modulo scalars: order {r.projective.order}, label {r.projective.label or 'unrecognized'}")
    if not r.matches_prediction:
        status = 1
    for name, holds in relations(c).items():
        print(f"relation {name}: {'ok' if holds else 'FAILS'}")
        status |= 0 if holds else 1
    if args.check_all:
        results = check_all(c)
        bad = [(k, s, res) for k, s, ok, res in results if not ok]
        worst = max(res for *_, res in results)
        print(f"factorization checks: {len(results) - len(bad)}/{len(results)} pass (max residual {worst:.3g})")
        if bad:
            status = 1
    return status


def cmd_square(args) -> int:
    square, _, _ = normalize(io.read_msq(args.file))
    fp = fingerprint(generate(rows_as_permutations(square)))
    print(json.dumps(fp.to_dict(), sort_keys=True, ensure_ascii=False))
    return 0


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hadamaq", description="Quantum permutation invariants of complex Hadamard matrices")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalogue", help="list or emit named matrices")
    c.add_argument("action", choices=["list", "emit"])
    c.add_argument("name", nargs="?")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_catalogue)

    a = sub.add_parser("analyze", help="full analysis report")
    a.add_argument("input", help=".chm file or catalogue spec")
    a.add_argument("--json", help="write the JSON report here instead of stdout")
    a.add_argument("--tol", type=float, default=DEFAULT_TOL)
    a.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    a.add_argument("--timings", action="store_true", help="include stage timings (non-deterministic)")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("tensor", help="tensor product of two matrices")
    t.add_argument("a")
    t.add_argument("b")
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_tensor)

    d = sub.add_parser("decompose", help="tensor-of-Fourier decomposition")
    d.add_argument("input")
    d.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    d.set_defaults(func=cmd_decompose)

    s = sub.add_parser("scramble", help="apply a random equivalence")
    s.add_argument("input")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--approx", action="store_true", help="use arbitrary (non root of unity) phases")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_scramble)

    m = sub.add_parser("mq", help="group of the 4x4 family M_q")
    m.add_argument("--q", required=True, help="k/l meaning exp(2 pi i k/l)")
    m.add_argument("--check-all", action="store_true")
    m.set_defaults(func=cmd_mq)

    sq = sub.add_parser("square", help="magic square utilities")
    sq.add_argument("action", choices=["group"])
    sq.add_argument("file")
    sq.set_defaults(func=cmd_square)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hadamaq: error: {exc}", file=sys.stderr)
        return 2
    except (HadamaqError, io.FormatError, OSError) as exc:
        print(f"hadamaq: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1 if isinstance(exc, (NotHadamard, io.FormatError)) else 2


if __name__ == "__main__":
    sys.exit(main())
