"""Command-line interface: build, mix, decode, verify, rate.

Exit codes: 0 ok, 2 invalid input, 3 brute-force guard, 4 invariant violated.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import checks
from .codec import build_codebook, codebook_from_json, decode_detailed, mix_indices
from .compositions import MixtureDocument
from .errors import DecodeError, InvariantViolation, MCError, ValidationError
from .rates import rate_report


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _read_json(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(args, payload: dict, summary: str) -> None:
    """Write the JSON payload to --out; print JSON with --json, else the summary."""
    text = json.dumps(payload, indent=1) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise ValidationError(f"cannot write {args.out}: {exc.strerror}") from exc
    if args.json:
        sys.stdout.write(text)
    elif summary:
        print(summary)


def cmd_build(args) -> int:
    book = build_codebook(args.m, args.h)
    payload = book.to_dict()
    summary = f"{len(book)} codewords, n={book.sidon.base_n} (padded {book.layout.n}), N={book.N}"
    if not args.out and not args.json:
        summary = book.to_json().rstrip("\n")
    _emit(args, payload, summary)
    return 0


def cmd_mix(args) -> int:
    book = codebook_from_json(_read_json(args.codebook))
    doc = mix_indices(book, args.indices)
    payload = doc.to_shuffled_dict(args.seed)
    if not args.out and not args.json:
        summary = json.dumps(payload, indent=1)
    else:
        summary = f"mixture of {len(args.indices)} codewords, {len(doc.entries)} compositions, seed {args.seed}"
    _emit(args, payload, summary)
    return 0


def cmd_decode(args) -> int:
    book = codebook_from_json(_read_json(args.codebook))
    try:
        doc = MixtureDocument.from_json(_read_json(args.mixture))
    except ValidationError as exc:
        raise DecodeError("load", str(exc)) from exc
    result = decode_detailed(book, doc, args.strategy)
    report = result.report()
    _emit(args, report, f"h_bar {result.h_bar}; indices {' '.join(map(str, result.indices))}")
    return 0


def cmd_verify(args) -> int:
    book = codebook_from_json(_read_json(args.codebook))
    results = checks.run_scope(book, args.scope, args.sample, args.seed, args.limit)
    ok = all(c.ok for c in results)
    payload = {"scope": args.scope, "ok": ok, "checks": [c.to_dict() for c in results]}
    lines = []
    for c in results:
        line = f"{'PASS' if c.ok else 'FAIL'}  {c.name}"
        if c.bound is not None:
            line += f"  bound {c.bound}"
        if c.observed is not None:
            line += f"  observed {c.observed}  slack {float(c.slack):g}"
        if c.detail is not None:
            line += f"  witness {json.dumps(c.detail)}"
        lines.append(line)
    _emit(args, payload, "\n".join(lines))
    if not ok:
        raise InvariantViolation(f"verify --scope {args.scope} found violations")
    return 0


def cmd_rate(args) -> int:
    report = rate_report(args.h, args.m)
    lines = [f"{'m':>3} {'n':>4} {'N':>5} {'size':>7}  rate      (target 1/{args.h})"]
    for row in report.rows:
        lines.append(f"{row.m:>3} {row.n:>4} {row.N:>5} {row.size:>7}  {row.rate:.6f}")
    lines.extend(f"violation: {v}" for v in report.violations)
    _emit(args, report.to_dict(), "\n".join(lines))
    if report.violations:
        raise InvariantViolation("rate report invariants violated")
    return 0


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the JSON result to this file")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for shuffles and sampling")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print JSON to stdout")

    parser = argparse.ArgumentParser(prog="mccodes", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="build a codebook")
    p.add_argument("--m", type=int, required=True, help="field degree")
    p.add_argument("--h", type=int, required=True, help="maximum mixture size")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("mix", parents=[common], help="simulate a mixture readout")
    p.add_argument("--codebook", required=True)
    p.add_argument("--indices", type=_int_list, required=True, help="comma-separated column indices")
    p.set_defaults(func=cmd_mix)

    p = sub.add_parser("decode", parents=[common], help="decode a mixture readout")
    p.add_argument("--codebook", required=True)
    p.add_argument("--mixture", required=True)
    p.add_argument("--strategy", choices=("brute", "syndrome"), default="brute")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--scope", choices=checks.SCOPES, required=True)
    p.add_argument("--codebook", required=True)
    p.add_argument("--sample", type=int, help="mc scope: check this many random codewords")
    p.add_argument("--limit", type=int, help="override the brute-force guard")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rate", parents=[common], help="tabulate rates")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--m", type=_int_list, default=[], help="comma-separated field degrees")
    p.set_defaults(func=cmd_rate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    for name, default in (("out", None), ("seed", 0), ("json", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except MCError as exc:
        sys.stdout.flush()
        print(f"error: {exc}", file=sys.stderr)
        if args.json:
            err = {"error": str(exc), "exit_code": exc.exit_code}
            if isinstance(exc, DecodeError):
                err.update(stage=exc.stage, reason=exc.reason)
            print(json.dumps(err))
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
