"""Command-line front end.

Words on the command line are letter tokens joined by ".", so
multi-character letters like "@sym:$" stay unambiguous; the empty string
is the empty word. Schedules are ","-separated words.

Exit codes: 0 success/pass, 1 check failed, 2 input error, 3 budget
exceeded.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .analysis import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    bounded_value_search,
    certificate_check,
    dollar_absorption_check,
    half_bound_check,
    witness_schedule_search,
)
from .core import InputError, Pa, PaError, Word
from .paformat import load_pa, save_pa, write_trace_csv
from .reduction import LiftedPa, TwinPa, Value1Instance, check_p1, check_p2, lift, twin
from .semantics import acceptance_probability, lasso_trace, norm_trace, outcome


def _parse_word(text: str) -> Word:
    if text == "":
        return ()
    parts = text.split(".")
    if any(not p for p in parts):
        raise InputError(f"empty letter token in word {text!r}")
    return tuple(parts)


def _format_word(word: Sequence[str]) -> str:
    return ".".join(word)


def _parse_schedule(text: str) -> list[Word]:
    return [_parse_word(part) for part in text.split(",")]


def _pa_of(obj: Pa | LiftedPa | TwinPa) -> Pa:
    return obj.pa if isinstance(obj, (LiftedPa, TwinPa)) else obj


def _require_twin(obj: Pa | LiftedPa | TwinPa, path: str) -> TwinPa:
    if not isinstance(obj, TwinPa):
        raise InputError(f"{path} carries no twin metadata block")
    return obj


def _require_lifted(obj: Pa | LiftedPa | TwinPa, path: str) -> LiftedPa:
    if not isinstance(obj, LiftedPa):
        raise InputError(f"{path} carries no lift metadata block")
    return obj


def _emit_trace(pa: Pa, trace, csv_path: str | None) -> None:
    if csv_path:
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            write_trace_csv(pa.states, trace, fh)
    else:
        write_trace_csv(pa.states, trace, sys.stdout)


def _report(result) -> int:
    if result.ok:
        print("PASS")
        return 0
    print(f"FAIL: {result.reason}")
    return 1


def _cmd_validate(args) -> int:
    obj = load_pa(args.file, require_valid=False)
    report = _pa_of(obj).validate()
    if report.ok:
        print("ok")
        return 0
    for violation in report.violations:
        print(f"violation: {violation}")
    return 1


def _cmd_run(args) -> int:
    pa = _pa_of(load_pa(args.file))
    final = outcome(pa, _parse_word(args.word))[-1]
    for q in pa.states:
        p = final.mass(q)
        if p:
            print(f"{q} {p}")
    return 0


def _cmd_accept(args) -> int:
    pa = _pa_of(load_pa(args.file))
    print(acceptance_probability(pa, _parse_word(args.word)))
    return 0


def _cmd_trace(args) -> int:
    pa = _pa_of(load_pa(args.file))
    _emit_trace(pa, norm_trace(pa, _parse_word(args.word)), args.csv)
    return 0


def _cmd_lasso(args) -> int:
    pa = _pa_of(load_pa(args.file))
    trace = lasso_trace(pa, _parse_word(args.stem), _parse_word(args.loop), args.reps)
    _emit_trace(pa, trace, args.csv)
    return 0


def _cmd_lift(args) -> int:
    instance = Value1Instance(_pa_of(load_pa(args.file)))
    save_pa(lift(instance), args.output)
    return 0


def _cmd_twin(args) -> int:
    lifted = _require_lifted(load_pa(args.file), args.file)
    save_pa(twin(lifted), args.output)
    return 0


def _cmd_check_p1(args) -> int:
    c = _require_twin(load_pa(args.file), args.file)
    return _report(check_p1(c, _parse_word(args.v1), _parse_word(args.v2)))


def _cmd_check_p2(args) -> int:
    lifted = _require_lifted(load_pa(args.lifted), args.lifted)
    c = _require_twin(load_pa(args.twin), args.twin)
    return _report(check_p2(lifted, c, _parse_word(args.word)))


def _cmd_search(args) -> int:
    instance = Value1Instance(_pa_of(load_pa(args.file)))
    result = bounded_value_search(instance, args.max_len, budget=args.budget)
    print(f"word: {_format_word(result.best_word)}")
    print(f"prob: {result.best_prob}")
    print(f"explored: {result.explored}")
    print(f"exhausted: {'true' if result.exhausted else 'false'}")
    return 0


def _cmd_schedule(args) -> int:
    instance = Value1Instance(_pa_of(load_pa(args.file)))
    result = witness_schedule_search(instance, args.k, args.max_len)
    for i, word in enumerate(result.words, start=1):
        print(f"u{i}: {_format_word(word)}")
    if result.ok:
        return 0
    print(
        f"no word of length <= {args.max_len} exceeds threshold 1-2^-{result.failed_at}",
        file=sys.stderr,
    )
    return 1


def _cmd_certify(args) -> int:
    c = _require_twin(load_pa(args.file), args.file)
    cert = certificate_check(c, _parse_schedule(args.schedule))
    for i, (pos, norm, threshold) in enumerate(
            zip(cert.checkpoints, cert.norms, cert.thresholds), start=1):
        verdict = "ok" if norm > threshold else "FAIL"
        print(f"checkpoint {i}: position={pos} norm={norm} threshold={threshold} {verdict}")
    print("PASS" if cert.ok else "FAIL")
    return 0 if cert.ok else 1


def _cmd_absorb(args) -> int:
    c = _require_twin(load_pa(args.file), args.file)
    return _report(dollar_absorption_check(c, _parse_word(args.prefix), args.horizon))


def _cmd_halfbound(args) -> int:
    c = _require_twin(load_pa(args.file), args.file)
    return _report(half_bound_check(c, _parse_word(args.word)))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pasynch",
        description="Exact-rational probabilistic-automata toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an automaton file against all invariants")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("run", help="print the final distribution after a word")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("accept", help="print the acceptance probability of a word")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.set_defaults(func=_cmd_accept)

    p = sub.add_parser("trace", help="emit the norm trace of a word as CSV")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--csv", help="write to this file instead of stdout")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("lasso", help="norm trace of stem plus repeated loop")
    p.add_argument("file")
    p.add_argument("--stem", default="")
    p.add_argument("--loop", required=True)
    p.add_argument("--reps", required=True, type=int)
    p.add_argument("--csv", help="write to this file instead of stdout")
    p.set_defaults(func=_cmd_lasso)

    p = sub.add_parser("lift", help="adjoin sinks and the commit letter")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("twin", help="duplicate states and add the reset letter")
    p.add_argument("file", help="a lift output (must carry the lift metadata block)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_twin)

    p = sub.add_parser("check-p1", help="reset-replay check on a twin automaton")
    p.add_argument("file")
    p.add_argument("--v1", required=True)
    p.add_argument("--v2", required=True)
    p.set_defaults(func=_cmd_check_p1)

    p = sub.add_parser("check-p2", help="pair-halving check of a twin against its lift")
    p.add_argument("lifted")
    p.add_argument("twin")
    p.add_argument("--word", required=True)
    p.set_defaults(func=_cmd_check_p2)

    p = sub.add_parser("search", help="exhaustive acceptance-probability sweep")
    p.add_argument("file")
    p.add_argument("--max-len", required=True, type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("schedule", help="find words beating the 1-2^-i ladder")
    p.add_argument("file")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--max-len", required=True, type=int)
    p.set_defaults(func=_cmd_schedule)

    p = sub.add_parser("certify", help="checkpoint-norm certificate for a schedule")
    p.add_argument("file")
    p.add_argument("--schedule", required=True, help="comma-separated words")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("absorb", help="commit-letter absorption check")
    p.add_argument("file")
    p.add_argument("--prefix", required=True)
    p.add_argument("--horizon", required=True, type=int)
    p.set_defaults(func=_cmd_absorb)

    p = sub.add_parser("halfbound", help="norms stay <= 1/2 without the commit letter")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.set_defaults(func=_cmd_halfbound)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
