"""Text format for automata, plus CSV export of norm traces.

The `.pa` format is line oriented. Blank lines and lines whose first
non-space character is ``#`` are ignored. Every other line is
``key: tokens...`` with whitespace-separated tokens:

    format: pa/1
    states: NAME ...
    letters: NAME ...
    initial: NAME FRACTION [NAME FRACTION ...]
    accepting: [NAME ...]
    row: STATE LETTER TARGET FRACTION [TARGET FRACTION ...]

`format` must come first; `states`, `letters`, `initial` and `accepting`
appear exactly once; one `row` line per (state, letter) pair. Names are
free-form tokens without whitespace, probabilities are exact ``p/q`` or
integer literals and are canonicalized on read (``2/4`` reads as ``1/2``).

Automata produced by the constructions carry their role assignments in an
optional metadata block, so downstream tools recover roles without
guessing from names:

    lift.qf: NAME          lift.qn: NAME        lift.dollar: LETTER
    lift.source: NAME ...

    twin.hash: LETTER      twin.q0: NAME        twin.q0hat: NAME
    twin.qf: NAME          twin.qn: NAME        twin.dollar: LETTER
    twin.pair: ORIGINAL HAT                     (one line per pair)

`parse_pa` returns a `TwinPa` or `LiftedPa` when the corresponding block
is present, otherwise a plain `Pa`.
"""
from __future__ import annotations

import csv
from fractions import Fraction
from typing import IO, Sequence

from .core import Dist, InputError, Pa, ValidationError, as_prob
from .reduction import LiftedPa, TwinPa
from .semantics import NormTrace

_LIFT_KEYS = ("lift.qf", "lift.qn", "lift.dollar", "lift.source")
_TWIN_KEYS = ("twin.hash", "twin.q0", "twin.q0hat", "twin.qf", "twin.qn", "twin.dollar")
_SINGLE_KEYS = {"format", "states", "letters", "initial", "accepting", *_LIFT_KEYS, *_TWIN_KEYS}
_REPEATED_KEYS = {"row", "twin.pair"}


class FormatError(InputError):
    """A document violates the format grammar."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def _mass_pairs(tokens: list[str], line: int, what: str) -> dict[str, Fraction]:
    if not tokens:
        raise FormatError(f"{what} needs at least one state/probability pair", line)
    if len(tokens) % 2:
        raise FormatError(f"{what} has an odd number of tokens", line)
    out: dict[str, Fraction] = {}
    for name, literal in zip(tokens[::2], tokens[1::2]):
        if name in out:
            raise FormatError(f"{what} mentions {name!r} twice", line)
        try:
            out[name] = as_prob(literal)
        except InputError as exc:
            raise FormatError(str(exc), line) from None
    return out


def parse_pa(text: str, *, require_valid: bool = True) -> Pa | LiftedPa | TwinPa:
    """Parse a `.pa` document.

    With `require_valid` (the default) the assembled automaton must pass
    validation; otherwise only the grammar is enforced, so broken automata
    can be loaded for diagnosis.
    """
    singles: dict[str, tuple[list[str], int]] = {}
    rows: list[tuple[list[str], int]] = []
    pairs: list[tuple[list[str], int]] = []
    first_key: str | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, rest = stripped.partition(":")
        key = key.strip()
        if not sep:
            raise FormatError("expected 'key: tokens...'", lineno)
        tokens = rest.split()
        if first_key is None:
            first_key = key
            if key != "format":
                raise FormatError("document must start with 'format: pa/1'", lineno)
        if key == "row":
            rows.append((tokens, lineno))
        elif key == "twin.pair":
            pairs.append((tokens, lineno))
        elif key in _SINGLE_KEYS:
            if key in singles:
                raise FormatError(f"duplicate {key!r} line", lineno)
            singles[key] = (tokens, lineno)
        else:
            raise FormatError(f"unknown key {key!r}", lineno)

    if "format" not in singles:
        raise FormatError("missing 'format: pa/1' line")
    fmt_tokens, fmt_line = singles["format"]
    if fmt_tokens != ["pa/1"]:
        raise FormatError(f"unsupported format {' '.join(fmt_tokens)!r}", fmt_line)
    for required in ("states", "letters", "initial", "accepting"):
        if required not in singles:
            raise FormatError(f"missing {required!r} line")

    state_tokens, state_line = singles["states"]
    if not state_tokens:
        raise FormatError("at least one state is required", state_line)
    if len(set(state_tokens)) != len(state_tokens):
        raise FormatError("duplicate state names", state_line)
    letter_tokens, letter_line = singles["letters"]
    if len(set(letter_tokens)) != len(letter_tokens):
        raise FormatError("duplicate letters", letter_line)

    initial = _mass_pairs(*singles["initial"], what="initial distribution")
    accepting = singles["accepting"][0]

    delta: dict[tuple[str, str], Dist] = {}
    for tokens, lineno in rows:
        if len(tokens) < 4:
            raise FormatError("row needs STATE LETTER and at least one target pair", lineno)
        state, letter = tokens[0], tokens[1]
        if (state, letter) in delta:
            raise FormatError(f"duplicate row for ({state},{letter})", lineno)
        delta[(state, letter)] = Dist(_mass_pairs(tokens[2:], lineno, what="row"))

    pa = Pa(state_tokens, letter_tokens, initial, delta, accepting)
    if require_valid:
        report = pa.validate()
        if not report.ok:
            raise ValidationError(report)

    has_lift = any(k in singles for k in _LIFT_KEYS)
    has_twin = any(k in singles for k in _TWIN_KEYS) or pairs
    if has_lift and has_twin:
        raise FormatError("a document cannot carry both lift and twin metadata")

    def single_token(key: str) -> str:
        tokens, lineno = singles[key]
        if len(tokens) != 1:
            raise FormatError(f"{key} needs exactly one token", lineno)
        return tokens[0]

    if has_twin:
        for key in _TWIN_KEYS:
            if key not in singles:
                raise FormatError(f"twin metadata incomplete: missing {key!r}")
        if not pairs:
            raise FormatError("twin metadata incomplete: no twin.pair lines")
        twin_of: dict[str, str] = {}
        hats_seen: set[str] = set()
        for tokens, lineno in pairs:
            if len(tokens) != 2:
                raise FormatError("twin.pair needs ORIGINAL HAT", lineno)
            orig, hat = tokens
            if orig in twin_of or hat in hats_seen:
                raise FormatError(f"duplicate twin.pair entry for {orig!r}/{hat!r}", lineno)
            twin_of[orig] = hat
            hats_seen.add(hat)
        return TwinPa(
            pa=pa,
            twin_of=twin_of,
            hash=single_token("twin.hash"),
            q0=single_token("twin.q0"),
            q0_hat=single_token("twin.q0hat"),
            q_f=single_token("twin.qf"),
            q_n=single_token("twin.qn"),
            dollar=single_token("twin.dollar"),
        )
    if has_lift:
        for key in _LIFT_KEYS:
            if key not in singles:
                raise FormatError(f"lift metadata incomplete: missing {key!r}")
        return LiftedPa(
            pa=pa,
            q_f=single_token("lift.qf"),
            q_n=single_token("lift.qn"),
            dollar=single_token("lift.dollar"),
            source_states=frozenset(singles["lift.source"][0]),
        )
    return pa


def _check_token(name: str, what: str) -> str:
    if not name or name != "".join(name.split()):
        raise InputError(f"{what} {name!r} cannot be serialized (empty or whitespace)")
    return name


def _mass_tokens(dist: Dist, order: Sequence[str]) -> str:
    parts: list[str] = []
    for q in order:
        p = dist.mass(q)
        if p:
            parts.append(q)
            parts.append(str(p))
    return " ".join(parts)


def serialize_pa(obj: Pa | LiftedPa | TwinPa) -> str:
    """Serialize deterministically: declared order everywhere, zero masses
    dropped, probabilities in lowest terms. Round-trips through `parse_pa`."""
    if isinstance(obj, TwinPa):
        pa, lifted, twinned = obj.pa, None, obj
    elif isinstance(obj, LiftedPa):
        pa, lifted, twinned = obj.pa, obj, None
    else:
        pa, lifted, twinned = obj, None, None

    report = pa.validate()
    if not report.ok:
        raise ValidationError(report)
    for q in pa.states:
        _check_token(q, "state name")
    for a in pa.alphabet:
        _check_token(a, "letter")

    lines = ["format: pa/1"]
    lines.append("states: " + " ".join(pa.states))
    lines.append(("letters: " + " ".join(pa.alphabet)).rstrip())
    lines.append("initial: " + _mass_tokens(pa.initial, pa.states))
    lines.append(("accepting: " + " ".join(q for q in pa.states if q in pa.accepting)).rstrip())
    for q in pa.states:
        for a in pa.alphabet:
            lines.append(f"row: {q} {a} " + _mass_tokens(pa.delta[(q, a)], pa.states))
    if lifted is not None:
        lines.append(f"lift.qf: {lifted.q_f}")
        lines.append(f"lift.qn: {lifted.q_n}")
        lines.append(f"lift.dollar: {lifted.dollar}")
        source = [q for q in pa.states if q in lifted.source_states]
        lines.append("lift.source: " + " ".join(source))
    if twinned is not None:
        lines.append(f"twin.hash: {twinned.hash}")
        lines.append(f"twin.q0: {twinned.q0}")
        lines.append(f"twin.q0hat: {twinned.q0_hat}")
        lines.append(f"twin.qf: {twinned.q_f}")
        lines.append(f"twin.qn: {twinned.q_n}")
        lines.append(f"twin.dollar: {twinned.dollar}")
        for q in pa.states:
            if q in twinned.twin_of:
                lines.append(f"twin.pair: {q} {twinned.twin_of[q]}")
    return "\n".join(lines) + "\n"


def load_pa(path: str, *, require_valid: bool = True) -> Pa | LiftedPa | TwinPa:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_pa(text, require_valid=require_valid)


def save_pa(obj: Pa | LiftedPa | TwinPa, path: str) -> None:
    text = serialize_pa(obj)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def write_trace_csv(states: Sequence[str], trace: NormTrace, fh: IO[str]) -> None:
    """One CSV row per trace entry: step, letter, norm, then the exact mass
    on every state in declared order. Masses are rational strings, never floats."""
    writer = csv.writer(fh)
    writer.writerow(["step", "letter", "norm", *states])
    for entry in trace.entries:
        writer.writerow([
            str(entry.step),
            entry.letter or "",
            str(entry.norm),
            *[str(entry.dist.mass(q)) for q in states],
        ])


def read_trace_csv(fh: IO[str]) -> tuple[tuple[str, ...], list[dict[str, Fraction]]]:
    """Read back a trace CSV; returns the state column names and, per row,
    the exact mass map. Used to confirm that exported rows re-sum to 1."""
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("empty trace CSV") from None
    if header[:3] != ["step", "letter", "norm"]:
        raise FormatError(f"unexpected trace header {header[:3]}")
    states = tuple(header[3:])
    out: list[dict[str, Fraction]] = []
    for row in reader:
        if len(row) != len(header):
            raise FormatError(f"trace row has {len(row)} fields, header has {len(header)}")
        out.append({q: as_prob(text) for q, text in zip(states, row[3:])})
    return states, out
