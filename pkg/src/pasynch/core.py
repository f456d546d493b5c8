"""Exact data model for probabilistic automata.

States and letters are plain strings. Probability mass is held as
`fractions.Fraction` throughout, so every comparison the toolkit makes is
an exact rational identity. Floats are rejected at the door: a single
float would silently turn equality checks into tolerance games.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Word = tuple[str, ...]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class PaError(Exception):
    """Base class for all toolkit errors."""


class InputError(PaError):
    """A caller violated an operation's input contract."""


class ValidationError(InputError):
    """An automaton failed validation where a valid one was required."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid automaton: " + "; ".join(report.violations))


def as_prob(value: object) -> Fraction:
    """Coerce `value` to an exact probability in [0, 1].

    Accepts Fraction, int, and "p/q" or integer strings; Fraction keeps
    everything in lowest terms. Floats are refused.
    """
    if isinstance(value, float):
        raise InputError(f"float probability {value!r} rejected; use an exact rational")
    if isinstance(value, Fraction):
        p = value
    elif isinstance(value, int):
        p = Fraction(value)
    elif isinstance(value, str):
        try:
            p = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {value!r}: {exc}") from None
    else:
        raise InputError(f"cannot read a probability from {value!r}")
    if p < ZERO or p > ONE:
        raise InputError(f"probability {p} outside [0, 1]")
    return p


class Dist:
    """A finitely supported mass assignment over named states.

    Entries with explicit zero mass may be stored (constructions produce
    structural zeros); `support` excludes them and equality ignores them.
    A *valid* distribution sums to exactly 1. That invariant is enforced
    where distributions enter the system (`Pa.validate`, the construction
    entry points), not here, so malformed automata can still be loaded,
    inspected and reported on.
    """

    __slots__ = ("_mass",)

    def __init__(self, mass: Mapping[str, object]):
        store: dict[str, Fraction] = {}
        for state, value in dict(mass).items():
            if not isinstance(state, str) or not state:
                raise InputError(f"state names must be non-empty strings, got {state!r}")
            store[state] = as_prob(value)
        self._mass = store

    @classmethod
    def dirac(cls, state: str) -> "Dist":
        return cls({state: 1})

    def mass(self, state: str) -> Fraction:
        """Mass on `state`; 0 for states not mentioned."""
        return self._mass.get(state, ZERO)

    def __getitem__(self, state: str) -> Fraction:
        return self._mass.get(state, ZERO)

    def items(self) -> Iterable[tuple[str, Fraction]]:
        return self._mass.items()

    def nonzero(self) -> Iterator[tuple[str, Fraction]]:
        return ((s, p) for s, p in self._mass.items() if p)

    def support(self) -> frozenset[str]:
        return frozenset(s for s, p in self._mass.items() if p)

    def norm(self) -> Fraction:
        """Largest single-state mass (0 for an all-zero assignment)."""
        return max(self._mass.values(), default=ZERO)

    def total(self) -> Fraction:
        return sum(self._mass.values(), ZERO)

    def is_valid(self) -> bool:
        return self.total() == ONE

    def __eq__(self, other: object):
        if not isinstance(other, Dist):
            return NotImplemented
        return dict(self.nonzero()) == dict(other.nonzero())

    def __hash__(self):
        return hash(frozenset(self.nonzero()))

    def __repr__(self):
        inside = ", ".join(f"{s}: {p}" for s, p in sorted(self.nonzero()))
        return f"Dist({{{inside}}})"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of `Pa.validate`: empty violation list means the automaton is well formed."""

    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class CheckResult:
    """Pass/fail outcome of an exact checker, with the first violation found."""

    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


class Pa:
    """A complete probabilistic automaton.

    `states` and `alphabet` keep their declared order; serialization and
    search tie-breaking rely on it. `delta` maps every (state, letter)
    pair to the successor distribution. Instances are treated as immutable
    and may be shared freely; no operation mutates them.

    Construction is structurally permissive: rows that do not sum to 1,
    missing rows, or dangling names are reported by `validate` rather than
    rejected here, so that broken input files can be diagnosed.
    """

    __slots__ = ("states", "alphabet", "initial", "delta", "accepting",
                 "_state_set", "_letter_set")

    def __init__(
        self,
        states: Sequence[str],
        alphabet: Sequence[str],
        initial: Mapping[str, object] | Dist,
        delta: Mapping[tuple[str, str], Mapping[str, object] | Dist],
        accepting: Iterable[str] = (),
    ):
        self.states = tuple(states)
        self.alphabet = tuple(alphabet)
        self.initial = initial if isinstance(initial, Dist) else Dist(initial)
        self.delta = {
            key: (row if isinstance(row, Dist) else Dist(row))
            for key, row in dict(delta).items()
        }
        self.accepting = frozenset(accepting)
        self._state_set = frozenset(self.states)
        self._letter_set = frozenset(self.alphabet)

    @property
    def state_set(self) -> frozenset[str]:
        return self._state_set

    @property
    def letter_set(self) -> frozenset[str]:
        return self._letter_set

    def row(self, state: str, letter: str) -> Dist:
        """The transition distribution out of (state, letter)."""
        if state not in self._state_set:
            raise InputError(f"unknown state {state!r}")
        if letter not in self._letter_set:
            raise InputError(f"unknown letter {letter!r}")
        try:
            return self.delta[(state, letter)]
        except KeyError:
            raise InputError(f"delta incomplete at ({state},{letter})") from None

    def post(self, state: str, letter: str) -> frozenset[str]:
        """States reachable in one step from `state` on `letter` with positive mass."""
        return self.row(state, letter).support()

    def post_set(self, states: Iterable[str], letters: Iterable[str]) -> frozenset[str]:
        """Union of one-step successors over a set of states and a set of letters."""
        out: set[str] = set()
        for q in states:
            for a in letters:
                out |= self.post(q, a)
        return frozenset(out)

    def check_word(self, word: Sequence[str]) -> Word:
        """Normalize a word to a tuple, rejecting letters outside the alphabet."""
        w = tuple(word)
        for i, a in enumerate(w):
            if a not in self._letter_set:
                raise InputError(f"unknown letter {a!r} at position {i}")
        return w

    def validate(self) -> ValidationReport:
        """Collect every invariant violation instead of failing on the first."""
        v: list[str] = []
        seen: set[str] = set()
        for q in self.states:
            if not q:
                v.append("empty state name")
            elif q in seen:
                v.append(f"duplicate state name {q!r}")
            seen.add(q)
        seen = set()
        for a in self.alphabet:
            if not a:
                v.append("empty letter")
            elif a in seen:
                v.append(f"duplicate letter {a!r}")
            seen.add(a)

        for state, _ in self.initial.items():
            if state not in self._state_set:
                v.append(f"initial mass on unknown state {state!r}")
        total = self.initial.total()
        if total != ONE:
            v.append(f"initial distribution sums to {total}")

        for (q, a) in self.delta:
            if q not in self._state_set:
                v.append(f"delta row for unknown state {q!r}")
            elif a not in self._letter_set:
                v.append(f"delta row for unknown letter {a!r}")
        for q in self.states:
            for a in self.alphabet:
                row = self.delta.get((q, a))
                if row is None:
                    v.append(f"delta incomplete at ({q},{a})")
                    continue
                for target, _ in row.items():
                    if target not in self._state_set:
                        v.append(f"row ({q},{a}) targets unknown state {target!r}")
                total = row.total()
                if total != ONE:
                    v.append(f"row ({q},{a}) sums to {total}")

        for q in self.accepting:
            if q not in self._state_set:
                v.append(f"accepting state {q!r} not a state")
        return ValidationReport(tuple(v))

    def __eq__(self, other: object):
        if not isinstance(other, Pa):
            return NotImplemented
        return (self.states == other.states
                and self.alphabet == other.alphabet
                and self.initial == other.initial
                and self.accepting == other.accepting
                and self.delta == other.delta)

    __hash__ = None  # mutable-looking aggregate; identity hashing would mislead

    def __repr__(self):
        return (f"Pa({len(self.states)} states, {len(self.alphabet)} letters, "
                f"{len(self.accepting)} accepting)")
