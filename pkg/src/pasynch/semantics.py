"""Distribution evolution of a probabilistic automaton along finite words."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .core import Dist, InputError, Pa, Word, ZERO


def step(pa: Pa, d: Dist, letter: str) -> Dist:
    """One evolution step: push each unit of mass along its transition row."""
    if letter not in pa.letter_set:
        raise InputError(f"unknown letter {letter!r}")
    acc: dict[str, Fraction] = {}
    for q, p in d.nonzero():
        for target, m in pa.row(q, letter).nonzero():
            acc[target] = acc.get(target, ZERO) + p * m
    return Dist(acc)


def outcome(pa: Pa, word: Sequence[str]) -> list[Dist]:
    """The |word|+1 distributions visited while reading `word` from the initial one."""
    w = pa.check_word(word)
    dists = [pa.initial]
    for a in w:
        dists.append(step(pa, dists[-1], a))
    return dists


def acceptance_probability(pa: Pa, word: Sequence[str]) -> Fraction:
    """Total final mass on accepting states; 0 when the accepting set is empty."""
    final = outcome(pa, word)[-1]
    return sum((final.mass(q) for q in pa.accepting), ZERO)


@dataclass(frozen=True)
class TraceEntry:
    step: int
    letter: str | None  # None on the initial entry
    dist: Dist
    norm: Fraction


@dataclass(frozen=True)
class NormTrace:
    """Per-step record of a run: distribution plus its norm at every step."""

    entries: tuple[TraceEntry, ...]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> TraceEntry:
        return self.entries[i]

    @property
    def norms(self) -> tuple[Fraction, ...]:
        return tuple(e.norm for e in self.entries)


def norm_trace(pa: Pa, word: Sequence[str]) -> NormTrace:
    w = pa.check_word(word)
    dists = outcome(pa, w)
    entries = [TraceEntry(0, None, dists[0], dists[0].norm())]
    for i, a in enumerate(w):
        entries.append(TraceEntry(i + 1, a, dists[i + 1], dists[i + 1].norm()))
    return NormTrace(tuple(entries))


def lasso_trace(pa: Pa, stem: Sequence[str], loop: Sequence[str], reps: int) -> NormTrace:
    """Trace of stem·loop^reps, a finite unrolling of an ultimately periodic word."""
    loop_w = tuple(loop)
    if not loop_w:
        raise InputError("lasso loop must be nonempty")
    if reps < 0:
        raise InputError(f"repetition count must be >= 0, got {reps}")
    return norm_trace(pa, tuple(stem) + loop_w * reps)


class MaxNorm(NamedTuple):
    norm: Fraction
    step: int


def max_norm_from(trace: NormTrace, start: int) -> MaxNorm:
    """Largest norm at or after entry `start`; the earliest step wins ties."""
    if not 0 <= start < len(trace.entries):
        raise InputError(f"start index {start} outside trace of length {len(trace.entries)}")
    best = trace.entries[start]
    for e in trace.entries[start + 1:]:
        if e.norm > best.norm:
            best = e
    return MaxNorm(best.norm, best.step)
