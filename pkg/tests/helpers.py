"""Seeded random generators shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

from pasynch import Pa, Value1Instance, Word

LETTER_POOL = ("a", "b", "c")


def random_dist(rng: random.Random, states, max_den: int = 8) -> dict[str, Fraction]:
    """Random rational distribution: a composition of a denominator <= max_den."""
    den = rng.randint(1, max_den)
    cuts = sorted(rng.randint(0, den) for _ in range(len(states) - 1))
    bounds = [0, *cuts, den]
    parts = [bounds[i + 1] - bounds[i] for i in range(len(states))]
    return {s: Fraction(n, den) for s, n in zip(states, parts) if n}


def random_pa(
    rng: random.Random,
    *,
    max_states: int = 6,
    max_letters: int = 3,
    max_den: int = 8,
    dirac_initial: bool = False,
    min_accepting: int = 0,
) -> Pa:
    n = rng.randint(1, max_states)
    k = rng.randint(1, max_letters)
    states = tuple(f"q{i}" for i in range(n))
    letters = LETTER_POOL[:k]
    delta = {(q, a): random_dist(rng, states, max_den) for q in states for a in letters}
    if dirac_initial:
        initial = {states[0]: 1}
    else:
        initial = random_dist(rng, states, max_den)
    accepting = tuple(rng.sample(states, rng.randint(min_accepting, n)))
    return Pa(states, letters, initial, delta, accepting)


def random_value1_instance(
    rng: random.Random,
    *,
    max_states: int = 6,
    max_letters: int = 3,
    max_den: int = 8,
) -> Value1Instance:
    pa = random_pa(
        rng,
        max_states=max_states,
        max_letters=max_letters,
        max_den=max_den,
        dirac_initial=True,
        min_accepting=1,
    )
    return Value1Instance(pa)


def random_word(rng: random.Random, alphabet, max_len: int, min_len: int = 0) -> Word:
    length = rng.randint(min_len, max_len)
    return tuple(rng.choice(alphabet) for _ in range(length))
