"""Tiny worked instances used throughout the tests and the documentation."""
from __future__ import annotations

from .core import Pa
from .reduction import Value1Instance


def b_one() -> Value1Instance:
    """Two-state chain: every nonempty word is accepted with probability 1."""
    pa = Pa(
        states=("s0", "sA"),
        alphabet=("a",),
        initial={"s0": 1},
        delta={
            ("s0", "a"): {"sA": 1},
            ("sA", "a"): {"sA": 1},
        },
        accepting=("sA",),
    )
    return Value1Instance(pa)


def b_half() -> Value1Instance:
    """Coin flip into accept/reject sinks: every nonempty word scores exactly 1/2."""
    pa = Pa(
        states=("s0", "sA", "sR"),
        alphabet=("a",),
        initial={"s0": 1},
        delta={
            ("s0", "a"): {"sA": "1/2", "sR": "1/2"},
            ("sA", "a"): {"sA": 1},
            ("sR", "a"): {"sR": 1},
        },
        accepting=("sA",),
    )
    return Value1Instance(pa)
