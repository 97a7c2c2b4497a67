"""Exact semifield arithmetic.

Two concrete instances are provided:

* ``PositiveRational`` -- arbitrary-precision positive rationals under
  ordinary addition and multiplication.
* ``TropicalNumber`` -- exact rationals under (max, +): "addition" is max
  and "multiplication" is ordinary +.

Neither instance contains a zero element, so every computation built on
top of them is subtraction-free and division is always defined.  All
values are immutable; exact equality is the intended test oracle, so no
floating point appears anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union


class SemifieldMismatchError(TypeError):
    """Two values from different semifield instances were combined."""


class PositiveRational:
    """A positive rational number, stored reduced via ``Fraction``."""

    __slots__ = ("value",)

    def __init__(self, numerator: Union[int, Fraction], denominator: int = 1):
        v = Fraction(numerator, denominator)
        if v <= 0:
            raise ValueError(f"positive rational required, got {v}")
        object.__setattr__(self, "value", v)

    def __setattr__(self, name, val):
        raise AttributeError("PositiveRational is immutable")

    def __eq__(self, other):
        return isinstance(other, PositiveRational) and self.value == other.value

    def __hash__(self):
        return hash(("Q+", self.value))

    def __repr__(self):
        return f"PositiveRational({self.value})"


class TropicalNumber:
    """An exact rational viewed as an element of the max-plus semifield."""

    __slots__ = ("value",)

    def __init__(self, value: Union[int, Fraction], denominator: int = 1):
        object.__setattr__(self, "value", Fraction(value, denominator))

    def __setattr__(self, name, val):
        raise AttributeError("TropicalNumber is immutable")

    def __eq__(self, other):
        return isinstance(other, TropicalNumber) and self.value == other.value

    def __hash__(self):
        return hash(("T", self.value))

    def __repr__(self):
        return f"TropicalNumber({self.value})"


SemifieldValue = Union[PositiveRational, TropicalNumber]


def _check_pair(a: SemifieldValue, b: SemifieldValue) -> None:
    if type(a) is not type(b):
        raise SemifieldMismatchError(f"cannot combine {type(a).__name__} with {type(b).__name__}")
    if not isinstance(a, (PositiveRational, TropicalNumber)):
        raise SemifieldMismatchError(f"not a semifield value: {a!r}")


def add(a: SemifieldValue, b: SemifieldValue) -> SemifieldValue:
    """Semifield addition: exact sum, or max in the tropical instance."""
    _check_pair(a, b)
    if isinstance(a, PositiveRational):
        return PositiveRational(a.value + b.value)
    return TropicalNumber(max(a.value, b.value))


def mul(a: SemifieldValue, b: SemifieldValue) -> SemifieldValue:
    """Semifield multiplication: exact product, or + in the tropical instance."""
    _check_pair(a, b)
    if isinstance(a, PositiveRational):
        return PositiveRational(a.value * b.value)
    return TropicalNumber(a.value + b.value)


def div(a: SemifieldValue, b: SemifieldValue) -> SemifieldValue:
    """Multiply by the inverse of ``b``; always defined (no zero exists)."""
    _check_pair(a, b)
    if isinstance(a, PositiveRational):
        return PositiveRational(a.value / b.value)
    return TropicalNumber(a.value - b.value)


def power(a: SemifieldValue, k: int) -> SemifieldValue:
    """k-fold product of ``a`` with itself; k may be negative or zero."""
    if isinstance(a, PositiveRational):
        return PositiveRational(a.value ** k)
    return TropicalNumber(a.value * k)


def one(a: SemifieldValue) -> SemifieldValue:
    """The multiplicative identity of ``a``'s instance."""
    if isinstance(a, PositiveRational):
        return PositiveRational(1)
    return TropicalNumber(0)


def product(values, like: SemifieldValue) -> SemifieldValue:
    """Product of an iterable of values; empty product is the identity."""
    acc = one(like)
    for v in values:
        acc = mul(acc, v)
    return acc


def sum_values(values, like: SemifieldValue) -> SemifieldValue:
    """Semifield sum of a non-empty iterable (empty sums have no meaning here)."""
    it = iter(values)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("semifield sum of an empty collection is undefined") from None
    for v in it:
        acc = add(acc, v)
    return acc


# ---------------------------------------------------------------------------
# Text encoding used by the JSON state documents: rationals as "p/q" (or
# "p" when q = 1), tropical numbers as "t:" followed by a fraction string.

def render(v: SemifieldValue) -> str:
    if isinstance(v, PositiveRational):
        return str(v.value)
    return "t:" + str(v.value)


def parse(text: str) -> SemifieldValue:
    text = text.strip()
    try:
        if text.startswith("t:"):
            return TropicalNumber(Fraction(text[2:]))
        return PositiveRational(Fraction(text))
    except ZeroDivisionError as exc:
        raise ValueError(f"bad semifield literal {text!r}") from exc
