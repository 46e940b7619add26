"""Exact rational scalars and their two-point extension with +/- infinity.

Every quantity that enters a geometric decision in this package is an exact
rational: a Python ``int`` or a ``fractions.Fraction`` in lowest terms.
Floats are rejected at the boundary, never silently converted, so that
membership tests and carve decisions are bit-reproducible.

``NEG_INF`` and ``POS_INF`` are interned sentinels that extend the rational
order to unbounded interval endpoints.  They support the comparison
operators against rationals and each other, so ``min``/``max``/``sorted``
work on mixed values.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Union

from .errors import DomainError, ParseError


class _NegInf:
    __slots__ = ()

    def __lt__(self, other):
        if other is NEG_INF:
            return False
        if other is POS_INF or isinstance(other, numbers.Rational):
            return True
        return NotImplemented

    def __le__(self, other):
        if other is NEG_INF or other is POS_INF or isinstance(other, numbers.Rational):
            return True
        return NotImplemented

    def __gt__(self, other):
        if other is NEG_INF or other is POS_INF or isinstance(other, numbers.Rational):
            return False
        return NotImplemented

    def __ge__(self, other):
        if other is NEG_INF:
            return True
        if other is POS_INF or isinstance(other, numbers.Rational):
            return False
        return NotImplemented

    def __eq__(self, other):
        return other is NEG_INF

    def __hash__(self):
        return hash("vclab.NEG_INF")

    def __neg__(self):
        return POS_INF

    def __repr__(self):
        return "-inf"

    def __reduce__(self):
        return (_restore_neg_inf, ())


class _PosInf:
    __slots__ = ()

    def __lt__(self, other):
        if other is POS_INF or other is NEG_INF or isinstance(other, numbers.Rational):
            return False
        return NotImplemented

    def __le__(self, other):
        if other is POS_INF:
            return True
        if other is NEG_INF or isinstance(other, numbers.Rational):
            return False
        return NotImplemented

    def __gt__(self, other):
        if other is POS_INF:
            return False
        if other is NEG_INF or isinstance(other, numbers.Rational):
            return True
        return NotImplemented

    def __ge__(self, other):
        if other is POS_INF or other is NEG_INF or isinstance(other, numbers.Rational):
            return True
        return NotImplemented

    def __eq__(self, other):
        return other is POS_INF

    def __hash__(self):
        return hash("vclab.POS_INF")

    def __neg__(self):
        return NEG_INF

    def __repr__(self):
        return "+inf"

    def __reduce__(self):
        return (_restore_pos_inf, ())


NEG_INF = _NegInf()
POS_INF = _PosInf()


def _restore_neg_inf():
    # Pickle hook: keep NEG_INF a process-wide singleton so identity checks
    # hold for values that crossed a process boundary.
    return NEG_INF


def _restore_pos_inf():
    return POS_INF

# Exact rational.  Integral values are stored as plain ints; Fraction and int
# interoperate exactly under comparison, arithmetic and hashing.
Scalar = Union[int, Fraction]
ExtendedScalar = Union[Scalar, _NegInf, _PosInf]


def as_scalar(value) -> Scalar:
    """Normalize a rational-valued input to the canonical Scalar form.

    Accepts int, Fraction, any numbers.Rational, and strings like ``"3/4"``
    or ``"-2"``.  Floats are rejected: exactness is the whole point.
    """
    if type(value) is int:
        return value
    if isinstance(value, bool):
        raise DomainError(f"not a rational scalar: {value!r}")
    if isinstance(value, int):
        return int(value)
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, float):
        raise DomainError(f"float rejected (exact rationals only): {value!r}")
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, numbers.Rational):
        return as_scalar(Fraction(value.numerator, value.denominator))
    raise DomainError(f"not a rational scalar: {value!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p"`` or ``"p/q"`` with optional sign; exact, no floats."""
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            value = Fraction(int(num.strip()), int(den.strip()))
        else:
            value = Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal: {text!r}") from exc
    return value.numerator if value.denominator == 1 else value


def scalar_str(value: Scalar) -> str:
    """Canonical string form: ``"p"`` for integers, ``"p/q"`` otherwise."""
    value = as_scalar(value)
    if isinstance(value, int):
        return str(value)
    return f"{value.numerator}/{value.denominator}"


def is_finite(value: ExtendedScalar) -> bool:
    return not (value is NEG_INF or value is POS_INF)


def midpoint(a: Scalar, b: Scalar) -> Scalar:
    total = a + b
    if isinstance(total, int):
        half, rem = divmod(total, 2)
        return half if rem == 0 else Fraction(total, 2)
    return as_scalar(Fraction(total, 2))
