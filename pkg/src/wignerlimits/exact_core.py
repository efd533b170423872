"""Lossless half-integers, exact signed radicals and a shared factorial table.

Rational numbers are plain :class:`fractions.Fraction` instances; they are
already reduced, sign-normalized and exact under ``+ - * /``.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "HalfInt",
    "Rational",
    "SignedRadical",
    "FactorialCache",
    "factorial",
    "radical_to_float",
    "half",
    "phase",
    "DEFAULT_GUARD_BITS",
    "DomainError",
    "ContractViolation",
]

Rational = Fraction


class DomainError(ValueError):
    """Raised for arguments outside the mathematical domain of an operation."""


class ContractViolation(AssertionError):
    """Raised when an internal precondition such as phase integrality fails."""


def _default_guard_bits() -> int:
    raw = os.environ.get("WIGNER_GUARD_BITS")
    if raw is None:
        return 64
    bits = int(raw)
    if bits < 32:
        raise ValueError("WIGNER_GUARD_BITS must be >= 32")
    return bits


DEFAULT_GUARD_BITS = _default_guard_bits()


@dataclass(frozen=True, eq=False)
class HalfInt:
    """An element of Z/2, stored as the integer ``twice = 2*value``."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise TypeError("HalfInt.twice must be an int")

    @classmethod
    def of(cls, value) -> "HalfInt":
        """Coerce ints, Fractions, floats, strings ("3/2", "-1", "1.5") or HalfInts."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a half-integer")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, str):
            text = value.strip()
            try:
                value = Fraction(text)
            except (ValueError, ZeroDivisionError):
                raise DomainError(f"cannot parse half-integer from {value!r}") from None
        elif isinstance(value, float):
            if not math.isfinite(value):
                raise DomainError(f"non-finite value {value!r}")
            value = Fraction(value)
        if isinstance(value, _RationalABC):
            doubled = Fraction(value) * 2
            if doubled.denominator != 1:
                raise DomainError(f"{value} is not a multiple of 1/2")
            return cls(int(doubled))
        raise TypeError(f"cannot convert {type(value).__name__} to HalfInt")

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def to_int(self) -> int:
        if self.twice % 2:
            raise ContractViolation(f"{self} is not an integer")
        return self.twice // 2

    def to_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __float__(self) -> float:
        return self.twice / 2

    def __int__(self) -> int:
        return self.to_int()

    def __index__(self) -> int:
        return self.to_int()

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(self.twice + other.twice)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(self.twice - other.twice)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(other.twice - self.twice)

    def __mul__(self, k):
        # Only integer scaling stays inside Z/2.
        if isinstance(k, int) and not isinstance(k, bool):
            return HalfInt(self.twice * k)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.twice == other.twice

    def __hash__(self):
        return hash(("HalfInt", self.twice))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.twice < other.twice

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.twice <= other.twice

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.twice > other.twice

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.twice >= other.twice

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({self})"


def _coerce(value):
    if isinstance(value, HalfInt):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return HalfInt(2 * value)
    if isinstance(value, Fraction):
        try:
            return HalfInt.of(value)
        except DomainError:
            return NotImplemented
    return NotImplemented


def half(value) -> HalfInt:
    """Shorthand for :meth:`HalfInt.of`."""
    return HalfInt.of(value)


def phase(exponent: HalfInt | int) -> int:
    """Return (-1)**exponent; the exponent must be an integer."""
    h = HalfInt.of(exponent)
    if not h.is_integer():
        raise ContractViolation(f"phase exponent {h} is not an integer")
    return -1 if (h.twice // 2) % 2 else 1


class FactorialCache:
    """Growable table of exact factorials, shared across threads."""

    def __init__(self, size: int = 256):
        self._table = [1]
        self._lock = threading.Lock()
        self._grow(size)

    def _grow(self, n: int) -> None:
        with self._lock:
            table = list(self._table)
            while len(table) <= n:
                table.append(table[-1] * len(table))
            # publish atomically; readers see either the old or the new list
            self._table = table

    def __len__(self):
        return len(self._table)

    def __call__(self, n: int) -> int:
        if n < 0:
            raise DomainError(f"factorial of negative number {n}")
        table = self._table
        if n >= len(table):
            self._grow(max(n, 2 * len(table)))
            table = self._table
        return table[n]


_FACTORIALS = FactorialCache()


def factorial(n) -> int:
    """Exact n! from the shared cache. Accepts ints or integer HalfInts."""
    if isinstance(n, HalfInt):
        n = n.to_int()
    return _FACTORIALS(n)


@dataclass(frozen=True)
class SignedRadical:
    """The real number ``sign * sqrt(radicand)`` with a rational radicand."""

    sign: int
    radicand: Fraction

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        r = Fraction(self.radicand)
        object.__setattr__(self, "radicand", r)
        if r < 0:
            raise ValueError("radicand must be nonnegative")
        if (self.sign == 0) != (r == 0):
            raise ValueError("sign is 0 exactly when radicand is 0")

    @classmethod
    def zero(cls) -> "SignedRadical":
        return cls(0, Fraction(0))

    @classmethod
    def from_parts(cls, coefficient: Fraction, radicand: Fraction) -> "SignedRadical":
        """Fold ``coefficient * sqrt(radicand)`` into a single radical."""
        coefficient = Fraction(coefficient)
        radicand = Fraction(radicand)
        if coefficient == 0 or radicand == 0:
            return cls.zero()
        sign = 1 if coefficient > 0 else -1
        return cls(sign, coefficient * coefficient * radicand)

    def scale(self, r) -> "SignedRadical":
        """Multiply by the rational ``r``."""
        r = Fraction(r)
        if r == 0 or self.sign == 0:
            return SignedRadical.zero()
        s = self.sign * (1 if r > 0 else -1)
        return SignedRadical(s, self.radicand * r * r)

    def __mul__(self, other):
        if isinstance(other, SignedRadical):
            return SignedRadical(self.sign * other.sign, self.radicand * other.radicand)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return SignedRadical(-self.sign, self.radicand)

    def square(self) -> Fraction:
        return self.radicand

    def __float__(self) -> float:
        return radical_to_float(self)

    def __str__(self):
        r = self.radicand
        s = {1: "+", -1: "-", 0: ""}[self.sign]
        return f"{s}sqrt({r.numerator}/{r.denominator})"


def radical_to_float(x: SignedRadical, guard_bits: int | None = None) -> float:
    """Convert ``sign * sqrt(num/den)`` to a float via an integer square root."""
    if guard_bits is None:
        guard_bits = DEFAULT_GUARD_BITS
    if guard_bits < 32:
        raise ValueError("guard_bits must be >= 32")
    if x.sign == 0:
        return 0.0
    num, den = x.radicand.numerator, x.radicand.denominator
    # extra shift keeps 53 + guard significant bits when num << den
    k = guard_bits + max(0, den.bit_length() - num.bit_length() + 1) // 2 + 1
    root = math.isqrt((num << (2 * k)) // den)
    return x.sign * math.ldexp(float(root), -k)
