"""Exact 3j and 6j symbols.

Every symbol is returned as a :class:`SignedRadical`: the alternating
factorial sum is accumulated as one exact ``Fraction`` and folded together
with the square-rooted prefactor, so two evaluation routes can be compared
for exact equality.

Besides the direct Racah-type sums, two regrouped evaluators are provided:

* :func:`threej_delta_form` eliminates ``a = c - delta`` and
  ``alpha = -beta - gamma`` and groups the large-argument factorials into the
  three ratios Omega_1..Omega_3;
* :func:`sixj_phi_form` shifts the summation index to ``t = z - (a+b+c+m+n)``
  and groups factorials into Phi_1..Phi_6.

Both are identities, so they must agree with the direct sums bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .exact_core import (
    ContractViolation,
    DomainError,
    HalfInt,
    SignedRadical,
    factorial,
    half,
    phase,
)

__all__ = [
    "SelectionRuleError",
    "ThreeJArgs",
    "SixJArgs",
    "TriangleCheck",
    "check_triangle",
    "delta_coeff",
    "threej",
    "threej_or_zero",
    "threej_delta_form",
    "threej_delta_form_terms",
    "sixj",
    "sixj_or_zero",
    "sixj_phi_form",
]


class SelectionRuleError(DomainError):
    """A 3j/6j argument tuple violates a triangle, parity or projection rule."""


class TriangleCheck(NamedTuple):
    ok: bool
    failing_triple: tuple | None = None


def check_triangle(a, b, c) -> TriangleCheck:
    a, b, c = half(a), half(b), half(c)
    ok = (
        a >= 0
        and b >= 0
        and c >= 0
        and abs(a - b) <= c <= a + b
        and (a + b + c).is_integer()
    )
    return TriangleCheck(True) if ok else TriangleCheck(False, (a, b, c))


def _require_triangle(a, b, c, label="") -> None:
    chk = check_triangle(a, b, c)
    if not chk.ok:
        name = f" {label}" if label else ""
        x, y, z = chk.failing_triple
        raise SelectionRuleError(
            f"triangle rule violated for triple{name} ({x}, {y}, {z})"
        )


@dataclass(frozen=True)
class ThreeJArgs:
    j1: HalfInt
    j2: HalfInt
    j3: HalfInt
    m1: HalfInt
    m2: HalfInt
    m3: HalfInt

    def __post_init__(self):
        for name in ("j1", "j2", "j3", "m1", "m2", "m3"):
            object.__setattr__(self, name, half(getattr(self, name)))
        self.validate()

    @classmethod
    def of(cls, *values) -> "ThreeJArgs":
        return cls(*(half(v) for v in values))

    def validate(self) -> None:
        js = (self.j1, self.j2, self.j3)
        ms = (self.m1, self.m2, self.m3)
        _require_triangle(*js)
        for i, (j, m) in enumerate(zip(js, ms), start=1):
            if not (j + m).is_integer():
                raise SelectionRuleError(f"parity rule: j{i}+m{i} = {j + m} is not an integer")
            if abs(m) > j:
                raise SelectionRuleError(f"projection rule: |m{i}| = {abs(m)} exceeds j{i} = {j}")
        if self.m1 + self.m2 + self.m3 != 0:
            raise SelectionRuleError("projection sum rule: m1+m2+m3 != 0")


@dataclass(frozen=True)
class SixJArgs:
    a: HalfInt
    b: HalfInt
    c: HalfInt
    d: HalfInt
    e: HalfInt
    f: HalfInt

    def __post_init__(self):
        for name in "abcdef":
            object.__setattr__(self, name, half(getattr(self, name)))
        self.validate()

    @classmethod
    def of(cls, *values) -> "SixJArgs":
        return cls(*(half(v) for v in values))

    def triads(self):
        a, b, c, d, e, f = self.entries()
        return {"abc": (a, b, c), "cde": (c, d, e), "aef": (a, e, f), "bdf": (b, d, f)}

    def entries(self):
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def validate(self) -> None:
        for name, triple in self.triads().items():
            _require_triangle(*triple, label="{" + name + "}")


def delta_coeff(a, b, c) -> Fraction:
    """Triangle coefficient (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!."""
    a, b, c = half(a), half(b), half(c)
    _require_triangle(a, b, c)
    return Fraction(
        factorial(a + b - c) * factorial(a - b + c) * factorial(-a + b + c),
        factorial(a + b + c + 1),
    )


def threej(*args) -> SignedRadical:
    """The 3j symbol (j1 j2 j3; m1 m2 m3).

    Accepts either a :class:`ThreeJArgs` or six half-integer-like values.
    """
    p = args[0] if len(args) == 1 and isinstance(args[0], ThreeJArgs) else ThreeJArgs.of(*args)
    a, b, c = p.j1, p.j2, p.j3
    al, be, ga = p.m1, p.m2, p.m3

    prefactor = delta_coeff(a, b, c) * (
        factorial(a + al) * factorial(a - al)
        * factorial(b + be) * factorial(b - be)
        * factorial(c + ga) * factorial(c - ga)
    )

    # factorial arguments, each linear in z
    z_lo = max(0, (b - c - al).to_int(), (a - c + be).to_int())
    z_hi = min((a + b - c).to_int(), (b + be).to_int(), (a - al).to_int())
    if z_lo > z_hi:
        raise ContractViolation(f"empty summation range for {p}")

    base = phase(a - b - ga)
    total = Fraction(0)
    for z in range(z_lo, z_hi + 1):
        den = (
            factorial(z)
            * factorial(a + b - c - z)
            * factorial(c - b + al + z)
            * factorial(b + be - z)
            * factorial(a - al - z)
            * factorial(c - a - be + z)
        )
        total += Fraction(base if z % 2 == 0 else -base, den)
    return SignedRadical.from_parts(total, prefactor)


def threej_or_zero(*args) -> SignedRadical:
    """Lenient :func:`threej`: selection-rule violations give an exact zero."""
    try:
        return threej(*args)
    except SelectionRuleError:
        return SignedRadical.zero()


def _delta_form_parts(b, beta, delta, c, gamma):
    b, beta, delta, c, gamma = (half(x) for x in (b, beta, delta, c, gamma))
    a = c - delta
    alpha = -beta - gamma
    # validates the underlying (b a c; beta alpha gamma)
    ThreeJArgs(b, a, c, beta, alpha, gamma)

    omega1 = Fraction(factorial(2 * c - delta - b), factorial(2 * c - delta + b))
    # numerators of Omega_2 and Omega_3; their squared denominators are
    # pulled out of the root into the z-dependent rational below
    omega23_num = (
        factorial(c + gamma - delta + beta) * factorial(c + gamma)
        * factorial(c - gamma - delta - beta) * factorial(c - gamma)
    )
    outer = Fraction(
        factorial(b + beta) * factorial(b - beta) * factorial(b - delta) * factorial(b + delta),
        (2 * c + b - delta + 1).to_int(),
    )
    radicand = outer * omega1 * omega23_num

    z_lo = max((-c + b - gamma - beta).to_int(), 0, (-beta - delta).to_int())
    z_hi = min((c - delta - gamma - beta).to_int(), (b - delta).to_int(), (b - beta).to_int())
    if z_lo > z_hi:
        raise ContractViolation("empty summation range in Omega form")

    terms = []
    for z in range(z_lo, z_hi + 1):
        den = (
            factorial(z) * factorial(b - delta - z) * factorial(b - beta - z)
            * factorial(beta + delta + z)
            * factorial(c + gamma - b + beta + z)
            * factorial(c - gamma - delta - beta - z)
        )
        terms.append((z, Fraction(1 if z % 2 == 0 else -1, den)))
    return phase(b - a - gamma), radicand, terms


def threej_delta_form(b, beta, delta, c, gamma) -> SignedRadical:
    """(b, c-delta, c; beta, -beta-gamma, gamma) evaluated via the Omega grouping."""
    sgn, radicand, terms = _delta_form_parts(b, beta, delta, c, gamma)
    total = sum((t for _, t in terms), Fraction(0))
    return SignedRadical.from_parts(sgn * total, radicand)


def threej_delta_form_terms(b, beta, delta, c, gamma) -> list[int]:
    """Summation indices used by :func:`threej_delta_form`."""
    _, _, terms = _delta_form_parts(b, beta, delta, c, gamma)
    return [z for z, _ in terms]


def sixj(*args) -> SignedRadical:
    """The 6j symbol {a b c; d e f}."""
    p = args[0] if len(args) == 1 and isinstance(args[0], SixJArgs) else SixJArgs.of(*args)
    a, b, c, d, e, f = p.entries()

    prefactor = delta_coeff(a, b, c) * delta_coeff(c, d, e) * delta_coeff(a, e, f) * delta_coeff(b, d, f)

    s_abc = (a + b + c).to_int()
    s_aef = (a + e + f).to_int()
    s_dec = (d + e + c).to_int()
    s_bdf = (b + d + f).to_int()
    t_bcef = (b + c + e + f).to_int()
    t_abde = (a + b + d + e).to_int()
    t_acdf = (a + c + d + f).to_int()

    z_lo = max(s_abc, s_aef, s_dec, s_bdf)
    z_hi = min(t_bcef, t_abde, t_acdf)
    if z_lo > z_hi:
        raise ContractViolation(f"empty summation range for {p}")

    total = Fraction(0)
    for z in range(z_lo, z_hi + 1):
        den = (
            factorial(z - s_abc) * factorial(z - s_aef) * factorial(t_bcef - z)
            * factorial(z - s_dec) * factorial(z - s_bdf) * factorial(t_abde - z)
            * factorial(t_acdf - z)
        )
        num = factorial(z + 1)
        total += Fraction(num if z % 2 == 0 else -num, den)
    return SignedRadical.from_parts(total, prefactor)


def sixj_or_zero(*args) -> SignedRadical:
    try:
        return sixj(*args)
    except SelectionRuleError:
        return SignedRadical.zero()


def sixj_phi_form(a, b, c, f, m, n) -> SignedRadical:
    """{c b a; f a+n b+m} evaluated through the Phi_1..Phi_6 grouping."""
    a, b, c, f, m, n = (half(x) for x in (a, b, c, f, m, n))
    SixJArgs(c, b, a, f, a + n, b + m)

    nu = a + b + c + m + n
    omega_a = (2 * a + n + f + 1).to_int()
    omega_b = (2 * b + m + f + 1).to_int()

    phi1 = Fraction(factorial(2 * a + n - f), factorial(2 * a + n + f))
    phi2 = Fraction(factorial(2 * b + m - f), factorial(2 * b + m + f))
    phi3_num = factorial(a + b - c) * factorial(a + b - c + m + n)
    phi4_num = factorial(a - b + c) * factorial(a - b + c + n - m)
    phi5_num = factorial(-a + b + c) * factorial(-a + b + c + m - n)
    phi6_den = factorial(a + b + c + 1) * factorial(a + b + c + m + n + 1)
    outer = factorial(f + m) * factorial(f - m) * factorial(f + n) * factorial(f - n)

    radicand = Fraction(outer * phi3_num * phi4_num * phi5_num, phi6_den) * phi1 * phi2
    radicand /= omega_a * omega_b

    t_lo = max(0, (-m - n).to_int(), (f - n - a + b - c).to_int(), (f - m + a - b - c).to_int())
    t_hi = min((f - m).to_int(), (f - n).to_int(), (a + b - c).to_int())
    if t_lo > t_hi:
        raise ContractViolation("empty summation range in Phi form")

    total = Fraction(0)
    for t in range(t_lo, t_hi + 1):
        num = factorial(a + b + c + m + n + 1 + t)
        den = (
            factorial(t) * factorial(f - m - t) * factorial(f - n - t) * factorial(m + n + t)
            * factorial(a + b - c - t)
            * factorial(a - b + c + n - f + t)
            * factorial(-a + b + c + m - f + t)
        )
        total += Fraction(num if t % 2 == 0 else -num, den)
    return SignedRadical.from_parts(phase(nu) * total, radicand)
