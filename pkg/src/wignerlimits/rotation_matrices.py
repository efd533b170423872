"""Small Wigner rotation matrix d^j_{m'm}(theta) from its factorial series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact_core import DomainError, HalfInt, SignedRadical, factorial, half, phase, radical_to_float

__all__ = ["DMatrixArgs", "wigner_d", "d_matrix", "d_reflection_identity_residual"]


@dataclass(frozen=True)
class DMatrixArgs:
    j: HalfInt
    m_row: HalfInt
    m_col: HalfInt
    theta: float

    def __post_init__(self):
        for name in ("j", "m_row", "m_col"):
            object.__setattr__(self, name, half(getattr(self, name)))
        j, mr, mc = self.j, self.m_row, self.m_col
        if j < 0:
            raise DomainError(f"j = {j} is negative")
        if abs(mr) > j or abs(mc) > j:
            raise DomainError(f"|m| exceeds j = {j} in d^{j}_({mr},{mc})")
        if not (j - mr).is_integer() or not (j - mc).is_integer():
            raise DomainError(f"j - m is not an integer in d^{j}_({mr},{mc})")
        if not math.isfinite(self.theta):
            raise DomainError("theta must be finite")


def wigner_d(j, m_row=None, m_col=None, theta=None) -> float:
    """d^j_{m_row, m_col}(theta).

    Each series coefficient sqrt((j+m')!(j-m')!(j+m)!(j-m)!) / (k!...) is
    formed exactly and rounded once; only the half-angle powers are floats.
    """
    p = j if isinstance(j, DMatrixArgs) else DMatrixArgs(j, m_row, m_col, float(theta))
    j, mr, mc = p.j, p.m_row, p.m_col
    sq = (
        factorial(j + mr) * factorial(j - mr) * factorial(j + mc) * factorial(j - mc)
    )
    cos_h = math.cos(p.theta / 2)
    sin_h = math.sin(p.theta / 2)

    jmr = (j - mr).to_int()
    jmc = (j - mc).to_int()
    msum = (mr + mc).to_int()
    sign0 = phase(j - mr)

    k_lo = max(0, -msum)
    k_hi = min(jmr, jmc)
    total = 0.0
    for k in range(k_lo, k_hi + 1):
        den = factorial(k) * factorial(jmr - k) * factorial(jmc - k) * factorial(msum + k)
        coeff = radical_to_float(SignedRadical(1, Fraction(sq, den * den)))
        p_cos = 2 * k + msum
        p_sin = (2 * j).to_int() - 2 * k - msum
        term = coeff * cos_h**p_cos * sin_h**p_sin
        total += -term if k % 2 else term
    return sign0 * total


def d_matrix(j, theta: float) -> list[list[float]]:
    """Full (2j+1)x(2j+1) matrix, rows and columns ordered m = j, j-1, ..., -j."""
    j = half(j)
    ms = [j - i for i in range(j.twice + 1)]
    return [[wigner_d(j, mr, mc, theta) for mc in ms] for mr in ms]


def d_reflection_identity_residual(j, beta, delta, theta: float) -> float:
    """d^j_{beta,delta}(pi - theta) - (-1)^(j-beta) d^j_{delta,-beta}(theta)."""
    j, beta, delta = half(j), half(beta), half(delta)
    lhs = wigner_d(j, beta, delta, math.pi - theta)
    rhs = phase(j - beta) * wigner_d(j, delta, -beta, theta)
    return lhs - rhs
