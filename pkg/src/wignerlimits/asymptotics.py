"""Semiclassical limits of 3j and 6j symbols and their residuals.

Each ``*_residual`` function evaluates ``normalized symbol - limit`` at one
point of a scaling sweep.  Symbols are exact; the normalizing square root is
folded into the radicand before the single conversion to float, so the only
rounding happens in the rotation matrix and in that last conversion.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .exact_core import (
    DomainError,
    HalfInt,
    SignedRadical,
    factorial,
    half,
    phase,
    radical_to_float,
)
from .rotation_matrices import wigner_d
from .tetra_geometry import (
    LabelConvention,
    cos_phi_eq6,
    cos_theta_eq7,
    exterior_dihedrals,
    tetra_from_sixj,
    volume,
    EDGE_OF_ENTRY,
)
from .wigner_symbols import (
    SelectionRuleError,
    check_triangle,
    SixJArgs,
    ThreeJArgs,
    threej,
    threej_or_zero,
    sixj,
)

__all__ = [
    "StirlingVariant",
    "stirling",
    "log_stirling",
    "stirling_relative_error",
    "omega_exact",
    "omega_eq13_residual",
    "pr_approx",
    "Thm1Params",
    "Thm2Params",
    "Thm3Params",
    "Eq14Params",
    "ComposedParams",
    "ResidualSeries",
    "ScheduleError",
    "Limit",
    "thm1_gamma",
    "thm1_residual",
    "thm2_residual",
    "thm3_residual",
    "eq14_residual",
    "composed_residual",
    "run_sweep",
    "doubling_schedule",
]


class ScheduleError(DomainError):
    """A sweep point does not produce valid symbol arguments."""

    def __init__(self, message: str, scale=None):
        super().__init__(message)
        self.scale = scale


def _normalized(x: SignedRadical, weight) -> float:
    """float(sqrt(weight) * x), rounded once."""
    if x.sign == 0:
        return 0.0
    return radical_to_float(SignedRadical(x.sign, x.radicand * weight))


# -- Stirling approximants ---------------------------------------------------


class StirlingVariant(enum.Enum):
    CLASSIC = "classic"
    PLUS1 = "plus1"
    PLUS_HALF = "plushalf"


_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def log_stirling(n: int, variant: StirlingVariant = StirlingVariant.CLASSIC) -> float:
    if n < 0:
        raise DomainError("n must be nonnegative")
    if variant is StirlingVariant.CLASSIC:
        if n == 0:
            return -math.inf
        x = float(n)
    elif variant is StirlingVariant.PLUS1:
        x = n + 1.0
    else:
        x = n + 0.5
    return _LOG_SQRT_2PI + (n + 0.5) * math.log(x) - x


def stirling(n: int, variant: StirlingVariant = StirlingVariant.CLASSIC) -> float:
    """Stirling-type approximant to n!.

    n = 0 is accepted but is a poor approximation (the classic form gives 0).
    Raises OverflowError once the value exceeds the float range.
    """
    return math.exp(log_stirling(n, variant))


def stirling_relative_error(n: int, variant: StirlingVariant) -> float:
    """(approximant - n!) / n!, computed in log space against the exact factorial."""
    return math.expm1(log_stirling(n, variant) - math.log(factorial(n)))


# -- 3j -> d-matrix limit ---------------------------------------------------


@dataclass(frozen=True)
class Thm1Params:
    b: HalfInt
    beta: HalfInt
    delta: HalfInt
    gamma_ratio: float = 0.0

    def __post_init__(self):
        for name in ("b", "beta", "delta"):
            object.__setattr__(self, name, half(getattr(self, name)))
        if abs(self.beta) > self.b or abs(self.delta) > self.b:
            raise DomainError("need |beta| <= b and |delta| <= b")
        if not (self.b - self.beta).is_integer() or not (self.b - self.delta).is_integer():
            raise DomainError("b - beta and b - delta must be integers")
        if not -1 < self.gamma_ratio < 1:
            raise DomainError("gamma_ratio must lie in (-1, 1)")


@dataclass(frozen=True)
class Thm2Params:
    b: HalfInt
    beta: HalfInt
    delta: HalfInt
    sign: int = 1

    def __post_init__(self):
        for name in ("b", "beta", "delta"):
            object.__setattr__(self, name, half(getattr(self, name)))
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if abs(self.beta) > self.b or abs(self.delta) > self.b:
            raise DomainError("need |beta| <= b and |delta| <= b")


def thm1_gamma(c, ratio: float) -> HalfInt:
    """Projection nearest ``ratio * c`` with the parity of c (c + gamma integer)."""
    c = half(c)
    target = Fraction(ratio) * c.to_fraction()
    if c.is_integer():
        return half(round(target))
    # nearest point of Z + 1/2
    return half(math.floor(target) + Fraction(1, 2))


def omega_exact(b, beta, delta, c, gamma, z: int) -> float:
    """sqrt(Omega_1 Omega_2 Omega_3) for the (b, c-delta, c) coupling at index z."""
    b, beta, delta, c, gamma = (half(x) for x in (b, beta, delta, c, gamma))
    z_lo = max((-c + b - gamma - beta).to_int(), 0, (-beta - delta).to_int())
    z_hi = min((c - delta - gamma - beta).to_int(), (b - delta).to_int(), (b - beta).to_int())
    if not z_lo <= z <= z_hi:
        raise DomainError(f"z = {z} outside summation range [{z_lo}, {z_hi}]")
    o1 = Fraction(factorial(2 * c - delta - b), factorial(2 * c - delta + b))
    o2 = Fraction(
        factorial(c + gamma - delta + beta) * factorial(c + gamma),
        factorial(c + gamma - b + beta + z) ** 2,
    )
    o3 = Fraction(
        factorial(c - gamma - delta - beta) * factorial(c - gamma),
        factorial(c - gamma - delta - beta - z) ** 2,
    )
    return radical_to_float(SignedRadical(1, o1 * o2 * o3))


def omega_eq13_residual(c, gamma, p: Thm1Params, z: int) -> float:
    """Exact Omega minus its half-angle power limit."""
    c, gamma = half(c), half(gamma)
    exact = omega_exact(p.b, p.beta, p.delta, c, gamma, z)
    theta = math.acos(float(cos_theta_eq7(gamma, c)))
    p_sin = (2 * z + p.beta + p.delta).to_int()
    p_cos = (2 * p.b - 2 * z - p.beta - p.delta).to_int()
    return exact - math.sin(theta / 2) ** p_sin * math.cos(theta / 2) ** p_cos


def _thm1_args(b, beta, delta, c, gamma) -> ThreeJArgs:
    a = c - delta
    return ThreeJArgs(b, a, c, beta, -beta - gamma, gamma)


def thm1_residual(p: Thm1Params, c) -> float:
    c = half(c)
    gamma = thm1_gamma(c, p.gamma_ratio)
    try:
        args = _thm1_args(p.b, p.beta, p.delta, c, gamma)
    except SelectionRuleError as exc:
        raise ScheduleError(f"no valid 3j at c = {c}: {exc}", scale=c) from None
    a = args.j2
    weight = (a + p.b + c + 1).to_int()
    lhs = _normalized(threej(args), weight)
    theta = math.acos(float(cos_theta_eq7(gamma, c)))
    return lhs - phase(p.b - a - gamma) * wigner_d(p.b, p.delta, -p.beta, theta)


def thm2_residual(p: Thm2Params, c) -> float:
    c = half(c)
    gamma = c if p.sign > 0 else -c
    a = c - p.delta
    alpha = -p.beta - gamma
    if not check_triangle(p.b, a, c).ok:
        raise ScheduleError(f"no valid 3j at c = {c}: triangle ({p.b}, {a}, {c})", scale=c)
    weight = (a + p.b + c + 1).to_int()
    # |alpha| > a is a physical zero, not a schedule failure
    lhs = _normalized(threej_or_zero(p.b, a, c, p.beta, alpha, gamma), weight)
    target = -a if p.sign > 0 else a
    if alpha != target:
        return lhs
    xi = (-a + p.b - c) if p.sign > 0 else (2 * p.b + p.delta - p.beta)
    return lhs - phase(xi)


# -- 6j -> d-matrix limit ---------------------------------------------------


@dataclass(frozen=True)
class Thm3Params:
    a0: HalfInt
    b0: HalfInt
    c0: HalfInt
    f: HalfInt
    m: HalfInt
    n: HalfInt

    def __post_init__(self):
        for name in ("a0", "b0", "c0", "f", "m", "n"):
            object.__setattr__(self, name, half(getattr(self, name)))
        if abs(self.m) > self.f or abs(self.n) > self.f:
            raise DomainError("need |m| <= f and |n| <= f")


def thm3_residual(p: Thm3Params, lam: int) -> float:
    if lam < 1:
        raise ScheduleError(f"scale must be a positive integer, got {lam}", scale=lam)
    a, b, c = p.a0 * lam, p.b0 * lam, p.c0 * lam
    f, m, n = p.f, p.m, p.n
    try:
        args = SixJArgs(c, b, a, f, a + n, b + m)
    except SelectionRuleError as exc:
        raise ScheduleError(f"invalid 6j at lambda = {lam}: {exc}", scale=lam) from None
    omega_a = (2 * a + n + f + 1).to_int()
    omega_b = (2 * b + m + f + 1).to_int()
    lhs = _normalized(sixj(args), omega_a * omega_b)
    phi = math.acos(float(cos_phi_eq6(a, n, b, m, c)))
    return lhs - phase(a + b + c + f + m) * wigner_d(f, n, m, phi)


# -- 6j -> 3j and the composed two-scale limit -------------------------------


@dataclass(frozen=True)
class Eq14Params:
    a: HalfInt
    b: HalfInt
    c: HalfInt
    d: HalfInt
    e: HalfInt
    f: HalfInt

    def __post_init__(self):
        for name in "abcdef":
            object.__setattr__(self, name, half(getattr(self, name)))

    @property
    def projections(self) -> tuple[HalfInt, HalfInt, HalfInt]:
        return self.e - self.f, self.f - self.d, self.d - self.e


def eq14_residual(p: Eq14Params, R) -> float:
    R = half(R)
    try:
        args = SixJArgs(p.a, p.b, p.c, p.d + R, p.e + R, p.f + R)
    except SelectionRuleError as exc:
        raise ScheduleError(f"invalid 6j at R = {R}: {exc}", scale=R) from None
    alpha, beta, gamma = p.projections
    lhs = _normalized(sixj(args), (2 * R + 1).to_int())
    limit = radical_to_float(threej_or_zero(p.a, p.b, p.c, alpha, beta, gamma))
    return lhs - phase(p.a + p.b + p.c + 2 * (p.d + p.e + p.f)) * limit


@dataclass(frozen=True)
class ComposedParams:
    a: HalfInt
    b: HalfInt
    c: HalfInt
    f: HalfInt
    m: HalfInt
    n: HalfInt

    def __post_init__(self):
        for name in "abcfmn":
            object.__setattr__(self, name, half(getattr(self, name)))

    @staticmethod
    def shifts(s: int) -> tuple[int, int]:
        """(R, R') at schedule point s; R grows faster so it is taken first."""
        return s * s, s


def composed_residual(p: ComposedParams, s: int) -> float:
    if s < 1:
        raise ScheduleError(f"scale must be a positive integer, got {s}", scale=s)
    R, Rp = p.shifts(s)
    a, b, c = p.a + R, p.b + Rp, p.c + R
    f, m, n = p.f, p.m, p.n
    try:
        args = SixJArgs(c, b, a, f, a + n, b + m)
    except SelectionRuleError as exc:
        raise ScheduleError(f"invalid 6j at s = {s}: {exc}", scale=s) from None
    omega1 = 2 * R + 1
    omega2 = (2 * b + m + f + 1).to_int()
    lhs = _normalized(sixj(args), omega1 * omega2)
    phi = math.acos(float(cos_phi_eq6(a, n, b, m, c)))
    return lhs - phase(a + b + c + f + m) * wigner_d(f, n, m, phi)


# -- Ponzano-Regge -----------------------------------------------------------


def pr_approx(args, conv: LabelConvention = LabelConvention.PLUS_HALF) -> float:
    """cos(sum_edges L_e * theta_e + pi/4) / sqrt(12 pi V).

    Edge lengths L_e, the volume and the exterior dihedral angles all use the
    same labeling ``conv``.  Raises DegenerateTetrahedronError when the edge
    set has no Euclidean realization.
    """
    if not isinstance(args, SixJArgs):
        args = SixJArgs.of(*args)
    t = tetra_from_sixj(args, conv)
    vol = volume(t)
    angles = exterior_dihedrals(t)
    phase_sum = 0.0
    for name, j in zip("abcdef", args.entries()):
        phase_sum += conv.length(j) * angles[EDGE_OF_ENTRY[name]]
    return math.cos(phase_sum + math.pi / 4) / math.sqrt(12 * math.pi * vol)


# -- sweeps ------------------------------------------------------------------


class Limit(enum.Enum):
    THM1 = "thm1"
    THM2 = "thm2"
    THM3 = "thm3"
    EQ14 = "eq14"
    COMPOSED = "composed"


_EVALUATORS = {
    Limit.THM1: (Thm1Params, thm1_residual),
    Limit.THM2: (Thm2Params, thm2_residual),
    Limit.THM3: (Thm3Params, thm3_residual),
    Limit.EQ14: (Eq14Params, eq14_residual),
    Limit.COMPOSED: (ComposedParams, composed_residual),
}


@dataclass
class ResidualSeries:
    limit: Limit
    params: object
    samples: list = field(default_factory=list)

    @property
    def scales(self):
        return [s for s, _ in self.samples]

    @property
    def residuals(self):
        return [r for _, r in self.samples]

    def metadata(self) -> dict:
        return {"limit": self.limit.value, "params": {k: str(v) for k, v in asdict(self.params).items()}}


def doubling_schedule(start: int, factor: int, count: int) -> list[int]:
    if start <= 0:
        raise ScheduleError("scale must be positive", scale=start)
    if factor < 2 or count < 1:
        raise ScheduleError("factor must be >= 2 and count >= 1")
    return [start * factor**i for i in range(count)]


def run_sweep(limit, params, schedule, workers: int | None = None) -> ResidualSeries:
    """Residuals along ``schedule``; output is ordered by scale whatever ``workers`` is."""
    limit = Limit(limit)
    param_type, evaluate = _EVALUATORS[limit]
    if not isinstance(params, param_type):
        raise TypeError(f"{limit.value} expects {param_type.__name__}")
    schedule = list(schedule)
    if not schedule:
        raise ScheduleError("empty schedule")
    if limit in (Limit.THM3, Limit.COMPOSED):
        bad = [s for s in schedule if not isinstance(s, int) or isinstance(s, bool)]
        if bad:
            raise ScheduleError(f"{limit.value} scales must be integers", scale=bad[0])
        keys = schedule
    else:
        keys = [half(s) for s in schedule]
    if any(k <= 0 for k in keys):
        raise ScheduleError("scale must be positive", scale=next(k for k in keys if k <= 0))
    if any(x >= y for x, y in zip(keys, keys[1:])):
        raise ScheduleError("schedule must be strictly increasing")

    def point(scale):
        try:
            return evaluate(params, scale)
        except ScheduleError:
            raise
        except DomainError as exc:
            raise ScheduleError(f"{limit.value} failed at scale {scale}: {exc}", scale=scale) from exc

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(point, keys))
    else:
        values = [point(k) for k in keys]
    return ResidualSeries(limit, params, list(zip(keys, values)))
