"""Tetrahedron attached to a 6j symbol: volume, dihedral angles, angle formulas.

Squared edge lengths are exact rationals under both labelings, so the
Cayley-Menger determinant (and therefore degeneracy) is decided exactly.
Angles come from a floating-point embedding.

Vertex labeling.  For {a b c; d e f} the edges are placed so that every
face is one of the four triads and the columns are opposite edge pairs::

    (1,2) -> a   (1,3) -> b   (2,3) -> c      face 123 = {a b c}
    (3,4) -> d   (2,4) -> e   (1,4) -> f      faces {a e f}, {b d f}, {c d e}
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .exact_core import DomainError, HalfInt, SignedRadical, half, radical_to_float
from .wigner_symbols import SixJArgs

__all__ = [
    "LabelConvention",
    "Tetrahedron",
    "DegenerateTetrahedronError",
    "EDGE_OF_ENTRY",
    "EDGES",
    "tetra_from_sixj",
    "cayley_menger",
    "volume",
    "embed",
    "exterior_dihedral",
    "exterior_dihedrals",
    "cos_phi_eq6",
    "cos_theta_eq7",
]

EDGES = tuple(combinations((1, 2, 3, 4), 2))
EDGE_OF_ENTRY = {
    "a": (1, 2),
    "b": (1, 3),
    "c": (2, 3),
    "d": (3, 4),
    "e": (2, 4),
    "f": (1, 4),
}


class DegenerateTetrahedronError(DomainError):
    """Edge set has no positive-volume Euclidean realization."""

    def __init__(self, message: str, cm_determinant: Fraction | None = None):
        super().__init__(message)
        self.cm_determinant = cm_determinant


class LabelConvention(enum.Enum):
    PLUS_HALF = "plushalf"
    SQRT_JJ1 = "sqrt"

    def squared_length(self, j: HalfInt) -> Fraction:
        x = half(j).to_fraction()
        if self is LabelConvention.PLUS_HALF:
            return (x + Fraction(1, 2)) ** 2
        return x * (x + 1)

    def length(self, j: HalfInt) -> float:
        return radical_to_float(SignedRadical(1, self.squared_length(j)))


@dataclass(frozen=True)
class Tetrahedron:
    sq_len: dict
    convention: LabelConvention | None = None

    def __post_init__(self):
        if set(self.sq_len) != set(EDGES):
            raise ValueError("sq_len must have exactly the six keys (h, k), h < k")
        for key, value in self.sq_len.items():
            if Fraction(value) <= 0:
                raise DomainError(f"squared length of edge {key} must be positive")

    def d2(self, h: int, k: int) -> Fraction:
        if h == k:
            return Fraction(0)
        return Fraction(self.sq_len[(min(h, k), max(h, k))])

    def relabel(self, perm: dict) -> "Tetrahedron":
        """Tetrahedron with vertex v renamed to perm[v]."""
        sq = {}
        for (h, k), v in self.sq_len.items():
            x, y = perm[h], perm[k]
            sq[(min(x, y), max(x, y))] = v
        return Tetrahedron(sq, self.convention)


def tetra_from_sixj(args: SixJArgs, conv: LabelConvention) -> Tetrahedron:
    if not isinstance(args, SixJArgs):
        args = SixJArgs.of(*args)
    entries = dict(zip("abcdef", args.entries()))
    sq = {EDGE_OF_ENTRY[name]: conv.squared_length(j) for name, j in entries.items()}
    return Tetrahedron(sq, conv)


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


def cayley_menger(t: Tetrahedron) -> Fraction:
    """Bordered squared-distance determinant; equals 288 V^2."""
    rows = [[Fraction(0)] + [Fraction(1)] * 4]
    for h in range(1, 5):
        rows.append([Fraction(1)] + [t.d2(h, k) for k in range(1, 5)])
    return _det(rows)


def volume(t: Tetrahedron) -> float:
    cm = cayley_menger(t)
    if cm <= 0:
        raise DegenerateTetrahedronError(
            f"Cayley-Menger determinant {cm} is not positive", cm_determinant=cm
        )
    return radical_to_float(SignedRadical(1, cm / 288))


def embed(t: Tetrahedron) -> dict[int, np.ndarray]:
    """Vertex coordinates: 1 at the origin, 2 on +x, 3 in the xy half-plane y>0, 4 with z>0."""
    cm = cayley_menger(t)
    if cm <= 0:
        raise DegenerateTetrahedronError(
            f"Cayley-Menger determinant {cm} is not positive", cm_determinant=cm
        )
    d2 = lambda h, k: float(t.d2(h, k))  # noqa: E731
    l12 = math.sqrt(d2(1, 2))
    x3 = float((t.d2(1, 2) + t.d2(1, 3) - t.d2(2, 3)) / 2) / l12
    y3_sq = d2(1, 3) - x3 * x3
    x4 = float((t.d2(1, 2) + t.d2(1, 4) - t.d2(2, 4)) / 2) / l12
    if y3_sq <= 0:
        raise DegenerateTetrahedronError("face 123 does not close", cm_determinant=cm)
    y3 = math.sqrt(y3_sq)
    # |p4 - p3|^2 = d34^2 solved for y4
    y4 = (d2(1, 4) - d2(3, 4) + d2(1, 3) - 2 * x3 * x4) / (2 * y3)
    z4_sq = d2(1, 4) - x4 * x4 - y4 * y4
    if z4_sq <= 0:
        raise DegenerateTetrahedronError(
            "impossible metric: negative height for vertex 4", cm_determinant=cm
        )
    return {
        1: np.zeros(3),
        2: np.array([l12, 0.0, 0.0]),
        3: np.array([x3, y3, 0.0]),
        4: np.array([x4, y4, math.sqrt(z4_sq)]),
    }


def _interior_angle(points: dict, edge: tuple[int, int]) -> float:
    h, k = edge
    p, q = (v for v in (1, 2, 3, 4) if v not in edge)
    axis = points[k] - points[h]
    axis = axis / np.linalg.norm(axis)
    u = points[p] - points[h]
    v = points[q] - points[h]
    u = u - np.dot(u, axis) * axis
    v = v - np.dot(v, axis) * axis
    # atan2 form stays accurate near 0 and pi
    return math.atan2(np.linalg.norm(np.cross(u, v)), np.dot(u, v))


def exterior_dihedral(t: Tetrahedron, edge: tuple[int, int]) -> float:
    """pi minus the interior dihedral angle along ``edge``."""
    edge = (min(edge), max(edge))
    if edge not in t.sq_len:
        raise KeyError(f"no edge {edge}")
    return math.pi - _interior_angle(embed(t), edge)


def exterior_dihedrals(t: Tetrahedron) -> dict[tuple[int, int], float]:
    points = embed(t)
    return {e: math.pi - _interior_angle(points, e) for e in EDGES}


def cos_phi_eq6(a, n, b, m, c) -> Fraction:
    """Cosine of the angle between sides a+n+1/2 and b+m+1/2 opposite c+1/2."""
    a, n, b, m, c = (half(x) for x in (a, n, b, m, c))
    p = (a + n).to_fraction() + Fraction(1, 2)
    q = (b + m).to_fraction() + Fraction(1, 2)
    r = c.to_fraction() + Fraction(1, 2)
    if p <= 0 or q <= 0:
        raise DomainError("side lengths must be positive")
    cos = (p * p + q * q - r * r) / (2 * p * q)
    if abs(cos) > 1:
        raise DomainError(f"triangle ({p}, {q}, {r}) does not close: cos = {cos}")
    return cos


def cos_theta_eq7(gamma, c) -> Fraction:
    gamma, c = half(gamma), half(c)
    if abs(gamma) > c:
        raise DomainError(f"|gamma| = {abs(gamma)} exceeds c = {c}")
    return gamma.to_fraction() / (c.to_fraction() + Fraction(1, 2))
