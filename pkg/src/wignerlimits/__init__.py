"""Exact Wigner 3j/6j symbols and residuals of their rotation-matrix limits."""

from .exact_core import (
    ContractViolation,
    DomainError,
    FactorialCache,
    HalfInt,
    SignedRadical,
    factorial,
    half,
    radical_to_float,
)
from .wigner_symbols import (
    SelectionRuleError,
    SixJArgs,
    ThreeJArgs,
    delta_coeff,
    sixj,
    sixj_phi_form,
    threej,
    threej_delta_form,
)
from .rotation_matrices import wigner_d
from .tetra_geometry import LabelConvention, Tetrahedron, tetra_from_sixj, volume
from .asymptotics import pr_approx, run_sweep

__version__ = "0.1.0"

__all__ = [
    "ContractViolation",
    "DomainError",
    "FactorialCache",
    "HalfInt",
    "SignedRadical",
    "factorial",
    "half",
    "radical_to_float",
    "SelectionRuleError",
    "SixJArgs",
    "ThreeJArgs",
    "delta_coeff",
    "sixj",
    "sixj_phi_form",
    "threej",
    "threej_delta_form",
    "wigner_d",
    "LabelConvention",
    "Tetrahedron",
    "tetra_from_sixj",
    "volume",
    "pr_approx",
    "run_sweep",
]
