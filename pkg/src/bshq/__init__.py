"""Bohr-Sommerfeld-Heisenberg quantization of the planar harmonic oscillator.

Sparse operator algebra, oscillator and reduced-sphere quantizations, the
intertwiner between them, classical Hopf geometry, su(2) identifications, and a
verification suite tying it all together.
"""

from .lattice import FockIndex, ReducedIndex, bs_set_oscillator, bs_set_reduced, oscillator_basis, reduced_basis
from .opcore import Check, SparseOperator, VerificationReport, adjoint, commutant_dimension, commutator, compose
from .osc_quant import OscillatorOperators, build_oscillator_ops, verify_su2_u2
from .qreduction import build_intertwiner, multiplicity_report, verify_intertwining
from .red_quant import BCoefficients, ReducedOperators, b_coefficients, build_reduced_ops, verify_reduced_su2
from .verify import RunConfig, run_verification

__all__ = [
    "BCoefficients", "Check", "FockIndex", "OscillatorOperators", "ReducedIndex", "ReducedOperators",
    "RunConfig", "SparseOperator", "VerificationReport", "adjoint", "b_coefficients", "bs_set_oscillator",
    "bs_set_reduced", "build_intertwiner", "build_oscillator_ops", "build_reduced_ops", "commutant_dimension",
    "commutator", "compose", "multiplicity_report", "oscillator_basis", "reduced_basis", "run_verification",
    "verify_intertwining", "verify_reduced_su2", "verify_su2_u2",
]
