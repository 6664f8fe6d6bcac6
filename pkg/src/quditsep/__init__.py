"""Numerics for qudit separability: SU(D) generator bases, superoperator
calculus for Haar averages, quasi-probability product representations, and
separability verdicts with certificates."""

from .bounds import (
    classify_epsilon_cat,
    classify_epsilon_mixture,
    necessity_check,
    neighborhood_bounds,
    ppt_test,
    two_qudit_boundary,
)
from .errors import (
    DimensionMismatchError,
    InvalidDimensionError,
    InvalidStateError,
    NumericalDegeneracyError,
    NumericalError,
    ParameterRangeError,
    QuditError,
    ResourceCapError,
)
from .su_basis import bloch_expand, bloch_reconstruct, build_basis, structure_constants
from .verdict import SeparabilityVerdict, Verdict

__version__ = "0.1.0"
