"""Confluent Vandermonde matrices, closed-form inverse rows and their norm bounds."""
from ._accel import backend_name
from .bounds import (
    BoundReport,
    coefficient_sum_bound,
    lemma_bound,
    lemma_records,
    main_bound,
    rising_factorial,
    rising_factorial_recursive,
    verify_bounds,
)
from .confluent import (
    ConfluentMatrix,
    HDerivatives,
    InverseRows,
    assemble_inverse,
    build_matrix,
    h_derivatives,
    inverse_rows,
)
from .errors import (
    ConfigurationError,
    DuplicateNode,
    HypothesisViolated,
    LengthMismatch,
    NonpositiveMultiplicity,
    NumericallySingular,
    SamplingExhausted,
    SingleNode,
    SingularAtCenter,
)
from .nodes import NodeConfiguration, SeparationInfo, random_configuration, separation, validate
from .oracle import ComparisonReport, compare, lu_inverse
from .polynomial import (
    Polynomial,
    TaylorSeries,
    coeff_l1_norm,
    multiply,
    nodal_polynomial_excluding,
    series_reciprocal,
    shifted_power,
)

__version__ = "0.1.0"
