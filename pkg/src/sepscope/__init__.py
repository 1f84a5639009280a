"""Conditional amplitude operator and Γ-map separability criteria for bipartite states."""

__version__ = "0.1.0"

from .bipartite import (  # noqa: E402
    DensityOperator,
    Subsystem,
    partial_trace,
    partial_transpose,
    permute_to_bipartition,
    tensor,
)
from .conditional import (  # noqa: E402
    ConditionalAmplitude,
    conditional_amplitude,
    conditional_entropy,
    entropic_criterion,
    spectral_criterion,
    trotter_approximation,
)
from .exceptions import (  # noqa: E402
    DomainError,
    InconsistencyError,
    RankError,
    SepscopeError,
    ValidationError,
)
from .kernels import BACKEND  # noqa: E402
from .linalg import hermitian_eig, matrix_function, von_neumann_entropy  # noqa: E402
from .maps import (  # noqa: E402
    criterion_report,
    dual_lambda_map,
    gamma,
    lambda_inverse,
    lambda_map,
    symmetric_inverse,
    symmetric_map,
)
from .states import NamedStateSpec, construct, dilute, random_density, random_separable  # noqa: E402
from .verdict import Criterion, CriterionVerdict  # noqa: E402
