"""Communication-efficient quantum secret sharing from concatenated CSS codes."""

from __future__ import annotations

from .codes import LinearCode, NestedPair, dual, nested_weight, puncture, shorten, sum_code, weight
from .css import AccessReport, CssCode, classify_subsets, css_new, is_authorized, qss_thresholds
from .ecss import ExtendedCssSpec, ExtensionSplit, ecss_new, split, tau, tau_full, tau_none, tau_oracle
from .errors import (
    CeqssError,
    ConditionError,
    DomainError,
    FieldMismatchError,
    IntegrityError,
    ResourceError,
)
from .gf import Fe, FieldSpec
from .grs import GrsSpec, grs_stack, vandermonde
from .linalg import FqMatrix, column_submatrix, complement_basis, null_space, rank, rref, solve_affine
from .qsim import (
    CosetEncoder,
    CosetState,
    DenseState,
    DensityMatrix,
    classify_by_entropy,
    coset_entropy,
    entangle_reference,
    entropy,
    expand,
    partial_trace,
    significant_set_check,
)
from .scheme import (
    CeQssScheme,
    MessageMatrix,
    ShareLayout,
    bounds_report,
    build,
    concatenated_css,
    encode_classical,
    optimal_grs,
    recover_from_d,
    recover_from_t,
)
